#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wsd {

struct SenseEntry {
  std::string concept;      // vertex id in the knowledge base namespace
  std::uint64_t tag_count;  // times the sense was tagged in the concordance
};

/// Headword (lemma#pos) to candidate senses, file order preserved.
class Dictionary {
public:
  /// Parses `<headword> <concept>:<count> [...]` lines; `#` comments allowed.
  /// Throws std::runtime_error with a line number on malformed lines,
  /// negative counts, duplicate concepts within a line, or duplicate
  /// headwords.
  static Dictionary load(std::istream& is);

  std::size_t size() const { return headwords_.size(); }

  /// Candidate senses of a headword in file order, or nullptr when the
  /// headword is out of vocabulary.
  const std::vector<SenseEntry>* find(std::string_view headword) const;

  /// Add-one smoothed sense distribution, aligned with find() order:
  /// p(i) = (count_i + 1) / sum_j (count_j + 1). Strictly positive, sums
  /// to 1. nullopt when the headword is out of vocabulary.
  std::optional<std::vector<double>> smoothed_distribution(std::string_view headword) const;

  /// Most frequent sense: maximum tag count, ties broken by earliest file
  /// position. nullopt when out of vocabulary.
  std::optional<std::string> mfs(std::string_view headword) const;

  std::span<const std::string> headwords() const { return headwords_; }

private:
  std::vector<std::string> headwords_;               // file order
  std::vector<std::vector<SenseEntry>> senses_;      // parallel to headwords_
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace wsd
