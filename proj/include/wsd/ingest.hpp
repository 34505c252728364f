#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wsd/corpus.hpp"
#include "wsd/disambiguator.hpp"
#include "wsd/scorer.hpp"

namespace wsd {

/// Parses the unified evaluation-framework XML (corpus > text > sentence >
/// wf|instance) into documents. Instance elements become target tokens;
/// pos attributes map NOUN/VERB/ADJ/ADV to n/v/a/r and anything else to
/// other. Lemmas are lowercased. Throws on malformed XML or instances
/// missing id/lemma/pos.
std::vector<Document> parse_unified_xml(std::istream& is);

std::size_t count_instances(std::span<const Document> docs);

/// Bidirectional sense_key <-> concept map with tag counts, loaded from a
/// WordNet index.sense file.
class SenseIndex {
public:
  struct Entry {
    std::string sense_key;
    std::string concept;  // offset + '-' + pos letter
    std::string lemma;
    int sense_number = 0;
    std::uint64_t tag_count = 0;
  };

  /// Lines are `<sense_key> <offset> <sense_number> <tag_count>`; the pos
  /// letter comes from the key's synset-type field (1 n, 2 v, 3 a, 4 r,
  /// 5 a). Throws with a line number on malformed lines or duplicate keys.
  static SenseIndex load(std::istream& is);

  std::size_t size() const { return entries_.size(); }
  const Entry* find_key(std::string_view sense_key) const;

  /// Sense keys of `concept` owned by `lemma`, ordered by sense number.
  std::vector<std::string> keys_for(std::string_view concept, std::string_view lemma) const;

  /// Writes a dictionary file covering every lemma#pos of the index, senses
  /// ordered by sense number, duplicate concepts merged by summing counts.
  void write_dictionary(std::ostream& os) const;

private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> by_key_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_concept_;
};

/// Concept-space predictions to sense-key space: each concept expands to all
/// of its sense keys owned by the instance's lemma, best concept first.
/// Predictions whose concepts all fail to resolve are dropped and counted.
std::vector<KeyLine> predictions_to_sense_keys(std::span<const Prediction> predictions, const SenseIndex& idx,
                                               std::size_t* dropped = nullptr);

/// Sense-key lines to concept lines (deduplicated, order-preserving).
/// Unresolvable keys are dropped and counted.
std::vector<KeyLine> keys_to_concepts(std::span<const KeyLine> lines, const SenseIndex& idx,
                                      std::size_t* dropped = nullptr);

}  // namespace wsd
