#include "wsd/lexicon.hpp"

#include <charconv>
#include <istream>
#include <stdexcept>
#include <unordered_set>

namespace wsd {

namespace {

std::string line_error(std::size_t line_no, const std::string& msg) {
  return "dictionary line " + std::to_string(line_no) + ": " + msg;
}

}  // namespace

Dictionary Dictionary::load(std::istream& is) {
  Dictionary d;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;

    std::string_view rest{line};
    auto next_field = [&rest]() -> std::string_view {
      std::size_t b = rest.find_first_not_of(" \t");
      if (b == std::string_view::npos) return {};
      rest.remove_prefix(b);
      std::size_t e = rest.find_first_of(" \t");
      std::string_view field = rest.substr(0, e);
      rest = e == std::string_view::npos ? std::string_view{} : rest.substr(e);
      return field;
    };

    std::string_view headword = next_field();
    if (headword.empty()) throw std::runtime_error(line_error(line_no, "missing headword"));
    if (d.index_.contains(std::string(headword)))
      throw std::runtime_error(line_error(line_no, "duplicate headword '" + std::string(headword) + "'"));

    std::vector<SenseEntry> entries;
    std::unordered_set<std::string_view> seen;
    for (std::string_view field = next_field(); !field.empty(); field = next_field()) {
      // The count is everything after the last ':' so concept ids may
      // themselves contain colons (sense keys do).
      std::size_t colon = field.rfind(':');
      if (colon == std::string_view::npos || colon == 0 || colon + 1 == field.size())
        throw std::runtime_error(line_error(line_no, "sense field '" + std::string(field) + "' is not concept:count"));
      std::string_view concept = field.substr(0, colon);
      std::string_view count_text = field.substr(colon + 1);
      if (!count_text.empty() && count_text.front() == '-')
        throw std::runtime_error(line_error(line_no, "negative count in '" + std::string(field) + "'"));
      std::uint64_t count = 0;
      auto [p, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
      if (ec != std::errc{} || p != count_text.data() + count_text.size())
        throw std::runtime_error(line_error(line_no, "bad count in '" + std::string(field) + "'"));
      if (!seen.insert(concept).second)
        throw std::runtime_error(line_error(line_no, "duplicate concept '" + std::string(concept) + "'"));
      entries.push_back(SenseEntry{std::string(concept), count});
    }
    if (entries.empty()) throw std::runtime_error(line_error(line_no, "headword with no senses"));

    d.index_.emplace(std::string(headword), d.headwords_.size());
    d.headwords_.emplace_back(headword);
    d.senses_.push_back(std::move(entries));
  }
  return d;
}

const std::vector<SenseEntry>* Dictionary::find(std::string_view headword) const {
  auto it = index_.find(std::string(headword));
  if (it == index_.end()) return nullptr;
  return &senses_[it->second];
}

std::optional<std::vector<double>> Dictionary::smoothed_distribution(std::string_view headword) const {
  const auto* entries = find(headword);
  if (!entries) return std::nullopt;
  double total = 0.0;
  for (const SenseEntry& e : *entries) total += static_cast<double>(e.tag_count) + 1.0;
  std::vector<double> dist;
  dist.reserve(entries->size());
  for (const SenseEntry& e : *entries) dist.push_back((static_cast<double>(e.tag_count) + 1.0) / total);
  return dist;
}

std::optional<std::string> Dictionary::mfs(std::string_view headword) const {
  const auto* entries = find(headword);
  if (!entries) return std::nullopt;
  std::size_t best = 0;
  for (std::size_t i = 1; i < entries->size(); ++i)
    if ((*entries)[i].tag_count > (*entries)[best].tag_count) best = i;
  return (*entries)[best].concept;
}

}  // namespace wsd
