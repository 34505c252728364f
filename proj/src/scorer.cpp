#include "wsd/scorer.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace wsd {

std::vector<KeyLine> load_key_file(std::istream& is) {
  std::vector<KeyLine> lines;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;

    std::istringstream fields(line);
    KeyLine kl;
    fields >> kl.instance_id;
    std::string key;
    while (fields >> key) kl.keys.push_back(std::move(key));
    if (kl.keys.empty())
      throw std::runtime_error("key file line " + std::to_string(line_no) + ": no keys for instance '" + kl.instance_id + "'");
    if (!seen.insert(kl.instance_id).second)
      throw std::runtime_error("key file line " + std::to_string(line_no) + ": duplicate instance '" + kl.instance_id + "'");
    lines.push_back(std::move(kl));
  }
  return lines;
}

void write_key_file(const std::vector<KeyLine>& lines, std::ostream& os) {
  for (const KeyLine& kl : lines) {
    os << kl.instance_id;
    for (const std::string& k : kl.keys) os << ' ' << k;
    os << '\n';
  }
}

GoldKey GoldKey::from_lines(const std::vector<KeyLine>& lines) {
  GoldKey gold;
  for (const KeyLine& kl : lines) {
    Entry e;
    e.keys = kl.keys;
    std::size_t dot = kl.instance_id.find('.');
    e.subset = dot == std::string::npos ? kl.instance_id : kl.instance_id.substr(0, dot);
    gold.entries_.emplace(kl.instance_id, std::move(e));
  }
  return gold;
}

const std::vector<std::string>* GoldKey::find(std::string_view instance_id) const {
  auto it = entries_.find(instance_id);
  return it == entries_.end() ? nullptr : &it->second.keys;
}

const std::string& GoldKey::subset(std::string_view instance_id) const {
  auto it = entries_.find(instance_id);
  if (it == entries_.end()) throw std::out_of_range("unknown instance id");
  return it->second.subset;
}

std::vector<std::string> GoldKey::subsets() const {
  std::vector<std::string> out;
  for (const auto& [id, e] : entries_)
    if (std::find(out.begin(), out.end(), e.subset) == out.end()) out.push_back(e.subset);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t GoldKey::subset_total(std::string_view subset) const {
  std::size_t n = 0;
  for (const auto& [id, e] : entries_)
    if (e.subset == subset) ++n;
  return n;
}

ScoreReport score(const std::vector<KeyLine>& predictions, const GoldKey& gold) {
  ScoreReport report;
  for (const std::string& s : gold.subsets()) report.by_subset[s].total = gold.subset_total(s);
  report.overall.total = gold.total();

  std::unordered_set<std::string> seen;
  for (const KeyLine& pred : predictions) {
    if (!seen.insert(pred.instance_id).second)
      throw std::runtime_error("duplicate prediction for instance '" + pred.instance_id + "'");
    const auto* gold_keys = gold.find(pred.instance_id);
    if (!gold_keys) throw std::runtime_error("prediction for unknown instance '" + pred.instance_id + "'");

    ScoreCounts& subset = report.by_subset[gold.subset(pred.instance_id)];
    ++subset.attempted;
    ++report.overall.attempted;
    bool correct = std::find(gold_keys->begin(), gold_keys->end(), pred.keys.front()) != gold_keys->end();
    if (correct) {
      ++subset.correct;
      ++report.overall.correct;
    }
  }
  return report;
}

void print_report(const ScoreReport& report, std::ostream& os) {
  auto row = [&os](const std::string& name, const ScoreCounts& c) {
    os << std::left << std::setw(12) << name << std::right << std::fixed << std::setprecision(1)
       << "  P=" << std::setw(5) << 100.0 * c.precision() << "  R=" << std::setw(5) << 100.0 * c.recall()
       << "  F1=" << std::setw(5) << 100.0 * c.f1() << "  (" << c.correct << '/' << c.attempted << '/' << c.total
       << " correct/attempted/total)\n";
  };
  row("All", report.overall);
  for (const auto& [name, counts] : report.by_subset) row(name, counts);
}

std::string report_to_json(const ScoreReport& report) {
  nlohmann::json j;
  auto counts_json = [](const ScoreCounts& c) {
    return nlohmann::json{{"total", c.total},         {"attempted", c.attempted}, {"correct", c.correct},
                          {"precision", c.precision()}, {"recall", c.recall()},     {"f1", c.f1()}};
  };
  j["overall"] = counts_json(report.overall);
  for (const auto& [name, counts] : report.by_subset) j["subsets"][name] = counts_json(counts);
  return j.dump(2);
}

}  // namespace wsd
