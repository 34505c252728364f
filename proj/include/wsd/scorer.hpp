#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace wsd {

/// One `<id> <key> [...]` line of a gold or prediction key file.
struct KeyLine {
  std::string instance_id;
  std::vector<std::string> keys;
};

/// Parses a key file; keys are whitespace-separated, `#` comments allowed.
/// Throws on lines without at least one key or duplicate instance ids.
std::vector<KeyLine> load_key_file(std::istream& is);

void write_key_file(const std::vector<KeyLine>& lines, std::ostream& os);

/// Gold standard: instance -> acceptable keys, plus a subset label derived
/// from the instance id prefix (text before the first '.').
class GoldKey {
public:
  static GoldKey from_lines(const std::vector<KeyLine>& lines);

  const std::vector<std::string>* find(std::string_view instance_id) const;
  const std::string& subset(std::string_view instance_id) const;
  std::size_t total() const { return entries_.size(); }
  std::vector<std::string> subsets() const;  // sorted unique labels
  std::size_t subset_total(std::string_view subset) const;

private:
  struct Entry {
    std::vector<std::string> keys;
    std::string subset;
  };
  std::map<std::string, Entry, std::less<>> entries_;
};

struct ScoreCounts {
  std::size_t total = 0;
  std::size_t attempted = 0;
  std::size_t correct = 0;

  double precision() const { return attempted == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(attempted); }
  double recall() const { return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total); }
  double f1() const {
    double p = precision(), r = recall();
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
  }
};

struct ScoreReport {
  ScoreCounts overall;
  std::map<std::string, ScoreCounts> by_subset;
};

/// Scores predictions against the gold standard. An instance counts as
/// correct iff its FIRST predicted key is in the gold set; trailing keys are
/// informational. Throws on predictions for unknown instances or duplicate
/// prediction lines.
ScoreReport score(const std::vector<KeyLine>& predictions, const GoldKey& gold);

/// Table-style report, percentages with one decimal.
void print_report(const ScoreReport& report, std::ostream& os);

/// Full-precision machine-readable report (JSON).
std::string report_to_json(const ScoreReport& report);

}  // namespace wsd
