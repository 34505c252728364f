#pragma once

// End-to-end reference for the documented 8-vertex fixture. The fixture
// content is embedded here and every number is recomputed through the dense
// oracle chain, independent of the engine's graph, window and scoring code.

#include <string>
#include <vector>

namespace wsd::testing {

struct FixtureCell {
  std::string algorithm;  // ppr | ppr_w2w | dfs
  bool use_frequencies;
  bool extended_context;  // false = single sentence
};

/// The 12 ablation cells in canonical order.
std::vector<FixtureCell> fixture_cells();

std::string fixture_cell_name(const FixtureCell& cell);

struct FixtureExpectation {
  std::string instance_id;
  std::vector<std::string> ranked_concepts;  // best first
};

/// Expected predictions for one cell (lambda 0.5, damping 0.85, 30
/// iterations, path bound 6), sorted by instance id.
std::vector<FixtureExpectation> fixture_oracle(const FixtureCell& cell);

}  // namespace wsd::testing
