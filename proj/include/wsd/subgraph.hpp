#pragma once

#include <string>
#include <vector>

#include "wsd/kb_graph.hpp"

namespace wsd {

/// Seed vertices for per-context subgraph extraction, grouped by the context
/// word that contributed them (paths only count between seeds of different
/// words).
struct SubgraphSpec {
  std::vector<std::vector<std::string>> seed_groups;  // candidate sense ids per word
  int max_path_length = 6;
};

struct SubgraphResult {
  Graph graph;
  std::size_t missing_seed_count = 0;  // seeds absent from the full graph, skipped
};

/// Extracts the subgraph spanned by all seeds plus every vertex lying on a
/// simple path of length <= max_path_length between two seeds of different
/// words, with the induced edges of the full graph. Seeds missing from the
/// graph are skipped; throws std::runtime_error when none resolve.
SubgraphResult extract_subgraph(const Graph& g, const SubgraphSpec& spec);

}  // namespace wsd
