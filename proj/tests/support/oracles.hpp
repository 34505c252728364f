#pragma once

// Independent reference implementations used to check the engine. These work
// on explicit dense structures and stay deliberately separate from the CSR /
// search code paths in src/.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "wsd/kb_graph.hpp"

namespace wsd::testing {

/// Full transition matrix of a graph, row-normalized on demand.
struct DenseGraph {
  std::size_t n = 0;
  std::vector<std::vector<double>> weight;  // weight[source][target]

  static DenseGraph from_graph(const Graph& g);
};

/// Power iteration on the explicit matrix with the same teleport and
/// dangling rules as the engine: p <- (1-d)*v + d*(P^T p + dangling*v),
/// p0 = v.
std::vector<double> dense_pagerank(const DenseGraph& g, const std::vector<double>& teleport, double damping,
                                   int iterations);

/// Union of the vertices of every simple path with length <= max_len between
/// seeds of different groups, found by exhaustive enumeration. Includes the
/// seeds themselves.
std::set<VertexIndex> path_union_oracle(const DenseGraph& g, const std::vector<std::vector<VertexIndex>>& seed_groups,
                                        int max_len);

/// Random weighted graph over ids v0..v{n-1} with a mix of directed and
/// undirected relations; may contain dangling vertices and self loops.
Graph random_graph(std::mt19937& rng, std::size_t min_vertices = 2, std::size_t max_vertices = 12);

/// Random sparse teleport vector over the graph, normalized to 1.
std::vector<std::pair<VertexIndex, double>> random_personalization(std::mt19937& rng, std::size_t vertex_count);

}  // namespace wsd::testing
