#include "support/oracles.hpp"

#include <algorithm>
#include <string>

namespace wsd::testing {

DenseGraph DenseGraph::from_graph(const Graph& g) {
  DenseGraph d;
  d.n = g.vertex_count();
  d.weight.assign(d.n, std::vector<double>(d.n, 0.0));
  for (VertexIndex u = 0; u < d.n; ++u) {
    auto targets = g.out_targets(u);
    auto weights = g.out_weights(u);
    for (std::size_t i = 0; i < targets.size(); ++i) d.weight[u][targets[i]] += weights[i];
  }
  return d;
}

std::vector<double> dense_pagerank(const DenseGraph& g, const std::vector<double>& teleport, double damping,
                                   int iterations) {
  const std::size_t n = g.n;
  std::vector<double> row_sum(n, 0.0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t t = 0; t < n; ++t) row_sum[u] += g.weight[u][t];

  std::vector<std::vector<double>> transition(n, std::vector<double>(n, 0.0));
  for (std::size_t u = 0; u < n; ++u)
    if (row_sum[u] > 0.0)
      for (std::size_t t = 0; t < n; ++t) transition[u][t] = g.weight[u][t] / row_sum[u];

  std::vector<double> p = teleport;
  for (int it = 0; it < iterations; ++it) {
    double dangling = 0.0;
    for (std::size_t u = 0; u < n; ++u)
      if (row_sum[u] == 0.0) dangling += p[u];

    std::vector<double> next(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      double inflow = 0.0;
      for (std::size_t u = 0; u < n; ++u) inflow += transition[u][t] * p[u];
      next[t] = (1.0 - damping) * teleport[t] + damping * (inflow + dangling * teleport[t]);
    }
    p = std::move(next);
  }
  return p;
}

namespace {

struct PathEnumerator {
  const DenseGraph& g;
  int max_len;
  VertexIndex goal;
  std::vector<bool> visited;
  std::vector<VertexIndex> path;
  std::set<VertexIndex>& out;

  void search(VertexIndex v, int depth) {
    if (v == goal && depth > 0) {
      for (VertexIndex p : path) out.insert(p);
      return;
    }
    if (depth == max_len) return;
    for (VertexIndex t = 0; t < g.n; ++t) {
      if (g.weight[v][t] == 0.0 || visited[t]) continue;
      visited[t] = true;
      path.push_back(t);
      search(t, depth + 1);
      path.pop_back();
      visited[t] = false;
    }
  }
};

}  // namespace

std::set<VertexIndex> path_union_oracle(const DenseGraph& g, const std::vector<std::vector<VertexIndex>>& seed_groups,
                                        int max_len) {
  std::set<VertexIndex> out;
  for (const auto& group : seed_groups)
    for (VertexIndex s : group) out.insert(s);

  for (std::size_t ga = 0; ga < seed_groups.size(); ++ga) {
    for (std::size_t gb = 0; gb < seed_groups.size(); ++gb) {
      if (ga == gb) continue;
      for (VertexIndex a : seed_groups[ga]) {
        for (VertexIndex b : seed_groups[gb]) {
          if (a == b) continue;
          PathEnumerator e{g, max_len, b, std::vector<bool>(g.n, false), {}, out};
          e.visited[a] = true;
          e.path.push_back(a);
          e.search(a, 0);
        }
      }
    }
  }
  return out;
}

Graph random_graph(std::mt19937& rng, std::size_t min_vertices, std::size_t max_vertices) {
  std::uniform_int_distribution<std::size_t> size_dist(min_vertices, max_vertices);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight_dist(0.1, 3.0);

  const std::size_t n = size_dist(rng);
  Graph::Builder builder;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("v" + std::to_string(i));

  const double p_edge = unit(rng) * 0.4 + 0.1;
  std::size_t added = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (unit(rng) > p_edge) continue;
      bool directed = unit(rng) < 0.5;
      builder.add_relation(ids[u], ids[v], weight_dist(rng), directed);
      ++added;
    }
  }
  if (added == 0) builder.add_relation(ids[0], ids[n - 1], 1.0, true);
  return builder.build();
}

std::vector<std::pair<VertexIndex, double>> random_personalization(std::mt19937& rng, std::size_t vertex_count) {
  std::uniform_int_distribution<std::size_t> count_dist(1, vertex_count);
  std::uniform_real_distribution<double> mass_dist(0.05, 1.0);

  std::vector<VertexIndex> all(vertex_count);
  for (std::size_t i = 0; i < vertex_count; ++i) all[i] = static_cast<VertexIndex>(i);
  std::shuffle(all.begin(), all.end(), rng);

  std::size_t k = count_dist(rng);
  std::vector<std::pair<VertexIndex, double>> entries;
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double m = mass_dist(rng);
    entries.emplace_back(all[i], m);
    total += m;
  }
  for (auto& [v, m] : entries) m /= total;
  std::sort(entries.begin(), entries.end());
  return entries;
}

}  // namespace wsd::testing
