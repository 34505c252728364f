#include "wsd/pagerank.hpp"

#include <cmath>
#include <stdexcept>

namespace wsd {

Personalization Personalization::uniform(std::size_t vertex_count) {
  Personalization v;
  v.entries.reserve(vertex_count);
  const double mass = 1.0 / static_cast<double>(vertex_count);
  for (std::size_t i = 0; i < vertex_count; ++i) v.entries.emplace_back(static_cast<VertexIndex>(i), mass);
  return v;
}

double Personalization::total_mass() const {
  double total = 0.0;
  for (const auto& [idx, mass] : entries) total += mass;
  return total;
}

RankVector personalized_pagerank(const Graph& g, const Personalization& v, const PowerParams& params) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw std::invalid_argument("pagerank: empty graph");
  if (params.damping < 0.0 || params.damping > 1.0) throw std::invalid_argument("pagerank: damping outside [0,1]");
  if (params.max_iterations <= 0) throw std::invalid_argument("pagerank: max_iterations must be positive");

  std::vector<double> teleport(n, 0.0);
  for (const auto& [idx, mass] : v.entries) {
    if (idx >= n) throw std::invalid_argument("pagerank: personalization references unknown vertex");
    if (!(mass >= 0.0) || !std::isfinite(mass)) throw std::invalid_argument("pagerank: personalization mass must be finite and non-negative");
    teleport[idx] += mass;
  }
  double total = 0.0;
  for (double m : teleport) total += m;
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("pagerank: personalization mass does not sum to 1");

  const double d = params.damping;
  const auto offsets = g.offsets();
  const auto targets = g.targets_flat();
  const auto weights = g.weights_flat();
  const auto out_totals = g.out_weight_totals();
  const auto dangling_vertices = g.dangling_vertices();

  std::vector<double> p = params.start_from_teleport ? teleport : std::vector<double>(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);
  int iterations = 0;

  for (int it = 0; it < params.max_iterations; ++it) {
    double dangling = 0.0;
    for (VertexIndex u : dangling_vertices) dangling += p[u];

    if (params.dangling_to_teleport) {
      const double teleport_scale = (1.0 - d) + d * dangling;
      for (std::size_t i = 0; i < n; ++i) next[i] = teleport_scale * teleport[i];
    } else {
      const double uniform_share = d * dangling / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) next[i] = (1.0 - d) * teleport[i] + uniform_share;
    }

    for (std::size_t u = 0; u < n; ++u) {
      const double total_out = out_totals[u];
      if (total_out == 0.0) continue;
      const double factor = d * p[u] / total_out;
      for (std::size_t e = offsets[u]; e < offsets[u + 1]; ++e) next[targets[e]] += factor * weights[e];
    }

    ++iterations;
    if (params.early_exit_l1) {
      double l1 = 0.0;
      for (std::size_t i = 0; i < n; ++i) l1 += std::abs(next[i] - p[i]);
      p.swap(next);
      if (l1 <= *params.early_exit_l1) break;
    } else {
      p.swap(next);
    }
  }

  return RankVector{std::move(p), iterations};
}

RankVector standard_pagerank(const Graph& g, const PowerParams& params) {
  if (g.empty()) throw std::invalid_argument("pagerank: empty graph");
  return personalized_pagerank(g, Personalization::uniform(g.vertex_count()), params);
}

}  // namespace wsd
