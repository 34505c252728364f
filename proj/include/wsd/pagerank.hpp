#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wsd/kb_graph.hpp"

namespace wsd {

/// Sparse teleport distribution. Entries must reference valid vertices,
/// carry non-negative mass and sum to 1 within 1e-12.
struct Personalization {
  std::vector<std::pair<VertexIndex, double>> entries;

  static Personalization uniform(std::size_t vertex_count);
  double total_mass() const;
};

struct PowerParams {
  double damping = 0.85;
  int max_iterations = 30;
  std::optional<double> early_exit_l1;  // disabled by default: fixed iteration count
  // Sensitivity knobs, defaults are the reference behavior.
  bool dangling_to_teleport = true;  // false: spread dangling mass uniformly
  bool start_from_teleport = true;   // false: start from the uniform vector
};

struct RankVector {
  std::vector<double> probabilities;
  int iterations_run = 0;
};

/// Power iteration p <- (1-d)*v + d*(P^T p + dangling_mass*v) starting from
/// p0 = v. Dangling mass is redistributed proportionally to the teleport
/// vector. Runs exactly max_iterations unless early_exit_l1 triggers.
/// Arithmetic is double precision with accumulation order fixed by vertex
/// index, so results are bit-reproducible.
RankVector personalized_pagerank(const Graph& g, const Personalization& v, const PowerParams& params = {});

/// personalized_pagerank with a uniform teleport vector.
RankVector standard_pagerank(const Graph& g, const PowerParams& params = {});

}  // namespace wsd
