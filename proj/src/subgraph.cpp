#include "wsd/subgraph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace wsd {

namespace {

struct SeedInfo {
  std::vector<VertexIndex> order;                           // deterministic DFS start order
  std::unordered_map<VertexIndex, std::vector<std::uint32_t>> words;  // vertex -> sorted word ids
};

// A pair of seeds qualifies unless both belong to exactly the same single word.
bool qualifies(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  return !(a.size() == 1 && b.size() == 1 && a[0] == b[0]);
}

// Distance from every vertex to its nearest seed along forward edges,
// capped at max_depth; used as an admissible bound to prune DFS branches.
std::vector<int> seed_distances(const Graph& g, const std::vector<VertexIndex>& seeds, int max_depth) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<VertexIndex>> reverse_adj(n);
  for (VertexIndex u = 0; u < n; ++u)
    for (VertexIndex t : g.out_targets(u)) reverse_adj[t].push_back(u);

  std::vector<int> dist(n, -1);
  std::deque<VertexIndex> frontier;
  for (VertexIndex s : seeds) {
    if (dist[s] == -1) {
      dist[s] = 0;
      frontier.push_back(s);
    }
  }
  while (!frontier.empty()) {
    VertexIndex v = frontier.front();
    frontier.pop_front();
    if (dist[v] >= max_depth) continue;
    for (VertexIndex u : reverse_adj[v]) {
      if (dist[u] == -1) {
        dist[u] = dist[v] + 1;
        frontier.push_back(u);
      }
    }
  }
  return dist;
}

class PathSearch {
public:
  PathSearch(const Graph& g, const SeedInfo& seeds, const std::vector<int>& seed_dist, int max_len)
      : g_(g), seeds_(seeds), seed_dist_(seed_dist), max_len_(max_len),
        on_path_(g.vertex_count(), false), included_(g.vertex_count(), false) {}

  void run(VertexIndex start) {
    start_ = start;
    start_words_ = &seeds_.words.at(start);
    path_.clear();
    path_.push_back(start);
    on_path_[start] = true;
    descend(start, 0);
    on_path_[start] = false;
  }

  const std::vector<bool>& included() const { return included_; }

private:
  void descend(VertexIndex v, int depth) {
    if (depth == max_len_) return;
    for (VertexIndex t : g_.out_targets(v)) {
      if (on_path_[t]) continue;
      // No seed is reachable from t within the remaining budget.
      int remaining = max_len_ - depth - 1;
      if (seed_dist_[t] < 0 || seed_dist_[t] > remaining) continue;

      path_.push_back(t);
      on_path_[t] = true;
      auto words_it = seeds_.words.find(t);
      if (words_it != seeds_.words.end() && qualifies(*start_words_, words_it->second))
        for (VertexIndex p : path_) included_[p] = true;
      descend(t, depth + 1);
      on_path_[t] = false;
      path_.pop_back();
    }
  }

  const Graph& g_;
  const SeedInfo& seeds_;
  const std::vector<int>& seed_dist_;
  int max_len_;
  VertexIndex start_ = 0;
  const std::vector<std::uint32_t>* start_words_ = nullptr;
  std::vector<VertexIndex> path_;
  std::vector<bool> on_path_;
  std::vector<bool> included_;
};

}  // namespace

SubgraphResult extract_subgraph(const Graph& g, const SubgraphSpec& spec) {
  if (spec.max_path_length <= 0) throw std::invalid_argument("max_path_length must be positive");
  if (spec.seed_groups.empty()) throw std::invalid_argument("no seed groups");

  SeedInfo seeds;
  std::size_t missing = 0;
  for (std::size_t w = 0; w < spec.seed_groups.size(); ++w) {
    for (const std::string& id : spec.seed_groups[w]) {
      auto v = g.find_vertex(id);
      if (!v) {
        ++missing;
        continue;
      }
      auto& words = seeds.words[*v];
      if (words.empty()) seeds.order.push_back(*v);
      auto word_id = static_cast<std::uint32_t>(w);
      if (std::find(words.begin(), words.end(), word_id) == words.end()) words.push_back(word_id);
    }
  }
  if (seeds.order.empty()) throw std::runtime_error("subgraph extraction: no seed resolves to a graph vertex");
  for (auto& [v, words] : seeds.words) std::sort(words.begin(), words.end());

  std::vector<VertexIndex> vertices;
  for (VertexIndex s : seeds.order) vertices.push_back(s);

  bool multiple_words = false;
  for (const auto& [v, words] : seeds.words) {
    if (words != seeds.words.at(seeds.order.front())) {
      multiple_words = true;
      break;
    }
  }
  if (multiple_words || seeds.words.at(seeds.order.front()).size() > 1) {
    auto seed_dist = seed_distances(g, seeds.order, spec.max_path_length);
    PathSearch search(g, seeds, seed_dist, spec.max_path_length);
    for (VertexIndex s : seeds.order) search.run(s);
    const auto& included = search.included();
    for (VertexIndex v = 0; v < included.size(); ++v)
      if (included[v]) vertices.push_back(v);
  }

  return SubgraphResult{g.induced_subgraph(vertices), missing};
}

}  // namespace wsd
