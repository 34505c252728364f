#include "wsd/kb_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace wsd {

namespace {

std::string line_error(std::size_t line_no, const std::string& msg) {
  return "relations line " + std::to_string(line_no) + ": " + msg;
}

void write_double(std::ostream& os, double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  os.write(buf, res.ptr - buf);
}

}  // namespace

VertexIndex Graph::Builder::intern_vertex(std::string_view id) {
  auto it = index_.find(std::string(id));
  if (it != index_.end()) return it->second;
  auto idx = static_cast<VertexIndex>(ids_.size());
  ids_.emplace_back(id);
  index_.emplace(ids_.back(), idx);
  return idx;
}

std::uint16_t Graph::Builder::intern_tag(std::string_view tag) {
  if (tag.empty()) return 0;
  auto it = tag_index_.find(std::string(tag));
  if (it != tag_index_.end()) return it->second;
  auto idx = static_cast<std::uint16_t>(tags_.size());
  tags_.emplace_back(tag);
  tag_index_.emplace(tags_.back(), idx);
  return idx;
}

void Graph::Builder::add_directed(VertexIndex s, VertexIndex t, double w, std::uint16_t tag) {
  std::uint64_t key = (static_cast<std::uint64_t>(s) << 32) | t;
  auto [it, fresh] = edge_slot_.try_emplace(key, edges_.size());
  if (fresh) {
    edges_.push_back(EdgeRec{s, t, w, tag});
    if (s == t) ++self_loops_;
  } else {
    edges_[it->second].weight += w;
    ++duplicate_merged_;
  }
}

void Graph::Builder::add_relation(std::string_view u, std::string_view v, double weight,
                                  std::optional<bool> directed, std::string_view source_tag) {
  if (u.empty() || v.empty()) throw std::invalid_argument("empty vertex id");
  if (!(weight >= 0.0) || !std::isfinite(weight)) throw std::invalid_argument("edge weight must be finite and non-negative");
  VertexIndex s = intern_vertex(u);
  VertexIndex t = intern_vertex(v);
  std::uint16_t tag = intern_tag(source_tag);
  bool dir = directed.value_or(directed_default_);
  add_directed(s, t, weight, tag);
  // An undirected self-relation is a single self-loop, not a doubled one.
  if (!dir && s != t) add_directed(t, s, weight, tag);
}

Graph Graph::Builder::build(GraphStats* stats) {
  Graph g;
  g.ids_ = std::move(ids_);
  g.index_ = std::move(index_);
  g.tag_table_ = std::move(tags_);

  std::sort(edges_.begin(), edges_.end(), [](const EdgeRec& a, const EdgeRec& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });

  const std::size_t n = g.ids_.size();
  g.offsets_.assign(n + 1, 0);
  g.targets_.reserve(edges_.size());
  g.weights_.reserve(edges_.size());
  g.edge_tags_.reserve(edges_.size());
  g.out_total_.assign(n, 0.0);
  for (const EdgeRec& e : edges_) {
    ++g.offsets_[e.source + 1];
    g.targets_.push_back(e.target);
    g.weights_.push_back(e.weight);
    g.edge_tags_.push_back(e.tag);
    g.out_total_[e.source] += e.weight;
  }
  for (std::size_t i = 1; i <= n; ++i) g.offsets_[i] += g.offsets_[i - 1];
  for (std::size_t v = 0; v < n; ++v)
    if (g.out_total_[v] == 0.0) g.dangling_.push_back(static_cast<VertexIndex>(v));

  if (stats) {
    stats->vertex_count = n;
    stats->edge_count = g.targets_.size();
    stats->duplicate_merged_count = duplicate_merged_;
    stats->self_loop_count = self_loops_;
    stats->unknown_key_count = 0;
    stats->dangling_count = g.dangling_.size();
  }
  return g;
}

std::optional<VertexIndex> Graph::find_vertex(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const VertexIndex> Graph::out_targets(VertexIndex v) const {
  if (v >= ids_.size()) throw std::out_of_range("vertex index out of range");
  return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::span<const double> Graph::out_weights(VertexIndex v) const {
  if (v >= ids_.size()) throw std::out_of_range("vertex index out of range");
  return {weights_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

const std::string& Graph::edge_source_tag(VertexIndex v, std::size_t edge_pos) const {
  if (v >= ids_.size()) throw std::out_of_range("vertex index out of range");
  return tag_table_.at(edge_tags_.at(offsets_[v] + edge_pos));
}

std::vector<std::pair<VertexIndex, double>> Graph::transition_row(VertexIndex v) const {
  if (v >= ids_.size()) throw std::out_of_range("vertex index out of range");
  std::vector<std::pair<VertexIndex, double>> row;
  double total = out_total_[v];
  if (total == 0.0) return row;
  row.reserve(offsets_[v + 1] - offsets_[v]);
  for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i)
    row.emplace_back(targets_[i], weights_[i] / total);
  return row;
}

Graph Graph::induced_subgraph(std::span<const VertexIndex> vertices) const {
  std::vector<VertexIndex> keep(vertices.begin(), vertices.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

  Graph sub;
  sub.tag_table_ = tag_table_;
  std::unordered_map<VertexIndex, VertexIndex> remap;
  remap.reserve(keep.size());
  for (VertexIndex full : keep) {
    if (full >= ids_.size()) throw std::out_of_range("vertex index out of range");
    auto idx = static_cast<VertexIndex>(sub.ids_.size());
    sub.ids_.push_back(ids_[full]);
    sub.index_.emplace(ids_[full], idx);
    remap.emplace(full, idx);
  }

  const std::size_t n = keep.size();
  sub.offsets_.assign(n + 1, 0);
  sub.out_total_.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    VertexIndex full = keep[k];
    for (std::size_t i = offsets_[full]; i < offsets_[full + 1]; ++i) {
      auto it = remap.find(targets_[i]);
      if (it == remap.end()) continue;
      sub.targets_.push_back(it->second);
      sub.weights_.push_back(weights_[i]);
      sub.edge_tags_.push_back(edge_tags_[i]);
      sub.out_total_[k] += weights_[i];
      ++sub.offsets_[k + 1];
    }
  }
  for (std::size_t i = 1; i <= n; ++i) sub.offsets_[i] += sub.offsets_[i - 1];
  for (std::size_t v = 0; v < n; ++v)
    if (sub.out_total_[v] == 0.0) sub.dangling_.push_back(static_cast<VertexIndex>(v));
  return sub;
}

bool Graph::operator==(const Graph& other) const {
  return ids_ == other.ids_ && offsets_ == other.offsets_ && targets_ == other.targets_ &&
         weights_ == other.weights_ && edge_tags_ == other.edge_tags_ && tag_table_ == other.tag_table_;
}

void Graph::write_relations(std::ostream& os) const {
  const std::size_t n = ids_.size();
  // In-edge lists, needed to find an introducing edge for vertices that never
  // appear as a source before their first use as a target.
  std::vector<std::vector<VertexIndex>> in_sources(n);
  for (VertexIndex s = 0; s < n; ++s)
    for (std::size_t i = offsets_[s]; i < offsets_[s + 1]; ++i) in_sources[targets_[i]].push_back(s);

  auto emit = [&](VertexIndex s, std::size_t edge_pos) {
    os << "u:" << ids_[s] << " v:" << ids_[targets_[edge_pos]] << " w:";
    write_double(os, weights_[edge_pos]);
    os << " d:1";
    if (edge_tags_[edge_pos] != 0) os << " s:" << tag_table_[edge_tags_[edge_pos]];
    os << '\n';
  };

  auto edge_pos_of = [&](VertexIndex s, VertexIndex t) -> std::size_t {
    for (std::size_t i = offsets_[s]; i < offsets_[s + 1]; ++i)
      if (targets_[i] == t) return i;
    return static_cast<std::size_t>(-1);
  };

  // First pass: emit, per vertex in index order, one edge that introduces it,
  // so that reloading assigns identical first-appearance indices. A vertex is
  // introducible through an already-introduced partner, a self-loop, or the
  // out-edge to the partner it was first seen with (which is index + 1).
  std::vector<bool> introduced(n, false);
  std::vector<bool> emitted(targets_.size(), false);
  for (VertexIndex k = 0; k < n; ++k) {
    if (introduced[k]) continue;
    VertexIndex best_partner = 0;
    int best_kind = -1;  // 0 = out-edge, 1 = in-edge
    for (std::size_t i = offsets_[k]; i < offsets_[k + 1]; ++i) {
      VertexIndex t = targets_[i];
      if (!(introduced[t] || t == k || t == k + 1)) continue;
      if (best_kind < 0 || t < best_partner || (t == best_partner && best_kind == 1)) {
        best_partner = t;
        best_kind = 0;
      }
    }
    for (VertexIndex s : in_sources[k]) {
      if (!introduced[s]) continue;
      if (best_kind < 0 || s < best_partner) {
        best_partner = s;
        best_kind = 1;
      }
    }
    if (best_kind < 0) throw std::runtime_error("graph has a vertex not introducible by any edge; cannot serialize canonically");
    std::size_t pos = best_kind == 0 ? edge_pos_of(k, best_partner) : edge_pos_of(best_partner, k);
    emit(best_kind == 0 ? k : best_partner, pos);
    emitted[pos] = true;
    introduced[k] = true;
    introduced[best_partner] = true;
  }

  for (VertexIndex s = 0; s < n; ++s)
    for (std::size_t i = offsets_[s]; i < offsets_[s + 1]; ++i)
      if (!emitted[i]) emit(s, i);
}

std::pair<Graph, GraphStats> load_relations(std::istream& is, bool directed_default) {
  Graph::Builder builder(directed_default);
  GraphStats stats;
  std::size_t unknown_keys = 0;

  std::string line;
  std::size_t line_no = 0;
  std::size_t relations = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;

    std::string_view u, v, tag;
    double weight = 1.0;
    std::optional<bool> directed;
    bool have_u = false, have_v = false;

    std::string_view rest{line};
    while (true) {
      std::size_t b = rest.find_first_not_of(" \t");
      if (b == std::string_view::npos) break;
      rest.remove_prefix(b);
      std::size_t e = rest.find_first_of(" \t");
      std::string_view field = rest.substr(0, e);
      rest = e == std::string_view::npos ? std::string_view{} : rest.substr(e);

      std::size_t colon = field.find(':');
      if (colon == std::string_view::npos)
        throw std::runtime_error(line_error(line_no, "field '" + std::string(field) + "' is not key:value"));
      std::string_view key = field.substr(0, colon);
      std::string_view value = field.substr(colon + 1);
      if (value.empty()) throw std::runtime_error(line_error(line_no, "empty value for key '" + std::string(key) + "'"));

      if (key == "u") {
        if (have_u) throw std::runtime_error(line_error(line_no, "duplicate u: field"));
        u = value;
        have_u = true;
      } else if (key == "v") {
        if (have_v) throw std::runtime_error(line_error(line_no, "duplicate v: field"));
        v = value;
        have_v = true;
      } else if (key == "w") {
        double w = 0.0;
        auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), w);
        if (ec != std::errc{} || p != value.data() + value.size() || !std::isfinite(w))
          throw std::runtime_error(line_error(line_no, "bad weight '" + std::string(value) + "'"));
        if (w < 0.0) throw std::runtime_error(line_error(line_no, "negative weight"));
        weight = w;
      } else if (key == "d") {
        if (value == "1")
          directed = true;
        else if (value == "0")
          directed = false;
        else
          throw std::runtime_error(line_error(line_no, "bad d: value '" + std::string(value) + "' (want 0 or 1)"));
      } else if (key == "s") {
        tag = value;
      } else {
        ++unknown_keys;
      }
    }

    if (!have_u || !have_v) throw std::runtime_error(line_error(line_no, "missing u: or v: field"));
    builder.add_relation(u, v, weight, directed, tag);
    ++relations;
  }

  if (relations == 0) throw std::runtime_error("relation input is empty");
  Graph g = builder.build(&stats);
  stats.unknown_key_count = unknown_keys;
  return {std::move(g), stats};
}

}  // namespace wsd
