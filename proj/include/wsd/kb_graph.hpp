#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wsd {

using VertexIndex = std::uint32_t;

struct GraphStats {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;              // directed edges after merging
  std::size_t dangling_count = 0;          // vertices with zero total out-weight
  std::size_t duplicate_merged_count = 0;  // directed duplicates folded by weight summation
  std::size_t self_loop_count = 0;
  std::size_t unknown_key_count = 0;       // unrecognized key:value fields in the input
};

/// Immutable weighted directed graph over string-identified concept vertices.
///
/// Vertices are assigned dense indices in order of first appearance in the
/// input. Duplicate (source, target) pairs are merged by summing weights.
/// Adjacency is stored CSR-style with each vertex's out-edges sorted by
/// target index.
class Graph {
public:
  Graph() = default;

  /// Incremental construction; used by the relation-file loader and by tests.
  class Builder {
  public:
    explicit Builder(bool directed_default = false) : directed_default_(directed_default) {}

    /// Adds one relation. Undirected relations expand to two directed edges
    /// of equal weight (a self-relation expands to a single self-loop).
    void add_relation(std::string_view u, std::string_view v, double weight = 1.0,
                      std::optional<bool> directed = std::nullopt, std::string_view source_tag = {});

    Graph build(GraphStats* stats = nullptr);

  private:
    VertexIndex intern_vertex(std::string_view id);
    std::uint16_t intern_tag(std::string_view tag);
    void add_directed(VertexIndex s, VertexIndex t, double w, std::uint16_t tag);

    bool directed_default_;
    std::vector<std::string> ids_;
    std::unordered_map<std::string, VertexIndex> index_;
    struct EdgeRec {
      VertexIndex source;
      VertexIndex target;
      double weight;
      std::uint16_t tag;
    };
    std::vector<EdgeRec> edges_;
    std::unordered_map<std::uint64_t, std::size_t> edge_slot_;
    std::vector<std::string> tags_{std::string{}};
    std::unordered_map<std::string, std::uint16_t> tag_index_;
    std::size_t duplicate_merged_ = 0;
    std::size_t self_loops_ = 0;
    friend class Graph;
  };

  std::size_t vertex_count() const { return ids_.size(); }
  std::size_t edge_count() const { return targets_.size(); }
  bool empty() const { return ids_.empty(); }

  std::optional<VertexIndex> find_vertex(std::string_view id) const;
  const std::string& vertex_id(VertexIndex v) const { return ids_.at(v); }

  std::span<const VertexIndex> out_targets(VertexIndex v) const;
  std::span<const double> out_weights(VertexIndex v) const;
  double out_weight_total(VertexIndex v) const { return out_total_.at(v); }
  bool is_dangling(VertexIndex v) const { return out_total_.at(v) == 0.0; }
  const std::string& edge_source_tag(VertexIndex v, std::size_t edge_pos) const;

  // Flat CSR views for iteration-heavy callers.
  std::span<const std::size_t> offsets() const { return offsets_; }
  std::span<const VertexIndex> targets_flat() const { return targets_; }
  std::span<const double> weights_flat() const { return weights_; }
  std::span<const double> out_weight_totals() const { return out_total_; }
  std::span<const VertexIndex> dangling_vertices() const { return dangling_; }

  /// Out-edge transition probabilities of `v` (weight / total out-weight),
  /// empty for a dangling vertex. Throws on an out-of-range index.
  std::vector<std::pair<VertexIndex, double>> transition_row(VertexIndex v) const;

  /// Induced subgraph on `vertices` (full-graph indices, any order; duplicates
  /// ignored). Vertex ids carry over; sub-indices follow full-index order.
  Graph induced_subgraph(std::span<const VertexIndex> vertices) const;

  /// Writes the graph as canonical relation lines. Reloading the output with
  /// load_relations reproduces the identical graph, including vertex indexing.
  void write_relations(std::ostream& os) const;

  bool operator==(const Graph& other) const;

private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, VertexIndex> index_;
  std::vector<std::size_t> offsets_;  // vertex_count + 1
  std::vector<VertexIndex> targets_;
  std::vector<double> weights_;
  std::vector<std::uint16_t> edge_tags_;
  std::vector<std::string> tag_table_{std::string{}};
  std::vector<double> out_total_;
  std::vector<VertexIndex> dangling_;  // index order
};

/// Parses a relation file: `#` comments, otherwise whitespace-separated
/// `key:value` fields with required `u:`/`v:`, optional `w:` (default 1.0),
/// `d:` (1 = directed) and `s:` (provenance tag). Unknown keys are counted,
/// not fatal. Throws std::runtime_error with a line number on malformed
/// input, negative weights, or empty input.
std::pair<Graph, GraphStats> load_relations(std::istream& is, bool directed_default = false);

}  // namespace wsd
