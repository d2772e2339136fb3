#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace netstab {

using NodeId = std::uint32_t;

// Simple undirected graph: no self loops, no parallel edges. Nodes are dense
// ids [0, n); each id carries the label it had in the source edge list.
// Adjacency lists are kept sorted so neighbor queries and set intersections
// are deterministic and O(log k) / O(k).
class Graph {
 public:
  Graph() = default;

  // Builds a graph over labels[0..n). Edges referencing ids >= n throw
  // std::out_of_range. Self loops and duplicate edges (either orientation)
  // are dropped silently; callers that need counts use load_edge_list.
  static Graph from_edges(std::vector<std::string> labels,
                          std::span<const std::pair<NodeId, NodeId>> edges);

  std::size_t node_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::size_t degree(NodeId v) const;
  std::span<const NodeId> neighbors(NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const;

  const std::string& label(NodeId v) const;
  // Dense id for a label, or nullopt if the label never appeared.
  std::optional<NodeId> node_by_label(const std::string& name) const;
  const std::vector<std::string>& labels() const { return labels_; }

  std::vector<std::size_t> degree_sequence() const;
  // Every edge once, canonical orientation u < v, sorted ascending.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  // |N(u) n N(v)| for u != v (throws std::invalid_argument on u == v).
  std::size_t common_neighbors(NodeId u, NodeId v) const;

  // Pearson degree correlation over edges. Empty when the value is
  // undefined: no edges, or every edge endpoint has the same degree.
  std::optional<double> assortativity() const;

 private:
  void check_node(NodeId v) const;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> id_by_label_;
  std::vector<std::vector<NodeId>> adj_;
  std::size_t edge_count_ = 0;
};

struct LoadStats {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_edges_dropped = 0;
};

struct LoadResult {
  Graph graph;
  LoadStats stats;
};

// Whitespace-separated edge list. Lines that are blank or start with '#'
// are ignored; every other line must hold exactly two tokens. Node labels
// get dense ids in order of first appearance. A file with no edges is a
// ParseError (line 0). Malformed lines are ParseError with their 1-based
// line number.
LoadResult load_edge_list(std::istream& in);
LoadResult load_edge_list_file(const std::string& path);

// One "u v" line per edge, canonical orientation, sorted. Loading the
// output reproduces the same graph with the same dense ids iff labels
// first appear in sorted-edge order; labels round-trip regardless.
void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list_file(const Graph& g, const std::string& path);

namespace detail {

// Assortativity from the symmetric half-sums over directed edge copies:
//   sum_prod = sum over undirected edges of d(u)*d(v)
//   sum_deg  = sum over nodes of d^2   (equals sum over edge ends of d)
//   sum_sq   = sum over nodes of d^3   (equals sum over edge ends of d^2)
// degenerate means all endpoint degrees equal, where r is undefined.
std::optional<double> assortativity_from_sums(std::uint64_t edge_count,
                                              std::int64_t sum_prod,
                                              std::int64_t sum_deg,
                                              std::int64_t sum_sq,
                                              bool degenerate);

}  // namespace detail

}  // namespace netstab
