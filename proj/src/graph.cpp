#include "netstab/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "netstab/errors.hpp"

namespace netstab {

void Graph::check_node(NodeId v) const {
  if (v >= labels_.size()) {
    throw std::out_of_range("node id " + std::to_string(v) +
                            " out of range (n = " +
                            std::to_string(labels_.size()) + ")");
  }
}

Graph Graph::from_edges(std::vector<std::string> labels,
                        std::span<const std::pair<NodeId, NodeId>> edges) {
  Graph g;
  g.labels_ = std::move(labels);
  g.adj_.resize(g.labels_.size());
  g.id_by_label_.reserve(g.labels_.size());
  for (NodeId v = 0; v < g.labels_.size(); ++v) {
    g.id_by_label_.emplace(g.labels_[v], v);
  }
  // Canonicalize to u < v so duplicates in either orientation collapse.
  std::vector<std::pair<NodeId, NodeId>> canon;
  canon.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    g.check_node(u);
    g.check_node(v);
    if (u == v) continue;
    canon.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  g.edge_count_ = canon.size();
  for (const auto& [u, v] : canon) {
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& list : g.adj_) std::sort(list.begin(), list.end());
  return g;
}

std::size_t Graph::degree(NodeId v) const {
  check_node(v);
  return adj_[v].size();
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
  check_node(v);
  return adj_[v];
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  const auto& list = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  const NodeId other = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(list.begin(), list.end(), other);
}

const std::string& Graph::label(NodeId v) const {
  check_node(v);
  return labels_[v];
}

std::optional<NodeId> Graph::node_by_label(const std::string& name) const {
  auto it = id_by_label_.find(name);
  if (it == id_by_label_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> Graph::degree_sequence() const {
  std::vector<std::size_t> degs(adj_.size());
  for (std::size_t v = 0; v < adj_.size(); ++v) degs[v] = adj_[v].size();
  return degs;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adj_.size(); ++u) {
    for (NodeId v : adj_[u]) {
      if (v > u) out.emplace_back(u, v);
    }
  }
  return out;
}

std::size_t Graph::common_neighbors(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  if (u == v) {
    throw std::invalid_argument("common_neighbors requires distinct nodes");
  }
  // Linear merge over the sorted lists. Neither u nor v can appear in the
  // intersection: the graph has no self loops.
  std::size_t count = 0;
  auto it = adj_[u].begin();
  auto jt = adj_[v].begin();
  while (it != adj_[u].end() && jt != adj_[v].end()) {
    if (*it < *jt) {
      ++it;
    } else if (*jt < *it) {
      ++jt;
    } else {
      ++count;
      ++it;
      ++jt;
    }
  }
  return count;
}

std::optional<double> Graph::assortativity() const {
  if (edge_count_ == 0) return std::nullopt;
  std::int64_t sum_prod = 0;
  std::int64_t sum_deg = 0;
  std::int64_t sum_sq = 0;
  std::size_t min_deg = SIZE_MAX;
  std::size_t max_deg = 0;
  for (NodeId u = 0; u < adj_.size(); ++u) {
    const auto d = static_cast<std::int64_t>(adj_[u].size());
    if (d == 0) continue;
    min_deg = std::min<std::size_t>(min_deg, adj_[u].size());
    max_deg = std::max<std::size_t>(max_deg, adj_[u].size());
    sum_deg += d * d;
    sum_sq += d * d * d;
    for (NodeId v : adj_[u]) {
      if (v > u) sum_prod += d * static_cast<std::int64_t>(adj_[v].size());
    }
  }
  return detail::assortativity_from_sums(edge_count_, sum_prod, sum_deg,
                                         sum_sq, min_deg == max_deg);
}

namespace detail {

std::optional<double> assortativity_from_sums(std::uint64_t edge_count,
                                              std::int64_t sum_prod,
                                              std::int64_t sum_deg,
                                              std::int64_t sum_sq,
                                              bool degenerate) {
  if (edge_count == 0 || degenerate) return std::nullopt;
  // r = [S_jk/m - (S_1/2m)^2 * ... ] in the half-sum form:
  //   num = sum_prod/m - (sum_deg/2m)^2
  //   den = sum_sq/2m  - (sum_deg/2m)^2
  // degenerate already covers den == 0 exactly, so the division is safe.
  const double m = static_cast<double>(edge_count);
  const double mean_end = static_cast<double>(sum_deg) / (2.0 * m);
  const double num = static_cast<double>(sum_prod) / m - mean_end * mean_end;
  const double den =
      static_cast<double>(sum_sq) / (2.0 * m) - mean_end * mean_end;
  return num / den;
}

}  // namespace detail

namespace {

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

LoadResult load_edge_list(std::istream& in) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> ids;
  auto intern = [&](const std::string& name) -> NodeId {
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    const auto id = static_cast<NodeId>(labels.size());
    labels.push_back(name);
    ids.emplace(name, id);
    return id;
  };

  std::vector<std::pair<NodeId, NodeId>> raw;
  LoadStats stats;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank_or_comment(line)) continue;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a >> b)) {
      throw ParseError("expected two node tokens", line_no);
    }
    if (ls >> extra) {
      throw ParseError("expected two node tokens, found more", line_no);
    }
    // Sequence the interning: argument evaluation order is unspecified and
    // ids must follow first appearance.
    const NodeId ua = intern(a);
    const NodeId ub = intern(b);
    raw.emplace_back(ua, ub);
  }
  if (raw.empty()) {
    throw ParseError("edge list contains no edges", 0);
  }

  // Count drops before handing off to from_edges (which drops silently).
  std::vector<std::pair<NodeId, NodeId>> kept;
  kept.reserve(raw.size());
  std::vector<std::pair<NodeId, NodeId>> seen_sorted;
  seen_sorted.reserve(raw.size());
  for (const auto& [u, v] : raw) {
    if (u == v) {
      ++stats.self_loops_dropped;
      continue;
    }
    seen_sorted.emplace_back(std::min(u, v), std::max(u, v));
    kept.emplace_back(u, v);
  }
  std::sort(seen_sorted.begin(), seen_sorted.end());
  const auto unique_end = std::unique(seen_sorted.begin(), seen_sorted.end());
  stats.duplicate_edges_dropped =
      static_cast<std::size_t>(seen_sorted.end() - unique_end);

  LoadResult result;
  result.graph = Graph::from_edges(std::move(labels), kept);
  result.stats = stats;
  return result;
}

LoadResult load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path + " for reading");
  return load_edge_list(in);
}

void save_edge_list(const Graph& g, std::ostream& out) {
  for (const auto& [u, v] : g.edges()) {
    out << g.label(u) << ' ' << g.label(v) << '\n';
  }
}

void save_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  save_edge_list(g, out);
  out.flush();
  if (!out) throw IoError("write to " + path + " failed");
}

}  // namespace netstab
