#include "netstab/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "netstab/parallel.hpp"

namespace netstab {

std::string measure_name(Measure m) {
  switch (m) {
    case Measure::kHIndex: return "h";
    case Measure::kLeverage: return "lc";
    case Measure::kLocalEntropy: return "lse";
    case Measure::kClustering: return "lcc";
    case Measure::kTopological: return "tc";
    case Measure::kLocalAvgConnectivity: return "lac";
  }
  throw std::invalid_argument("unknown measure enum value");
}

std::string measure_display_name(Measure m) {
  switch (m) {
    case Measure::kHIndex: return "h-index";
    case Measure::kLeverage: return "leverage";
    case Measure::kLocalEntropy: return "local structural entropy";
    case Measure::kClustering: return "local clustering";
    case Measure::kTopological: return "topological coefficient";
    case Measure::kLocalAvgConnectivity: return "local average connectivity";
  }
  throw std::invalid_argument("unknown measure enum value");
}

Measure measure_from_name(const std::string& name) {
  for (Measure m : kAllMeasures) {
    if (measure_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown measure name: " + name);
}

namespace {

// Shared driver: run kernel(v) for every node, writing out[v], with nodes
// block-partitioned across jobs. Kernel must be a pure function of the
// graph and v so parallel output is byte-identical to sequential.
template <typename Kernel>
std::vector<double> per_node(const Graph& g, unsigned jobs, Kernel kernel) {
  std::vector<double> out(g.node_count(), 0.0);
  parallel_blocks(g.node_count(), jobs, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t v = lo; v < hi; ++v) {
      out[v] = kernel(static_cast<NodeId>(v));
    }
  });
  return out;
}

double h_index_node(const Graph& g, NodeId v,
                    std::vector<std::size_t>& degs) {
  auto nb = g.neighbors(v);
  if (nb.empty()) return 0.0;
  degs.clear();
  for (NodeId u : nb) degs.push_back(g.degree(u));
  std::sort(degs.begin(), degs.end(), std::greater<>());
  std::size_t h = 0;
  while (h < degs.size() && degs[h] >= h + 1) ++h;
  return static_cast<double>(h);
}

double leverage_node(const Graph& g, NodeId v) {
  auto nb = g.neighbors(v);
  if (nb.empty()) return 0.0;
  const auto dv = static_cast<double>(nb.size());
  double sum = 0.0;
  for (NodeId u : nb) {
    const auto du = static_cast<double>(g.degree(u));
    sum += (dv - du) / (dv + du);
  }
  return sum / dv;
}

double local_entropy_node(const Graph& g, NodeId v) {
  auto nb = g.neighbors(v);
  if (nb.empty()) return 0.0;
  // Closed neighborhood members weighted by their whole-graph degree;
  // every member has degree >= 1 (it touches v or is v), so p > 0.
  double total = static_cast<double>(nb.size());
  for (NodeId u : nb) total += static_cast<double>(g.degree(u));
  double h = 0.0;
  const double pv = static_cast<double>(nb.size()) / total;
  h -= pv * std::log(pv);
  for (NodeId u : nb) {
    const double p = static_cast<double>(g.degree(u)) / total;
    h -= p * std::log(p);
  }
  return h;
}

double clustering_node(const Graph& g, NodeId v) {
  auto nb = g.neighbors(v);
  const std::size_t k = nb.size();
  if (k < 2) return 0.0;
  // Integer link count; the single final division keeps ties exact.
  std::uint64_t links = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (g.has_edge(nb[i], nb[j])) ++links;
    }
  }
  return 2.0 * static_cast<double>(links) /
         (static_cast<double>(k) * static_cast<double>(k - 1));
}

struct TopologicalScratch {
  std::vector<std::uint32_t> shared;
  std::vector<NodeId> touched;
};

double topological_node(const Graph& g, NodeId v, TopologicalScratch& s) {
  auto nb = g.neighbors(v);
  if (nb.empty()) return 0.0;
  // Two-hop walk v -> w -> u visits u once per shared neighbor w, so
  // s.shared[u] ends up as |N(u) n N(v)|.
  s.touched.clear();
  for (NodeId w : nb) {
    for (NodeId u : g.neighbors(w)) {
      if (u == v) continue;
      if (s.shared[u] == 0) s.touched.push_back(u);
      ++s.shared[u];
    }
  }
  double score = 0.0;
  if (!s.touched.empty()) {
    std::uint64_t total = 0;
    for (NodeId u : s.touched) {
      total += s.shared[u];
      if (g.has_edge(u, v)) total += 1;
    }
    score = static_cast<double>(total) /
            (static_cast<double>(s.touched.size()) *
             static_cast<double>(nb.size()));
  }
  for (NodeId u : s.touched) s.shared[u] = 0;
  return score;
}

double lac_node(const Graph& g, NodeId v) {
  auto nb = g.neighbors(v);
  if (nb.empty()) return 0.0;
  std::uint64_t total = 0;
  for (NodeId u : nb) total += g.common_neighbors(u, v);
  return static_cast<double>(total) / static_cast<double>(nb.size());
}

}  // namespace

std::vector<double> h_index(const Graph& g, unsigned jobs) {
  std::vector<double> out(g.node_count(), 0.0);
  parallel_blocks(g.node_count(), jobs, [&](std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> degs;
    for (std::size_t v = lo; v < hi; ++v) {
      out[v] = h_index_node(g, static_cast<NodeId>(v), degs);
    }
  });
  return out;
}

std::vector<double> leverage(const Graph& g, unsigned jobs) {
  return per_node(g, jobs, [&](NodeId v) { return leverage_node(g, v); });
}

std::vector<double> local_entropy(const Graph& g, unsigned jobs) {
  return per_node(g, jobs, [&](NodeId v) { return local_entropy_node(g, v); });
}

std::vector<double> clustering(const Graph& g, unsigned jobs) {
  return per_node(g, jobs, [&](NodeId v) { return clustering_node(g, v); });
}

std::vector<double> topological(const Graph& g, unsigned jobs) {
  std::vector<double> out(g.node_count(), 0.0);
  parallel_blocks(g.node_count(), jobs, [&](std::size_t lo, std::size_t hi) {
    TopologicalScratch scratch;
    scratch.shared.assign(g.node_count(), 0);
    for (std::size_t v = lo; v < hi; ++v) {
      out[v] = topological_node(g, static_cast<NodeId>(v), scratch);
    }
  });
  return out;
}

std::vector<double> local_avg_connectivity(const Graph& g, unsigned jobs) {
  return per_node(g, jobs, [&](NodeId v) { return lac_node(g, v); });
}

std::vector<double> compute_measure(const Graph& g, Measure m, unsigned jobs) {
  switch (m) {
    case Measure::kHIndex: return h_index(g, jobs);
    case Measure::kLeverage: return leverage(g, jobs);
    case Measure::kLocalEntropy: return local_entropy(g, jobs);
    case Measure::kClustering: return clustering(g, jobs);
    case Measure::kTopological: return topological(g, jobs);
    case Measure::kLocalAvgConnectivity: return local_avg_connectivity(g, jobs);
  }
  throw std::invalid_argument("unknown measure enum value");
}

std::vector<std::vector<double>> compute_all(const Graph& g,
                                             const std::vector<Measure>& ms,
                                             unsigned jobs) {
  if (ms.empty()) throw std::invalid_argument("measure list is empty");
  std::vector<std::vector<double>> out;
  out.reserve(ms.size());
  for (Measure m : ms) out.push_back(compute_measure(g, m, jobs));
  return out;
}

std::vector<std::size_t> rank_by_score(const std::vector<double>& scores) {
  const std::size_t n = scores.size();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  std::vector<std::size_t> rank(n);
  for (std::size_t pos = 0; pos < n; ++pos) rank[order[pos]] = pos + 1;
  return rank;
}

std::vector<NodeId> top_k_nodes(const std::vector<double>& scores,
                                std::size_t k) {
  const std::size_t n = scores.size();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  order.resize(std::min(k, n));
  return order;
}

}  // namespace netstab
