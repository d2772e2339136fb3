#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "netstab/graph.hpp"

namespace netstab {

// The six neighborhood-local node measures this tool compares. Enum order
// fixes output ordering everywhere (CSV rows, report arrays, plot series).
enum class Measure {
  kHIndex,
  kLeverage,
  kLocalEntropy,
  kClustering,
  kTopological,
  kLocalAvgConnectivity,
};

inline constexpr std::array<Measure, 6> kAllMeasures = {
    Measure::kHIndex,       Measure::kLeverage,
    Measure::kLocalEntropy, Measure::kClustering,
    Measure::kTopological,  Measure::kLocalAvgConnectivity,
};

// Short id used in CLI flags and all CSV/JSON output:
// h, lc, lse, lcc, tc, lac.
std::string measure_name(Measure m);
// Longer human-readable name for plot legends.
std::string measure_display_name(Measure m);
// Inverse of measure_name; throws std::invalid_argument on unknown names.
Measure measure_from_name(const std::string& name);

// Each scorer returns one value per node, indexed by dense node id.
// Degree-zero nodes score 0 for every measure. jobs > 1 partitions nodes
// across threads; results are identical to the sequential run because
// every node's score lands in its own preallocated slot.

// h: largest h such that v has at least h neighbors of degree >= h.
std::vector<double> h_index(const Graph& g, unsigned jobs = 1);

// lc: mean over neighbors u of (d(v) - d(u)) / (d(v) + d(u)).
std::vector<double> leverage(const Graph& g, unsigned jobs = 1);

// lse: Shannon entropy (nats) of p_j = d(j) / sum of degrees, j ranging
// over the closed neighborhood {v} u N(v), degrees from the whole graph.
std::vector<double> local_entropy(const Graph& g, unsigned jobs = 1);

// lcc: fraction of neighbor pairs that are adjacent. 0 when d(v) < 2.
std::vector<double> clustering(const Graph& g, unsigned jobs = 1);

// tc: mean over nodes u != v sharing >= 1 neighbor with v of
// (|N(u) n N(v)| + [u adjacent to v]), divided by d(v). 0 when no such u.
std::vector<double> topological(const Graph& g, unsigned jobs = 1);

// lac: mean over neighbors u of u's degree within the subgraph induced
// by N(v), i.e. |N(u) n N(v)|.
std::vector<double> local_avg_connectivity(const Graph& g, unsigned jobs = 1);

std::vector<double> compute_measure(const Graph& g, Measure m,
                                    unsigned jobs = 1);

// One score vector per requested measure, in the given order. Throws
// std::invalid_argument on an empty measure list.
std::vector<std::vector<double>> compute_all(const Graph& g,
                                             const std::vector<Measure>& ms,
                                             unsigned jobs = 1);

// Ordinal ranks 1..n: descending score, ties broken by ascending node id.
// rank[v] is node v's position.
std::vector<std::size_t> rank_by_score(const std::vector<double>& scores);

// The k node ids holding ranks 1..k under rank_by_score order.
std::vector<NodeId> top_k_nodes(const std::vector<double>& scores,
                                std::size_t k);

}  // namespace netstab
