#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "netstab/graph.hpp"
#include "netstab/rng.hpp"

namespace netstab {

enum class SteerDirection { kNone, kIncrease, kDecrease };

std::string direction_name(SteerDirection d);
SteerDirection direction_from_name(const std::string& name);

// model 1: uniform degree-preserving double-edge swaps.
// model 2: degree-ordered steered rewiring that pushes assortativity in
// `direction` without ever moving it the other way.
struct PerturbationPlan {
  int model = 1;
  // Successful rewires to apply. Empty means auto: n when n >= 2000,
  // otherwise 10n. An explicit 0 applies no rewires.
  std::optional<std::uint64_t> steps;
  SteerDirection direction = SteerDirection::kNone;
  std::uint64_t seed = 0;
  // Total attempt budget is max_attempts_factor * steps.
  std::uint64_t max_attempts_factor = 100;
};

struct PerturbationTrace {
  std::uint64_t successful_steps = 0;
  std::uint64_t attempted_steps = 0;
  // r after each checkpoint; entries are empty where r is undefined
  // (regular graphs stay regular under degree-preserving rewiring).
  std::vector<std::optional<double>> assortativity_series;
};

// Raised when the attempt budget runs out before reaching the requested
// step count. Carries what was achieved so callers can persist it.
class SaturationError : public std::runtime_error {
 public:
  SaturationError(const std::string& msg, PerturbationTrace trace,
                  Graph partial)
      : std::runtime_error(msg),
        trace_(std::move(trace)),
        partial_(std::move(partial)) {}

  const PerturbationTrace& trace() const { return trace_; }
  const Graph& partial_graph() const { return partial_; }

 private:
  PerturbationTrace trace_;
  Graph partial_;
};

std::uint64_t resolve_auto_steps(std::size_t node_count);

// Mutable rewiring state over a snapshot of a Graph: indexed edge array
// for O(1) sampling, a hash set for O(1) simplicity checks, and the
// integer sum of endpoint-degree products so assortativity after any
// number of swaps is available without rescanning. Degrees never change.
class RewiringEngine {
 public:
  explicit RewiringEngine(const Graph& g);

  std::size_t edge_count() const { return edges_.size(); }
  std::pair<NodeId, NodeId> edge_at(std::size_t i) const { return edges_[i]; }
  std::size_t degree(NodeId v) const { return degree_[v]; }

  // Bit-identical to build_graph().assortativity(): same integer sums,
  // same floating-point expression.
  std::optional<double> assortativity() const;

  // Deterministic cores. ei != ej index the edge array. Returns whether
  // the rewiring was applied; on false the state is unchanged.
  //
  // Uniform: edges (a,b),(c,d) become (a,d),(b,c) when cross, else
  // (a,c),(b,d). Rejected unless all four endpoints are distinct and
  // both replacement edges are absent.
  bool try_uniform_swap(std::size_t ei, std::size_t ej, bool cross);
  // Steered: the four endpoints are ordered by (degree desc, id asc);
  // increase pairs top two together and bottom two together, decrease
  // pairs top with bottom. Rejected if the target matching is the
  // current one, endpoints collide, or a replacement edge exists. Any
  // accepted step moves the endpoint-degree product sum weakly in the
  // requested direction (the ordered pairing is the extremal matching).
  bool try_steered_swap(std::size_t ei, std::size_t ej, SteerDirection dir);

  // Random wrappers: draw two distinct edge indices uniformly (plus one
  // orientation coin for the uniform model). Fixed draw order makes runs
  // reproducible from the seed alone.
  bool uniform_swap_step(Rng& rng);
  bool steered_swap_step(Rng& rng, SteerDirection dir);

  // Materializes the current edge set as a Graph with the source labels.
  Graph build_graph() const;

 private:
  bool apply(std::size_t ei, std::size_t ej, std::pair<NodeId, NodeId> e1,
             std::pair<NodeId, NodeId> e2);

  std::vector<std::string> labels_;
  std::vector<std::uint32_t> degree_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::unordered_set<std::uint64_t> edge_keys_;
  std::int64_t sum_prod_ = 0;
  std::int64_t sum_deg_ = 0;
  std::int64_t sum_sq_ = 0;
  bool degenerate_ = true;
};

struct PerturbationOutcome {
  Graph graph;
  PerturbationTrace trace;
};

// Uniform swaps, trace with a single checkpoint (r after the last step).
// Throws SaturationError when the attempt budget is exhausted and
// std::invalid_argument when the plan's model/direction disagree.
PerturbationOutcome perturb_uniform(const Graph& g,
                                    const PerturbationPlan& plan);

// Steered rewiring; r recorded at `checkpoints` evenly spaced successful
// step counts, the last one at the final step (checkpoints >= 1).
PerturbationOutcome perturb_steered(const Graph& g,
                                    const PerturbationPlan& plan,
                                    std::size_t checkpoints);

// Dispatch on plan.model (1 or 2).
PerturbationOutcome run_perturbation(const Graph& g,
                                     const PerturbationPlan& plan,
                                     std::size_t checkpoints = 1);

}  // namespace netstab
