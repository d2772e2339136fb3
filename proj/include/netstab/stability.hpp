#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "netstab/centrality.hpp"
#include "netstab/graph.hpp"
#include "netstab/randomize.hpp"

namespace netstab {

// Mean absolute rank displacement between two rankings of the same nodes:
// sum_i |x_i - y_i| / (n (n - 1)). The denominator is n(n-1) even though
// the sum has n terms; cross-measure comparisons only ever divide by the
// same constant, so nothing downstream depends on the convention.
double mean_bias(const std::vector<std::size_t>& x,
                 const std::vector<std::size_t>& y);

// sqrt( sum_i (|x_i - y_i| - mu)^2 / (n (n - 1)) ) with mu = mean_bias.
double std_bias(const std::vector<std::size_t>& x,
                const std::vector<std::size_t>& y);

// Overlap of the two top-k node sets (ranks 1..k): |A n B| / |A u B|.
// Requires 1 <= k <= n.
double jaccard_top_k(const std::vector<std::size_t>& x,
                     const std::vector<std::size_t>& y, std::size_t k);

struct MeasureStability {
  Measure measure;
  double mu = 0.0;
  double sigma = 0.0;
  double jaccard = 0.0;
};

struct StabilityRun {
  std::uint64_t seed = 0;
  std::uint64_t swaps_applied = 0;
  std::optional<double> r_before;
  std::optional<double> r_after;
  std::vector<MeasureStability> metrics;                  // [measure]
  std::vector<std::vector<std::size_t>> perturbed_ranks;  // [measure][node]
};

struct ExperimentResult {
  std::vector<Measure> measures;
  std::size_t k = 0;
  std::vector<std::vector<std::size_t>> original_ranks;  // [measure][node]
  std::vector<StabilityRun> runs;                        // [seed]
};

// Perturbs g once per seed (plan.seed is overridden), ranks every measure
// on the original and each perturbed graph, and scores mu/sigma/jaccard.
// Runs for different seeds execute in parallel when jobs > 1; output is
// identical for any job count. Saturation propagates as SaturationError.
ExperimentResult run_stability_experiment(const Graph& g,
                                          const std::vector<Measure>& measures,
                                          const PerturbationPlan& plan,
                                          const std::vector<std::uint64_t>& seeds,
                                          std::size_t k, unsigned jobs = 1);

struct SweepRow {
  std::uint64_t swap_count = 0;
  std::optional<double> r;
  std::vector<double> jaccard;  // [measure]
};

struct SweepResult {
  std::vector<Measure> measures;
  std::size_t k = 0;
  // True when steering ran out of attempts mid-sweep; rows then cover
  // only the checkpoints that were reached.
  bool saturated = false;
  std::vector<SweepRow> rows;
};

// Cumulative steered rewiring with checkpoints at evenly spaced swap
// counts from 0 to max_steps (duplicates collapsed, so counts are
// strictly increasing). Each checkpoint records r and, per measure, the
// top-k Jaccard overlap between the original and current rankings.
SweepResult run_assortativity_sweep(const Graph& g,
                                    const std::vector<Measure>& measures,
                                    SteerDirection direction,
                                    std::uint64_t max_steps,
                                    std::size_t checkpoints, std::size_t k,
                                    std::uint64_t seed,
                                    std::uint64_t max_attempts_factor = 100,
                                    unsigned jobs = 1);

}  // namespace netstab
