#include "netstab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "netstab/parallel.hpp"

namespace netstab {

namespace {

void check_pair(const std::vector<std::size_t>& x,
                const std::vector<std::size_t>& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("rank vectors differ in length");
  }
  if (x.size() < 2) {
    throw std::invalid_argument("rank vectors need at least 2 entries");
  }
}

double displacement_sum(const std::vector<std::size_t>& x,
                        const std::vector<std::size_t>& y) {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += static_cast<std::uint64_t>(
        std::llabs(static_cast<long long>(x[i]) - static_cast<long long>(y[i])));
  }
  return static_cast<double>(sum);
}

}  // namespace

double mean_bias(const std::vector<std::size_t>& x,
                 const std::vector<std::size_t>& y) {
  check_pair(x, y);
  const double n = static_cast<double>(x.size());
  return displacement_sum(x, y) / (n * (n - 1.0));
}

double std_bias(const std::vector<std::size_t>& x,
                const std::vector<std::size_t>& y) {
  check_pair(x, y);
  const double n = static_cast<double>(x.size());
  const double mu = displacement_sum(x, y) / (n * (n - 1.0));
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = std::abs(static_cast<double>(x[i]) -
                              static_cast<double>(y[i])) -
                     mu;
    acc += d * d;
  }
  return std::sqrt(acc / (n * (n - 1.0)));
}

double jaccard_top_k(const std::vector<std::size_t>& x,
                     const std::vector<std::size_t>& y, std::size_t k) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("rank vectors differ in length");
  }
  if (k < 1 || k > x.size()) {
    throw std::invalid_argument("k must be in [1, n]");
  }
  std::size_t both = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= k && y[i] <= k) ++both;
  }
  // Rank vectors are permutations, so |A| = |B| = k and
  // |A u B| = 2k - |A n B|.
  return static_cast<double>(both) / static_cast<double>(2 * k - both);
}

ExperimentResult run_stability_experiment(
    const Graph& g, const std::vector<Measure>& measures,
    const PerturbationPlan& plan, const std::vector<std::uint64_t>& seeds,
    std::size_t k, unsigned jobs) {
  if (seeds.empty()) {
    throw std::invalid_argument("need at least one seed");
  }
  if (k < 1 || k > g.node_count()) {
    throw std::invalid_argument("top-k must be in [1, n]");
  }

  ExperimentResult result;
  result.measures = measures;
  result.k = k;

  const auto original_scores = compute_all(g, measures, jobs);
  result.original_ranks.reserve(measures.size());
  for (const auto& scores : original_scores) {
    result.original_ranks.push_back(rank_by_score(scores));
  }
  const auto r_before = g.assortativity();

  result.runs.resize(seeds.size());
  parallel_indices(seeds.size(), jobs, [&](std::size_t si) {
    PerturbationPlan run_plan = plan;
    run_plan.seed = seeds[si];
    auto outcome = run_perturbation(g, run_plan, 1);

    StabilityRun run;
    run.seed = seeds[si];
    run.swaps_applied = outcome.trace.successful_steps;
    run.r_before = r_before;
    run.r_after = outcome.trace.assortativity_series.back();
    run.metrics.reserve(measures.size());
    run.perturbed_ranks.reserve(measures.size());
    for (std::size_t mi = 0; mi < measures.size(); ++mi) {
      const auto y_scores = compute_measure(outcome.graph, measures[mi]);
      auto y_ranks = rank_by_score(y_scores);
      MeasureStability ms;
      ms.measure = measures[mi];
      ms.mu = mean_bias(result.original_ranks[mi], y_ranks);
      ms.sigma = std_bias(result.original_ranks[mi], y_ranks);
      ms.jaccard = jaccard_top_k(result.original_ranks[mi], y_ranks, k);
      run.metrics.push_back(ms);
      run.perturbed_ranks.push_back(std::move(y_ranks));
    }
    result.runs[si] = std::move(run);
  });
  return result;
}

SweepResult run_assortativity_sweep(const Graph& g,
                                    const std::vector<Measure>& measures,
                                    SteerDirection direction,
                                    std::uint64_t max_steps,
                                    std::size_t checkpoints, std::size_t k,
                                    std::uint64_t seed,
                                    std::uint64_t max_attempts_factor,
                                    unsigned jobs) {
  if (checkpoints < 2) {
    throw std::invalid_argument("sweep needs at least 2 checkpoints");
  }
  if (direction == SteerDirection::kNone) {
    throw std::invalid_argument("sweep requires a steering direction");
  }
  if (k < 1 || k > g.node_count()) {
    throw std::invalid_argument("top-k must be in [1, n]");
  }

  std::vector<std::uint64_t> counts;
  counts.reserve(checkpoints);
  for (std::size_t i = 0; i < checkpoints; ++i) {
    counts.push_back(max_steps * i / (checkpoints - 1));
  }
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());

  SweepResult result;
  result.measures = measures;
  result.k = k;

  const auto original_scores = compute_all(g, measures, jobs);
  std::vector<std::vector<std::size_t>> original_ranks;
  original_ranks.reserve(measures.size());
  for (const auto& scores : original_scores) {
    original_ranks.push_back(rank_by_score(scores));
  }

  RewiringEngine engine(g);
  Rng rng(seed);
  std::uint64_t successes = 0;
  for (std::uint64_t target : counts) {
    const std::uint64_t segment = target - successes;
    const std::uint64_t budget = max_attempts_factor * segment;
    std::uint64_t attempts = 0;
    bool exhausted = false;
    while (successes < target) {
      if (attempts >= budget) {
        exhausted = true;
        break;
      }
      ++attempts;
      if (engine.steered_swap_step(rng, direction)) ++successes;
    }
    if (exhausted) {
      result.saturated = true;
      break;
    }

    SweepRow row;
    row.swap_count = target;
    row.r = engine.assortativity();
    const Graph current = engine.build_graph();
    row.jaccard.reserve(measures.size());
    for (std::size_t mi = 0; mi < measures.size(); ++mi) {
      const auto y_scores = compute_measure(current, measures[mi], jobs);
      const auto y_ranks = rank_by_score(y_scores);
      row.jaccard.push_back(jaccard_top_k(original_ranks[mi], y_ranks, k));
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace netstab
