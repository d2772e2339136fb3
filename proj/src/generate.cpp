#include "netstab/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace netstab {

namespace {

void validate_common(const GeneratorSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("need at least 2 nodes");
  if (spec.k_min < 1) throw std::invalid_argument("k_min must be >= 1");
  if (spec.k_min > spec.n - 1) {
    throw std::invalid_argument("k_min exceeds the maximum degree n-1");
  }
}

// Draws one value per uniform variate from the cumulative weights.
std::size_t draw_from_cdf(const std::vector<double>& cdf, std::size_t k_min,
                          Rng& rng) {
  const double x = rng.uniform01() * cdf.back();
  const auto it = std::lower_bound(cdf.begin(), cdf.end(), x);
  return k_min + static_cast<std::size_t>(it - cdf.begin());
}

void parity_fix(std::vector<std::size_t>& degs, std::size_t max_degree,
                Rng& rng) {
  std::size_t sum = std::accumulate(degs.begin(), degs.end(), std::size_t{0});
  if (sum % 2 == 0) return;
  // An odd sum implies not every degree sits at the cap (all-capped sums
  // n(n-1), which is even), so this terminates.
  for (;;) {
    const auto i = static_cast<std::size_t>(rng.uniform_index(degs.size()));
    if (degs[i] < max_degree) {
      ++degs[i];
      return;
    }
  }
}

}  // namespace

std::vector<std::size_t> sample_powerlaw_degree_sequence(
    const GeneratorSpec& spec, Rng& rng) {
  validate_common(spec);
  if (!(spec.gamma > 1.0)) {
    throw std::invalid_argument("gamma must be > 1");
  }
  const std::size_t k_max = spec.n - 1;
  std::vector<double> cdf;
  cdf.reserve(k_max - spec.k_min + 1);
  double acc = 0.0;
  for (std::size_t k = spec.k_min; k <= k_max; ++k) {
    acc += std::pow(static_cast<double>(k), -spec.gamma);
    cdf.push_back(acc);
  }
  std::vector<std::size_t> degs(spec.n);
  for (auto& d : degs) d = draw_from_cdf(cdf, spec.k_min, rng);
  parity_fix(degs, k_max, rng);
  return degs;
}

double exponential_decay_rate(std::size_t k_min, std::size_t k_max,
                              double mean_degree) {
  if (!(mean_degree > static_cast<double>(k_min)) ||
      !(mean_degree < static_cast<double>(k_max))) {
    throw std::invalid_argument(
        "mean degree must lie strictly between k_min and n-1");
  }
  // Distribution mean is continuous and strictly decreasing in beta:
  // beta -> +inf collapses onto k_min, beta -> -inf onto k_max, beta = 0
  // is uniform. Weights are shifted so the largest exponent is 0.
  const auto mean_at = [&](double beta) {
    const double ref = beta >= 0.0 ? static_cast<double>(k_min)
                                   : static_cast<double>(k_max);
    double wsum = 0.0;
    double ksum = 0.0;
    for (std::size_t k = k_min; k <= k_max; ++k) {
      const double w = std::exp(-beta * (static_cast<double>(k) - ref));
      wsum += w;
      ksum += static_cast<double>(k) * w;
    }
    return ksum / wsum;
  };
  double lo = -60.0;  // mean near k_max
  double hi = 60.0;   // mean near k_min
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mean_at(mid) > mean_degree) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<std::size_t> sample_exponential_degree_sequence(
    const GeneratorSpec& spec, Rng& rng) {
  validate_common(spec);
  const std::size_t k_max = spec.n - 1;
  const double beta =
      exponential_decay_rate(spec.k_min, k_max, spec.mean_degree);
  const double ref = beta >= 0.0 ? static_cast<double>(spec.k_min)
                                 : static_cast<double>(k_max);
  std::vector<double> cdf;
  cdf.reserve(k_max - spec.k_min + 1);
  double acc = 0.0;
  for (std::size_t k = spec.k_min; k <= k_max; ++k) {
    acc += std::exp(-beta * (static_cast<double>(k) - ref));
    cdf.push_back(acc);
  }
  std::vector<std::size_t> degs(spec.n);
  for (auto& d : degs) d = draw_from_cdf(cdf, spec.k_min, rng);
  parity_fix(degs, k_max, rng);
  return degs;
}

Graph configuration_model(const std::vector<std::size_t>& degrees, Rng& rng) {
  const std::size_t sum =
      std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
  if (sum % 2 != 0) {
    throw std::invalid_argument("degree sum must be even");
  }
  std::vector<NodeId> stubs;
  stubs.reserve(sum);
  for (NodeId v = 0; v < degrees.size(); ++v) {
    stubs.insert(stubs.end(), degrees[v], v);
  }
  // Fisher-Yates; pairing consecutive shuffled stubs is then a uniform
  // stub matching. from_edges erases self loops and duplicates.
  for (std::size_t i = stubs.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_index(i));
    std::swap(stubs[i - 1], stubs[j]);
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(sum / 2);
  for (std::size_t t = 0; t + 1 < stubs.size(); t += 2) {
    edges.emplace_back(stubs[t], stubs[t + 1]);
  }
  std::vector<std::string> labels(degrees.size());
  for (std::size_t v = 0; v < labels.size(); ++v) {
    labels[v] = std::to_string(v);
  }
  return Graph::from_edges(std::move(labels), edges);
}

GenerationResult generate_network(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  std::vector<std::size_t> degs;
  if (spec.model == kModelScaleFree) {
    degs = sample_powerlaw_degree_sequence(spec, rng);
  } else if (spec.model == kModelExponential) {
    degs = sample_exponential_degree_sequence(spec, rng);
  } else {
    throw std::invalid_argument("unknown generator model: " + spec.model);
  }
  const std::size_t sum =
      std::accumulate(degs.begin(), degs.end(), std::size_t{0});
  GenerationResult result{configuration_model(degs, rng), std::move(degs),
                          sum / 2};
  return result;
}

double estimate_gamma(const Graph& g, std::size_t k_min) {
  if (k_min < 1) throw std::invalid_argument("k_min must be >= 1");
  double log_sum = 0.0;
  std::size_t tail = 0;
  const double ref = static_cast<double>(k_min) - 0.5;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const std::size_t d = g.degree(v);
    if (d < k_min) continue;
    ++tail;
    log_sum += std::log(static_cast<double>(d) / ref);
  }
  if (tail < 10) {
    throw std::domain_error("need at least 10 degrees >= k_min, have " +
                            std::to_string(tail));
  }
  const double gamma_hat = 1.0 + static_cast<double>(tail) / log_sum;
  return std::min(gamma_hat, 20.0);
}

}  // namespace netstab
