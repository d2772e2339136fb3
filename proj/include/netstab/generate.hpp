#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netstab/graph.hpp"
#include "netstab/rng.hpp"

namespace netstab {

inline constexpr const char* kModelScaleFree = "scale-free";
inline constexpr const char* kModelExponential = "exponential";

struct GeneratorSpec {
  std::string model;         // scale-free | exponential
  std::size_t n = 0;         // target node count, >= 2
  double gamma = 0.0;        // power-law exponent, scale-free only, > 1
  double mean_degree = 0.0;  // target mean degree, exponential only
  std::size_t k_min = 1;     // minimum degree, >= 1
  std::uint64_t seed = 0;
};

// n i.i.d. draws from discrete P(k) proportional to k^-gamma on
// [k_min, n-1]; if the sum is odd one uniformly chosen node (redrawn while
// it sits at the n-1 cap) is incremented so stub matching can pair up.
std::vector<std::size_t> sample_powerlaw_degree_sequence(
    const GeneratorSpec& spec, Rng& rng);

// n i.i.d. draws from discrete P(k) proportional to exp(-beta*k) on
// [k_min, n-1], beta calibrated by bisection so the distribution mean hits
// spec.mean_degree. Same parity fix. Throws std::invalid_argument when the
// mean is outside (k_min, n-1).
std::vector<std::size_t> sample_exponential_degree_sequence(
    const GeneratorSpec& spec, Rng& rng);

// Calibrated decay rate for the exponential sampler; exposed for tests.
double exponential_decay_rate(std::size_t k_min, std::size_t k_max,
                              double mean_degree);

// Stub matching with self loops and duplicate edges erased afterwards, so
// realized degrees can fall below targets. Node labels are "0".."n-1".
// Requires an even degree sum.
Graph configuration_model(const std::vector<std::size_t>& degrees, Rng& rng);

struct GenerationResult {
  Graph graph;
  std::vector<std::size_t> target_degrees;
  std::size_t m_target = 0;  // half the (parity-fixed) target degree sum
};

// Validates the spec, samples a degree sequence, realizes it.
GenerationResult generate_network(const GeneratorSpec& spec);

// Continuous maximum-likelihood estimate of a power-law tail exponent over
// degrees >= k_min, with the -0.5 discreteness shift:
//   1 + N / sum(ln(k_i / (k_min - 0.5)))
// capped at 20. Throws std::domain_error when fewer than 10 degrees
// qualify. A coarse diagnostic, not a fitted model.
double estimate_gamma(const Graph& g, std::size_t k_min);

}  // namespace netstab
