#include "netstab/randomize.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace netstab {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
  const auto lo = std::min(u, v);
  const auto hi = std::max(u, v);
  return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

std::pair<NodeId, NodeId> canonical(NodeId u, NodeId v) {
  return {std::min(u, v), std::max(u, v)};
}

}  // namespace

std::string direction_name(SteerDirection d) {
  switch (d) {
    case SteerDirection::kNone: return "none";
    case SteerDirection::kIncrease: return "increase";
    case SteerDirection::kDecrease: return "decrease";
  }
  throw std::invalid_argument("unknown direction enum value");
}

SteerDirection direction_from_name(const std::string& name) {
  if (name == "none") return SteerDirection::kNone;
  if (name == "increase") return SteerDirection::kIncrease;
  if (name == "decrease") return SteerDirection::kDecrease;
  throw std::invalid_argument("unknown direction name: " + name);
}

std::uint64_t resolve_auto_steps(std::size_t node_count) {
  const auto n = static_cast<std::uint64_t>(node_count);
  return n >= 2000 ? n : 10 * n;
}

RewiringEngine::RewiringEngine(const Graph& g)
    : labels_(g.labels()), degree_(g.node_count(), 0) {
  edges_ = g.edges();
  edge_keys_.reserve(edges_.size() * 2);
  for (const auto& [u, v] : edges_) {
    edge_keys_.insert(edge_key(u, v));
  }
  std::size_t min_deg = SIZE_MAX;
  std::size_t max_deg = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const std::size_t d = g.degree(v);
    degree_[v] = static_cast<std::uint32_t>(d);
    if (d == 0) continue;
    min_deg = std::min(min_deg, d);
    max_deg = std::max(max_deg, d);
    const auto di = static_cast<std::int64_t>(d);
    sum_deg_ += di * di;
    sum_sq_ += di * di * di;
  }
  degenerate_ = edges_.empty() || min_deg == max_deg;
  for (const auto& [u, v] : edges_) {
    sum_prod_ += static_cast<std::int64_t>(degree_[u]) *
                 static_cast<std::int64_t>(degree_[v]);
  }
}

std::optional<double> RewiringEngine::assortativity() const {
  return detail::assortativity_from_sums(edges_.size(), sum_prod_, sum_deg_,
                                         sum_sq_, degenerate_);
}

bool RewiringEngine::apply(std::size_t ei, std::size_t ej,
                           std::pair<NodeId, NodeId> e1,
                           std::pair<NodeId, NodeId> e2) {
  const auto [a, b] = edges_[ei];
  const auto [c, d] = edges_[ej];
  const auto k1 = edge_key(e1.first, e1.second);
  const auto k2 = edge_key(e2.first, e2.second);
  if (edge_keys_.count(k1) != 0 || edge_keys_.count(k2) != 0) return false;
  edge_keys_.erase(edge_key(a, b));
  edge_keys_.erase(edge_key(c, d));
  edge_keys_.insert(k1);
  edge_keys_.insert(k2);
  edges_[ei] = canonical(e1.first, e1.second);
  edges_[ej] = canonical(e2.first, e2.second);
  const auto dp = [this](NodeId u, NodeId v) {
    return static_cast<std::int64_t>(degree_[u]) *
           static_cast<std::int64_t>(degree_[v]);
  };
  sum_prod_ += dp(e1.first, e1.second) + dp(e2.first, e2.second) -
               dp(a, b) - dp(c, d);
  return true;
}

bool RewiringEngine::try_uniform_swap(std::size_t ei, std::size_t ej,
                                      bool cross) {
  const auto [a, b] = edges_[ei];
  const auto [c, d] = edges_[ej];
  if (a == c || a == d || b == c || b == d) return false;
  if (cross) return apply(ei, ej, {a, d}, {b, c});
  return apply(ei, ej, {a, c}, {b, d});
}

bool RewiringEngine::try_steered_swap(std::size_t ei, std::size_t ej,
                                      SteerDirection dir) {
  if (dir == SteerDirection::kNone) {
    throw std::invalid_argument("steered swap needs increase or decrease");
  }
  const auto [a, b] = edges_[ei];
  const auto [c, d] = edges_[ej];
  if (a == c || a == d || b == c || b == d) return false;
  std::array<NodeId, 4> p = {a, b, c, d};
  std::sort(p.begin(), p.end(), [this](NodeId x, NodeId y) {
    if (degree_[x] != degree_[y]) return degree_[x] > degree_[y];
    return x < y;
  });
  std::pair<NodeId, NodeId> t1, t2;
  if (dir == SteerDirection::kIncrease) {
    t1 = canonical(p[0], p[1]);
    t2 = canonical(p[2], p[3]);
  } else {
    t1 = canonical(p[0], p[3]);
    t2 = canonical(p[1], p[2]);
  }
  if (t1 > t2) std::swap(t1, t2);
  auto cur1 = canonical(a, b);
  auto cur2 = canonical(c, d);
  if (cur1 > cur2) std::swap(cur1, cur2);
  // Distinct perfect matchings on four nodes share no edge, so when the
  // target differs both target edges are genuinely new.
  if (t1 == cur1 && t2 == cur2) return false;
  return apply(ei, ej, t1, t2);
}

bool RewiringEngine::uniform_swap_step(Rng& rng) {
  if (edges_.size() < 2) return false;
  const std::size_t m = edges_.size();
  std::size_t ei = static_cast<std::size_t>(rng.uniform_index(m));
  std::size_t ej = static_cast<std::size_t>(rng.uniform_index(m - 1));
  if (ej >= ei) ++ej;
  const bool cross = rng.coin();
  return try_uniform_swap(ei, ej, cross);
}

bool RewiringEngine::steered_swap_step(Rng& rng, SteerDirection dir) {
  if (edges_.size() < 2) return false;
  const std::size_t m = edges_.size();
  std::size_t ei = static_cast<std::size_t>(rng.uniform_index(m));
  std::size_t ej = static_cast<std::size_t>(rng.uniform_index(m - 1));
  if (ej >= ei) ++ej;
  return try_steered_swap(ei, ej, dir);
}

Graph RewiringEngine::build_graph() const {
  return Graph::from_edges(labels_, edges_);
}

namespace {

PerturbationOutcome run_rewiring(const Graph& g, const PerturbationPlan& plan,
                                 std::size_t checkpoints, bool steered) {
  if (checkpoints < 1) {
    throw std::invalid_argument("checkpoints must be at least 1");
  }
  const std::uint64_t steps =
      plan.steps ? *plan.steps : resolve_auto_steps(g.node_count());
  const std::uint64_t budget = plan.max_attempts_factor * steps;

  RewiringEngine engine(g);
  Rng rng(plan.seed);
  PerturbationTrace trace;
  std::uint64_t successes = 0;
  std::uint64_t attempts = 0;
  for (std::size_t i = 1; i <= checkpoints; ++i) {
    const std::uint64_t target = steps * i / checkpoints;
    while (successes < target) {
      if (attempts >= budget) {
        trace.successful_steps = successes;
        trace.attempted_steps = attempts;
        throw SaturationError(
            "rewiring saturated: " + std::to_string(successes) + " of " +
                std::to_string(steps) + " steps after " +
                std::to_string(attempts) + " attempts",
            std::move(trace), engine.build_graph());
      }
      ++attempts;
      const bool ok = steered ? engine.steered_swap_step(rng, plan.direction)
                              : engine.uniform_swap_step(rng);
      if (ok) ++successes;
    }
    trace.assortativity_series.push_back(engine.assortativity());
  }
  trace.successful_steps = successes;
  trace.attempted_steps = attempts;
  return {engine.build_graph(), std::move(trace)};
}

}  // namespace

PerturbationOutcome perturb_uniform(const Graph& g,
                                    const PerturbationPlan& plan) {
  if (plan.model != 1) {
    throw std::invalid_argument("plan.model must be 1 for uniform swaps");
  }
  if (plan.direction != SteerDirection::kNone) {
    throw std::invalid_argument("model 1 does not take a direction");
  }
  return run_rewiring(g, plan, 1, false);
}

PerturbationOutcome perturb_steered(const Graph& g,
                                    const PerturbationPlan& plan,
                                    std::size_t checkpoints) {
  if (plan.model != 2) {
    throw std::invalid_argument("plan.model must be 2 for steered rewiring");
  }
  if (plan.direction == SteerDirection::kNone) {
    throw std::invalid_argument("model 2 requires a direction");
  }
  return run_rewiring(g, plan, checkpoints, true);
}

PerturbationOutcome run_perturbation(const Graph& g,
                                     const PerturbationPlan& plan,
                                     std::size_t checkpoints) {
  if (plan.model == 1) return perturb_uniform(g, plan);
  if (plan.model == 2) return perturb_steered(g, plan, checkpoints);
  throw std::invalid_argument("plan.model must be 1 or 2");
}

}  // namespace netstab
