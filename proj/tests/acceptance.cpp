// Acceptance gate: nine checks, one PASS/FAIL line each, nonzero exit when
// any fail. Everything runs from fixed seeds, so a pass is reproducible.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "netstab/centrality.hpp"
#include "netstab/generate.hpp"
#include "netstab/graph.hpp"
#include "netstab/randomize.hpp"
#include "netstab/stability.hpp"
#include "oracles.hpp"

using namespace netstab;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int criterion, bool pass, const std::string& what,
            const std::string& detail) {
  if (!pass) ++failures;
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str(), detail.c_str());
  std::fflush(stdout);
}

Graph make_scale_free(std::uint64_t seed, std::size_t n = 2000) {
  GeneratorSpec spec;
  spec.model = kModelScaleFree;
  spec.n = n;
  spec.gamma = 2.1;
  spec.k_min = 2;
  spec.seed = seed;
  return generate_network(spec).graph;
}

Graph make_exponential(std::uint64_t seed, std::size_t n, double mean) {
  GeneratorSpec spec;
  spec.model = kModelExponential;
  spec.n = n;
  spec.mean_degree = mean;
  spec.k_min = 1;
  spec.seed = seed;
  return generate_network(spec).graph;
}

std::string fmt(double v, const char* f = "%.3g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

// ---- criterion 1: oracle equivalence --------------------------------

void criterion_1() {
  const auto start = Clock::now();
  std::size_t mismatches = 0;
  int graphs = 0;
  for (std::uint64_t seed = 500; seed < 550; ++seed) {
    const std::size_t n = 5 + seed % 36;
    const double p = 0.08 + 0.3 * static_cast<double>(seed % 7) / 6.0;
    const Graph g = oracle::random_graph(seed, n, p);
    ++graphs;
    const auto h = h_index(g);
    const auto lc = leverage(g);
    const auto lse = local_entropy(g);
    const auto lcc = clustering(g);
    const auto tc = topological(g);
    const auto lac = local_avg_connectivity(g);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      mismatches += h[v] != oracle::h_index(g, v);
      mismatches += std::abs(lc[v] - oracle::leverage(g, v)) > 1e-12;
      mismatches += std::abs(lse[v] - oracle::local_entropy(g, v)) > 1e-12;
      mismatches += std::abs(lcc[v] - oracle::clustering(g, v)) > 1e-12;
      mismatches += std::abs(tc[v] - oracle::topological(g, v)) > 1e-12;
      mismatches +=
          std::abs(lac[v] - oracle::local_avg_connectivity(g, v)) > 1e-12;
    }
  }
  const double elapsed = seconds_since(start);
  report(1, mismatches == 0 && graphs == 50 && elapsed < 10.0,
         "six measures match brute-force oracles on 50 random graphs",
         std::to_string(mismatches) + " mismatches, " + fmt(elapsed) + " s");
}

// ---- criterion 2: pinned fixture values ------------------------------

void criterion_2() {
  std::vector<std::string> bad;
  const auto expect = [&](bool ok, const std::string& name) {
    if (!ok) bad.push_back(name);
  };

  const Graph tri = Graph::from_edges(
      {"a", "b", "c"},
      std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}, {2, 0}});
  expect(h_index(tri) == std::vector<double>(3, 2.0), "triangle h");
  expect(leverage(tri) == std::vector<double>(3, 0.0), "triangle lc");
  expect(std::abs(local_entropy(tri)[0] - std::log(3.0)) <= 1e-12,
         "triangle lse");
  expect(clustering(tri) == std::vector<double>(3, 1.0), "triangle lcc");
  expect(topological(tri) == std::vector<double>(3, 1.0), "triangle tc");
  expect(local_avg_connectivity(tri) == std::vector<double>(3, 1.0),
         "triangle lac");

  const Graph star = Graph::from_edges(
      {"hub", "a", "b", "c"},
      std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {0, 2}, {0, 3}});
  expect(h_index(star) == std::vector<double>(4, 1.0), "star h");
  expect(std::abs(leverage(star)[0] - 0.5) <= 1e-12, "star hub lc");
  expect(std::abs(leverage(star)[1] + 0.5) <= 1e-12, "star leaf lc");
  const double star_lse =
      -(0.5 * std::log(0.5) + 0.5 * std::log(1.0 / 6.0));
  expect(std::abs(local_entropy(star)[0] - star_lse) <= 1e-12 &&
             std::abs(local_entropy(star)[0] - 1.2425) <= 1e-4,
         "star hub lse");
  expect(clustering(star)[0] == 0.0, "star hub lcc");
  expect(std::abs(topological(star)[1] - 1.0) <= 1e-12, "star leaf tc");
  expect(local_avg_connectivity(star)[0] == 0.0, "star hub lac");

  const Graph p3 = Graph::from_edges(
      {"a", "b", "c"},
      std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}});
  expect(std::abs(local_entropy(p3)[1] - 1.5 * std::log(2.0)) <= 1e-12 &&
             std::abs(local_entropy(p3)[1] - 1.0397) <= 1e-4,
         "path mid lse");

  expect(mean_bias({1, 2, 3}, {2, 1, 3}) == 1.0 / 3.0, "mu transposition");
  expect(std::abs(std_bias({1, 2, 3}, {2, 1, 3}) - std::sqrt(1.0 / 6.0)) <=
             1e-15,
         "sigma transposition");
  expect(mean_bias({1, 2}, {2, 1}) == 1.0, "mu reversal n=2");

  std::vector<std::size_t> x(50), y(50);
  std::iota(x.begin(), x.end(), std::size_t{1});
  for (std::size_t i = 0; i < 50; ++i) y[i] = (i + 10) % 50 + 1;
  expect(jaccard_top_k(x, y, 25) == 15.0 / 35.0, "jaccard shift");
  expect(jaccard_top_k(x, x, 25) == 1.0, "jaccard identity");

  expect(p3.assortativity() == -1.0, "path r");
  expect(star.assortativity() == -1.0, "star r");
  const Graph c4 = Graph::from_edges(
      {"a", "b", "c", "d"},
      std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  expect(!c4.assortativity().has_value(), "cycle r undefined");

  std::string detail = std::to_string(bad.size()) + " mismatches";
  for (const auto& b : bad) detail += ", " + b;
  report(2, bad.empty(), "pinned fixture values are exact", detail);
}

// ---- criterion 3: degree preservation at scale -----------------------

void criterion_3() {
  const Graph g = make_scale_free(7);
  const auto start = Clock::now();
  PerturbationPlan plan;
  plan.model = 1;
  plan.seed = 11;
  const auto outcome = perturb_uniform(g, plan);
  const bool same = outcome.graph.degree_sequence() == g.degree_sequence() &&
                    outcome.graph.labels() == g.labels();
  const double elapsed = seconds_since(start);
  report(3, same && elapsed < 5.0,
         "2000 auto swaps preserve every degree on a 2000-node network",
         std::string(same ? "degree sequences identical" : "DEGREES CHANGED") +
             ", " + fmt(elapsed) + " s");
}

// ---- criterion 4: auto swap-count policy ------------------------------

void criterion_4() {
  const Graph big = make_scale_free(7);
  PerturbationPlan plan;
  plan.model = 1;
  plan.seed = 3;
  const auto big_trace = perturb_uniform(big, plan).trace;

  const Graph small = make_exponential(5, 453, 20.0);
  const auto small_trace = perturb_uniform(small, plan).trace;

  const bool ok = big_trace.successful_steps == 2000 &&
                  small_trace.successful_steps == 4530;
  report(4, ok, "auto swap counts follow the size rule (n vs 10n)",
         "n=2000 -> " + std::to_string(big_trace.successful_steps) +
             ", n=453 -> " + std::to_string(small_trace.successful_steps));
}

// ---- criterion 5: steered series is monotone --------------------------

void criterion_5() {
  const Graph g = make_scale_free(7);
  std::size_t violations = 0;
  std::size_t saturated = 0;
  std::size_t checked = 0;
  for (const auto dir :
       {SteerDirection::kIncrease, SteerDirection::kDecrease}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      PerturbationPlan plan;
      plan.model = 2;
      plan.direction = dir;
      plan.seed = seed;
      PerturbationTrace trace;
      try {
        trace = perturb_steered(g, plan, 10).trace;
      } catch (const SaturationError& e) {
        ++saturated;
        trace = e.trace();
      }
      for (std::size_t i = 1; i < trace.assortativity_series.size(); ++i) {
        const auto& prev = trace.assortativity_series[i - 1];
        const auto& cur = trace.assortativity_series[i];
        if (!prev || !cur) {
          ++violations;
          continue;
        }
        ++checked;
        if (dir == SteerDirection::kIncrease ? *cur < *prev : *cur > *prev) {
          ++violations;
        }
      }
    }
  }
  report(5, violations == 0 && checked > 0,
         "steered rewiring never crosses its own assortativity trend "
         "(20 seeds, both directions)",
         std::to_string(violations) + " violations over " +
             std::to_string(checked) + " checkpoint pairs, " +
             std::to_string(saturated) + " saturated runs");
}

// ---- criterion 6: the integer measure is the most stable ---------------

void criterion_6() {
  const auto start = Clock::now();
  const Graph g = make_scale_free(7);
  const std::vector<Measure> measures(kAllMeasures.begin(),
                                      kAllMeasures.end());
  PerturbationPlan plan;
  plan.model = 1;
  std::vector<std::uint64_t> seeds(10);
  std::iota(seeds.begin(), seeds.end(), std::uint64_t{1});
  const auto result = run_stability_experiment(g, measures, plan, seeds, 25);

  int h_lowest = 0;
  for (const auto& run : result.runs) {
    const double h_mu = run.metrics[0].mu;  // kHIndex is first
    bool lowest = true;
    for (std::size_t mi = 1; mi < measures.size(); ++mi) {
      if (run.metrics[mi].mu <= h_mu) lowest = false;
    }
    h_lowest += lowest;
  }
  const double elapsed = seconds_since(start);
  report(6, h_lowest >= 7 && elapsed < 120.0,
         "the h measure has the lowest mean rank displacement",
         std::to_string(h_lowest) + "/10 seeds, " + fmt(elapsed) + " s");
}

// ---- criterion 7: heterogeneous topology is less stable ----------------

void criterion_7() {
  const Graph sf = make_scale_free(7);
  const Graph ex = make_exponential(7, 1000, 19.9);
  const std::vector<Measure> measures(kAllMeasures.begin(),
                                      kAllMeasures.end());
  PerturbationPlan plan;
  plan.model = 1;
  std::vector<std::uint64_t> seeds(10);
  std::iota(seeds.begin(), seeds.end(), std::uint64_t{1});
  const auto on_sf = run_stability_experiment(sf, measures, plan, seeds, 25);
  const auto on_ex = run_stability_experiment(ex, measures, plan, seeds, 25);

  const auto mean_inverse_mu = [](const ExperimentResult& r,
                                  std::size_t mi) {
    double acc = 0.0;
    std::size_t used = 0;
    for (const auto& run : r.runs) {
      if (run.metrics[mi].mu > 0.0) {
        acc += 1.0 / run.metrics[mi].mu;
        ++used;
      }
    }
    return used ? acc / static_cast<double>(used) : 0.0;
  };

  int sf_wins = 0;
  std::string detail;
  for (std::size_t mi = 0; mi < measures.size(); ++mi) {
    const double inv_sf = mean_inverse_mu(on_sf, mi);
    const double inv_ex = mean_inverse_mu(on_ex, mi);
    const bool win = inv_sf >= inv_ex;
    sf_wins += win;
    if (!detail.empty()) detail += ", ";
    detail += measure_name(measures[mi]) + (win ? ">=" : "<");
  }
  report(7, sf_wins >= 4,
         "mean 1/mu is higher on the scale-free than the exponential "
         "network for most measures",
         std::to_string(sf_wins) + "/6 measures (" + detail + ")");
}

// ---- criterion 8: top-k overlap decays along the sweep ------------------

void criterion_8() {
  const Graph g = make_scale_free(7);
  const std::vector<Measure> measures(kAllMeasures.begin(),
                                      kAllMeasures.end());
  const std::size_t n_measures = measures.size();
  std::vector<double> first_sum(n_measures, 0.0);
  std::vector<double> last_sum(n_measures, 0.0);
  std::size_t complete = 0;
  bool zero_is_one = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto sweep = run_assortativity_sweep(
        g, measures, SteerDirection::kIncrease, 2000, 5, 25, seed);
    if (sweep.saturated || sweep.rows.size() != 5 ||
        sweep.rows.front().swap_count != 0 ||
        sweep.rows.back().swap_count != 2000) {
      continue;
    }
    ++complete;
    for (std::size_t mi = 0; mi < n_measures; ++mi) {
      zero_is_one &= sweep.rows.front().jaccard[mi] == 1.0;
      first_sum[mi] += sweep.rows.front().jaccard[mi];
      last_sum[mi] += sweep.rows.back().jaccard[mi];
    }
  }
  int decayed = 0;
  std::string detail;
  for (std::size_t mi = 0; mi < n_measures; ++mi) {
    const bool d = complete > 0 && last_sum[mi] < first_sum[mi];
    decayed += d;
    if (!detail.empty()) detail += ", ";
    detail += measure_name(measures[mi]) + "=" +
              fmt(complete ? last_sum[mi] / static_cast<double>(complete)
                           : -1.0,
                  "%.2f");
  }
  report(8,
         complete == 10 && zero_is_one &&
             decayed == static_cast<int>(n_measures),
         "top-25 overlap decays from 1.0 over a 0..2000 swap sweep "
         "for every measure",
         std::to_string(complete) + "/10 sweeps complete, mean final " +
             detail);
}

// ---- criterion 9: byte-identical CLI output across job counts ----------

struct CliRun {
  int exit_code = -1;
};

CliRun run_cli(const std::string& bin, const fs::path& dir,
               const std::string& args) {
  const std::string cmd = "cd '" + dir.string() + "' && '" + bin + "' " +
                          args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void criterion_9() {
  const char* bin = std::getenv("NETSTAB_BIN");
  if (bin == nullptr) {
    report(9, false, "CLI output is byte-identical across job counts",
           "NETSTAB_BIN not set");
    return;
  }
  const fs::path dir =
      fs::temp_directory_path() /
      ("netstab_accept_" + std::to_string(static_cast<unsigned>(::getpid())));
  fs::create_directories(dir);

  bool ok = true;
  std::string detail = "report and scatter files match";
  const auto fail = [&](const std::string& why) {
    ok = false;
    detail = why;
  };

  if (run_cli(bin, dir,
              "generate --model scale-free --nodes 500 --gamma 2.1 --seed 7 "
              "-o g.txt")
          .exit_code != 0) {
    fail("generate failed");
  }
  const std::string flags =
      "stability g.txt --steps 400 --seed 1 --seed 2 --seed 3 --top-k 25";
  if (ok && run_cli(bin, dir, flags + " --jobs 1 -o r1.json").exit_code != 0) {
    fail("stability --jobs 1 failed");
  }
  if (ok && run_cli(bin, dir, flags + " --jobs 4 -o r4.json").exit_code != 0) {
    fail("stability --jobs 4 failed");
  }
  if (ok && run_cli(bin, dir, flags + " --jobs 1 -o r1b.json").exit_code != 0) {
    fail("stability rerun failed");
  }
  if (ok) {
    const auto r1 = slurp(dir / "r1.json");
    if (r1.empty() || r1 != slurp(dir / "r4.json") ||
        r1 != slurp(dir / "r1b.json")) {
      fail("report bytes differ");
    }
    for (const int seed : {1, 2, 3}) {
      const std::string name = "scatter.seed" + std::to_string(seed) + ".csv";
      const auto s1 = slurp(dir / ("r1." + name));
      if (s1.empty() || s1 != slurp(dir / ("r4." + name)) ||
          s1 != slurp(dir / ("r1b." + name))) {
        fail("scatter bytes differ for seed " + std::to_string(seed));
      }
    }
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  report(9, ok, "CLI output is byte-identical across job counts and reruns",
         detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
