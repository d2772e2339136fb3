#include "netstab/io_formats.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "netstab/errors.hpp"

namespace netstab {

namespace {

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

// Sample mean and standard deviation; sd is null for fewer than 2 values.
std::pair<double, nlohmann::ordered_json> mean_sd(
    const std::vector<double>& values) {
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (values.size() < 2) return {mean, nullptr};
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return {mean, std::sqrt(acc / static_cast<double>(values.size() - 1))};
}

}  // namespace

std::string format_score(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_centrality_csv(std::ostream& out, const Graph& g,
                          const std::vector<Measure>& measures,
                          const std::vector<std::vector<double>>& scores) {
  out << "node,measure,score\n";
  for (std::size_t mi = 0; mi < measures.size(); ++mi) {
    const std::string name = measure_name(measures[mi]);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      out << csv_field(g.label(v)) << ',' << name << ','
          << format_score(scores[mi][v]) << '\n';
    }
  }
}

nlohmann::ordered_json centrality_json(
    const Graph& g, const std::vector<Measure>& measures,
    const std::vector<std::vector<double>>& scores) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t mi = 0; mi < measures.size(); ++mi) {
    const std::string name = measure_name(measures[mi]);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      rows.push_back({{"node", g.label(v)},
                      {"measure", name},
                      {"score", scores[mi][v]}});
    }
  }
  return rows;
}

nlohmann::ordered_json trace_json(const PerturbationTrace& trace) {
  nlohmann::ordered_json series = nlohmann::ordered_json::array();
  for (const auto& r : trace.assortativity_series) {
    series.push_back(optional_number(r));
  }
  return {{"successful_steps", trace.successful_steps},
          {"attempted_steps", trace.attempted_steps},
          {"assortativity_series", series}};
}

nlohmann::ordered_json plan_json(const PerturbationPlan& plan) {
  nlohmann::ordered_json steps;
  if (plan.steps) {
    steps = *plan.steps;
  } else {
    steps = "auto";
  }
  return {{"model", plan.model},
          {"steps", steps},
          {"direction", direction_name(plan.direction)},
          {"max_attempts_factor", plan.max_attempts_factor}};
}

void write_scatter_csv(std::ostream& out, const Graph& g,
                       const ExperimentResult& result,
                       std::size_t run_index) {
  const StabilityRun& run = result.runs.at(run_index);
  out << "node,rank_original,rank_perturbed,measure\n";
  for (std::size_t mi = 0; mi < result.measures.size(); ++mi) {
    const std::string name = measure_name(result.measures[mi]);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      out << csv_field(g.label(v)) << ',' << result.original_ranks[mi][v]
          << ',' << run.perturbed_ranks[mi][v] << ',' << name << '\n';
    }
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "swap_count,r,measure,jaccard\n";
  for (const SweepRow& row : result.rows) {
    for (std::size_t mi = 0; mi < result.measures.size(); ++mi) {
      out << row.swap_count << ',';
      if (row.r) out << format_score(*row.r);
      out << ',' << measure_name(result.measures[mi]) << ','
          << format_score(row.jaccard[mi]) << '\n';
    }
  }
}

nlohmann::ordered_json experiment_json(const ExperimentResult& result,
                                       const std::string& graph_file,
                                       const std::string& graph_hash,
                                       const PerturbationPlan& plan) {
  nlohmann::ordered_json doc;
  doc["graph_file"] = graph_file;
  doc["graph_hash"] = graph_hash;
  doc["plan"] = plan_json(plan);
  doc["k"] = result.k;
  nlohmann::ordered_json seeds = nlohmann::ordered_json::array();
  for (const auto& run : result.runs) seeds.push_back(run.seed);
  doc["seeds"] = seeds;

  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (const auto& run : result.runs) {
    for (const auto& ms : run.metrics) {
      reports.push_back({{"measure", measure_name(ms.measure)},
                         {"mu", ms.mu},
                         {"sigma", ms.sigma},
                         {"jaccard_top_k", ms.jaccard},
                         {"k", result.k},
                         {"swaps_applied", run.swaps_applied},
                         {"r_before", optional_number(run.r_before)},
                         {"r_after", optional_number(run.r_after)},
                         {"seed", run.seed}});
    }
  }
  doc["reports"] = reports;

  nlohmann::ordered_json summary = nlohmann::ordered_json::array();
  for (std::size_t mi = 0; mi < result.measures.size(); ++mi) {
    std::vector<double> mus, sigmas, jaccards;
    for (const auto& run : result.runs) {
      mus.push_back(run.metrics[mi].mu);
      sigmas.push_back(run.metrics[mi].sigma);
      jaccards.push_back(run.metrics[mi].jaccard);
    }
    const auto [mu_mean, mu_sd] = mean_sd(mus);
    const auto [sigma_mean, sigma_sd] = mean_sd(sigmas);
    const auto [jac_mean, jac_sd] = mean_sd(jaccards);
    summary.push_back({{"measure", measure_name(result.measures[mi])},
                       {"mu_mean", mu_mean},
                       {"mu_sd", mu_sd},
                       {"sigma_mean", sigma_mean},
                       {"sigma_sd", sigma_sd},
                       {"jaccard_mean", jac_mean},
                       {"jaccard_sd", jac_sd}});
  }
  doc["summary"] = summary;
  return doc;
}

nlohmann::ordered_json generation_meta_json(const GeneratorSpec& spec,
                                            const GenerationResult& result) {
  const Graph& g = result.graph;
  std::size_t nonisolated = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) > 0) ++nonisolated;
  }
  nlohmann::ordered_json gamma_hat = nullptr;
  try {
    gamma_hat = estimate_gamma(g, spec.k_min);
  } catch (const std::domain_error&) {
    // Too few tail degrees; leave null.
  }
  nlohmann::ordered_json gamma_target = nullptr;
  if (spec.model == kModelScaleFree) gamma_target = spec.gamma;
  return {{"model", spec.model},
          {"n_target", spec.n},
          {"n_realized_nonisolated", nonisolated},
          {"m_target", result.m_target},
          {"m_realized", g.edge_count()},
          {"gamma_target", gamma_target},
          {"gamma_hat", gamma_hat},
          {"r", optional_number(g.assortativity())},
          {"seed", spec.seed}};
}

std::string fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for hashing");
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ULL;
    }
    if (got < static_cast<std::streamsize>(sizeof(buf))) break;
  }
  char hex[32];
  std::snprintf(hex, sizeof(hex), "fnv1a64:%016llx",
                static_cast<unsigned long long>(hash));
  return hex;
}

}  // namespace netstab
