#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "netstab/errors.hpp"
#include "netstab/generate.hpp"
#include "netstab/graph.hpp"
#include "netstab/io_formats.hpp"
#include "netstab/plot.hpp"
#include "netstab/randomize.hpp"
#include "netstab/stability.hpp"

namespace {

using namespace netstab;

// Exit codes: 0 success, 1 I/O, 2 usage or bad input, 3 saturated run
// with partial output written.
constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSaturated = 3;

// Strict decimal parse. stoull alone is too lax: it tolerates signs,
// whitespace, and wraps negatives around.
std::optional<std::uint64_t> parse_u64(const std::string& s) {
  if (s.empty() ||
      !std::all_of(s.begin(), s.end(),
                   [](unsigned char c) { return std::isdigit(c); })) {
    return std::nullopt;
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    return std::nullopt;  // overflow
  }
}

std::uint64_t parse_seed_string(const std::string& s, const std::string& src) {
  const auto v = parse_u64(s);
  if (!v) {
    throw std::invalid_argument(src + " is not a valid unsigned 64-bit seed: '" +
                                s + "'");
  }
  return *v;
}

// Seeds from --seed occurrences, falling back to NETSTAB_SEED.
std::vector<std::uint64_t> resolve_seeds(const std::vector<std::string>& flags,
                                         bool allow_many) {
  std::vector<std::uint64_t> seeds;
  for (const auto& s : flags) seeds.push_back(parse_seed_string(s, "--seed"));
  if (seeds.empty()) {
    if (const char* env = std::getenv("NETSTAB_SEED")) {
      seeds.push_back(parse_seed_string(env, "NETSTAB_SEED"));
    }
  }
  if (seeds.empty()) {
    throw std::invalid_argument("a seed is required (--seed or NETSTAB_SEED)");
  }
  if (!allow_many && seeds.size() > 1) {
    throw std::invalid_argument("this command takes exactly one seed");
  }
  return seeds;
}

// "sf.txt" + ".meta.json" -> "sf.meta.json": the final extension of the
// basename is replaced by the suffix.
std::string sibling_path(const std::string& path, const std::string& suffix) {
  const auto slash = path.find_last_of("/\\");
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos ||
      (slash != std::string::npos && dot < slash)) {
    return path + suffix;
  }
  return path.substr(0, dot) + suffix;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write to " + path + " failed");
}

std::vector<Measure> resolve_measures(const std::vector<std::string>& names) {
  const std::vector<Measure> all(kAllMeasures.begin(), kAllMeasures.end());
  if (names.empty()) return all;
  for (const auto& n : names) {
    if (n == "all") return all;
  }
  std::vector<Measure> out;
  for (const auto& n : names) {
    Measure m;
    try {
      m = measure_from_name(n);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument(
          "unknown measure '" + n +
          "'; valid measures: h, lc, lse, lcc, tc, lac, all");
    }
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

std::optional<std::uint64_t> resolve_steps(const std::string& steps_flag) {
  if (steps_flag == "auto") return std::nullopt;
  const auto v = parse_u64(steps_flag);
  if (!v) {
    throw std::invalid_argument("--steps must be 'auto' or a nonnegative "
                                "integer, got '" +
                                steps_flag + "'");
  }
  return v;
}

SteerDirection resolve_direction(const std::string& flag, int model) {
  if (model == 1) {
    if (!flag.empty() && flag != "none") {
      throw std::invalid_argument("--direction applies to --model 2 only");
    }
    return SteerDirection::kNone;
  }
  if (flag.empty() || flag == "none") {
    throw std::invalid_argument(
        "--model 2 requires --direction increase or decrease");
  }
  try {
    return direction_from_name(flag);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(
        "--direction must be 'increase' or 'decrease', got '" + flag + "'");
  }
}

std::string json_text(const nlohmann::ordered_json& doc) {
  return doc.dump(2) + "\n";
}

// ----- generate ---------------------------------------------------------

struct GenerateOpts {
  std::string model;
  std::size_t nodes = 0;
  double gamma = 0.0;
  double mean_degree = 0.0;
  std::size_t k_min = 0;
  bool k_min_given = false;
  std::vector<std::string> seed_flags;
  std::string out;
};

int cmd_generate(const GenerateOpts& o) {
  GeneratorSpec spec;
  spec.model = o.model;
  spec.n = o.nodes;
  spec.gamma = o.gamma;
  spec.mean_degree = o.mean_degree;
  spec.seed = resolve_seeds(o.seed_flags, false).front();
  if (o.k_min_given) {
    spec.k_min = o.k_min;
  } else {
    spec.k_min = o.model == kModelScaleFree ? 2 : 1;
  }
  if (o.model == kModelScaleFree && !(o.gamma > 0.0)) {
    throw std::invalid_argument("--model scale-free requires --gamma");
  }
  if (o.model == kModelExponential && !(o.mean_degree > 0.0)) {
    throw std::invalid_argument("--model exponential requires --mean-degree");
  }

  const GenerationResult result = generate_network(spec);
  save_edge_list_file(result.graph, o.out);
  write_text_file(sibling_path(o.out, ".meta.json"),
                  json_text(generation_meta_json(spec, result)));
  return kExitOk;
}

// ----- centrality -------------------------------------------------------

struct CentralityOpts {
  std::string input;
  std::vector<std::string> measures;
  std::string format = "csv";
  unsigned jobs = 1;
  std::string out;
};

int cmd_centrality(const CentralityOpts& o) {
  if (o.format != "csv" && o.format != "json") {
    throw std::invalid_argument("--format must be csv or json");
  }
  const auto measures = resolve_measures(o.measures);
  const Graph g = load_edge_list_file(o.input).graph;
  const auto scores = compute_all(g, measures, o.jobs);

  std::string payload;
  if (o.format == "csv") {
    std::ostringstream s;
    write_centrality_csv(s, g, measures, scores);
    payload = s.str();
  } else {
    payload = json_text(centrality_json(g, measures, scores));
  }
  if (o.out.empty()) {
    std::cout << payload;
  } else {
    write_text_file(o.out, payload);
  }
  return kExitOk;
}

// ----- perturb ----------------------------------------------------------

struct PerturbOpts {
  std::string input;
  int model = 1;
  std::string steps = "auto";
  std::string direction;
  std::size_t checkpoints = 1;
  bool checkpoints_given = false;
  std::uint64_t max_attempts_factor = 100;
  std::vector<std::string> seed_flags;
  std::string out;
};

int cmd_perturb(const PerturbOpts& o) {
  PerturbationPlan plan;
  plan.model = o.model;
  plan.steps = resolve_steps(o.steps);
  plan.direction = resolve_direction(o.direction, o.model);
  plan.seed = resolve_seeds(o.seed_flags, false).front();
  plan.max_attempts_factor = o.max_attempts_factor;
  if (o.model == 1 && o.checkpoints_given && o.checkpoints != 1) {
    throw std::invalid_argument("--checkpoints applies to --model 2 only");
  }
  if (o.checkpoints < 1) {
    throw std::invalid_argument("--checkpoints must be at least 1");
  }

  const Graph g = load_edge_list_file(o.input).graph;
  const std::string trace_path = sibling_path(o.out, ".trace.json");
  try {
    const PerturbationOutcome outcome =
        run_perturbation(g, plan, o.checkpoints);
    save_edge_list_file(outcome.graph, o.out);
    write_text_file(trace_path, json_text(trace_json(outcome.trace)));
  } catch (const SaturationError& e) {
    save_edge_list_file(e.partial_graph(), o.out);
    write_text_file(trace_path, json_text(trace_json(e.trace())));
    std::cerr << "saturated: " << e.what() << "\npartial result written to "
              << o.out << "\n";
    return kExitSaturated;
  }
  return kExitOk;
}

// ----- stability --------------------------------------------------------

struct StabilityOpts {
  std::string input;
  std::vector<std::string> measures;
  int model = 1;
  std::string steps = "auto";
  std::string direction;
  std::uint64_t max_attempts_factor = 100;
  std::size_t top_k = 25;
  unsigned jobs = 1;
  std::vector<std::string> seed_flags;
  std::string out;
};

int cmd_stability(const StabilityOpts& o) {
  PerturbationPlan plan;
  plan.model = o.model;
  plan.steps = resolve_steps(o.steps);
  plan.direction = resolve_direction(o.direction, o.model);
  plan.max_attempts_factor = o.max_attempts_factor;
  const auto seeds = resolve_seeds(o.seed_flags, true);
  const auto measures = resolve_measures(o.measures);

  const Graph g = load_edge_list_file(o.input).graph;
  ExperimentResult result;
  try {
    result = run_stability_experiment(g, measures, plan, seeds, o.top_k,
                                      o.jobs);
  } catch (const SaturationError& e) {
    std::cerr << "saturated: " << e.what() << "\n";
    return kExitSaturated;
  }

  write_text_file(o.out, json_text(experiment_json(result, o.input,
                                                   fnv1a64_file(o.input),
                                                   plan)));
  for (std::size_t si = 0; si < result.runs.size(); ++si) {
    std::ostringstream s;
    write_scatter_csv(s, g, result, si);
    write_text_file(sibling_path(o.out, ".scatter.seed" +
                                            std::to_string(result.runs[si].seed) +
                                            ".csv"),
                    s.str());
  }
  return kExitOk;
}

// ----- sweep ------------------------------------------------------------

struct SweepOpts {
  std::string input;
  std::vector<std::string> measures;
  std::string direction;
  std::uint64_t max_steps = 0;
  std::size_t checkpoints = 5;
  std::uint64_t max_attempts_factor = 100;
  std::size_t top_k = 25;
  unsigned jobs = 1;
  std::vector<std::string> seed_flags;
  std::string out;
};

int cmd_sweep(const SweepOpts& o) {
  const SteerDirection dir = resolve_direction(o.direction, 2);
  const auto seed = resolve_seeds(o.seed_flags, false).front();
  const auto measures = resolve_measures(o.measures);

  const Graph g = load_edge_list_file(o.input).graph;
  const SweepResult result =
      run_assortativity_sweep(g, measures, dir, o.max_steps, o.checkpoints,
                              o.top_k, seed, o.max_attempts_factor, o.jobs);
  std::ostringstream s;
  write_sweep_csv(s, result);
  write_text_file(o.out, s.str());
  if (result.saturated) {
    std::cerr << "saturated: steering ran out of attempts; " << o.out
              << " holds the checkpoints that were reached\n";
    return kExitSaturated;
  }
  return kExitOk;
}

// ----- plot -------------------------------------------------------------

struct PlotOpts {
  std::string input;
  std::string kind;
  std::string format = "svg";
  std::string out;
};

int cmd_plot(const PlotOpts& o) {
  if (o.format != "svg") {
    throw std::invalid_argument("--format must be svg");
  }
  std::ifstream in(o.input, std::ios::binary);
  if (!in) throw IoError("cannot open " + o.input + " for reading");

  std::string svg;
  if (o.kind == "scatter") {
    svg = render_scatter_svg(parse_scatter_csv(in));
  } else if (o.kind == "bars") {
    svg = render_bars_svg(parse_report_biases(in));
  } else if (o.kind == "sweep") {
    svg = render_sweep_svg(parse_sweep_csv(in));
  } else {
    throw std::invalid_argument(
        "--kind must be scatter, bars, or sweep, got '" + o.kind + "'");
  }
  write_text_file(o.out, svg);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "netstab: how stable are local centrality rankings under "
      "degree-preserving rewiring?"};
  app.require_subcommand(1);

  GenerateOpts gen;
  CLI::App* gen_cmd = app.add_subcommand(
      "generate", "synthesize a scale-free or exponential network");
  gen_cmd->add_option("--model", gen.model, "scale-free | exponential")
      ->required()
      ->check(CLI::IsMember({kModelScaleFree, kModelExponential}));
  gen_cmd->add_option("--nodes", gen.nodes, "node count")->required();
  gen_cmd->add_option("--gamma", gen.gamma,
                      "power-law exponent (scale-free)");
  gen_cmd->add_option("--mean-degree", gen.mean_degree,
                      "target mean degree (exponential)");
  auto* kmin_opt =
      gen_cmd->add_option("--k-min", gen.k_min,
                          "minimum degree (default 2 scale-free, "
                          "1 exponential)");
  gen_cmd->add_option("--seed", gen.seed_flags, "RNG seed")->delimiter(',');
  gen_cmd->add_option("-o,--out", gen.out,
                      "edge-list path; metadata lands next to it")
      ->required();

  CentralityOpts cen;
  CLI::App* cen_cmd = app.add_subcommand(
      "centrality", "score nodes with the six local measures");
  cen_cmd->add_option("graph", cen.input, "edge-list file")->required();
  cen_cmd->add_option("--measure", cen.measures,
                      "h, lc, lse, lcc, tc, lac, or all (repeatable)")
      ->delimiter(',');
  cen_cmd->add_option("--format", cen.format, "csv | json");
  cen_cmd->add_option("--jobs", cen.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  cen_cmd->add_option("-o,--out", cen.out, "output path (default stdout)");

  PerturbOpts per;
  CLI::App* per_cmd = app.add_subcommand(
      "perturb", "rewire a network while preserving every degree");
  per_cmd->add_option("graph", per.input, "edge-list file")->required();
  per_cmd->add_option("--model", per.model, "1 uniform | 2 steered")
      ->check(CLI::IsMember({1, 2}));
  per_cmd->add_option("--steps", per.steps,
                      "successful rewires, or 'auto' (n if n >= 2000, "
                      "else 10n)");
  per_cmd->add_option("--direction", per.direction,
                      "increase | decrease (model 2)");
  auto* cp_opt = per_cmd->add_option("--checkpoints", per.checkpoints,
                                     "assortativity samples (model 2)");
  per_cmd->add_option("--max-attempts-factor", per.max_attempts_factor,
                      "attempts allowed per requested step")
      ->check(CLI::PositiveNumber);
  per_cmd->add_option("--seed", per.seed_flags, "RNG seed")->delimiter(',');
  per_cmd->add_option("-o,--out", per.out,
                      "perturbed edge-list path; trace lands next to it")
      ->required();

  StabilityOpts sta;
  CLI::App* sta_cmd = app.add_subcommand(
      "stability", "measure ranking drift under perturbation");
  sta_cmd->add_option("graph", sta.input, "edge-list file")->required();
  sta_cmd->add_option("--measure", sta.measures,
                      "h, lc, lse, lcc, tc, lac, or all (repeatable)")
      ->delimiter(',');
  sta_cmd->add_option("--model", sta.model, "1 uniform | 2 steered")
      ->check(CLI::IsMember({1, 2}));
  sta_cmd->add_option("--steps", sta.steps, "successful rewires or 'auto'");
  sta_cmd->add_option("--direction", sta.direction,
                      "increase | decrease (model 2)");
  sta_cmd->add_option("--max-attempts-factor", sta.max_attempts_factor,
                      "attempts allowed per requested step")
      ->check(CLI::PositiveNumber);
  sta_cmd->add_option("--top-k", sta.top_k, "overlap set size")
      ->check(CLI::PositiveNumber);
  sta_cmd->add_option("--jobs", sta.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  sta_cmd->add_option("--seed", sta.seed_flags,
                      "RNG seed, one run per seed (repeatable)")
      ->delimiter(',');
  sta_cmd->add_option("-o,--out", sta.out,
                      "report JSON path; per-seed scatter CSVs land next "
                      "to it")
      ->required();

  SweepOpts swp;
  CLI::App* swp_cmd = app.add_subcommand(
      "sweep", "track top-k overlap while steering assortativity");
  swp_cmd->add_option("graph", swp.input, "edge-list file")->required();
  swp_cmd->add_option("--measure", swp.measures,
                      "h, lc, lse, lcc, tc, lac, or all (repeatable)")
      ->delimiter(',');
  swp_cmd->add_option("--direction", swp.direction, "increase | decrease")
      ->required();
  swp_cmd->add_option("--max-steps", swp.max_steps,
                      "successful rewires at the last checkpoint")
      ->required();
  swp_cmd->add_option("--checkpoints", swp.checkpoints,
                      "evenly spaced sample points (including 0)");
  swp_cmd->add_option("--max-attempts-factor", swp.max_attempts_factor,
                      "attempts allowed per requested step")
      ->check(CLI::PositiveNumber);
  swp_cmd->add_option("--top-k", swp.top_k, "overlap set size")
      ->check(CLI::PositiveNumber);
  swp_cmd->add_option("--jobs", swp.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  swp_cmd->add_option("--seed", swp.seed_flags, "RNG seed")->delimiter(',');
  swp_cmd->add_option("-o,--out", swp.out, "sweep CSV path")->required();

  PlotOpts plt;
  CLI::App* plt_cmd =
      app.add_subcommand("plot", "render result files as SVG");
  plt_cmd->add_option("input", plt.input,
                      "scatter CSV, report JSON, or sweep CSV")
      ->required();
  plt_cmd->add_option("--kind", plt.kind, "scatter | bars | sweep")
      ->required();
  plt_cmd->add_option("--format", plt.format, "svg");
  plt_cmd->add_option("-o,--out", plt.out, "SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  gen.k_min_given = kmin_opt->count() > 0;
  per.checkpoints_given = cp_opt->count() > 0;

  try {
    if (gen_cmd->parsed()) return cmd_generate(gen);
    if (cen_cmd->parsed()) return cmd_centrality(cen);
    if (per_cmd->parsed()) return cmd_perturb(per);
    if (sta_cmd->parsed()) return cmd_stability(sta);
    if (swp_cmd->parsed()) return cmd_sweep(swp);
    if (plt_cmd->parsed()) return cmd_plot(plt);
    std::cerr << "no subcommand given\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    std::cerr << "parse error";
    if (e.line() > 0) std::cerr << " at line " << e.line();
    std::cerr << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const SchemaError& e) {
    std::cerr << "schema error in column '" << e.column() << "': " << e.what()
              << "\n";
    return kExitUsage;
  } catch (const SaturationError& e) {
    std::cerr << "saturated: " << e.what() << "\n";
    return kExitSaturated;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
