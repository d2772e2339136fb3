#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "netstab/centrality.hpp"
#include "netstab/generate.hpp"
#include "netstab/graph.hpp"
#include "netstab/randomize.hpp"
#include "netstab/stability.hpp"

namespace netstab {

// Shortest representation with up to 12 significant digits ("%.12g").
std::string format_score(double value);

// Quotes a CSV field when it contains a comma, quote, or newline.
std::string csv_field(const std::string& value);

// node,measure,score — one row per (measure, node), in the given order.
void write_centrality_csv(std::ostream& out, const Graph& g,
                          const std::vector<Measure>& measures,
                          const std::vector<std::vector<double>>& scores);

// Same rows as the CSV, as an array of {node, measure, score} objects.
nlohmann::ordered_json centrality_json(const Graph& g,
                                       const std::vector<Measure>& measures,
                                       const std::vector<std::vector<double>>& scores);

// {successful_steps, attempted_steps, assortativity_series}; undefined
// assortativity entries are null.
nlohmann::ordered_json trace_json(const PerturbationTrace& trace);

// {model, steps ("auto" or number), direction, max_attempts_factor}.
// The seed is reported alongside results, not in the plan.
nlohmann::ordered_json plan_json(const PerturbationPlan& plan);

// node,rank_original,rank_perturbed,measure for one run of an experiment.
void write_scatter_csv(std::ostream& out, const Graph& g,
                       const ExperimentResult& result, std::size_t run_index);

// swap_count,r,measure,jaccard; undefined r is an empty field.
void write_sweep_csv(std::ostream& out, const SweepResult& result);

// Full stability report: metadata (graph_file, graph_hash, plan, k,
// seeds), one report object per (seed, measure), and per-measure summary
// rows with mean and sample standard deviation over seeds (sd is null
// with a single seed).
nlohmann::ordered_json experiment_json(const ExperimentResult& result,
                                       const std::string& graph_file,
                                       const std::string& graph_hash,
                                       const PerturbationPlan& plan);

// {model, n_target, n_realized_nonisolated, m_target, m_realized,
// gamma_target, gamma_hat, r, seed}; inapplicable or unavailable entries
// are null.
nlohmann::ordered_json generation_meta_json(const GeneratorSpec& spec,
                                            const GenerationResult& result);

// FNV-1a 64-bit over the file's bytes, as "fnv1a64:" + 16 hex digits.
std::string fnv1a64_file(const std::string& path);

}  // namespace netstab
