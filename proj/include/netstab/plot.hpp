#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace netstab {

struct ScatterPoint {
  std::string node;
  std::size_t rank_original = 0;
  std::size_t rank_perturbed = 0;
  std::string measure;
};

struct SweepPoint {
  std::uint64_t swap_count = 0;
  std::optional<double> r;
  std::string measure;
  double jaccard = 0.0;
};

// Per-run mu and sigma values for one measure, pulled from a stability
// report. Vectors are aligned (one entry per run).
struct MeasureBias {
  std::string measure;
  std::vector<double> mu;
  std::vector<double> sigma;
};

// Readers for the files the other subcommands emit. Header or field
// mismatches raise SchemaError naming the offending column; malformed
// values raise ParseError with the line number.
std::vector<ScatterPoint> parse_scatter_csv(std::istream& in);
std::vector<SweepPoint> parse_sweep_csv(std::istream& in);
std::vector<MeasureBias> parse_report_biases(std::istream& in);

// Self-contained SVG renderers. Output depends only on the input data:
// no timestamps, no environment lookups. Measures are colored in order
// of first appearance.

// Square rank-vs-rank scatter with the identity diagonal for reference.
// Both axes share one scale, so equal ranks land on the diagonal exactly.
std::string render_scatter_svg(const std::vector<ScatterPoint>& points);

// Grouped bars of mean 1/mu and 1/sigma per measure, averaged over the
// runs where the value is positive; a bar whose value is positive in no
// run is omitted and the omission is spelled out in the legend.
std::string render_bars_svg(const std::vector<MeasureBias>& biases);

// One jaccard-vs-swap-count polyline per measure.
std::string render_sweep_svg(const std::vector<SweepPoint>& points);

}  // namespace netstab
