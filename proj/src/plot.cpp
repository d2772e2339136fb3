#include "netstab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "netstab/errors.hpp"

namespace netstab {

namespace {

constexpr const char* kPalette[] = {"#4477aa", "#ee6677", "#228833",
                                    "#ccbb44", "#66ccee", "#aa3377",
                                    "#bbbbbb"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

// Shared frame: 640x480 canvas, square 390x390 plot area.
constexpr double kWidth = 640;
constexpr double kHeight = 480;
constexpr double kLeft = 70;
constexpr double kTop = 40;
constexpr double kPlotW = 390;
constexpr double kPlotH = 390;
constexpr double kRight = kLeft + kPlotW;
constexpr double kBottom = kTop + kPlotH;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line,
                                        std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          i += 2;
        } else {
          in_quotes = false;
          ++i;
        }
      } else {
        cur += c;
        ++i;
      }
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
      ++i;
    } else if (c == '"' && cur.empty()) {
      in_quotes = true;
      ++i;
    } else {
      cur += c;
      ++i;
    }
  }
  if (in_quotes) throw ParseError("unterminated quoted field", line_no);
  fields.push_back(cur);
  return fields;
}

void check_header(const std::vector<std::string>& got,
                  const std::vector<std::string>& want) {
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (i >= got.size()) {
      throw SchemaError("missing column '" + want[i] + "'", want[i]);
    }
    if (got[i] != want[i]) {
      throw SchemaError("expected column '" + want[i] + "', found '" +
                            got[i] + "'",
                        want[i]);
    }
  }
  if (got.size() > want.size()) {
    throw SchemaError("unexpected extra column '" + got[want.size()] + "'",
                      got[want.size()]);
  }
}

std::uint64_t parse_count(const std::string& s, const std::string& column,
                          std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad " + column + " value '" + s + "'", line_no);
  }
}

double parse_real(const std::string& s, const std::string& column,
                  std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad " + column + " value '" + s + "'", line_no);
  }
}

// Reads all rows after validating the header; returns row fields with
// their 1-based line numbers.
std::vector<std::pair<std::size_t, std::vector<std::string>>> read_rows(
    std::istream& in, const std::vector<std::string>& header) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw ParseError("empty file, expected a header row", 0);
  }
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  check_header(split_csv_line(line, line_no), header);
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line, line_no);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) +
                           " fields, found " + std::to_string(fields.size()),
                       line_no);
    }
    rows.emplace_back(line_no, std::move(fields));
  }
  if (rows.empty()) throw ParseError("no data rows", 0);
  return rows;
}

// Measures in order of first appearance, for stable color assignment.
template <typename T>
std::vector<std::string> measure_order(const std::vector<T>& points) {
  std::vector<std::string> order;
  for (const auto& p : points) {
    if (std::find(order.begin(), order.end(), p.measure) == order.end()) {
      order.push_back(p.measure);
    }
  }
  return order;
}

std::string svg_open() {
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
       "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) +
       " " + num(kHeight) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" +
       num(kHeight) + "\" fill=\"#ffffff\"/>\n";
  return s;
}

std::string axis_frame() {
  std::string s;
  s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
       num(kPlotW) + "\" height=\"" + num(kPlotH) +
       "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  return s;
}

std::string text_at(double x, double y, const std::string& s,
                    const std::string& anchor = "middle",
                    int size = 12) {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) +
         "\" font-family=\"sans-serif\" font-size=\"" +
         std::to_string(size) + "\" text-anchor=\"" + anchor + "\">" +
         xml_escape(s) + "</text>\n";
}

std::string legend_swatches(const std::vector<std::string>& labels,
                            const std::vector<std::string>& colors,
                            const std::vector<std::string>& notes) {
  std::string s;
  double y = kTop + 10;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    s += "<rect x=\"" + num(kRight + 15) + "\" y=\"" + num(y - 9) +
         "\" width=\"12\" height=\"12\" fill=\"" + colors[i] + "\"/>\n";
    s += text_at(kRight + 32, y + 1, labels[i], "start", 11);
    y += 18;
  }
  for (const auto& note : notes) {
    y += 4;
    s += text_at(kRight + 15, y + 1, note, "start", 9);
    y += 14;
  }
  return s;
}

}  // namespace

std::vector<ScatterPoint> parse_scatter_csv(std::istream& in) {
  const std::vector<std::string> header = {"node", "rank_original",
                                           "rank_perturbed", "measure"};
  std::vector<ScatterPoint> points;
  for (auto& [line_no, f] : read_rows(in, header)) {
    ScatterPoint p;
    p.node = std::move(f[0]);
    p.rank_original = static_cast<std::size_t>(
        parse_count(f[1], "rank_original", line_no));
    p.rank_perturbed = static_cast<std::size_t>(
        parse_count(f[2], "rank_perturbed", line_no));
    if (p.rank_original == 0 || p.rank_perturbed == 0) {
      throw ParseError("ranks are 1-based, found 0", line_no);
    }
    p.measure = std::move(f[3]);
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<SweepPoint> parse_sweep_csv(std::istream& in) {
  const std::vector<std::string> header = {"swap_count", "r", "measure",
                                           "jaccard"};
  std::vector<SweepPoint> points;
  for (auto& [line_no, f] : read_rows(in, header)) {
    SweepPoint p;
    p.swap_count = parse_count(f[0], "swap_count", line_no);
    if (!f[1].empty()) p.r = parse_real(f[1], "r", line_no);
    p.measure = std::move(f[2]);
    p.jaccard = parse_real(f[3], "jaccard", line_no);
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<MeasureBias> parse_report_biases(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
  if (!doc.is_object() || !doc.contains("reports")) {
    throw SchemaError("report JSON lacks a 'reports' array", "reports");
  }
  const auto& reports = doc["reports"];
  if (!reports.is_array() || reports.empty()) {
    throw SchemaError("'reports' must be a nonempty array", "reports");
  }
  std::vector<MeasureBias> biases;
  for (const auto& item : reports) {
    for (const char* key : {"measure", "mu", "sigma"}) {
      if (!item.is_object() || !item.contains(key)) {
        throw SchemaError(std::string("report entry lacks '") + key + "'",
                          key);
      }
    }
    if (!item["measure"].is_string() || !item["mu"].is_number() ||
        !item["sigma"].is_number()) {
      throw SchemaError("report entry has wrongly typed measure/mu/sigma",
                        "mu");
    }
    const std::string measure = item["measure"].get<std::string>();
    auto it = std::find_if(biases.begin(), biases.end(), [&](const auto& b) {
      return b.measure == measure;
    });
    if (it == biases.end()) {
      biases.push_back({measure, {}, {}});
      it = biases.end() - 1;
    }
    it->mu.push_back(item["mu"].get<double>());
    it->sigma.push_back(item["sigma"].get<double>());
  }
  return biases;
}

std::string render_scatter_svg(const std::vector<ScatterPoint>& points) {
  if (points.empty()) throw std::invalid_argument("no scatter points");
  std::size_t n = 1;
  for (const auto& p : points) {
    n = std::max({n, p.rank_original, p.rank_perturbed});
  }
  const auto order = measure_order(points);
  // Rank 1 sits at the bottom-left; both axes use the same linear map,
  // so rank_original == rank_perturbed lands exactly on the diagonal.
  const auto coord = [&](std::size_t rank) {
    if (n == 1) return 0.5 * kPlotW;
    return (static_cast<double>(rank - 1) / static_cast<double>(n - 1)) *
           kPlotW;
  };

  std::string s = svg_open();
  s += text_at((kLeft + kRight) / 2, kTop - 15, "rank comparison", "middle",
               14);
  s += axis_frame();
  s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kBottom) + "\" x2=\"" +
       num(kRight) + "\" y2=\"" + num(kTop) +
       "\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
  for (const auto& p : points) {
    const std::size_t ci =
        static_cast<std::size_t>(std::find(order.begin(), order.end(),
                                           p.measure) -
                                 order.begin()) %
        kPaletteSize;
    const double cx = kLeft + coord(p.rank_original);
    const double cy = kBottom - coord(p.rank_perturbed);
    s += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) +
         "\" r=\"2\" fill=\"" + kPalette[ci] + "\" fill-opacity=\"0.6\"/>\n";
  }
  // Tick labels at both extremes of each axis.
  s += text_at(kLeft, kBottom + 16, "1");
  s += text_at(kRight, kBottom + 16, std::to_string(n));
  s += text_at(kLeft - 8, kBottom + 4, "1", "end");
  s += text_at(kLeft - 8, kTop + 4, std::to_string(n), "end");
  s += text_at((kLeft + kRight) / 2, kBottom + 34, "original rank");
  s += "<g transform=\"rotate(-90 " + num(kLeft - 40) + " " +
       num((kTop + kBottom) / 2) + ")\">" +
       text_at(kLeft - 40, (kTop + kBottom) / 2, "perturbed rank") + "</g>\n";
  std::vector<std::string> colors;
  for (std::size_t i = 0; i < order.size(); ++i) {
    colors.push_back(kPalette[i % kPaletteSize]);
  }
  s += legend_swatches(order, colors, {});
  s += "</svg>\n";
  return s;
}

std::string render_bars_svg(const std::vector<MeasureBias>& biases) {
  if (biases.empty()) throw std::invalid_argument("no bias entries");
  // Mean of the inverses over runs where the value is positive; inverse
  // of zero bias would be infinite, so zero-bias runs are left out and a
  // measure with no positive run at all loses its bar.
  struct Bar {
    std::optional<double> inv_mu;
    std::optional<double> inv_sigma;
  };
  std::vector<Bar> bars(biases.size());
  std::vector<std::string> notes;
  const auto mean_inverse =
      [](const std::vector<double>& vals) -> std::optional<double> {
    double acc = 0.0;
    std::size_t used = 0;
    for (double v : vals) {
      if (v > 0.0) {
        acc += 1.0 / v;
        ++used;
      }
    }
    if (used == 0) return std::nullopt;
    return acc / static_cast<double>(used);
  };
  double top = 0.0;
  for (std::size_t i = 0; i < biases.size(); ++i) {
    bars[i].inv_mu = mean_inverse(biases[i].mu);
    bars[i].inv_sigma = mean_inverse(biases[i].sigma);
    if (!bars[i].inv_mu) {
      notes.push_back(biases[i].measure + ": 1/mu omitted (mu = 0)");
    }
    if (!bars[i].inv_sigma) {
      notes.push_back(biases[i].measure + ": 1/sigma omitted (sigma = 0)");
    }
    top = std::max({top, bars[i].inv_mu.value_or(0.0),
                    bars[i].inv_sigma.value_or(0.0)});
  }
  if (top <= 0.0) top = 1.0;
  top *= 1.05;

  std::string s = svg_open();
  s += text_at((kLeft + kRight) / 2, kTop - 15, "ranking stability", "middle",
               14);
  s += axis_frame();
  const double group_w = kPlotW / static_cast<double>(biases.size());
  const double bar_w = group_w * 0.35;
  const auto bar_height = [&](double v) { return v / top * kPlotH; };
  for (std::size_t i = 0; i < biases.size(); ++i) {
    const double gx = kLeft + group_w * static_cast<double>(i);
    if (bars[i].inv_mu) {
      const double h = bar_height(*bars[i].inv_mu);
      s += "<rect x=\"" + num(gx + group_w * 0.1) + "\" y=\"" +
           num(kBottom - h) + "\" width=\"" + num(bar_w) + "\" height=\"" +
           num(h) + "\" fill=\"" + kPalette[0] + "\"/>\n";
    }
    if (bars[i].inv_sigma) {
      const double h = bar_height(*bars[i].inv_sigma);
      s += "<rect x=\"" + num(gx + group_w * 0.55) + "\" y=\"" +
           num(kBottom - h) + "\" width=\"" + num(bar_w) + "\" height=\"" +
           num(h) + "\" fill=\"" + kPalette[1] + "\"/>\n";
    }
    s += text_at(gx + group_w / 2, kBottom + 16, biases[i].measure, "middle",
                 10);
  }
  char top_label[32];
  std::snprintf(top_label, sizeof(top_label), "%.4g", top);
  s += text_at(kLeft - 8, kTop + 4, top_label, "end", 10);
  s += text_at(kLeft - 8, kBottom + 4, "0", "end", 10);
  s += "<g transform=\"rotate(-90 " + num(kLeft - 40) + " " +
       num((kTop + kBottom) / 2) + ")\">" +
       text_at(kLeft - 40, (kTop + kBottom) / 2,
               "inverse bias (higher is more stable)") +
       "</g>\n";
  s += legend_swatches({"1/mu", "1/sigma"}, {kPalette[0], kPalette[1]},
                       notes);
  s += "</svg>\n";
  return s;
}

std::string render_sweep_svg(const std::vector<SweepPoint>& points) {
  if (points.empty()) throw std::invalid_argument("no sweep points");
  const auto order = measure_order(points);
  std::uint64_t max_swaps = 0;
  for (const auto& p : points) max_swaps = std::max(max_swaps, p.swap_count);

  const auto x_of = [&](std::uint64_t c) {
    if (max_swaps == 0) return kLeft + 0.5 * kPlotW;
    return kLeft + static_cast<double>(c) / static_cast<double>(max_swaps) *
                       kPlotW;
  };
  const auto y_of = [&](double j) { return kBottom - j * kPlotH; };

  std::string s = svg_open();
  s += text_at((kLeft + kRight) / 2, kTop - 15,
               "top-k overlap under steered rewiring", "middle", 14);
  s += axis_frame();
  for (std::size_t mi = 0; mi < order.size(); ++mi) {
    std::string poly;
    for (const auto& p : points) {
      if (p.measure != order[mi]) continue;
      poly += num(x_of(p.swap_count)) + "," + num(y_of(p.jaccard)) + " ";
    }
    if (poly.empty()) continue;
    poly.pop_back();
    s += "<polyline points=\"" + poly + "\" fill=\"none\" stroke=\"" +
         kPalette[mi % kPaletteSize] + "\" stroke-width=\"1.5\"/>\n";
  }
  s += text_at(kLeft, kBottom + 16, "0");
  s += text_at(kRight, kBottom + 16, std::to_string(max_swaps));
  s += text_at(kLeft - 8, kBottom + 4, "0", "end");
  s += text_at(kLeft - 8, kTop + 4, "1", "end");
  s += text_at((kLeft + kRight) / 2, kBottom + 34, "successful swaps");
  s += "<g transform=\"rotate(-90 " + num(kLeft - 40) + " " +
       num((kTop + kBottom) / 2) + ")\">" +
       text_at(kLeft - 40, (kTop + kBottom) / 2, "top-k Jaccard overlap") +
       "</g>\n";
  std::vector<std::string> colors;
  for (std::size_t i = 0; i < order.size(); ++i) {
    colors.push_back(kPalette[i % kPaletteSize]);
  }
  s += legend_swatches(order, colors, {});
  s += "</svg>\n";
  return s;
}

}  // namespace netstab
