#include "ridpolar/csv_svg.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace ridpolar {

void write_pt_csv(std::ostream& os, const std::vector<PtRow>& rows) {
  os << "delta,algo,family,min_rate,success_prob\n";
  for (const auto& r : rows)
    fmt::print(os, "{:.6g},{},{},{},{:.6g}\n", r.delta, to_string(r.algo), to_string(r.family),
               std::isnan(r.min_rate) ? std::string("nan") : fmt::format("{:.6g}", r.min_rate),
               r.success_prob);
}

std::vector<PtRow> read_pt_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "delta,algo,family,min_rate,success_prob")
    throw std::invalid_argument("csv: expected header delta,algo,family,min_rate,success_prob");
  std::vector<PtRow> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 5)
      throw std::invalid_argument("csv: line " + std::to_string(lineno) + " has " +
                                  std::to_string(f.size()) + " fields, expected 5");
    try {
      PtRow r;
      r.delta = std::stod(f[0]);
      r.algo = algorithm_from_string(f[1]);
      r.family = family_from_string(f[2]);
      r.min_rate = std::stod(f[3]);
      r.success_prob = std::stod(f[4]);
      rows.push_back(r);
    } catch (const std::logic_error& e) {
      throw std::invalid_argument("csv: line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

void write_pt_svg(std::ostream& os, const std::vector<PtRow>& rows) {
  constexpr double kW = 480, kH = 480, kLeft = 60, kTop = 20, kPlot = 380;
  auto px = [&](double d) { return kLeft + d * kPlot; };
  auto py = [&](double r) { return kTop + (1.0 - r) * kPlot; };
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  std::map<std::string, std::vector<const PtRow*>> series;
  for (const auto& r : rows) series[to_string(r.algo) + " " + to_string(r.family)].push_back(&r);

  fmt::print(os,
             "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
             "font-family=\"sans-serif\" font-size=\"12\">\n",
             kW, kH);
  fmt::print(os, "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
             kLeft, kTop, kPlot, kPlot);
  for (int k = 0; k <= 10; ++k) {
    const double v = k / 10.0;
    fmt::print(os, "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.1f}</text>\n", px(v),
               py(0) + 16, v);
    fmt::print(os, "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.1f}</text>\n", kLeft - 6,
               py(v) + 4, v);
  }
  fmt::print(os, "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">delta</text>\n", px(0.5),
             kH - 30);
  fmt::print(os,
             "<text x=\"16\" y=\"{:.1f}\" transform=\"rotate(-90 16 {:.1f})\" "
             "text-anchor=\"middle\">measurement rate</text>\n",
             py(0.5), py(0.5));
  fmt::print(os,
             "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"gray\" "
             "stroke-dasharray=\"4 4\"/>\n",
             px(0), py(0), px(1), py(1));

  std::size_t idx = 0;
  for (const auto& [name, pts] : series) {
    const char* color = kColors[idx % std::size(kColors)];
    std::string points;
    for (const PtRow* r : pts)
      if (!std::isnan(r->min_rate)) points += fmt::format("{:.1f},{:.1f} ", px(r->delta), py(r->min_rate));
    fmt::print(os, "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n",
               points, color);
    const double ly = kTop + 16 + 16.0 * static_cast<double>(idx);
    fmt::print(os, "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
               kLeft + 10, ly - 4, kLeft + 30, ly - 4, color);
    fmt::print(os, "<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", kLeft + 36, ly, name);
    ++idx;
  }
  os << "</svg>\n";
}

}  // namespace ridpolar
