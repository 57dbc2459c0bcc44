// Copyright 2026 the chromabench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "chromabench/bd.h"
#include "chromabench/image.h"
#include "common.h"

namespace chromabench::cli {
namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string YLabel(const std::string& metric) {
  if (metric == "psnr") return "PSNR (dB)";
  if (metric == "msssim") return "MS-SSIM";
  if (metric == "msssim_db") return "MS-SSIM (dB)";
  if (metric == "ciede2000") return "mean ΔE00";
  if (metric == "ciede_quality") return "5.0 − ΔE00";
  return metric;
}

std::string XmlEscape(const std::string& s) {
  std::string out;
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

// Tick positions with a 1/2/5 step covering [lo, hi].
std::vector<double> NiceTicks(double lo, double hi, int target) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / std::max(target - 1, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * mult >= raw) {
      step = mag * mult;
      break;
    }
  }
  std::vector<double> ticks;
  double t = std::ceil(lo / step) * step;
  for (; t <= hi + step * 1e-9; t += step) {
    ticks.push_back(std::fabs(t) < step * 1e-9 ? 0.0 : t);
  }
  return ticks;
}

std::string FmtTick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string RenderSvg(const std::vector<RdCurve>& curves,
                      const std::string& metric, const std::string& title) {
  constexpr double kWidth = 800.0;
  constexpr double kHeight = 560.0;
  constexpr double kLeft = 76.0;
  constexpr double kRight = 620.0;
  constexpr double kTop = 48.0;
  constexpr double kBottom = 500.0;

  double xmin = 1e300;
  double xmax = -1e300;
  double ymin = 1e300;
  double ymax = -1e300;
  for (const RdCurve& c : curves) {
    for (const RdPoint& p : c.points) {
      xmin = std::min(xmin, p.rate);
      xmax = std::max(xmax, p.rate);
      ymin = std::min(ymin, p.distortion);
      ymax = std::max(ymax, p.distortion);
    }
  }
  auto pad = [](double* lo, double* hi) {
    const double span = *hi - *lo;
    const double margin = span > 0.0 ? span * 0.05 : std::fabs(*lo) * 0.05 + 0.5;
    *lo -= margin;
    *hi += margin;
  };
  pad(&xmin, &xmax);
  pad(&ymin, &ymax);
  if (xmin < 0.0) xmin = 0.0;

  auto sx = [&](double v) {
    return kLeft + (v - xmin) / (xmax - xmin) * (kRight - kLeft);
  };
  auto sy = [&](double v) {
    return kBottom - (v - ymin) / (ymax - ymin) * (kBottom - kTop);
  };

  char buf[512];
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\" "
                "font-family=\"sans-serif\" font-size=\"13\">\n",
                kWidth, kHeight, kWidth, kHeight);
  svg += buf;
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (!title.empty()) {
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"24\" text-anchor=\"middle\" "
                  "font-size=\"16\">%s</text>\n",
                  (kLeft + kRight) / 2, XmlEscape(title).c_str());
    svg += buf;
  }

  // Grid and ticks.
  for (double t : NiceTicks(xmin, xmax, 6)) {
    const double x = sx(t);
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"#dddddd\"/>\n",
                  x, kTop, x, kBottom);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%s"
                  "</text>\n",
                  x, kBottom + 20, FmtTick(t).c_str());
    svg += buf;
  }
  for (double t : NiceTicks(ymin, ymax, 6)) {
    const double y = sy(t);
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"#dddddd\"/>\n",
                  kLeft, y, kRight, y);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%s"
                  "</text>\n",
                  kLeft - 8, y + 4, FmtTick(t).c_str());
    svg += buf;
  }

  // Axes.
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                "fill=\"none\" stroke=\"black\"/>\n",
                kLeft, kTop, kRight - kLeft, kBottom - kTop);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" "
                "font-size=\"14\">rate (bpp)</text>\n",
                (kLeft + kRight) / 2, kBottom + 44);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"20\" y=\"%.1f\" text-anchor=\"middle\" "
                "font-size=\"14\" transform=\"rotate(-90 20 %.1f)\">%s"
                "</text>\n",
                (kTop + kBottom) / 2, (kTop + kBottom) / 2,
                XmlEscape(YLabel(metric)).c_str());
  svg += buf;

  // Curves with one marker per point, plus the legend.
  for (size_t i = 0; i < curves.size(); ++i) {
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(*kPalette))];
    std::string points;
    for (const RdPoint& p : curves[i].points) {
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", sx(p.rate),
                    sy(p.distortion));
      points += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<polyline class=\"curve\" fill=\"none\" stroke=\"%s\" "
                  "stroke-width=\"2\" points=\"%s\"/>\n",
                  color, points.c_str());
    svg += buf;
    for (const RdPoint& p : curves[i].points) {
      std::snprintf(buf, sizeof(buf),
                    "<circle class=\"marker\" cx=\"%.2f\" cy=\"%.2f\" "
                    "r=\"4\" fill=\"%s\"/>\n",
                    sx(p.rate), sy(p.distortion), color);
      svg += buf;
    }
    const double ly = kTop + 10 + 22.0 * static_cast<double>(i);
    std::snprintf(buf, sizeof(buf),
                  "<line class=\"legend\" x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" "
                  "y2=\"%.1f\" stroke=\"%s\" stroke-width=\"2\"/>\n",
                  kRight + 16, ly, kRight + 44, ly, color);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text class=\"legend\" x=\"%.1f\" y=\"%.1f\">%s</text>\n",
                  kRight + 50, ly + 4, XmlEscape(curves[i].label).c_str());
    svg += buf;
  }
  svg += "<!-- config: " + ConfigEchoJson().dump() + " -->\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace

void RegisterPlot(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "plot", "Render RD curves from rd_points CSV files to SVG");
  auto inputs = std::make_shared<std::vector<std::string>>();
  auto metric = std::make_shared<std::string>();
  auto title = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("inputs", *inputs, "rd_points CSV files")
      ->required()
      ->expected(-1);
  cmd->add_option("-m,--metric", *metric,
                  "Metric to plot (required when inputs carry several)");
  cmd->add_option("--title", *title, "Plot title");
  cmd->add_option("-o,--output", *out, "SVG output path")->required();
  cmd->callback([inputs, metric, title, out]() {
    std::vector<RdCurve> curves;
    for (const std::string& path : *inputs) {
      std::vector<RdCurve> loaded = LoadRdCurvesCsv(path);
      curves.insert(curves.end(), loaded.begin(), loaded.end());
    }
    std::string selected = *metric;
    if (selected.empty()) {
      std::set<std::string> metrics;
      for (const RdCurve& c : curves) metrics.insert(c.metric);
      if (metrics.size() != 1) {
        std::string list;
        for (const std::string& m : metrics) list += " " + m;
        throw UsageError("inputs carry " + std::to_string(metrics.size()) +
                         " metrics (" + list + " ); pick one with --metric");
      }
      selected = *metrics.begin();
    }
    std::erase_if(curves,
                  [&](const RdCurve& c) { return c.metric != selected; });
    if (curves.empty()) {
      throw Error("no curves with metric '" + selected + "'");
    }
    WriteTextOutput(*out, RenderSvg(curves, selected, *title));
  });
}

}  // namespace chromabench::cli
