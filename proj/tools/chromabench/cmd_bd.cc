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
#include <cstdio>
#include <string>
#include <vector>

#include "chromabench/bd.h"
#include "chromabench/image.h"
#include "chromabench/metrics.h"
#include "common.h"

namespace chromabench::cli {
namespace {

// ciede2000 curves carry raw mean dE00 (lower is better). BD axes want a
// higher-is-better quality figure, so the raw metric is mapped before
// comparison; curves already in quality form pass through untouched.
void ApplyCiedeTransform(std::vector<RdCurve>* curves,
                         const std::string& transform) {
  for (RdCurve& curve : *curves) {
    if (curve.metric != "ciede2000" || transform == "none") continue;
    for (RdPoint& p : curve.points) {
      if (transform == "quality") {
        p.distortion = CiedeQuality(p.distortion);
      } else {  // reciprocal
        if (!(p.distortion > 0.0)) {
          throw Error("bd: reciprocal transform needs positive dE00, curve '" +
                      curve.label + "'");
        }
        p.distortion = 1.0 / p.distortion;
      }
    }
  }
}

std::string Flags(const BdTableCell& cell, bool rate) {
  std::string f;
  if (rate ? cell.rate_best : cell.distortion_best) f += "*";
  if (rate ? cell.rate_second : cell.distortion_second) f += "+";
  return f;
}

std::string TextTable(const BdTable& table, const std::string& transform,
                      const std::string& method) {
  std::string out = "BD results (" + method + " interpolation";
  out += ", ciede transform: " + transform + ")\n";
  out += "best: *, second best: +\n\n";
  size_t width = 8;
  for (const std::string& c : table.codecs) width = std::max(width, c.size());
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-*s", static_cast<int>(width + 2),
                "codec");
  out += buf;
  for (const std::string& m : table.metrics) {
    std::snprintf(buf, sizeof(buf), "%24s", (m + " BD-BR%/BD-D").c_str());
    out += buf;
  }
  out += "\n";
  for (size_t row = 0; row < table.codecs.size(); ++row) {
    std::snprintf(buf, sizeof(buf), "%-*s", static_cast<int>(width + 2),
                  table.codecs[row].c_str());
    out += buf;
    for (size_t col = 0; col < table.metrics.size(); ++col) {
      const BdTableCell& cell = table.cells[row][col];
      if (!cell.available) {
        std::snprintf(buf, sizeof(buf), "%24s", "n/a");
      } else {
        std::string text;
        char num[64];
        std::snprintf(num, sizeof(num), "%+.2f%s", cell.rate.value,
                      Flags(cell, true).c_str());
        text = num;
        std::snprintf(num, sizeof(num), " / %+.4f%s", cell.distortion.value,
                      Flags(cell, false).c_str());
        text += num;
        std::snprintf(buf, sizeof(buf), "%24s", text.c_str());
      }
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::string CsvTable(const BdTable& table) {
  std::string out = CsvConfigComment();
  out +=
      "codec,metric,available,bd_rate_percent,bd_distortion,overlap_lo,"
      "overlap_hi,method,rate_best,rate_second,distortion_best,"
      "distortion_second,note\n";
  for (size_t row = 0; row < table.codecs.size(); ++row) {
    for (size_t col = 0; col < table.metrics.size(); ++col) {
      const BdTableCell& cell = table.cells[row][col];
      out += table.codecs[row] + "," + table.metrics[col] + ",";
      if (cell.available) {
        out += "1," + Fmt(cell.rate.value) + "," + Fmt(cell.distortion.value) +
               "," + Fmt(cell.distortion.overlap_lo) + "," +
               Fmt(cell.distortion.overlap_hi) + "," + cell.rate.method + "," +
               (cell.rate_best ? "1" : "0") + "," +
               (cell.rate_second ? "1" : "0") + "," +
               (cell.distortion_best ? "1" : "0") + "," +
               (cell.distortion_second ? "1" : "0") + ",";
      } else {
        out += "0,,,,,,,,,," + cell.error;
      }
      out += "\n";
    }
  }
  return out;
}

nlohmann::json JsonTable(const BdTable& table, const std::string& transform) {
  nlohmann::json j;
  j["codecs"] = table.codecs;
  j["metrics"] = table.metrics;
  j["ciede_transform"] = transform;
  j["cells"] = nlohmann::json::array();
  for (size_t row = 0; row < table.codecs.size(); ++row) {
    for (size_t col = 0; col < table.metrics.size(); ++col) {
      const BdTableCell& cell = table.cells[row][col];
      nlohmann::json c = {{"codec", table.codecs[row]},
                          {"metric", table.metrics[col]},
                          {"available", cell.available}};
      if (cell.available) {
        c["bd_rate_percent"] = cell.rate.value;
        c["bd_distortion"] = cell.distortion.value;
        c["method"] = cell.rate.method;
        c["rate_overlap"] = {cell.rate.overlap_lo, cell.rate.overlap_hi};
        c["distortion_overlap"] = {cell.distortion.overlap_lo,
                                   cell.distortion.overlap_hi};
        c["rate_best"] = cell.rate_best;
        c["rate_second"] = cell.rate_second;
        c["distortion_best"] = cell.distortion_best;
        c["distortion_second"] = cell.distortion_second;
      } else {
        c["note"] = cell.error;
      }
      j["cells"].push_back(std::move(c));
    }
  }
  j["config"] = ConfigEchoJson();
  return j;
}

}  // namespace

void RegisterBd(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "bd", "Bjontegaard comparison of test curves against anchor curves");
  auto anchor = std::make_shared<std::string>();
  auto tests = std::make_shared<std::string>();
  auto metrics = std::make_shared<std::vector<std::string>>();
  auto transform = std::make_shared<std::string>("quality");
  auto interpolation = std::make_shared<std::string>("pchip");
  auto format = std::make_shared<std::string>("text");
  auto out = std::make_shared<std::string>();
  cmd->add_option("-a,--anchor", *anchor,
                  "CSV with one anchor curve per metric")
      ->required();
  cmd->add_option("-t,--tests", *tests, "CSV with the curves to compare")
      ->required();
  cmd->add_option("-m,--metric", *metrics,
                  "Restrict to these metrics (repeatable)");
  cmd->add_option("--transform", *transform,
                  "ciede2000 mapping: quality (5 - dE00), reciprocal, none")
      ->check(CLI::IsMember({"quality", "reciprocal", "none"}));
  cmd->add_option("--interpolation", *interpolation,
                  "pchip (default) or cubic least-squares fit")
      ->check(CLI::IsMember({"pchip", "cubic"}));
  cmd->add_option("-f,--format", *format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  cmd->add_option("-o,--output", *out, "Output file (default stdout)");
  cmd->callback([anchor, tests, metrics, transform, interpolation, format,
                 out]() {
    std::vector<RdCurve> anchor_curves = LoadRdCurvesCsv(*anchor);
    std::vector<RdCurve> test_curves = LoadRdCurvesCsv(*tests);
    if (!metrics->empty()) {
      auto keep = [&](const RdCurve& c) {
        return std::find(metrics->begin(), metrics->end(), c.metric) ==
               metrics->end();
      };
      std::erase_if(anchor_curves, keep);
      std::erase_if(test_curves, keep);
    }
    if (anchor_curves.empty()) {
      throw Error("no anchor curves after filtering");
    }
    ApplyCiedeTransform(&anchor_curves, *transform);
    ApplyCiedeTransform(&test_curves, *transform);
    const BdInterpolation interp = *interpolation == "cubic"
                                       ? BdInterpolation::kCubicFit
                                       : BdInterpolation::kPchip;
    const BdTable table = MakeBdTable(anchor_curves, test_curves, interp);
    if (*format == "json") {
      WriteTextOutput(*out, JsonTable(table, *transform).dump(2) + "\n");
    } else if (*format == "csv") {
      WriteTextOutput(*out, CsvTable(table));
    } else {
      WriteTextOutput(*out, TextTable(table, *transform, *interpolation));
    }
  });
}

}  // namespace chromabench::cli
