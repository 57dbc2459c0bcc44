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

#include <filesystem>
#include <string>
#include <vector>

#include "chromabench/imageio.h"
#include "chromabench/metrics.h"
#include "common.h"

namespace fs = std::filesystem;

namespace chromabench::cli {
namespace {

constexpr char kCsvHeader[] =
    "image,mse,psnr,psnr_r,psnr_g,psnr_b,msssim,msssim_db,msssim_scales,"
    "ciede2000,ciede_quality\n";

std::string CsvRow(const std::string& id, const MetricReport& r) {
  std::string row = id;
  for (double v : {r.mse, r.psnr, r.psnr_channel[0], r.psnr_channel[1],
                   r.psnr_channel[2], r.msssim, r.msssim_db}) {
    row += "," + Fmt(v);
  }
  row += "," + std::to_string(r.msssim_scales);
  row += "," + Fmt(r.ciede2000) + "," + Fmt(r.ciede_quality) + "\n";
  return row;
}

MetricReport MeanReport(const std::vector<MetricReport>& rows) {
  MetricReport mean;
  double scales = 0.0;
  for (const MetricReport& r : rows) {
    mean.mse += r.mse;
    mean.psnr += r.psnr;
    for (int c = 0; c < 3; ++c) mean.psnr_channel[c] += r.psnr_channel[c];
    mean.msssim += r.msssim;
    mean.msssim_db += r.msssim_db;
    scales += r.msssim_scales;
    mean.ciede2000 += r.ciede2000;
    mean.ciede_quality += r.ciede_quality;
  }
  const double n = static_cast<double>(rows.size());
  mean.mse /= n;
  mean.psnr /= n;
  for (int c = 0; c < 3; ++c) mean.psnr_channel[c] /= n;
  mean.msssim /= n;
  mean.msssim_db /= n;
  mean.msssim_scales = static_cast<int>(scales / n + 0.5);
  mean.ciede2000 /= n;
  mean.ciede_quality /= n;
  return mean;
}

void RunSingle(const std::string& ref, const std::string& dist,
               const std::string& format, const std::string& out) {
  const MetricReport r = ComputeMetrics(ReadImage(ref), ReadImage(dist));
  if (format == "csv") {
    std::string text = CsvConfigComment();
    text += kCsvHeader;
    text += CsvRow(fs::path(dist).filename().string(), r);
    WriteTextOutput(out, text);
    return;
  }
  nlohmann::json j = MetricReportJson(r);
  j["ref"] = ref;
  j["dist"] = dist;
  j["config"] = ConfigEchoJson();
  WriteTextOutput(out, j.dump(2) + "\n");
}

void RunBatch(const std::string& ref_dir, const std::string& dist_dir,
              const std::string& format, const std::string& out) {
  const std::vector<std::string> names = ListImageFiles(ref_dir);
  if (names.empty()) {
    throw Error("no images found in " + ref_dir);
  }
  std::vector<MetricReport> rows;
  rows.reserve(names.size());
  for (const std::string& name : names) {
    const fs::path dist_path = fs::path(dist_dir) / name;
    if (!fs::exists(dist_path)) {
      throw Error("missing counterpart for " + name + " in " + dist_dir);
    }
    rows.push_back(ComputeMetrics(ReadImage((fs::path(ref_dir) / name)),
                                  ReadImage(dist_path.string())));
  }
  const MetricReport mean = MeanReport(rows);

  if (format == "json") {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (size_t i = 0; i < rows.size(); ++i) {
      nlohmann::json row = MetricReportJson(rows[i]);
      row["image"] = names[i];
      j["rows"].push_back(std::move(row));
    }
    j["mean"] = MetricReportJson(mean);
    j["config"] = ConfigEchoJson();
    WriteTextOutput(out, j.dump(2) + "\n");
    return;
  }
  std::string text = CsvConfigComment();
  text += kCsvHeader;
  for (size_t i = 0; i < rows.size(); ++i) {
    text += CsvRow(names[i], rows[i]);
  }
  text += CsvRow("mean", mean);
  WriteTextOutput(out, text);
}

}  // namespace

void RegisterMetrics(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "metrics", "Compute PSNR, MS-SSIM and CIEDE2000 for an image pair or "
                 "two directories of matching filenames");
  auto ref = std::make_shared<std::string>();
  auto dist = std::make_shared<std::string>();
  auto format = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("-r,--ref", *ref, "Reference image or directory")
      ->required();
  cmd->add_option("-d,--dist", *dist, "Distorted image or directory")
      ->required();
  cmd->add_option("-f,--format", *format, "json or csv")
      ->check(CLI::IsMember({"json", "csv", ""}));
  cmd->add_option("-o,--output", *out, "Output file (default stdout)");
  cmd->callback([ref, dist, format, out]() {
    const bool ref_dir = fs::is_directory(*ref);
    const bool dist_dir = fs::is_directory(*dist);
    if (ref_dir != dist_dir) {
      throw UsageError("--ref and --dist must both be files or both be "
                       "directories");
    }
    if (ref_dir) {
      RunBatch(*ref, *dist, format->empty() ? "csv" : *format, *out);
    } else {
      RunSingle(*ref, *dist, format->empty() ? "json" : *format, *out);
    }
  });
}

}  // namespace chromabench::cli
