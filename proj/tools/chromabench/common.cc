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

#include "common.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "chromabench/codec.h"
#include "chromabench/color.h"
#include "chromabench/metrics.h"
#include "chromabench/rdo.h"

namespace fs = std::filesystem;

namespace chromabench::cli {

std::string Fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int ResolveThreads(int requested) {
  if (const char* env = std::getenv("CHROMABENCH_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

nlohmann::json ColorConfigJson() {
  const ColorMatrix m = RgbToXyzMatrix();
  const Triplet white = WhitePointXyz();
  nlohmann::json j;
  j["srgb_to_xyz"] = {{m.m[0], m.m[1], m.m[2]},
                      {m.m[3], m.m[4], m.m[5]},
                      {m.m[6], m.m[7], m.m[8]}};
  j["white_point"] = {white[0], white[1], white[2]};
  j["yuv"] = {{"kr", 0.2126}, {"kg", 0.7152}, {"kb", 0.0722},
              {"u_scale", 1.8556}, {"v_scale", 1.5748}};
  return j;
}

nlohmann::json PresetsJson() {
  nlohmann::json arr = nlohmann::json::array();
  for (const LagrangianConfig& p : LagrangianPresets()) {
    arr.push_back({{"label", p.label},
                   {"lambda1", p.lambda1},
                   {"lambda2", p.lambda2},
                   {"lambda3", p.lambda3}});
  }
  return arr;
}

nlohmann::json QuantStepsJson() {
  nlohmann::json arr = nlohmann::json::array();
  for (int op = kOperatingPointMin; op <= kOperatingPointMax; ++op) {
    const QuantSteps s = StepsFor(op);
    arr.push_back({{"op_point", op},
                   {"luma", s.luma},
                   {"chroma", s.chroma},
                   {"side", s.side}});
  }
  return arr;
}

nlohmann::json ConfigEchoJson() {
  nlohmann::json j;
  j["color"] = ColorConfigJson();
  j["presets"] = PresetsJson();
  j["quant_steps"] = QuantStepsJson();
  return j;
}

std::string CsvConfigComment() {
  std::string out = "# generated by chromabench\n";
  out += "# config: " + ConfigEchoJson().dump() + "\n";
  return out;
}

void WriteTextOutput(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path);
  }
  out << text;
}

nlohmann::json LoadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open " + path);
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

std::vector<std::string> ListImageFiles(const std::string& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(dir + " is not a directory");
  }
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png" || ext == ".ppm" || ext == ".pnm") {
      names.push_back(entry.path().filename().string());
    }
  }
  std::sort(names.begin(), names.end());
  return names;
}

nlohmann::json MetricReportJson(const MetricReport& r) {
  return {{"mse", r.mse},
          {"psnr", r.psnr},
          {"psnr_channel", {r.psnr_channel[0], r.psnr_channel[1],
                            r.psnr_channel[2]}},
          {"msssim", r.msssim},
          {"msssim_db", r.msssim_db},
          {"msssim_scales", r.msssim_scales},
          {"ciede2000", r.ciede2000},
          {"ciede_quality", r.ciede_quality}};
}

}  // namespace chromabench::cli
