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
#include <fstream>
#include <string>

#include "chromabench/color.h"
#include "chromabench/image.h"
#include "chromabench/imageio.h"
#include "common.h"

namespace fs = std::filesystem;

namespace chromabench::cli {
namespace {

const char* const kPlaneNames[4][3] = {
    {"r", "g", "b"},  // srgb
    {"r", "g", "b"},  // linear
    {"y", "u", "v"},  // yuv
    {"l", "a", "b"},  // lab
};

// Planes are stored display-normalized: (value - min) / (max - min), so a
// symmetric chroma range puts neutral at 0.5.
void RunForward(const std::string& input, const std::string& out_prefix,
                ColorSpace space) {
  const PlanarImage src = ReadImage(input);
  const PlanarImage converted = ConvertImage(src, space);

  nlohmann::json meta;
  meta["space"] = ColorSpaceName(space);
  meta["width"] = converted.width();
  meta["height"] = converted.height();
  meta["bit_depth"] = 16;
  meta["planes"] = nlohmann::json::array();

  const int space_idx = static_cast<int>(space);
  for (int p = 0; p < PlanarImage::kPlaneCount; ++p) {
    const PlaneRange range = converted.range(p);
    const float lo = static_cast<float>(range.nominal_min);
    const float scale = static_cast<float>(1.0 / (range.nominal_max - range.nominal_min));
    std::vector<float> display(converted.plane(p));
    for (float& v : display) {
      v = (v - lo) * scale;
    }
    const std::string file = fs::path(out_prefix).filename().string() + "_" +
                             kPlaneNames[space_idx][p] + ".png";
    WriteGrayPng16(fs::path(out_prefix).parent_path() / file,
                   display, converted.width(), converted.height());
    meta["planes"].push_back({{"name", kPlaneNames[space_idx][p]},
                              {"file", file},
                              {"min", range.nominal_min},
                              {"max", range.nominal_max}});
  }
  meta["config"] = {{"color", ColorConfigJson()}};

  std::ofstream out(out_prefix + ".json", std::ios::binary);
  if (!out) {
    throw Error("cannot write " + out_prefix + ".json");
  }
  out << meta.dump(2) << "\n";
}

void RunInverse(const std::string& meta_path, const std::string& output) {
  const nlohmann::json meta = LoadJsonFile(meta_path);
  ColorSpace space;
  int width = 0;
  int height = 0;
  try {
    space = ColorSpaceFromName(meta.at("space").get<std::string>());
    width = meta.at("width").get<int>();
    height = meta.at("height").get<int>();
    if (meta.at("planes").size() != 3) {
      throw Error(meta_path + ": expected 3 planes");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(meta_path + ": " + e.what());
  }

  PlanarImage image(width, height, space);
  const fs::path dir = fs::path(meta_path).parent_path();
  for (int p = 0; p < PlanarImage::kPlaneCount; ++p) {
    const nlohmann::json& plane = meta["planes"][p];
    double lo;
    double hi;
    std::string file;
    try {
      lo = plane.at("min").get<double>();
      hi = plane.at("max").get<double>();
      file = plane.at("file").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(meta_path + ": " + e.what());
    }
    int w = 0;
    int h = 0;
    std::vector<float> display = ReadGrayPng((dir / file).string(), &w, &h);
    if (w != width || h != height) {
      throw Error(file + ": plane size does not match metadata");
    }
    std::vector<float>& dst = image.plane(p);
    for (size_t i = 0; i < display.size(); ++i) {
      dst[i] = static_cast<float>(lo + display[i] * (hi - lo));
    }
  }
  WriteImage(output, ConvertImage(image, ColorSpace::kSrgb));
}

}  // namespace

void RegisterConvert(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "convert", "Convert an image between color spaces (plane files + "
                 "range metadata), or back from a metadata file");
  auto input = std::make_shared<std::string>();
  auto output = std::make_shared<std::string>();
  auto space = std::make_shared<std::string>("yuv");
  cmd->add_option("-i,--input", *input,
                  "Source image, or a .json metadata file to invert")
      ->required();
  cmd->add_option("-o,--output", *output,
                  "Output prefix (forward) or image path (inverse)")
      ->required();
  cmd->add_option("-s,--space", *space, "Target space: rgb, linear, yuv, lab");
  cmd->callback([input, output, space]() {
    if (input->size() > 5 && input->substr(input->size() - 5) == ".json") {
      RunInverse(*input, *output);
      return;
    }
    ColorSpace target;
    try {
      target = ColorSpaceFromName(*space);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    RunForward(*input, *output, target);
  });
}

}  // namespace chromabench::cli
