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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "chromabench/codec.h"
#include "chromabench/image.h"
#include "chromabench/imageio.h"
#include "common.h"

namespace chromabench::cli {
namespace {

std::vector<uint8_t> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path);
  }
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in),
                              std::istreambuf_iterator<char>());
}

void WriteFileBytes(const std::string& path, const std::vector<uint8_t>& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path);
  }
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) {
    throw Error("short write to " + path);
  }
}

const char* ComponentName(int id, size_t component_count) {
  static const char* kSingle[] = {"side", "main"};
  static const char* kDual[] = {"luma-side", "luma-main", "chroma-side",
                                "chroma-main"};
  return component_count == 2 ? kSingle[id] : kDual[id];
}

}  // namespace

void RegisterEncode(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "encode", "Encode an sRGB image into a .cbs bitstream");
  auto input = std::make_shared<std::string>();
  auto output = std::make_shared<std::string>();
  auto space = std::make_shared<std::string>("yuv");
  auto op_point = std::make_shared<int>(3);
  auto chroma = std::make_shared<int>(kSubbandCount);
  auto chroma_opt = cmd->add_option("-c,--chroma-channels", *chroma,
                                    "Retained chroma channels, 1..64");
  cmd->add_option("-i,--input", *input, "Source image")->required();
  cmd->add_option("-o,--output", *output, "Bitstream path")->required();
  cmd->add_option("-s,--space", *space, "Coding space: rgb, yuv, lab");
  cmd->add_option("-q,--op-point", *op_point, "Operating point, 1..4")
      ->check(CLI::Range(kOperatingPointMin, kOperatingPointMax));
  chroma_opt->check(CLI::Range(1, kSubbandCount));
  cmd->callback([input, output, space, op_point, chroma, chroma_opt]() {
    EncodeConfig config;
    try {
      config.space = ColorSpaceFromName(*space);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (config.space == ColorSpace::kLinearRgb) {
      throw UsageError("linear is not a coding space; use rgb, yuv or lab");
    }
    if (config.space == ColorSpace::kSrgb && chroma_opt->count() > 0 &&
        *chroma != kSubbandCount) {
      throw UsageError(
          "--space rgb codes all channels in one branch; --chroma-channels "
          "must stay 64");
    }
    config.operating_point = *op_point;
    config.chroma_channels = *chroma;

    const PlanarImage image = ReadImage(*input);
    const EncodeResult result = EncodeImage(image, config);
    WriteFileBytes(*output, result.bitstream);

    const double pixels = static_cast<double>(image.pixel_count());
    std::string line = "bpp:";
    double payload_bits = 0.0;
    for (const ComponentInfo& comp : result.trace.components) {
      const double bits = comp.bytes * 8.0;
      payload_bits += bits;
      line += " ";
      line += ComponentName(comp.id, result.trace.components.size());
      line += "=" + Fmt(bits / pixels);
    }
    line += " payload=" + Fmt(payload_bits / pixels);
    line += " file=" + Fmt(result.trace.total_bytes * 8.0 / pixels);
    std::cout << line << std::endl;
  });
}

void RegisterDecode(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "decode", "Decode a .cbs bitstream back to an sRGB image");
  auto input = std::make_shared<std::string>();
  auto output = std::make_shared<std::string>();
  auto keep_branch = std::make_shared<int>(-1);
  auto keep_channel = std::make_shared<int>(-1);
  cmd->add_option("-i,--input", *input, "Bitstream path")->required();
  cmd->add_option("-o,--output", *output, "Output image (.png/.ppm)")
      ->required();
  cmd->add_option("--keep-branch", *keep_branch,
                  "Zero all channels except this branch/channel pair");
  cmd->add_option("--keep-channel", *keep_channel,
                  "Channel to keep within --keep-branch");
  cmd->callback([input, output, keep_branch, keep_channel]() {
    if ((*keep_branch < 0) != (*keep_channel < 0)) {
      throw UsageError("--keep-branch and --keep-channel must be set together");
    }
    DecodeOptions options;
    options.keep_branch = *keep_branch;
    options.keep_channel = *keep_channel;
    const PlanarImage image = DecodeImage(ReadFileBytes(*input), options);
    WriteImage(*output, image);
  });
}

}  // namespace chromabench::cli
