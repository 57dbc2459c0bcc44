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

#include <fstream>
#include <sstream>
#include <string>

#include "chromabench/analysis.h"
#include "chromabench/codec.h"
#include "chromabench/image.h"
#include "chromabench/imageio.h"
#include "chromabench/rdo.h"
#include "common.h"

namespace chromabench::cli {

void RegisterImpulse(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "impulse", "Render the latent-channel impulse-response mosaic, ranked "
                 "by measured bit allocation");
  auto input = std::make_shared<std::string>();
  auto output = std::make_shared<std::string>();
  auto space = std::make_shared<std::string>("yuv");
  auto op_point = std::make_shared<int>(3);
  auto chroma = std::make_shared<int>(kSubbandCount);
  auto amplitude = std::make_shared<double>(1.0);
  auto report_path = std::make_shared<std::string>();
  cmd->add_option("-i,--input", *input,
                  "Image whose encoding ranks the channels")
      ->required();
  cmd->add_option("-o,--output", *output, "Mosaic PNG path")->required();
  cmd->add_option("-s,--space", *space, "Coding space: rgb, yuv, lab");
  cmd->add_option("-q,--op-point", *op_point, "Operating point, 1..4")
      ->check(CLI::Range(kOperatingPointMin, kOperatingPointMax));
  cmd->add_option("-c,--chroma-channels", *chroma,
                  "Retained chroma channels, 1..64")
      ->check(CLI::Range(1, kSubbandCount));
  cmd->add_option("--amplitude", *amplitude, "Impulse amplitude");
  cmd->add_option("--report", *report_path,
                  "Also write the per-channel bit allocation CSV here");
  cmd->callback([input, output, space, op_point, chroma, amplitude,
                 report_path]() {
    EncodeConfig config;
    try {
      config.space = ColorSpaceFromName(*space);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (!IsCodingSpace(config.space)) {
      throw UsageError(*space + " is not a coding space");
    }
    config.operating_point = *op_point;
    config.chroma_channels = *chroma;

    const EncodeResult encoded = EncodeImage(ReadImage(*input), config);
    const ChannelReport report = ChannelBitAllocation(encoded.trace);
    const PlanarImage mosaic = ImpulseMosaic(config, report, *amplitude);
    WriteImage(*output, mosaic);

    if (!report_path->empty()) {
      std::string csv = CsvConfigComment();
      csv += "rank,branch,channel,bits\n";
      for (const ChannelBits& c : report.channels) {
        csv += std::to_string(c.rank) + "," + std::to_string(c.branch) + "," +
               std::to_string(c.channel) + "," + Fmt(c.bits) + "\n";
      }
      WriteTextOutput(*report_path, csv);
    }
  });
}

void RegisterComplexity(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "complexity", "Parameter and kMACs/pixel count for an architecture "
                    "description");
  auto arch = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("-a,--arch", *arch, "Architecture JSON file")->required();
  cmd->add_option("-o,--output", *out, "Output file (default stdout)");
  cmd->callback([arch, out]() {
    std::ifstream in(*arch);
    if (!in) {
      throw Error("cannot open " + *arch);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::vector<LayerSpec> layers = ParseArchJson(buffer.str());
    const ComplexityReport report = ComputeComplexity(layers);

    nlohmann::json j;
    const nlohmann::json parsed = LoadJsonFile(*arch);
    if (parsed.contains("name")) j["name"] = parsed["name"];
    j["layers"] = layers.size();
    j["params"] = report.params;
    j["macs_per_pixel"] = report.macs_per_pixel;
    j["kmacs_per_pixel"] = report.kmacs_per_pixel;
    j["config"] = ConfigEchoJson();
    WriteTextOutput(*out, j.dump(2) + "\n");
  });
}

void RegisterPresets(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "presets", "List the Lagrangian presets and quantizer steps");
  auto format = std::make_shared<std::string>("json");
  auto out = std::make_shared<std::string>();
  cmd->add_option("-f,--format", *format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("-o,--output", *out, "Output file (default stdout)");
  cmd->callback([format, out]() {
    if (*format == "csv") {
      std::string csv = CsvConfigComment();
      csv += "label,lambda1,lambda2,lambda3,luma_step,chroma_step,side_step\n";
      int op = kOperatingPointMin;
      for (const LagrangianConfig& p : LagrangianPresets()) {
        const QuantSteps steps = StepsFor(op++);
        csv += p.label + "," + Fmt(p.lambda1) + "," + Fmt(p.lambda2) + "," +
               Fmt(p.lambda3) + "," + Fmt(steps.luma) + "," +
               Fmt(steps.chroma) + "," + Fmt(steps.side) + "\n";
      }
      WriteTextOutput(*out, csv);
      return;
    }
    nlohmann::json j;
    j["presets"] = PresetsJson();
    j["quant_steps"] = QuantStepsJson();
    j["color"] = ColorConfigJson();
    WriteTextOutput(*out, j.dump(2) + "\n");
  });
}

}  // namespace chromabench::cli
