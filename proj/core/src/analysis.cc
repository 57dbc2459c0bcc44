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

#include "chromabench/analysis.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "chromabench/color.h"

namespace chromabench {
namespace {

struct BranchShape {
  std::vector<int> planes;
};

std::vector<BranchShape> BranchesFor(ColorSpace space) {
  if (space == ColorSpace::kSrgb) return {{{0, 1, 2}}};
  return {{{0}}, {{1, 2}}};
}

// Resolves (branch, channel) to the image plane and subband it addresses.
void ResolveChannel(const EncodeConfig& config, int branch, int channel,
                    int* plane, int* subband) {
  const std::vector<BranchShape> branches = BranchesFor(config.space);
  if (branch < 0 || branch >= static_cast<int>(branches.size())) {
    throw Error("branch out of range");
  }
  const std::vector<int>& planes = branches[branch].planes;
  const int local_plane = channel / kSubbandCount;
  if (channel < 0 || local_plane >= static_cast<int>(planes.size())) {
    throw Error("channel out of range");
  }
  *plane = planes[local_plane];
  *subband = channel % kSubbandCount;
}

// Neutral operating point: mid-gray sRGB expressed in the coding space.
Triplet NeutralCodingPoint(ColorSpace space) {
  const Triplet gray = {0.5, 0.5, 0.5};
  switch (space) {
    case ColorSpace::kSrgb:
      return gray;
    case ColorSpace::kYuv:
      return SrgbToYuv(gray);
    case ColorSpace::kLab:
      return SrgbToLab(gray);
    default:
      throw Error("not a coding space");
  }
}

Triplet CodingToSrgb(ColorSpace space, const Triplet& v) {
  switch (space) {
    case ColorSpace::kSrgb:
      return v;
    case ColorSpace::kYuv:
      return YuvToSrgb(v);
    case ColorSpace::kLab:
      return LabToSrgb(v);
    default:
      throw Error("not a coding space");
  }
}

// Same affine plane mapping the codec uses between coding values and the
// unit-range transform domain.
double UnitToCoding(ColorSpace space, int plane, double u) {
  if (space == ColorSpace::kLab) {
    if (plane == 0) return u * 100.0;
    return u * 255.0 - 128.0;
  }
  return u;
}

double CodingToUnit(ColorSpace space, int plane, double v) {
  if (space == ColorSpace::kLab) {
    if (plane == 0) return v / 100.0;
    return (v + 128.0) / 255.0;
  }
  return v;
}

void BlitPatch(PlanarImage* mosaic, int cell_row, int cell_col,
               const ImpulsePatch& patch) {
  double max_abs = 0.0;
  for (int p = 0; p < 3; ++p) {
    for (double v : patch.srgb_response[p]) {
      max_abs = std::max(max_abs, std::fabs(v));
    }
  }
  const double scale = max_abs > 0.0 ? 0.5 / max_abs : 0.0;
  const int y0 = cell_row * kImpulsePatchSize;
  const int x0 = cell_col * kImpulsePatchSize;
  for (int y = 0; y < kImpulsePatchSize; ++y) {
    const int sy = y * kBlockSize / kImpulsePatchSize;
    for (int x = 0; x < kImpulsePatchSize; ++x) {
      const int sx = x * kBlockSize / kImpulsePatchSize;
      for (int p = 0; p < 3; ++p) {
        const double r = patch.srgb_response[p][sy * kBlockSize + sx];
        mosaic->at(p, y0 + y, x0 + x) = static_cast<float>(0.5 + r * scale);
      }
    }
  }
}

LayerKind KindFromName(const std::string& name) {
  if (name == "conv") return LayerKind::kConv;
  if (name == "deconv") return LayerKind::kDeconv;
  if (name == "dense") return LayerKind::kDense;
  throw Error("unknown layer kind: " + name);
}

}  // namespace

ChannelReport ChannelBitAllocation(const CodecTrace& trace) {
  if (trace.channels.empty()) throw Error("empty encoder trace");
  ChannelReport report;
  report.channels.reserve(trace.channels.size());
  for (const ChannelTrace& ch : trace.channels) {
    ChannelBits entry;
    entry.branch = ch.branch;
    entry.channel = ch.channel;
    entry.bits = ch.estimated_bits;
    report.channels.push_back(entry);
    report.total_bits += ch.estimated_bits;
  }
  std::sort(report.channels.begin(), report.channels.end(),
            [](const ChannelBits& a, const ChannelBits& b) {
              if (a.bits != b.bits) return a.bits > b.bits;
              if (a.branch != b.branch) return a.branch < b.branch;
              return a.channel < b.channel;
            });
  for (size_t i = 0; i < report.channels.size(); ++i) {
    report.channels[i].rank = static_cast<int>(i) + 1;
  }
  return report;
}

ImpulsePatch ImpulseResponse(const EncodeConfig& config, int branch,
                             int channel, double amplitude) {
  if (!IsCodingSpace(config.space)) throw Error("not a coding space");
  int plane = 0;
  int subband = 0;
  ResolveChannel(config, branch, channel, &plane, &subband);

  ImpulsePatch patch;
  patch.branch = branch;
  patch.channel = channel;

  double coeffs[kSubbandCount] = {0.0};
  coeffs[subband] = amplitude;
  double block[kSubbandCount];
  InverseDct8x8(coeffs, block);
  for (int i = 0; i < kSubbandCount; ++i) patch.response[plane][i] = block[i];

  const Triplet neutral = NeutralCodingPoint(config.space);
  const Triplet neutral_srgb = CodingToSrgb(config.space, neutral);
  // Unit-domain offsets ride on top of the neutral point; the other two
  // planes stay at neutral.
  const double neutral_unit = CodingToUnit(config.space, plane, neutral[plane]);
  for (int i = 0; i < kSubbandCount; ++i) {
    Triplet coding = neutral;
    coding[plane] =
        UnitToCoding(config.space, plane, neutral_unit + block[i]);
    const Triplet srgb = CodingToSrgb(config.space, coding);
    for (int p = 0; p < 3; ++p) {
      patch.srgb_response[p][i] = srgb[p] - neutral_srgb[p];
    }
  }
  return patch;
}

PlanarImage ImpulseMosaic(const EncodeConfig& config,
                          const ChannelReport& report, double amplitude) {
  const bool single = config.space == ColorSpace::kSrgb;
  // (branch filter, cell count) per row block.
  struct RowGroup {
    int branch;  // -1 = any
    int count;
  };
  const std::vector<RowGroup> groups =
      single ? std::vector<RowGroup>{{-1, 48}}
             : std::vector<RowGroup>{{0, 32}, {1, 16}};

  std::vector<ImpulsePatch> patches;
  for (const RowGroup& group : groups) {
    int taken = 0;
    for (const ChannelBits& ch : report.channels) {
      if (taken == group.count) break;
      if (group.branch >= 0 && ch.branch != group.branch) continue;
      patches.push_back(
          ImpulseResponse(config, ch.branch, ch.channel, amplitude));
      ++taken;
    }
    // Round up to full rows so the next group starts on its own row.
    while (taken % kMosaicColumns != 0) {
      patches.push_back(ImpulsePatch());  // blank cell
      ++taken;
    }
  }

  const int rows =
      static_cast<int>((patches.size() + kMosaicColumns - 1) / kMosaicColumns);
  PlanarImage mosaic(kMosaicColumns * kImpulsePatchSize,
                     rows * kImpulsePatchSize, ColorSpace::kSrgb);
  for (int p = 0; p < PlanarImage::kPlaneCount; ++p) {
    std::fill(mosaic.plane(p).begin(), mosaic.plane(p).end(), 0.5f);
  }
  for (size_t i = 0; i < patches.size(); ++i) {
    BlitPatch(&mosaic, static_cast<int>(i) / kMosaicColumns,
              static_cast<int>(i) % kMosaicColumns, patches[i]);
  }
  return mosaic;
}

PlanarImage SingleChannelReconstruction(const PlanarImage& srgb,
                                        const EncodeConfig& config,
                                        int branch, int channel) {
  int plane = 0;
  int subband = 0;
  ResolveChannel(config, branch, channel, &plane, &subband);
  const EncodeResult encoded = EncodeImage(srgb, config);
  DecodeOptions options;
  options.keep_branch = branch;
  options.keep_channel = channel;
  return DecodeImage(encoded.bitstream, options);
}

ComplexityReport ComputeComplexity(const std::vector<LayerSpec>& layers) {
  if (layers.empty()) throw Error("complexity: empty layer list");
  ComplexityReport report;
  for (const LayerSpec& layer : layers) {
    if (layer.in_channels < 1 || layer.out_channels < 1 ||
        layer.kernel_h < 1 || layer.kernel_w < 1 || layer.stride < 1) {
      throw Error("complexity: layer fields must be positive");
    }
    if (layer.divisor < 1) throw Error("complexity: zero divisor");
    const int64_t weights = static_cast<int64_t>(layer.in_channels) *
                            layer.out_channels * layer.kernel_h *
                            layer.kernel_w;
    report.params += weights + layer.out_channels;
    report.macs_per_pixel += static_cast<double>(weights) /
                             (static_cast<double>(layer.divisor) *
                              layer.divisor);
  }
  report.kmacs_per_pixel = report.macs_per_pixel / 1000.0;
  return report;
}

std::vector<LayerSpec> ParseArchJson(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("architecture JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("layers") ||
      !doc["layers"].is_array()) {
    throw Error("architecture JSON: missing \"layers\" array");
  }
  std::vector<LayerSpec> layers;
  for (const nlohmann::json& item : doc["layers"]) {
    if (!item.is_object()) {
      throw Error("architecture JSON: layer entries must be objects");
    }
    LayerSpec layer;
    layer.kind = KindFromName(item.value("kind", std::string("conv")));
    try {
      layer.in_channels = item.at("in").get<int>();
      layer.out_channels = item.at("out").get<int>();
      if (item.contains("kernel")) {
        const nlohmann::json& k = item["kernel"];
        if (k.is_array()) {
          if (k.size() != 2) {
            throw Error("architecture JSON: kernel must have 2 entries");
          }
          layer.kernel_h = k[0].get<int>();
          layer.kernel_w = k[1].get<int>();
        } else {
          layer.kernel_h = layer.kernel_w = k.get<int>();
        }
      } else {
        layer.kernel_h = layer.kernel_w = 1;
      }
      layer.stride = item.value("stride", 1);
      layer.divisor = item.value("divisor", 1);
    } catch (const nlohmann::json::exception& e) {
      throw Error(std::string("architecture JSON: ") + e.what());
    }
    layers.push_back(layer);
  }
  if (layers.empty()) throw Error("architecture JSON: no layers");
  return layers;
}

}  // namespace chromabench
