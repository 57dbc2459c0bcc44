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

#ifndef CHROMABENCH_ANALYSIS_H_
#define CHROMABENCH_ANALYSIS_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "chromabench/codec.h"
#include "chromabench/image.h"

namespace chromabench {

struct ChannelBits {
  int branch = 0;
  int channel = 0;
  double bits = 0.0;
  int rank = 0;  // 1 = largest contribution
};

struct ChannelReport {
  // Sorted by non-increasing bits; ties broken by (branch, channel)
  // ascending. Ranks are 1..n in that order.
  std::vector<ChannelBits> channels;
  double total_bits = 0.0;
};

// Aggregates an encoder trace into the bitrate-ordered channel table.
// Throws on an empty trace.
ChannelReport ChannelBitAllocation(const CodecTrace& trace);

struct ImpulsePatch {
  int branch = 0;
  int channel = 0;
  // Response of each image plane in the transform's unit domain, one 8x8
  // block row-major. Exactly amplitude times the DCT basis function on the
  // impulse's own plane, zero elsewhere.
  std::array<std::array<double, kSubbandCount>, 3> response{};
  // The same impulse pushed through the inverse color transform,
  // linearized around a neutral mid-gray operating point: sRGB(neutral +
  // impulse) - sRGB(neutral).
  std::array<std::array<double, kSubbandCount>, 3> srgb_response{};
};

// Synthesizes the response of one latent channel to a single-block impulse
// of the given amplitude. Channel numbering matches ChannelTrace::channel.
ImpulsePatch ImpulseResponse(const EncodeConfig& config, int branch,
                             int channel, double amplitude);

inline constexpr int kImpulsePatchSize = 16;  // upscaled display size
inline constexpr int kMosaicColumns = 16;

// Renders ranked impulse patches into one sRGB mosaic image: each patch is
// displayed as 0.5 + r/(2*max|r|) and upscaled to 16x16 nearest neighbor,
// tiled 16 per row. Dual-branch configurations show the 32 highest-bitrate
// luma channels then the 16 highest chroma channels; single-branch shows
// the 48 highest overall. Missing cells stay mid-gray.
PlanarImage ImpulseMosaic(const EncodeConfig& config,
                          const ChannelReport& report, double amplitude);

// Encodes, then decodes keeping only the selected channel's coefficients.
PlanarImage SingleChannelReconstruction(const PlanarImage& srgb,
                                        const EncodeConfig& config,
                                        int branch, int channel);

enum class LayerKind { kConv, kDeconv, kDense };

struct LayerSpec {
  LayerKind kind = LayerKind::kConv;
  int in_channels = 0;
  int out_channels = 0;
  int kernel_h = 0;
  int kernel_w = 0;
  int stride = 1;
  // Output resolution divisor relative to the source image; MACs for this
  // layer are counted per source pixel as weight-MACs / divisor^2.
  int divisor = 1;
};

struct ComplexityReport {
  int64_t params = 0;
  double macs_per_pixel = 0.0;
  double kmacs_per_pixel = 0.0;
};

// params = Cin*Cout*Kh*Kw + Cout per layer; MACs/pixel =
// Cin*Cout*Kh*Kw / divisor^2; both summed over the list.
ComplexityReport ComputeComplexity(const std::vector<LayerSpec>& layers);

// Parses an architecture description of the form
//   {"name": "...", "layers": [{"kind": "conv", "in": 3, "out": 192,
//    "kernel": [5, 5], "stride": 2, "divisor": 2}, ...]}
// `kernel` may be a single integer for square kernels; `stride` and
// `divisor` default to 1.
std::vector<LayerSpec> ParseArchJson(const std::string& json_text);

}  // namespace chromabench

#endif  // CHROMABENCH_ANALYSIS_H_
