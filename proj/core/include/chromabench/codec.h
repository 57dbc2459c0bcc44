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

#ifndef CHROMABENCH_CODEC_H_
#define CHROMABENCH_CODEC_H_

#include <array>
#include <cstdint>
#include <vector>

#include "chromabench/image.h"

namespace chromabench {

inline constexpr int kBlockSize = 8;
inline constexpr int kSubbandCount = kBlockSize * kBlockSize;

// Zigzag scan over an 8x8 block. ZigzagOrder()[rank] is the row-major
// subband index visited at that rank.
const std::array<int, kSubbandCount>& ZigzagOrder();
// Inverse: rank of a row-major subband index.
const std::array<int, kSubbandCount>& ZigzagRank();

// Orthonormal 8x8 DCT-II applied to a row-major block, and its inverse.
void ForwardDct8x8(const double* block, double* coeffs);
void InverseDct8x8(const double* coeffs, double* block);

// One plane's latent: each of the 64 subbands becomes a channel holding
// that coefficient for every block, blocks in raster order. Channel c is
// the row-major frequency (c/8, c%8); channel 0 carries 8x the block mean.
struct LatentPlane {
  int blocks_x = 0;
  int blocks_y = 0;
  std::array<std::vector<double>, kSubbandCount> channels;
};

// Forward transform of a row-major plane of arbitrary size; partial edge
// blocks are filled by replication.
LatentPlane PlaneAnalysis(const std::vector<double>& plane, int width,
                          int height);
// Exact inverse; returns the padded (blocks_x*8 by blocks_y*8) plane.
std::vector<double> PlaneSynthesis(const LatentPlane& latent);

// The first `c` subband indices in zigzag order; the keep-set of the
// chroma channel mask. c must be 1..64.
std::vector<int> ChromaChannelMask(int c);

// Coding spaces supported by the codec. sRGB runs as a single branch over
// all three planes; YUV and Lab run a luma branch (plane 0) and a chroma
// branch (planes 1 and 2).
bool IsCodingSpace(ColorSpace space);

// Quantizer steps for the four operating points (1 = coarsest). Chroma
// planes use twice the luma step; `side` is the log2-domain step of the
// transmitted scale parameters.
struct QuantSteps {
  double luma = 0.0;
  double chroma = 0.0;
  double side = 0.0;
};
QuantSteps StepsFor(int operating_point);
double LumaStep(int operating_point);
double ChromaStep(int operating_point);
inline constexpr int kOperatingPointMin = 1;
inline constexpr int kOperatingPointMax = 4;

struct EncodeConfig {
  ColorSpace space = ColorSpace::kYuv;
  int operating_point = 3;
  // Number of zigzag-ordered subbands kept per chroma plane, 1..64.
  // Forced to 64 for the single-branch sRGB configuration.
  int chroma_channels = kSubbandCount;
};

struct ChannelTrace {
  int branch = 0;
  // Within its branch: local_plane * 64 + subband.
  int channel = 0;
  int plane = 0;    // image plane index
  int subband = 0;  // row-major frequency index
  int sigma_code = 0;
  double sigma = 0.0;   // dequantized value the coder actually used
  int32_t mean = 0;     // transmitted mean (DC channels only, else 0)
  size_t symbols = 0;
  double estimated_bits = 0.0;
};

struct ComponentInfo {
  int id = 0;  // 0 side, 1 main (single branch);
               // 0 luma-side, 1 luma-main, 2 chroma-side, 3 chroma-main
  uint32_t bytes = 0;
};

struct CodecTrace {
  std::vector<ChannelTrace> channels;
  std::vector<ComponentInfo> components;
  size_t header_bytes = 0;
  size_t total_bytes = 0;
};

struct EncodeResult {
  std::vector<uint8_t> bitstream;
  CodecTrace trace;
};

// Encodes an sRGB image: converts to the coding space, pads to whole 8x8
// blocks by edge replication, transforms, quantizes, and range codes each
// component. Encoding is deterministic: equal inputs produce equal bytes.
EncodeResult EncodeImage(const PlanarImage& srgb, const EncodeConfig& config);

struct DecodeOptions {
  // When set, every coded channel except (keep_branch, keep_channel) is
  // zeroed before the inverse transform. Channel numbering matches
  // ChannelTrace::channel.
  int keep_branch = -1;
  int keep_channel = -1;
  // Skip the final conversion back to sRGB and return the coding-space
  // reconstruction instead.
  bool coding_space_output = false;
};

PlanarImage DecodeImage(const std::vector<uint8_t>& bitstream,
                        const DecodeOptions& options = {});

struct BitstreamInfo {
  int version = 0;
  ColorSpace space = ColorSpace::kSrgb;
  int block_size = 0;
  int chroma_channels = 0;
  int operating_point = 0;
  int width = 0;
  int height = 0;
  std::vector<ComponentInfo> components;
  size_t header_bytes = 0;
};

// Parses and validates the container header without decoding payloads.
BitstreamInfo InspectBitstream(const std::vector<uint8_t>& bitstream);

}  // namespace chromabench

#endif  // CHROMABENCH_CODEC_H_
