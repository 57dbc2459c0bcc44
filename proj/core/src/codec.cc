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

#include "chromabench/codec.h"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "chromabench/color.h"
#include "chromabench/entropy.h"

namespace chromabench {
namespace {

constexpr char kMagic[4] = {'C', 'B', 'S', '1'};
constexpr uint8_t kVersion = 1;

const std::array<double, 64>& DctBasis() {
  static const std::array<double, 64> kBasis = [] {
    std::array<double, 64> m;
    for (int u = 0; u < 8; ++u) {
      const double c = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      for (int x = 0; x < 8; ++x) {
        m[u * 8 + x] = c * std::cos((2 * x + 1) * u * M_PI / 16.0);
      }
    }
    return m;
  }();
  return kBasis;
}

uint8_t SpaceToByte(ColorSpace space) {
  switch (space) {
    case ColorSpace::kSrgb:
      return 0;
    case ColorSpace::kYuv:
      return 1;
    case ColorSpace::kLab:
      return 2;
    default:
      throw Error("not a coding space");
  }
}

ColorSpace SpaceFromByte(uint8_t b) {
  switch (b) {
    case 0:
      return ColorSpace::kSrgb;
    case 1:
      return ColorSpace::kYuv;
    case 2:
      return ColorSpace::kLab;
    default:
      throw Error("bitstream: unknown color space tag");
  }
}

// Affine map from coding-space plane values to the unit-range domain the
// transform runs in. Lab planes are squeezed into [0,1]; sRGB and YUV pass
// through.
struct PlaneScale {
  double scale = 1.0;
  double offset = 0.0;

  double ToUnit(double v) const { return v * scale + offset; }
  double FromUnit(double u) const { return (u - offset) / scale; }
};

PlaneScale ScaleFor(ColorSpace space, int plane) {
  if (space == ColorSpace::kLab) {
    if (plane == 0) return {1.0 / 100.0, 0.0};
    return {1.0 / 255.0, 128.0 / 255.0};
  }
  return {1.0, 0.0};
}

struct BranchDef {
  std::vector<int> planes;
  bool chroma = false;
};

std::vector<BranchDef> BranchLayout(ColorSpace space) {
  if (space == ColorSpace::kSrgb) {
    return {{{0, 1, 2}, false}};
  }
  return {{{0}, false}, {{1, 2}, true}};
}

const CdfTable& SigmaTable() {
  static const CdfTable kTable = CdfTable::Uniform(kSigmaCodeCount);
  return kTable;
}

void PutU32Be(std::vector<uint8_t>* out, uint32_t v) {
  out->push_back(static_cast<uint8_t>(v >> 24));
  out->push_back(static_cast<uint8_t>(v >> 16));
  out->push_back(static_cast<uint8_t>(v >> 8));
  out->push_back(static_cast<uint8_t>(v));
}

uint32_t GetU32Be(const uint8_t* p) {
  return (static_cast<uint32_t>(p[0]) << 24) |
         (static_cast<uint32_t>(p[1]) << 16) |
         (static_cast<uint32_t>(p[2]) << 8) | static_cast<uint32_t>(p[3]);
}

std::vector<double> UnitPlane(const PlanarImage& image, int plane,
                              const PlaneScale& ps) {
  const size_t n = image.pixel_count();
  std::vector<double> out(n);
  const float* src = image.plane(plane).data();
  for (size_t i = 0; i < n; ++i) out[i] = ps.ToUnit(src[i]);
  return out;
}

void TransmittedMeanBytes(int32_t mean, uint8_t bytes[2]) {
  const uint32_t zz = ZigzagEncode32(mean);
  if (zz > 0xFFFF) throw Error("codec: transmitted mean out of range");
  bytes[0] = static_cast<uint8_t>(zz >> 8);
  bytes[1] = static_cast<uint8_t>(zz & 0xFF);
}

int32_t MeanFromBytes(uint8_t hi, uint8_t lo) {
  return ZigzagDecode32((static_cast<uint32_t>(hi) << 8) | lo);
}

struct ChannelModelInfo {
  int sigma_code = 0;
  double sigma = 0.0;
  int32_t mean = 0;
};

int KeptRanks(const BranchDef& branch, int chroma_channels) {
  return branch.chroma ? chroma_channels : kSubbandCount;
}

}  // namespace

const std::array<int, kSubbandCount>& ZigzagOrder() {
  static const std::array<int, kSubbandCount> kOrder = [] {
    std::array<int, kSubbandCount> order;
    int r = 0, c = 0;
    for (int i = 0; i < kSubbandCount; ++i) {
      order[i] = r * kBlockSize + c;
      if ((r + c) % 2 == 0) {
        if (c == kBlockSize - 1) {
          ++r;
        } else if (r == 0) {
          ++c;
        } else {
          --r;
          ++c;
        }
      } else {
        if (r == kBlockSize - 1) {
          ++c;
        } else if (c == 0) {
          ++r;
        } else {
          ++r;
          --c;
        }
      }
    }
    return order;
  }();
  return kOrder;
}

const std::array<int, kSubbandCount>& ZigzagRank() {
  static const std::array<int, kSubbandCount> kRank = [] {
    std::array<int, kSubbandCount> rank;
    const auto& order = ZigzagOrder();
    for (int i = 0; i < kSubbandCount; ++i) rank[order[i]] = i;
    return rank;
  }();
  return kRank;
}

void ForwardDct8x8(const double* block, double* coeffs) {
  const auto& m = DctBasis();
  double tmp[64];
  for (int u = 0; u < 8; ++u) {
    for (int x = 0; x < 8; ++x) {
      double acc = 0.0;
      for (int y = 0; y < 8; ++y) acc += m[u * 8 + y] * block[y * 8 + x];
      tmp[u * 8 + x] = acc;
    }
  }
  for (int u = 0; u < 8; ++u) {
    for (int v = 0; v < 8; ++v) {
      double acc = 0.0;
      for (int x = 0; x < 8; ++x) acc += tmp[u * 8 + x] * m[v * 8 + x];
      coeffs[u * 8 + v] = acc;
    }
  }
}

void InverseDct8x8(const double* coeffs, double* block) {
  const auto& m = DctBasis();
  double tmp[64];
  for (int y = 0; y < 8; ++y) {
    for (int v = 0; v < 8; ++v) {
      double acc = 0.0;
      for (int u = 0; u < 8; ++u) acc += m[u * 8 + y] * coeffs[u * 8 + v];
      tmp[y * 8 + v] = acc;
    }
  }
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      double acc = 0.0;
      for (int v = 0; v < 8; ++v) acc += tmp[y * 8 + v] * m[v * 8 + x];
      block[y * 8 + x] = acc;
    }
  }
}

LatentPlane PlaneAnalysis(const std::vector<double>& plane, int width,
                          int height) {
  if (width < 1 || height < 1 ||
      plane.size() != static_cast<size_t>(width) * height) {
    throw Error("PlaneAnalysis: bad plane shape");
  }
  LatentPlane latent;
  latent.blocks_x = (width + kBlockSize - 1) / kBlockSize;
  latent.blocks_y = (height + kBlockSize - 1) / kBlockSize;
  const size_t blocks =
      static_cast<size_t>(latent.blocks_x) * latent.blocks_y;
  for (auto& ch : latent.channels) ch.resize(blocks);

  double block[64];
  double coeffs[64];
  for (int by = 0; by < latent.blocks_y; ++by) {
    for (int bx = 0; bx < latent.blocks_x; ++bx) {
      for (int y = 0; y < kBlockSize; ++y) {
        const int sy = std::min(by * kBlockSize + y, height - 1);
        for (int x = 0; x < kBlockSize; ++x) {
          const int sx = std::min(bx * kBlockSize + x, width - 1);
          block[y * kBlockSize + x] =
              plane[static_cast<size_t>(sy) * width + sx];
        }
      }
      ForwardDct8x8(block, coeffs);
      const size_t b = static_cast<size_t>(by) * latent.blocks_x + bx;
      for (int s = 0; s < kSubbandCount; ++s) latent.channels[s][b] = coeffs[s];
    }
  }
  return latent;
}

std::vector<double> PlaneSynthesis(const LatentPlane& latent) {
  const int pw = latent.blocks_x * kBlockSize;
  const int ph = latent.blocks_y * kBlockSize;
  if (latent.blocks_x < 1 || latent.blocks_y < 1) {
    throw Error("PlaneSynthesis: empty latent");
  }
  const size_t blocks =
      static_cast<size_t>(latent.blocks_x) * latent.blocks_y;
  for (const auto& ch : latent.channels) {
    if (ch.size() != blocks) throw Error("PlaneSynthesis: channel shape");
  }
  std::vector<double> plane(static_cast<size_t>(pw) * ph);
  double block[64];
  double coeffs[64];
  for (int by = 0; by < latent.blocks_y; ++by) {
    for (int bx = 0; bx < latent.blocks_x; ++bx) {
      const size_t b = static_cast<size_t>(by) * latent.blocks_x + bx;
      for (int s = 0; s < kSubbandCount; ++s) coeffs[s] = latent.channels[s][b];
      InverseDct8x8(coeffs, block);
      for (int y = 0; y < kBlockSize; ++y) {
        double* row = plane.data() +
                      static_cast<size_t>(by * kBlockSize + y) * pw +
                      bx * kBlockSize;
        std::memcpy(row, block + y * kBlockSize, sizeof(double) * kBlockSize);
      }
    }
  }
  return plane;
}

std::vector<int> ChromaChannelMask(int c) {
  if (c < 1 || c > kSubbandCount) {
    throw Error("chroma channel count must be 1..64");
  }
  const auto& order = ZigzagOrder();
  return std::vector<int>(order.begin(), order.begin() + c);
}

bool IsCodingSpace(ColorSpace space) {
  return space == ColorSpace::kSrgb || space == ColorSpace::kYuv ||
         space == ColorSpace::kLab;
}

double LumaStep(int operating_point) {
  static constexpr double kNumerators[4] = {64.0, 32.0, 16.0, 8.0};
  if (operating_point < kOperatingPointMin ||
      operating_point > kOperatingPointMax) {
    throw Error("operating point must be 1..4");
  }
  return kNumerators[operating_point - 1] / 255.0;
}

double ChromaStep(int operating_point) {
  return 2.0 * LumaStep(operating_point);
}

QuantSteps StepsFor(int operating_point) {
  return {LumaStep(operating_point), ChromaStep(operating_point), 1.0 / 16.0};
}

EncodeResult EncodeImage(const PlanarImage& srgb, const EncodeConfig& config) {
  if (srgb.space() != ColorSpace::kSrgb) {
    throw Error("EncodeImage expects an sRGB input");
  }
  if (!IsCodingSpace(config.space)) {
    throw Error("unsupported coding space");
  }
  const int chroma_channels =
      config.space == ColorSpace::kSrgb ? kSubbandCount
                                        : config.chroma_channels;
  ChromaChannelMask(chroma_channels);  // validates the range
  LumaStep(config.operating_point);    // validates the operating point

  const PlanarImage coding = ConvertImage(srgb, config.space);
  const int width = coding.width();
  const int height = coding.height();
  const std::vector<BranchDef> layout = BranchLayout(config.space);

  EncodeResult result;
  std::vector<std::vector<uint8_t>> payloads;
  int blocks_x = 0;
  int blocks_y = 0;

  for (size_t bi = 0; bi < layout.size(); ++bi) {
    const BranchDef& branch = layout[bi];
    const double step = branch.chroma ? ChromaStep(config.operating_point)
                                      : LumaStep(config.operating_point);
    const int kept = KeptRanks(branch, chroma_channels);
    const int nplanes = static_cast<int>(branch.planes.size());

    // Quantized symbols per local plane: [plane][subband][block].
    std::vector<std::array<std::vector<int32_t>, kSubbandCount>> symbols(
        nplanes);
    size_t blocks = 0;
    for (int lp = 0; lp < nplanes; ++lp) {
      const int plane = branch.planes[lp];
      const PlaneScale ps = ScaleFor(config.space, plane);
      const LatentPlane latent =
          PlaneAnalysis(UnitPlane(coding, plane, ps), width, height);
      blocks_x = latent.blocks_x;
      blocks_y = latent.blocks_y;
      blocks = static_cast<size_t>(blocks_x) * blocks_y;
      for (int s = 0; s < kSubbandCount; ++s) {
        symbols[lp][s].resize(blocks);
        for (size_t b = 0; b < blocks; ++b) {
          symbols[lp][s][b] =
              static_cast<int32_t>(std::lround(latent.channels[s][b] / step));
        }
      }
    }

    // Per-plane transmitted DC mean, then per-channel scales estimated
    // against the transmitted (integer) mean so both sides agree.
    std::vector<int32_t> dc_means(nplanes, 0);
    std::vector<std::vector<ChannelModelInfo>> model_info(
        nplanes, std::vector<ChannelModelInfo>(kept));
    for (int lp = 0; lp < nplanes; ++lp) {
      double sum = 0.0;
      for (int32_t s : symbols[lp][0]) sum += s;
      dc_means[lp] =
          static_cast<int32_t>(std::lround(sum / static_cast<double>(blocks)));
      for (int r = 0; r < kept; ++r) {
        const int sub = ZigzagOrder()[r];
        const int32_t mu = sub == 0 ? dc_means[lp] : 0;
        double sq = 0.0;
        for (int32_t s : symbols[lp][sub]) {
          const double d = static_cast<double>(s) - mu;
          sq += d * d;
        }
        const double sigma_ml = std::sqrt(sq / static_cast<double>(blocks));
        ChannelModelInfo& info = model_info[lp][r];
        info.sigma_code = QuantizeSigma(sigma_ml);
        info.sigma = DequantizeSigma(info.sigma_code);
        info.mean = mu;
      }
    }

    // Side component: per plane, the transmitted mean then the scale codes
    // for every kept channel in zigzag order.
    std::vector<uint8_t> side;
    {
      RangeEncoder enc(&side);
      for (int lp = 0; lp < nplanes; ++lp) {
        uint8_t mean_bytes[2];
        TransmittedMeanBytes(dc_means[lp], mean_bytes);
        enc.Encode(ByteTable(), mean_bytes[0]);
        enc.Encode(ByteTable(), mean_bytes[1]);
        for (int r = 0; r < kept; ++r) {
          enc.Encode(SigmaTable(),
                     model_info[lp][r].sigma_code - kSigmaCodeMin);
        }
      }
      enc.Finish();
    }

    // Main component: every kept channel's block symbols under its
    // Gaussian model.
    std::vector<uint8_t> main;
    {
      RangeEncoder enc(&main);
      for (int lp = 0; lp < nplanes; ++lp) {
        for (int r = 0; r < kept; ++r) {
          const int sub = ZigzagOrder()[r];
          const ChannelModelInfo& info = model_info[lp][r];
          const GaussianModel model(static_cast<double>(info.mean),
                                    info.sigma);
          double bits = 0.0;
          for (int32_t s : symbols[lp][sub]) {
            model.EncodeSymbol(&enc, s);
            bits += model.EstimateBits(s);
          }
          ChannelTrace trace;
          trace.branch = static_cast<int>(bi);
          trace.channel = lp * kSubbandCount + sub;
          trace.plane = branch.planes[lp];
          trace.subband = sub;
          trace.sigma_code = info.sigma_code;
          trace.sigma = info.sigma;
          trace.mean = info.mean;
          trace.symbols = blocks;
          trace.estimated_bits = bits;
          result.trace.channels.push_back(trace);
        }
      }
      enc.Finish();
    }

    payloads.push_back(std::move(side));
    payloads.push_back(std::move(main));
  }

  // Container header.
  std::vector<uint8_t>& out = result.bitstream;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.push_back(SpaceToByte(config.space));
  out.push_back(static_cast<uint8_t>(kBlockSize));
  out.push_back(static_cast<uint8_t>(chroma_channels));
  out.push_back(static_cast<uint8_t>(config.operating_point));
  PutU32Be(&out, static_cast<uint32_t>(width));
  PutU32Be(&out, static_cast<uint32_t>(height));
  out.push_back(static_cast<uint8_t>(payloads.size()));
  for (size_t i = 0; i < payloads.size(); ++i) {
    out.push_back(static_cast<uint8_t>(i));
    PutU32Be(&out, static_cast<uint32_t>(payloads[i].size()));
    ComponentInfo info;
    info.id = static_cast<int>(i);
    info.bytes = static_cast<uint32_t>(payloads[i].size());
    result.trace.components.push_back(info);
  }
  result.trace.header_bytes = out.size();
  for (const std::vector<uint8_t>& p : payloads) {
    out.insert(out.end(), p.begin(), p.end());
  }
  result.trace.total_bytes = out.size();
  return result;
}

BitstreamInfo InspectBitstream(const std::vector<uint8_t>& bitstream) {
  BitstreamInfo info;
  if (bitstream.size() < 19 ||
      std::memcmp(bitstream.data(), kMagic, 4) != 0) {
    throw Error("bitstream: bad magic");
  }
  const uint8_t* p = bitstream.data();
  info.version = p[4];
  if (info.version != kVersion) throw Error("bitstream: unsupported version");
  info.space = SpaceFromByte(p[5]);
  info.block_size = p[6];
  if (info.block_size != kBlockSize) {
    throw Error("bitstream: unsupported block size");
  }
  info.chroma_channels = p[7];
  if (info.chroma_channels < 1 || info.chroma_channels > kSubbandCount) {
    throw Error("bitstream: bad chroma channel count");
  }
  info.operating_point = p[8];
  if (info.operating_point < kOperatingPointMin ||
      info.operating_point > kOperatingPointMax) {
    throw Error("bitstream: bad operating point");
  }
  info.width = static_cast<int>(GetU32Be(p + 9));
  info.height = static_cast<int>(GetU32Be(p + 13));
  if (info.width <= 0 || info.height <= 0) {
    throw Error("bitstream: bad image size");
  }
  const int count = p[17];
  const int expected = info.space == ColorSpace::kSrgb ? 2 : 4;
  if (count != expected) throw Error("bitstream: bad component count");
  size_t offset = 18 + static_cast<size_t>(count) * 5;
  if (bitstream.size() < offset) throw Error("bitstream: truncated header");
  info.header_bytes = offset;
  size_t payload_total = 0;
  for (int i = 0; i < count; ++i) {
    const uint8_t* entry = p + 18 + static_cast<size_t>(i) * 5;
    ComponentInfo comp;
    comp.id = entry[0];
    comp.bytes = GetU32Be(entry + 1);
    if (comp.id != i) throw Error("bitstream: unexpected component id");
    payload_total += comp.bytes;
    info.components.push_back(comp);
  }
  if (info.header_bytes + payload_total != bitstream.size()) {
    throw Error("bitstream: payload size mismatch");
  }
  return info;
}

PlanarImage DecodeImage(const std::vector<uint8_t>& bitstream,
                        const DecodeOptions& options) {
  const BitstreamInfo info = InspectBitstream(bitstream);
  const int blocks_x = (info.width + kBlockSize - 1) / kBlockSize;
  const int blocks_y = (info.height + kBlockSize - 1) / kBlockSize;
  const size_t blocks = static_cast<size_t>(blocks_x) * blocks_y;
  const std::vector<BranchDef> layout = BranchLayout(info.space);

  PlanarImage coding(info.width, info.height, info.space);

  size_t offset = info.header_bytes;
  std::vector<std::pair<const uint8_t*, size_t>> spans;
  for (const ComponentInfo& comp : info.components) {
    spans.emplace_back(bitstream.data() + offset, comp.bytes);
    offset += comp.bytes;
  }

  for (size_t bi = 0; bi < layout.size(); ++bi) {
    const BranchDef& branch = layout[bi];
    const double step = branch.chroma ? ChromaStep(info.operating_point)
                                      : LumaStep(info.operating_point);
    const int kept = KeptRanks(branch, info.chroma_channels);
    const int nplanes = static_cast<int>(branch.planes.size());

    std::vector<int32_t> dc_means(nplanes, 0);
    std::vector<std::vector<int>> sigma_codes(nplanes,
                                              std::vector<int>(kept, 0));
    {
      const auto& span = spans[2 * bi];
      RangeDecoder dec(span.first, span.second);
      for (int lp = 0; lp < nplanes; ++lp) {
        const uint8_t hi = static_cast<uint8_t>(dec.Decode(ByteTable()));
        const uint8_t lo = static_cast<uint8_t>(dec.Decode(ByteTable()));
        dc_means[lp] = MeanFromBytes(hi, lo);
        for (int r = 0; r < kept; ++r) {
          sigma_codes[lp][r] = dec.Decode(SigmaTable()) + kSigmaCodeMin;
        }
      }
    }

    {
      const auto& span = spans[2 * bi + 1];
      RangeDecoder dec(span.first, span.second);
      for (int lp = 0; lp < nplanes; ++lp) {
        const int plane = branch.planes[lp];
        LatentPlane latent;
        latent.blocks_x = blocks_x;
        latent.blocks_y = blocks_y;
        for (auto& ch : latent.channels) ch.assign(blocks, 0.0);
        for (int r = 0; r < kept; ++r) {
          const int sub = ZigzagOrder()[r];
          const int32_t mu = sub == 0 ? dc_means[lp] : 0;
          const GaussianModel model(static_cast<double>(mu),
                                    DequantizeSigma(sigma_codes[lp][r]));
          const int channel = lp * kSubbandCount + sub;
          const bool zero_out =
              options.keep_branch >= 0 &&
              !(static_cast<int>(bi) == options.keep_branch &&
                channel == options.keep_channel);
          for (size_t b = 0; b < blocks; ++b) {
            const int32_t s = model.DecodeSymbol(&dec);
            if (!zero_out) latent.channels[sub][b] = s * step;
          }
        }
        const std::vector<double> padded = PlaneSynthesis(latent);
        const PlaneScale ps = ScaleFor(info.space, plane);
        const int pw = blocks_x * kBlockSize;
        for (int y = 0; y < info.height; ++y) {
          for (int x = 0; x < info.width; ++x) {
            coding.at(plane, y, x) = static_cast<float>(
                ps.FromUnit(padded[static_cast<size_t>(y) * pw + x]));
          }
        }
      }
    }
  }

  if (options.coding_space_output) return coding;
  return ConvertImage(coding, ColorSpace::kSrgb);
}

}  // namespace chromabench
