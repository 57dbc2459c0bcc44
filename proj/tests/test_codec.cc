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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "chromabench/codec.h"
#include "chromabench/color.h"
#include "chromabench/entropy.h"
#include "chromabench/metrics.h"
#include "test_util.h"

using namespace chromabench;

TEST_CASE("zigzag order") {
  const auto& order = ZigzagOrder();
  const int expected_head[8] = {0, 1, 8, 16, 9, 2, 3, 10};
  for (int i = 0; i < 8; ++i) CHECK(order[i] == expected_head[i]);
  CHECK(order[63] == 63);

  std::set<int> seen(order.begin(), order.end());
  CHECK(seen.size() == 64u);
  CHECK(*seen.begin() == 0);
  CHECK(*seen.rbegin() == 63);

  const auto& rank = ZigzagRank();
  for (int r = 0; r < kSubbandCount; ++r) {
    CHECK(rank[order[r]] == r);
  }
}

TEST_CASE("dct round trip and known coefficients") {
  double block[64];
  double coeffs[64];
  double back[64];

  // Horizontal ramp x/8.
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) block[y * 8 + x] = x / 8.0;
  }
  ForwardDct8x8(block, coeffs);
  CHECK(coeffs[0] == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(coeffs[1] == doctest::Approx(-2.277705147974509).epsilon(1e-12));
  CHECK(std::fabs(coeffs[8]) < 1e-12);
  InverseDct8x8(coeffs, back);
  for (int i = 0; i < 64; ++i) {
    CHECK(std::fabs(back[i] - block[i]) < 1e-12);
  }

  // A constant block concentrates everything in the DC coefficient, at
  // eight times the sample value for the orthonormal normalization.
  for (int i = 0; i < 64; ++i) block[i] = 0.375;
  ForwardDct8x8(block, coeffs);
  CHECK(coeffs[0] == doctest::Approx(8.0 * 0.375).epsilon(1e-12));
  for (int i = 1; i < 64; ++i) CHECK(std::fabs(coeffs[i]) < 1e-12);

  // Orthonormality: the transform preserves the sum of squares.
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int i = 0; i < 64; ++i) block[i] = dist(rng);
  ForwardDct8x8(block, coeffs);
  const double e_spatial =
      std::inner_product(block, block + 64, block, 0.0);
  const double e_freq =
      std::inner_product(coeffs, coeffs + 64, coeffs, 0.0);
  CHECK(e_spatial == doctest::Approx(e_freq).epsilon(1e-12));
}

TEST_CASE("plane analysis and synthesis") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> dist(0.0, 1.0);

  // Whole blocks: synthesis is an exact inverse.
  std::vector<double> plane(16 * 16);
  for (auto& v : plane) v = dist(rng);
  const LatentPlane latent = PlaneAnalysis(plane, 16, 16);
  CHECK(latent.blocks_x == 2);
  CHECK(latent.blocks_y == 2);
  for (const auto& ch : latent.channels) CHECK(ch.size() == 4u);
  const std::vector<double> back = PlaneSynthesis(latent);
  REQUIRE(back.size() == plane.size());
  for (size_t i = 0; i < plane.size(); ++i) {
    CHECK(std::fabs(back[i] - plane[i]) < 1e-12);
  }

  // Channel 0 carries eight times the block mean.
  double mean00 = 0.0;
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) mean00 += plane[y * 16 + x];
  }
  mean00 /= 64.0;
  CHECK(latent.channels[0][0] == doctest::Approx(8.0 * mean00).epsilon(1e-12));

  // Partial edge blocks round trip over the original region.
  std::vector<double> odd(10 * 10);
  for (auto& v : odd) v = dist(rng);
  const LatentPlane odd_latent = PlaneAnalysis(odd, 10, 10);
  CHECK(odd_latent.blocks_x == 2);
  CHECK(odd_latent.blocks_y == 2);
  const std::vector<double> odd_back = PlaneSynthesis(odd_latent);
  REQUIRE(odd_back.size() == 16u * 16u);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      CHECK(std::fabs(odd_back[y * 16 + x] - odd[y * 10 + x]) < 1e-12);
    }
  }
}

TEST_CASE("chroma channel mask") {
  CHECK(ChromaChannelMask(64).size() == 64u);
  CHECK(ChromaChannelMask(1) == std::vector<int>{0});

  const std::vector<int> keep3 = ChromaChannelMask(3);
  CHECK(std::set<int>(keep3.begin(), keep3.end()) ==
        std::set<int>({0, 1, 8}));

  for (int c : {1, 8, 16, 32, 64}) {
    const auto mask = ChromaChannelMask(c);
    CHECK(static_cast<int>(mask.size()) == c);
    // Always includes DC.
    CHECK(std::find(mask.begin(), mask.end(), 0) != mask.end());
  }
  CHECK_THROWS_AS(ChromaChannelMask(0), Error);
  CHECK_THROWS_AS(ChromaChannelMask(65), Error);
}

TEST_CASE("quantizer steps") {
  const double denominators[4] = {64.0, 32.0, 16.0, 8.0};
  for (int op = 1; op <= 4; ++op) {
    const QuantSteps steps = StepsFor(op);
    CHECK(steps.luma ==
          doctest::Approx(denominators[op - 1] / 255.0).epsilon(1e-15));
    CHECK(steps.chroma == doctest::Approx(2.0 * steps.luma).epsilon(1e-15));
    CHECK(steps.side == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(LumaStep(op) == doctest::Approx(steps.luma).epsilon(1e-15));
    CHECK(ChromaStep(op) == doctest::Approx(steps.chroma).epsilon(1e-15));
  }
  CHECK(StepsFor(1).luma == doctest::Approx(0.25098039215686274).epsilon(1e-15));
  CHECK(StepsFor(4).luma == doctest::Approx(0.03137254901960784).epsilon(1e-15));
  CHECK_THROWS_AS(StepsFor(0), Error);
  CHECK_THROWS_AS(StepsFor(5), Error);
}

TEST_CASE("coding spaces") {
  CHECK(IsCodingSpace(ColorSpace::kSrgb));
  CHECK(IsCodingSpace(ColorSpace::kYuv));
  CHECK(IsCodingSpace(ColorSpace::kLab));
  CHECK(!IsCodingSpace(ColorSpace::kLinearRgb));
}

TEST_CASE("encode decode round trip") {
  const PlanarImage src = testutil::SyntheticNatural(24, 17, 42);

  for (ColorSpace space :
       {ColorSpace::kSrgb, ColorSpace::kYuv, ColorSpace::kLab}) {
    EncodeConfig cfg;
    cfg.space = space;
    cfg.operating_point = 4;
    const EncodeResult enc = EncodeImage(src, cfg);
    REQUIRE(!enc.bitstream.empty());

    const BitstreamInfo info = InspectBitstream(enc.bitstream);
    CHECK(info.space == space);
    CHECK(info.width == 24);
    CHECK(info.height == 17);
    CHECK(info.block_size == 8);
    CHECK(info.operating_point == 4);
    CHECK(info.chroma_channels == 64);
    const size_t expected_components = space == ColorSpace::kSrgb ? 2u : 4u;
    CHECK(info.components.size() == expected_components);
    for (size_t i = 0; i < info.components.size(); ++i) {
      CHECK(info.components[i].id == static_cast<int>(i));
    }
    size_t payload = 0;
    for (const auto& comp : info.components) payload += comp.bytes;
    CHECK(info.header_bytes + payload == enc.bitstream.size());
    CHECK(enc.trace.total_bytes == enc.bitstream.size());
    CHECK(enc.trace.header_bytes == info.header_bytes);

    const PlanarImage out = DecodeImage(enc.bitstream);
    CHECK(out.space() == ColorSpace::kSrgb);
    CHECK(out.width() == 24);
    CHECK(out.height() == 17);
    // Finest operating point keeps the reconstruction close.
    CHECK(Psnr(src, out) > 30.0);

    // Determinism: same input, same bytes.
    const EncodeResult again = EncodeImage(src, cfg);
    CHECK(again.bitstream == enc.bitstream);
  }
}

TEST_CASE("rate moves with the operating point") {
  const PlanarImage src = testutil::SyntheticNatural(64, 64, 9);
  size_t previous = 0;
  for (int op = 1; op <= 4; ++op) {
    EncodeConfig cfg;
    cfg.space = ColorSpace::kYuv;
    cfg.operating_point = op;
    const EncodeResult enc = EncodeImage(src, cfg);
    CHECK(enc.bitstream.size() > previous);
    previous = enc.bitstream.size();
  }
}

TEST_CASE("chroma channel masking zeroes high subbands") {
  const PlanarImage src = testutil::SyntheticNatural(32, 32, 4);

  EncodeConfig cfg;
  cfg.space = ColorSpace::kYuv;
  cfg.operating_point = 4;
  cfg.chroma_channels = 1;
  const EncodeResult enc = EncodeImage(src, cfg);

  const BitstreamInfo info = InspectBitstream(enc.bitstream);
  CHECK(info.chroma_channels == 1);

  // With only the DC subband kept, every chroma block decodes to a
  // constant in the coding space.
  DecodeOptions opts;
  opts.coding_space_output = true;
  const PlanarImage coded = DecodeImage(enc.bitstream, opts);
  CHECK(coded.space() == ColorSpace::kYuv);
  for (int p = 1; p <= 2; ++p) {
    for (int by = 0; by < coded.height() / 8; ++by) {
      for (int bx = 0; bx < coded.width() / 8; ++bx) {
        const float v0 = coded.at(p, by * 8, bx * 8);
        for (int y = 0; y < 8; ++y) {
          for (int x = 0; x < 8; ++x) {
            CHECK(std::fabs(coded.at(p, by * 8 + y, bx * 8 + x) - v0) < 1e-6);
          }
        }
      }
    }
  }

  // Chroma traces only mention the kept subband.
  for (const auto& tr : enc.trace.channels) {
    if (tr.branch == 1) CHECK(tr.subband == 0);
  }
}

TEST_CASE("single channel keep produces flat other planes") {
  const PlanarImage src = testutil::SyntheticNatural(32, 32, 21);
  EncodeConfig cfg;
  cfg.space = ColorSpace::kYuv;
  cfg.operating_point = 4;
  const EncodeResult enc = EncodeImage(src, cfg);

  DecodeOptions opts;
  opts.keep_branch = 0;
  opts.keep_channel = 0;
  opts.coding_space_output = true;
  const PlanarImage only_dc = DecodeImage(enc.bitstream, opts);
  // Everything outside the kept channel is zeroed before synthesis, so the
  // chroma planes collapse to exactly zero in the coding space.
  for (int p = 1; p <= 2; ++p) {
    for (float v : only_dc.plane(p)) CHECK(std::fabs(v) < 1e-9);
  }
}

TEST_CASE("encode input validation") {
  const PlanarImage src = testutil::SyntheticNatural(16, 16, 1);
  const PlanarImage yuv = ConvertImage(src, ColorSpace::kYuv);

  EncodeConfig cfg;
  cfg.space = ColorSpace::kYuv;
  CHECK_THROWS_AS(EncodeImage(yuv, cfg), Error);

  cfg.space = ColorSpace::kLinearRgb;
  CHECK_THROWS_AS(EncodeImage(src, cfg), Error);

  cfg.space = ColorSpace::kYuv;
  cfg.operating_point = 9;
  CHECK_THROWS_AS(EncodeImage(src, cfg), Error);

  cfg.operating_point = 2;
  cfg.chroma_channels = 0;
  CHECK_THROWS_AS(EncodeImage(src, cfg), Error);

  // The single-branch configuration has no chroma mask; the field is
  // forced to the full set.
  cfg.space = ColorSpace::kSrgb;
  cfg.chroma_channels = 8;
  const EncodeResult enc = EncodeImage(src, cfg);
  CHECK(InspectBitstream(enc.bitstream).chroma_channels == 64);
}

TEST_CASE("bitstream validation") {
  const PlanarImage src = testutil::SyntheticNatural(16, 16, 2);
  EncodeConfig cfg;
  cfg.space = ColorSpace::kLab;
  const EncodeResult enc = EncodeImage(src, cfg);

  std::vector<uint8_t> bad_magic = enc.bitstream;
  bad_magic[0] ^= 0xFF;
  CHECK_THROWS_AS(InspectBitstream(bad_magic), Error);
  CHECK_THROWS_AS(DecodeImage(bad_magic), Error);

  std::vector<uint8_t> truncated(enc.bitstream.begin(),
                                 enc.bitstream.begin() + 10);
  CHECK_THROWS_AS(InspectBitstream(truncated), Error);

  std::vector<uint8_t> short_payload = enc.bitstream;
  short_payload.resize(short_payload.size() - 5);
  CHECK_THROWS_AS(InspectBitstream(short_payload), Error);
}

TEST_CASE("trace matches bitstream layout") {
  const PlanarImage src = testutil::SyntheticNatural(40, 24, 77);
  EncodeConfig cfg;
  cfg.space = ColorSpace::kYuv;
  cfg.operating_point = 3;
  cfg.chroma_channels = 16;
  const EncodeResult enc = EncodeImage(src, cfg);

  CHECK(enc.trace.components.size() == 4u);
  size_t payload = 0;
  for (const auto& comp : enc.trace.components) payload += comp.bytes;
  CHECK(enc.trace.header_bytes + payload == enc.trace.total_bytes);

  // 5x3 blocks per plane; one luma plane of 64 subbands plus two chroma
  // planes of 16 kept subbands each.
  int luma_channels = 0;
  int chroma_channels = 0;
  for (const auto& tr : enc.trace.channels) {
    CHECK(tr.symbols == 15u);
    CHECK(tr.sigma >= kSigmaMin * 0.999);
    if (tr.branch == 0) {
      ++luma_channels;
      CHECK(tr.plane == 0);
    } else {
      ++chroma_channels;
      CHECK((tr.plane == 1 || tr.plane == 2));
    }
  }
  CHECK(luma_channels == 64);
  CHECK(chroma_channels == 32);
}
