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

#include "chromabench/metrics.h"
#include "golden_ciede2000.h"
#include "test_util.h"

using namespace chromabench;

namespace {

// Smooth sine-product pattern pair with a mild, spatially varying
// degradation. Pixels are quantized to float before use so the expected
// values below are stable across platforms.
void MakePatternPair(int w, int h, PlanarImage* a, PlanarImage* b) {
  *a = PlanarImage(w, h, ColorSpace::kSrgb);
  *b = PlanarImage(w, h, ColorSpace::kSrgb);
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const double va = 0.5 + 0.25 * std::sin(0.11 * x + 0.07 * y + 0.9 * c) +
                          0.1 * std::cos(0.023 * x * y / 50.0 + c);
        const double vb =
            0.97 * va + 0.015 * std::sin(0.31 * x + 0.17 * y) + 0.01;
        a->at(c, y, x) = static_cast<float>(std::clamp(va, 0.0, 1.0));
        b->at(c, y, x) = static_cast<float>(std::clamp(vb, 0.0, 1.0));
      }
    }
  }
}

PlanarImage CropTopLeft(const PlanarImage& src, int w, int h) {
  PlanarImage out(w, h, src.space());
  for (int p = 0; p < 3; ++p) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) out.at(p, y, x) = src.at(p, y, x);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("ciede2000 golden pairs") {
  for (int i = 0; i < testutil::kCiedeGoldenCount; ++i) {
    const auto& g = testutil::kCiedeGolden[i];
    const Triplet lab1 = {g.l1, g.a1, g.b1};
    const Triplet lab2 = {g.l2, g.a2, g.b2};
    const double de = Ciede2000(lab1, lab2);
    INFO("pair ", i + 1);
    CHECK(std::fabs(de - g.expected) < 1e-4);
    // The formula is symmetric in its arguments.
    CHECK(std::fabs(Ciede2000(lab2, lab1) - de) < 1e-12);
  }
  CHECK(Ciede2000({50.0, 2.5, 0.0}, {50.0, 2.5, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("ciede quality form") {
  CHECK(CiedeQuality(0.0) == 5.0);
  CHECK(CiedeQuality(1.2) == doctest::Approx(3.8).epsilon(1e-12));
  CHECK(CiedeQuality(6.0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("psnr and mse") {
  PlanarImage a(16, 16, ColorSpace::kSrgb);
  PlanarImage b(16, 16, ColorSpace::kSrgb);
  for (int p = 0; p < 3; ++p) {
    std::fill(a.plane(p).begin(), a.plane(p).end(), 0.5f);
    std::fill(b.plane(p).begin(), b.plane(p).end(), 0.5f + 1.0f / 255.0f);
  }
  CHECK(Mse(a, a) == 0.0);
  CHECK(Psnr(a, a) == kMetricDbCap);
  // Uniform one-step error on the 8-bit grid: 20*log10(255).
  CHECK(std::fabs(Psnr(a, b) - 48.1308036086791) < 1e-3);
  CHECK(Mse(a, b) ==
        doctest::Approx(1.0 / (255.0 * 255.0)).epsilon(1e-5));

  const auto per_channel = PsnrPerChannel(a, b);
  for (int c = 0; c < 3; ++c) {
    CHECK(std::fabs(per_channel[c] - Psnr(a, b)) < 1e-9);
  }

  PlanarImage c(8, 16, ColorSpace::kSrgb);
  CHECK_THROWS_AS(Mse(a, c), Error);
  CHECK_THROWS_AS(Psnr(a, c), Error);
}

TEST_CASE("msssim db mapping") {
  CHECK(MsSsimToDb(0.9) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(MsSsimToDb(0.99) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(MsSsimToDb(1.0) == kMetricDbCap);
  CHECK(MsSsimToDb(0.0) == 0.0);
}

TEST_CASE("msssim pattern pair") {
  PlanarImage a, b;
  MakePatternPair(192, 192, &a, &b);

  int scales = 0;
  CHECK(MsSsim(a, a, &scales) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(scales == 5);

  const double v = MsSsim(a, b, &scales);
  CHECK(scales == 5);
  CHECK(std::fabs(v - 0.9938372406438857) < 1e-8);

  // A 128x128 crop only supports four scales; exponents are the leading
  // canonical weights renormalized to sum one.
  const PlanarImage a128 = CropTopLeft(a, 128, 128);
  const PlanarImage b128 = CropTopLeft(b, 128, 128);
  const double v128 = MsSsim(a128, b128, &scales);
  CHECK(scales == 4);
  CHECK(std::fabs(v128 - 0.9931743982081446) < 1e-8);
}

TEST_CASE("msssim constant pair closed form") {
  PlanarImage a(256, 256, ColorSpace::kSrgb);
  PlanarImage b(256, 256, ColorSpace::kSrgb);
  for (int p = 0; p < 3; ++p) {
    std::fill(a.plane(p).begin(), a.plane(p).end(), 0.4f);
    std::fill(b.plane(p).begin(), b.plane(p).end(), 0.6f);
  }
  int scales = 0;
  const double v = MsSsim(a, b, &scales);
  CHECK(scales == 5);
  // Contrast/structure terms are exactly one on constant inputs; only the
  // luminance factor at the coarsest scale survives, raised to its weight.
  const double c1 = 0.01 * 0.01;
  const double lum = (2.0 * 0.4 * 0.6 + c1) / (0.4 * 0.4 + 0.6 * 0.6 + c1);
  CHECK(std::fabs(v - std::pow(lum, 0.1333)) < 1e-6);
  CHECK(std::fabs(v - 0.989389138201458) < 1e-9);
}

TEST_CASE("msssim scale selection") {
  // Five scales need the deepest image to still admit one 11x11 window.
  auto scales_for = [](int dim) {
    PlanarImage img(dim, dim, ColorSpace::kSrgb);
    int scales = 0;
    MsSsim(img, img, &scales);
    return scales;
  };
  CHECK(scales_for(256) == 5);
  CHECK(scales_for(176) == 5);
  CHECK(scales_for(175) == 4);
  CHECK(scales_for(128) == 4);
  CHECK(scales_for(32) == 2);

  PlanarImage a(192, 192, ColorSpace::kSrgb);
  PlanarImage b(192, 128, ColorSpace::kSrgb);
  CHECK_THROWS_AS(MsSsim(a, b), Error);
}

TEST_CASE("mean ciede2000 over images") {
  PlanarImage a, b;
  MakePatternPair(64, 64, &a, &b);
  CHECK(MeanCiede2000(a, a) == 0.0);
  const double de = MeanCiede2000(a, b);
  CHECK(de > 0.0);
  CHECK(de < 10.0);
  // Inputs in other spaces are converted to Lab first, so the value is
  // independent of the representation they arrive in.
  const PlanarImage a_yuv = ConvertImage(a, ColorSpace::kYuv);
  const PlanarImage b_yuv = ConvertImage(b, ColorSpace::kYuv);
  CHECK(std::fabs(MeanCiede2000(a_yuv, b_yuv) - de) < 1e-3);
}

TEST_CASE("metric report consistency") {
  PlanarImage a, b;
  MakePatternPair(192, 192, &a, &b);
  const MetricReport r = ComputeMetrics(a, b);

  CHECK(r.mse == doctest::Approx(Mse(a, b)).epsilon(1e-12));
  CHECK(r.psnr == doctest::Approx(Psnr(a, b)).epsilon(1e-12));
  CHECK(r.msssim == doctest::Approx(MsSsim(a, b)).epsilon(1e-12));
  CHECK(r.msssim_db == doctest::Approx(MsSsimToDb(r.msssim)).epsilon(1e-12));
  CHECK(r.msssim_scales == 5);
  CHECK(r.ciede2000 == doctest::Approx(MeanCiede2000(a, b)).epsilon(1e-12));
  CHECK(r.ciede_quality ==
        doctest::Approx(CiedeQuality(r.ciede2000)).epsilon(1e-12));
  const auto per_channel = PsnrPerChannel(a, b);
  for (int c = 0; c < 3; ++c) {
    CHECK(r.psnr_channel[c] == doctest::Approx(per_channel[c]).epsilon(1e-12));
  }

  const MetricReport same = ComputeMetrics(a, a);
  CHECK(same.psnr == doctest::Approx(kMetricDbCap));
  CHECK(same.msssim == doctest::Approx(1.0));
  CHECK(same.msssim_db == doctest::Approx(kMetricDbCap));
  CHECK(same.ciede2000 == doctest::Approx(0.0));
  CHECK(same.ciede_quality == doctest::Approx(5.0));
}
