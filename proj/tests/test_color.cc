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

#include <cmath>
#include <random>

#include "chromabench/color.h"
#include "chromabench/image.h"
#include "test_util.h"

using namespace chromabench;

TEST_CASE("srgb transfer breakpoints and samples") {
  CHECK(SrgbToLinear(0.0) == 0.0);
  CHECK(SrgbToLinear(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  // The linear segment ends exactly at 0.04045 / 12.92.
  CHECK(SrgbToLinear(0.04045) ==
        doctest::Approx(0.0031308049535603713).epsilon(1e-13));
  CHECK(LinearToSrgb(0.0031308) == doctest::Approx(0.040449936).epsilon(1e-9));
  CHECK(SrgbToLinear(0.5) ==
        doctest::Approx(0.21404114048223255).epsilon(1e-13));

  // Continuity across the breakpoint from both sides.
  const double below = SrgbToLinear(0.04045 - 1e-9);
  const double above = SrgbToLinear(0.04045 + 1e-9);
  CHECK(std::fabs(above - below) < 1e-8);

  for (int i = 0; i <= 1000; ++i) {
    const double s = i / 1000.0;
    CHECK(LinearToSrgb(SrgbToLinear(s)) == doctest::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("rgb to xyz matrix and white point") {
  const ColorMatrix& m = RgbToXyzMatrix();
  const double expected[9] = {0.4124564, 0.3575761, 0.1804375,
                              0.2126729, 0.7151522, 0.0721750,
                              0.0193339, 0.1191920, 0.9503041};
  for (int i = 0; i < 9; ++i) {
    CHECK(m.m[i] == expected[i]);
  }
  // The white point is the image of (1,1,1): exact row sums.
  const Triplet& w = WhitePointXyz();
  CHECK(w[0] == doctest::Approx(0.95047).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(1.0000001).epsilon(1e-12));
  CHECK(w[2] == doctest::Approx(1.08883).epsilon(1e-12));

  const ColorMatrix inv = m.Inverse();
  for (int r = 0; r < 3; ++r) {
    Triplet e = {0, 0, 0};
    e[r] = 1.0;
    const Triplet back = inv.Apply(m.Apply(e));
    for (int c = 0; c < 3; ++c) {
      CHECK(back[c] == doctest::Approx(e[c]).epsilon(1e-12));
    }
  }
}

TEST_CASE("yuv analog form") {
  const Triplet red = SrgbToYuv({1.0, 0.0, 0.0});
  CHECK(red[0] == doctest::Approx(0.2126).epsilon(1e-12));
  CHECK(red[1] == doctest::Approx(-0.11457210605733996).epsilon(1e-12));
  CHECK(red[2] == doctest::Approx(0.5).epsilon(1e-12));

  const Triplet blue = SrgbToYuv({0.0, 0.0, 1.0});
  CHECK(blue[0] == doctest::Approx(0.0722).epsilon(1e-12));
  CHECK(blue[1] == doctest::Approx(0.5).epsilon(1e-12));

  // Grays carry no chroma at all.
  for (double g : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const Triplet yuv = SrgbToYuv({g, g, g});
    CHECK(yuv[0] == doctest::Approx(g).epsilon(1e-12));
    CHECK(std::fabs(yuv[1]) < 1e-15);
    CHECK(std::fabs(yuv[2]) < 1e-15);
  }
}

TEST_CASE("lab mid gray and neutral axis") {
  const Triplet lab = SrgbToLab({0.5, 0.5, 0.5});
  CHECK(lab[0] == doctest::Approx(53.38896474111432).epsilon(1e-10));
  CHECK(std::fabs(lab[1]) < 1e-10);
  CHECK(std::fabs(lab[2]) < 1e-10);

  CHECK(SrgbToLab({1.0, 1.0, 1.0})[0] == doctest::Approx(100.0).epsilon(1e-9));
  CHECK(SrgbToLab({0.0, 0.0, 0.0})[0] == 0.0);

  for (int i = 0; i <= 100; ++i) {
    const double g = i / 100.0;
    const Triplet v = SrgbToLab({g, g, g});
    CHECK(std::fabs(v[1]) < 1e-3);
    CHECK(std::fabs(v[2]) < 1e-3);
  }
}

TEST_CASE("round trips on random triples") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double worst_yuv = 0.0;
  double worst_lab = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Triplet rgb = {dist(rng), dist(rng), dist(rng)};
    const Triplet via_yuv = YuvToSrgb(SrgbToYuv(rgb));
    const Triplet via_lab = LabToSrgb(SrgbToLab(rgb));
    for (int c = 0; c < 3; ++c) {
      worst_yuv = std::max(worst_yuv, std::fabs(via_yuv[c] - rgb[c]));
      worst_lab = std::max(worst_lab, std::fabs(via_lab[c] - rgb[c]));
    }
  }
  CHECK(worst_yuv < 1e-6);
  CHECK(worst_lab < 1e-6);
}

TEST_CASE("out of gamut values clamp into srgb") {
  const Triplet hot = YuvToSrgb({1.2, 0.5, 0.5});
  const Triplet cold = YuvToSrgb({-0.2, -0.5, -0.5});
  for (int c = 0; c < 3; ++c) {
    CHECK(hot[c] >= 0.0);
    CHECK(hot[c] <= 1.0);
    CHECK(cold[c] >= 0.0);
    CHECK(cold[c] <= 1.0);
  }
  const Triplet wild = LabToSrgb({120.0, 90.0, -120.0});
  for (int c = 0; c < 3; ++c) {
    CHECK(wild[c] >= 0.0);
    CHECK(wild[c] <= 1.0);
  }
}

TEST_CASE("color space names") {
  CHECK(ColorSpaceFromName("rgb") == ColorSpace::kSrgb);
  CHECK(ColorSpaceFromName("srgb") == ColorSpace::kSrgb);
  CHECK(ColorSpaceFromName("linear") == ColorSpace::kLinearRgb);
  CHECK(ColorSpaceFromName("yuv") == ColorSpace::kYuv);
  CHECK(ColorSpaceFromName("lab") == ColorSpace::kLab);
  CHECK(ColorSpaceFromName(ColorSpaceName(ColorSpace::kLab)) ==
        ColorSpace::kLab);
  CHECK_THROWS_AS(ColorSpaceFromName("hsv"), Error);
}

TEST_CASE("image conversion round trips") {
  const PlanarImage src = testutil::RandomImage(24, 17, 11);

  for (ColorSpace target :
       {ColorSpace::kLinearRgb, ColorSpace::kYuv, ColorSpace::kLab}) {
    const PlanarImage mid = ConvertImage(src, target);
    CHECK(mid.space() == target);
    CHECK(mid.width() == src.width());
    CHECK(mid.height() == src.height());
    const PlanarImage back = ConvertImage(mid, ColorSpace::kSrgb);
    double worst = 0.0;
    for (int p = 0; p < 3; ++p) {
      for (size_t i = 0; i < back.plane(p).size(); ++i) {
        worst = std::max(
            worst, std::fabs(static_cast<double>(back.plane(p)[i]) -
                             static_cast<double>(src.plane(p)[i])));
      }
    }
    CHECK(worst < 1e-4);
  }

  // Converting to the current space is the identity.
  const PlanarImage same = ConvertImage(src, ColorSpace::kSrgb);
  for (int p = 0; p < 3; ++p) {
    CHECK(same.plane(p) == src.plane(p));
  }
}

TEST_CASE("plane nominal ranges") {
  CHECK(NominalRange(ColorSpace::kSrgb, 0).nominal_min == 0.0f);
  CHECK(NominalRange(ColorSpace::kSrgb, 0).nominal_max == 1.0f);
  CHECK(NominalRange(ColorSpace::kYuv, 1).nominal_min == -0.5f);
  CHECK(NominalRange(ColorSpace::kYuv, 1).nominal_max == 0.5f);
  CHECK(NominalRange(ColorSpace::kLab, 0).nominal_max == 100.0f);
  CHECK(NominalRange(ColorSpace::kLab, 2).nominal_min == -128.0f);
}
