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

#ifndef CHROMABENCH_TESTS_TEST_UTIL_H_
#define CHROMABENCH_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "chromabench/image.h"

namespace chromabench::testutil {

inline PlanarImage RandomImage(int width, int height, uint32_t seed) {
  PlanarImage img(width, height, ColorSpace::kSrgb);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<float> dist(0.0f, 1.0f);
  for (int p = 0; p < PlanarImage::kPlaneCount; ++p) {
    for (float& v : img.plane(p)) v = dist(rng);
  }
  return img;
}

// Smooth low-saturation content: a luminance field built from a few sine
// products plus a mild per-plane tint. Stands in for photographic input in
// properties that assume spatial correlation.
inline PlanarImage SyntheticNatural(int width, int height, uint32_t seed) {
  PlanarImage img(width, height, ColorSpace::kSrgb);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 6.28318530717958648);
  std::uniform_real_distribution<double> freq(0.02, 0.11);
  const double f1 = freq(rng), f2 = freq(rng), f3 = freq(rng);
  const double p1 = phase(rng), p2 = phase(rng), p3 = phase(rng);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double base = 0.5 + 0.22 * std::sin(f1 * x + p1) *
                                    std::cos(f2 * y + p2) +
                          0.16 * std::sin(f3 * (x + y) + p3);
      for (int p = 0; p < 3; ++p) {
        const double tint =
            0.03 * std::sin(0.013 * x + 0.017 * y + 2.1 * p + p1);
        double v = base + tint;
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
        img.at(p, y, x) = static_cast<float>(v);
      }
    }
  }
  return img;
}

inline double Pearson(const std::vector<double>& a,
                      const std::vector<double>& b) {
  const size_t n = a.size();
  double ma = 0.0, mb = 0.0;
  for (size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  return sab / std::sqrt(saa * sbb);
}

// 8x8 block-mean filter: every pixel of a block is replaced by the block
// average, the image-space twin of keeping only the DC subband.
inline std::vector<double> BlockMeanFilter(const std::vector<float>& plane,
                                           int width, int height) {
  std::vector<double> out(plane.size());
  for (int by = 0; by < height; by += 8) {
    for (int bx = 0; bx < width; bx += 8) {
      const int h = std::min(8, height - by);
      const int w = std::min(8, width - bx);
      double sum = 0.0;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          sum += plane[static_cast<size_t>(by + y) * width + bx + x];
        }
      }
      const double mean = sum / (h * w);
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          out[static_cast<size_t>(by + y) * width + bx + x] = mean;
        }
      }
    }
  }
  return out;
}

}  // namespace chromabench::testutil

#endif  // CHROMABENCH_TESTS_TEST_UTIL_H_
