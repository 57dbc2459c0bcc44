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

#ifndef CHROMABENCH_METRICS_H_
#define CHROMABENCH_METRICS_H_

#include <array>

#include "chromabench/color.h"
#include "chromabench/image.h"

namespace chromabench {

// PSNR and MS-SSIM values saturate at this many dB; reported whenever the
// reference and the reconstruction are bit-identical.
inline constexpr double kMetricDbCap = 100.0;

// Mean squared error pooled over all three planes, unit-range samples.
double Mse(const PlanarImage& a, const PlanarImage& b);

// 10*log10(peak^2/mse), capped at kMetricDbCap when mse == 0.
double Psnr(const PlanarImage& a, const PlanarImage& b, double peak = 1.0);
std::array<double, 3> PsnrPerChannel(const PlanarImage& a,
                                     const PlanarImage& b, double peak = 1.0);

struct MsSsimConfig {
  int scales = 5;
  // Per-scale exponents; the count must match `scales`.
  std::vector<double> weights = {0.0448, 0.2856, 0.3001, 0.2363, 0.1333};
  int window = 11;
  double window_sigma = 1.5;
  // Stabilizers come out as C1 = (k1*L)^2, C2 = (k2*L)^2 with dynamic
  // range L fixed to 1.
  double k1 = 0.01;
  double k2 = 0.03;
};

// Multi-scale SSIM over unit-range sRGB planes, averaged over the three
// channels with equal weight: contrast*structure at every scale, luminance
// only at the coarsest, combined as a weighted geometric mean. Images too
// small for the requested scale count are evaluated with fewer scales: the
// deepest scale must still admit one window, remaining weights are
// renormalized, and a warning is printed. `scales_used` (optional) reports
// the count.
double MsSsim(const PlanarImage& a, const PlanarImage& b,
              const MsSsimConfig& config, int* scales_used = nullptr);
double MsSsim(const PlanarImage& a, const PlanarImage& b,
              int* scales_used = nullptr);

// -10*log10(1 - v), capped at kMetricDbCap for v >= 1.
double MsSsimToDb(double msssim);

// CIEDE2000 between two CIELAB triplets, kL = kC = kH = 1.
double Ciede2000(const Triplet& lab1, const Triplet& lab2);

// Arithmetic per-pixel mean of CIEDE2000. Inputs may be in any space; both
// are converted to Lab first.
double MeanCiede2000(const PlanarImage& a, const PlanarImage& b);

// Quality form used on rate-distortion axes: 5.0 - mean dE00, so that
// larger is better and 5.0 means identical images.
double CiedeQuality(double mean_de);

struct MetricReport {
  double mse = 0.0;
  double psnr = 0.0;
  std::array<double, 3> psnr_channel = {0.0, 0.0, 0.0};
  double msssim = 0.0;
  double msssim_db = 0.0;
  int msssim_scales = 0;
  double ciede2000 = 0.0;
  double ciede_quality = 0.0;
};

// Computes every metric above for a pair of sRGB images of equal shape.
MetricReport ComputeMetrics(const PlanarImage& reference,
                            const PlanarImage& test);

}  // namespace chromabench

#endif  // CHROMABENCH_METRICS_H_
