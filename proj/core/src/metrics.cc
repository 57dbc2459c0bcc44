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

#include "chromabench/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace chromabench {
namespace {

class KahanSum {
 public:
  void Add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double Get() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

double PooledSquaredError(const PlanarImage& a, const PlanarImage& b, int p0,
                          int p1) {
  KahanSum sum;
  for (int p = p0; p < p1; ++p) {
    const float* pa = a.plane(p).data();
    const float* pb = b.plane(p).data();
    const size_t n = a.pixel_count();
    for (size_t i = 0; i < n; ++i) {
      const double d = static_cast<double>(pa[i]) - pb[i];
      sum.Add(d * d);
    }
  }
  return sum.Get() / (static_cast<double>(a.pixel_count()) * (p1 - p0));
}

double MseToPsnr(double mse, double peak) {
  if (mse <= 0.0) return kMetricDbCap;
  return std::min(kMetricDbCap, 10.0 * std::log10(peak * peak / mse));
}

struct Field {
  std::vector<double> v;
  int width = 0;
  int height = 0;

  double& at(int y, int x) { return v[static_cast<size_t>(y) * width + x]; }
  double at(int y, int x) const {
    return v[static_cast<size_t>(y) * width + x];
  }
};

Field PlaneToField(const PlanarImage& image, int p) {
  Field f;
  f.width = image.width();
  f.height = image.height();
  f.v.assign(image.plane(p).begin(), image.plane(p).end());
  return f;
}

std::vector<double> GaussianTaps(int window, double sigma) {
  std::vector<double> taps(window);
  const double half = (window - 1) / 2.0;
  double sum = 0.0;
  for (int i = 0; i < window; ++i) {
    const double d = i - half;
    taps[i] = std::exp(-d * d / (2.0 * sigma * sigma));
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

// Valid-mode separable filter; output shrinks by window-1 per dimension.
Field FilterValid(const Field& src, const std::vector<double>& taps) {
  const int window = static_cast<int>(taps.size());
  Field tmp;
  tmp.width = src.width - window + 1;
  tmp.height = src.height;
  tmp.v.resize(static_cast<size_t>(tmp.width) * tmp.height);
  for (int y = 0; y < tmp.height; ++y) {
    for (int x = 0; x < tmp.width; ++x) {
      double acc = 0.0;
      for (int k = 0; k < window; ++k) acc += taps[k] * src.at(y, x + k);
      tmp.at(y, x) = acc;
    }
  }
  Field out;
  out.width = tmp.width;
  out.height = src.height - window + 1;
  out.v.resize(static_cast<size_t>(out.width) * out.height);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      double acc = 0.0;
      for (int k = 0; k < window; ++k) acc += taps[k] * tmp.at(y + k, x);
      out.at(y, x) = acc;
    }
  }
  return out;
}

Field Multiply(const Field& a, const Field& b) {
  Field out = a;
  for (size_t i = 0; i < out.v.size(); ++i) out.v[i] *= b.v[i];
  return out;
}

// 2x2 mean pooling with floor decimation; a trailing odd row/column is
// dropped.
Field Downsample2x2(const Field& src) {
  Field out;
  out.width = src.width / 2;
  out.height = src.height / 2;
  out.v.resize(static_cast<size_t>(out.width) * out.height);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      out.at(y, x) = 0.25 * (src.at(2 * y, 2 * x) + src.at(2 * y, 2 * x + 1) +
                             src.at(2 * y + 1, 2 * x) +
                             src.at(2 * y + 1, 2 * x + 1));
    }
  }
  return out;
}

struct ScaleStats {
  double mean_ssim = 0.0;
  double mean_cs = 0.0;
};

ScaleStats SsimScale(const Field& x, const Field& y,
                     const std::vector<double>& taps, double c1, double c2) {
  const Field mu1 = FilterValid(x, taps);
  const Field mu2 = FilterValid(y, taps);
  const Field xx = FilterValid(Multiply(x, x), taps);
  const Field yy = FilterValid(Multiply(y, y), taps);
  const Field xy = FilterValid(Multiply(x, y), taps);
  KahanSum ssim_sum;
  KahanSum cs_sum;
  for (size_t i = 0; i < mu1.v.size(); ++i) {
    const double m1 = mu1.v[i];
    const double m2 = mu2.v[i];
    const double s11 = xx.v[i] - m1 * m1;
    const double s22 = yy.v[i] - m2 * m2;
    const double s12 = xy.v[i] - m1 * m2;
    const double l = (2.0 * m1 * m2 + c1) / (m1 * m1 + m2 * m2 + c1);
    const double cs = (2.0 * s12 + c2) / (s11 + s22 + c2);
    ssim_sum.Add(l * cs);
    cs_sum.Add(cs);
  }
  const double n = static_cast<double>(mu1.v.size());
  return {ssim_sum.Get() / n, cs_sum.Get() / n};
}

int UsableScales(int width, int height, int window, int max_scales) {
  const int min_dim = std::min(width, height);
  int scales = 0;
  while (scales < max_scales && min_dim >= window * (1 << scales)) ++scales;
  return scales;
}

double MsSsimChannel(Field x, Field y, const std::vector<double>& taps,
                     double c1, double c2, int scales,
                     const std::vector<double>& weights) {
  double value = 1.0;
  for (int s = 0; s < scales; ++s) {
    const ScaleStats stats = SsimScale(x, y, taps, c1, c2);
    const double base = s + 1 == scales ? std::max(stats.mean_ssim, 0.0)
                                        : std::max(stats.mean_cs, 0.0);
    value *= std::pow(base, weights[s]);
    if (s + 1 < scales) {
      x = Downsample2x2(x);
      y = Downsample2x2(y);
    }
  }
  return value;
}

double DegToRad(double d) { return d * (M_PI / 180.0); }

}  // namespace

double Mse(const PlanarImage& a, const PlanarImage& b) {
  if (!a.SameShape(b)) throw Error("Mse: shape mismatch");
  return PooledSquaredError(a, b, 0, PlanarImage::kPlaneCount);
}

double Psnr(const PlanarImage& a, const PlanarImage& b, double peak) {
  return MseToPsnr(Mse(a, b), peak);
}

std::array<double, 3> PsnrPerChannel(const PlanarImage& a,
                                     const PlanarImage& b, double peak) {
  if (!a.SameShape(b)) throw Error("Psnr: shape mismatch");
  std::array<double, 3> out;
  for (int p = 0; p < PlanarImage::kPlaneCount; ++p) {
    out[p] = MseToPsnr(PooledSquaredError(a, b, p, p + 1), peak);
  }
  return out;
}

double MsSsim(const PlanarImage& a, const PlanarImage& b,
              const MsSsimConfig& config, int* scales_used) {
  if (!a.SameShape(b)) throw Error("MsSsim: shape mismatch");
  if (config.scales < 1 ||
      config.weights.size() != static_cast<size_t>(config.scales)) {
    throw Error("MsSsim: weight count must match scale count");
  }
  if (config.window < 1 || config.window_sigma <= 0.0) {
    throw Error("MsSsim: bad window");
  }
  for (double w : config.weights) {
    if (!(w > 0.0)) throw Error("MsSsim: weights must be positive");
  }
  const int scales =
      UsableScales(a.width(), a.height(), config.window, config.scales);
  if (scales == 0) {
    throw Error("MsSsim: image smaller than the analysis window");
  }
  if (scales < config.scales) {
    fprintf(stderr,
            "chromabench: %dx%d image supports only %d MS-SSIM scale%s; "
            "weights renormalized\n",
            a.width(), a.height(), scales, scales == 1 ? "" : "s");
  }
  std::vector<double> weights(config.weights.begin(),
                              config.weights.begin() + scales);
  if (scales < config.scales) {
    // Truncated exponent lists are rescaled to sum to 1; the full list is
    // used exactly as configured.
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    for (double& w : weights) w /= wsum;
  }

  const std::vector<double> taps =
      GaussianTaps(config.window, config.window_sigma);
  const double c1 = config.k1 * config.k1;
  const double c2 = config.k2 * config.k2;

  double total = 0.0;
  for (int p = 0; p < PlanarImage::kPlaneCount; ++p) {
    total += MsSsimChannel(PlaneToField(a, p), PlaneToField(b, p), taps, c1,
                           c2, scales, weights);
  }
  if (scales_used != nullptr) *scales_used = scales;
  return total / PlanarImage::kPlaneCount;
}

double MsSsim(const PlanarImage& a, const PlanarImage& b, int* scales_used) {
  return MsSsim(a, b, MsSsimConfig(), scales_used);
}

double MsSsimToDb(double msssim) {
  if (msssim >= 1.0) return kMetricDbCap;
  return std::min(kMetricDbCap, -10.0 * std::log10(1.0 - msssim));
}

double Ciede2000(const Triplet& lab1, const Triplet& lab2) {
  const double l1 = lab1[0], a1 = lab1[1], b1 = lab1[2];
  const double l2 = lab2[0], a2 = lab2[1], b2 = lab2[2];

  const double c1 = std::sqrt(a1 * a1 + b1 * b1);
  const double c2 = std::sqrt(a2 * a2 + b2 * b2);
  const double c_bar = 0.5 * (c1 + c2);
  const double c_bar7 = std::pow(c_bar, 7.0);
  constexpr double k25_7 = 6103515625.0;  // 25^7
  const double g = 0.5 * (1.0 - std::sqrt(c_bar7 / (c_bar7 + k25_7)));

  const double a1p = (1.0 + g) * a1;
  const double a2p = (1.0 + g) * a2;
  const double c1p = std::sqrt(a1p * a1p + b1 * b1);
  const double c2p = std::sqrt(a2p * a2p + b2 * b2);

  auto hue_deg = [](double ap, double b) {
    if (ap == 0.0 && b == 0.0) return 0.0;
    double h = std::atan2(b, ap) * (180.0 / M_PI);
    if (h < 0.0) h += 360.0;
    return h;
  };
  const double h1p = hue_deg(a1p, b1);
  const double h2p = hue_deg(a2p, b2);

  const double dl = l2 - l1;
  const double dc = c2p - c1p;

  double dh = 0.0;
  if (c1p * c2p != 0.0) {
    dh = h2p - h1p;
    if (dh > 180.0) {
      dh -= 360.0;
    } else if (dh < -180.0) {
      dh += 360.0;
    }
  }
  const double dbigh =
      2.0 * std::sqrt(c1p * c2p) * std::sin(DegToRad(dh / 2.0));

  const double l_bar = 0.5 * (l1 + l2);
  const double cp_bar = 0.5 * (c1p + c2p);

  double h_bar = h1p + h2p;
  if (c1p * c2p != 0.0) {
    const double diff = std::fabs(h1p - h2p);
    if (diff <= 180.0) {
      h_bar = 0.5 * (h1p + h2p);
    } else if (h1p + h2p < 360.0) {
      h_bar = 0.5 * (h1p + h2p + 360.0);
    } else {
      h_bar = 0.5 * (h1p + h2p - 360.0);
    }
  }

  const double t = 1.0 - 0.17 * std::cos(DegToRad(h_bar - 30.0)) +
                   0.24 * std::cos(DegToRad(2.0 * h_bar)) +
                   0.32 * std::cos(DegToRad(3.0 * h_bar + 6.0)) -
                   0.20 * std::cos(DegToRad(4.0 * h_bar - 63.0));
  const double dtheta =
      30.0 * std::exp(-((h_bar - 275.0) / 25.0) * ((h_bar - 275.0) / 25.0));
  const double cp_bar7 = std::pow(cp_bar, 7.0);
  const double rc = 2.0 * std::sqrt(cp_bar7 / (cp_bar7 + k25_7));
  const double rt = -std::sin(DegToRad(2.0 * dtheta)) * rc;

  const double lm50 = l_bar - 50.0;
  const double sl = 1.0 + 0.015 * lm50 * lm50 / std::sqrt(20.0 + lm50 * lm50);
  const double sc = 1.0 + 0.045 * cp_bar;
  const double sh = 1.0 + 0.015 * cp_bar * t;

  const double fl = dl / sl;
  const double fc = dc / sc;
  const double fh = dbigh / sh;
  return std::sqrt(fl * fl + fc * fc + fh * fh + rt * fc * fh);
}

double MeanCiede2000(const PlanarImage& a, const PlanarImage& b) {
  if (!a.SameShape(b)) throw Error("MeanCiede2000: shape mismatch");
  const PlanarImage lab_a = ConvertImage(a, ColorSpace::kLab);
  const PlanarImage lab_b = ConvertImage(b, ColorSpace::kLab);
  KahanSum sum;
  const size_t n = lab_a.pixel_count();
  for (size_t i = 0; i < n; ++i) {
    const Triplet p1 = {lab_a.plane(0)[i], lab_a.plane(1)[i],
                        lab_a.plane(2)[i]};
    const Triplet p2 = {lab_b.plane(0)[i], lab_b.plane(1)[i],
                        lab_b.plane(2)[i]};
    sum.Add(Ciede2000(p1, p2));
  }
  return sum.Get() / static_cast<double>(n);
}

double CiedeQuality(double mean_de) { return 5.0 - mean_de; }

MetricReport ComputeMetrics(const PlanarImage& reference,
                            const PlanarImage& test) {
  if (!reference.SameShape(test)) {
    throw Error("ComputeMetrics: shape mismatch");
  }
  if (reference.space() != ColorSpace::kSrgb ||
      test.space() != ColorSpace::kSrgb) {
    throw Error("ComputeMetrics expects sRGB inputs");
  }
  MetricReport report;
  report.mse = Mse(reference, test);
  report.psnr = MseToPsnr(report.mse, 1.0);
  report.psnr_channel = PsnrPerChannel(reference, test);
  report.msssim = MsSsim(reference, test, &report.msssim_scales);
  report.msssim_db = MsSsimToDb(report.msssim);
  report.ciede2000 = MeanCiede2000(reference, test);
  report.ciede_quality = CiedeQuality(report.ciede2000);
  return report;
}

}  // namespace chromabench
