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

#include "chromabench/color.h"

#include <cmath>

namespace chromabench {
namespace {

constexpr double kYuvUDiv = 1.8556;
constexpr double kYuvVDiv = 1.5748;

constexpr double kLabEpsilon = 216.0 / 24389.0;
constexpr double kLabKappa = 24389.0 / 27.0;

double LabForward(double t) {
  return t > kLabEpsilon ? std::cbrt(t) : (kLabKappa * t + 16.0) / 116.0;
}

double LabInverse(double ft) {
  const double t3 = ft * ft * ft;
  return t3 > kLabEpsilon ? t3 : (116.0 * ft - 16.0) / kLabKappa;
}

double Clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

Triplet ClampSrgb(const Triplet& rgb) {
  return {Clamp01(rgb[0]), Clamp01(rgb[1]), Clamp01(rgb[2])};
}

Triplet FromSrgb(const Triplet& rgb, ColorSpace target) {
  switch (target) {
    case ColorSpace::kSrgb:
      return rgb;
    case ColorSpace::kLinearRgb:
      return {SrgbToLinear(rgb[0]), SrgbToLinear(rgb[1]),
              SrgbToLinear(rgb[2])};
    case ColorSpace::kYuv:
      return SrgbToYuv(rgb);
    case ColorSpace::kLab:
      return SrgbToLab(rgb);
  }
  throw Error("unknown color space");
}

Triplet ToSrgb(const Triplet& v, ColorSpace source) {
  switch (source) {
    case ColorSpace::kSrgb:
      return ClampSrgb(v);
    case ColorSpace::kLinearRgb:
      return ClampSrgb({LinearToSrgb(v[0]), LinearToSrgb(v[1]),
                        LinearToSrgb(v[2])});
    case ColorSpace::kYuv:
      return YuvToSrgb(v);
    case ColorSpace::kLab:
      return LabToSrgb(v);
  }
  throw Error("unknown color space");
}

}  // namespace

double SrgbToLinear(double s) {
  return s <= 0.04045 ? s / 12.92 : std::pow((s + 0.055) / 1.055, 2.4);
}

double LinearToSrgb(double v) {
  return v <= 0.0031308 ? 12.92 * v
                        : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

Triplet ColorMatrix::Apply(const Triplet& v) const {
  return {m[0] * v[0] + m[1] * v[1] + m[2] * v[2],
          m[3] * v[0] + m[4] * v[1] + m[5] * v[2],
          m[6] * v[0] + m[7] * v[1] + m[8] * v[2]};
}

ColorMatrix ColorMatrix::Inverse() const {
  const double a = m[0], b = m[1], c = m[2];
  const double d = m[3], e = m[4], f = m[5];
  const double g = m[6], h = m[7], i = m[8];
  const double det = a * (e * i - f * h) - b * (d * i - f * g) +
                     c * (d * h - e * g);
  if (det == 0.0) throw Error("singular color matrix");
  const double s = 1.0 / det;
  return ColorMatrix{{(e * i - f * h) * s, (c * h - b * i) * s,
                      (b * f - c * e) * s, (f * g - d * i) * s,
                      (a * i - c * g) * s, (c * d - a * f) * s,
                      (d * h - e * g) * s, (b * g - a * h) * s,
                      (a * e - b * d) * s}};
}

const ColorMatrix& RgbToXyzMatrix() {
  static const ColorMatrix kMatrix{{0.4124564, 0.3575761, 0.1804375,
                                    0.2126729, 0.7151522, 0.0721750,
                                    0.0193339, 0.1191920, 0.9503041}};
  return kMatrix;
}

const Triplet& WhitePointXyz() {
  static const Triplet kWhite = RgbToXyzMatrix().Apply({1.0, 1.0, 1.0});
  return kWhite;
}

Triplet SrgbToYuv(const Triplet& rgb) {
  const double y = 0.2126 * rgb[0] + 0.7152 * rgb[1] + 0.0722 * rgb[2];
  return {y, (rgb[2] - y) / kYuvUDiv, (rgb[0] - y) / kYuvVDiv};
}

Triplet YuvToSrgb(const Triplet& yuv) {
  const double r = yuv[0] + kYuvVDiv * yuv[2];
  const double b = yuv[0] + kYuvUDiv * yuv[1];
  const double g = (yuv[0] - 0.2126 * r - 0.0722 * b) / 0.7152;
  return ClampSrgb({r, g, b});
}

Triplet SrgbToLab(const Triplet& rgb) {
  const Triplet linear = {SrgbToLinear(rgb[0]), SrgbToLinear(rgb[1]),
                          SrgbToLinear(rgb[2])};
  const Triplet xyz = RgbToXyzMatrix().Apply(linear);
  const Triplet& white = WhitePointXyz();
  const double fx = LabForward(xyz[0] / white[0]);
  const double fy = LabForward(xyz[1] / white[1]);
  const double fz = LabForward(xyz[2] / white[2]);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

Triplet LabToSrgb(const Triplet& lab) {
  const double fy = (lab[0] + 16.0) / 116.0;
  const double fx = fy + lab[1] / 500.0;
  const double fz = fy - lab[2] / 200.0;
  const Triplet& white = WhitePointXyz();
  const Triplet xyz = {LabInverse(fx) * white[0], LabInverse(fy) * white[1],
                       LabInverse(fz) * white[2]};
  static const ColorMatrix kXyzToRgb = RgbToXyzMatrix().Inverse();
  const Triplet linear = kXyzToRgb.Apply(xyz);
  return ClampSrgb({LinearToSrgb(linear[0]), LinearToSrgb(linear[1]),
                    LinearToSrgb(linear[2])});
}

PlanarImage ConvertImage(const PlanarImage& in, ColorSpace target) {
  if (in.space() == target) return in;
  PlanarImage out(in.width(), in.height(), target);
  const size_t n = in.pixel_count();
  for (size_t i = 0; i < n; ++i) {
    const Triplet v = {in.plane(0)[i], in.plane(1)[i], in.plane(2)[i]};
    const Triplet srgb = ToSrgb(v, in.space());
    const Triplet result = FromSrgb(srgb, target);
    for (int p = 0; p < PlanarImage::kPlaneCount; ++p) {
      out.plane(p)[i] = static_cast<float>(result[p]);
    }
  }
  return out;
}

}  // namespace chromabench
