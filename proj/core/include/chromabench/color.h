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

#ifndef CHROMABENCH_COLOR_H_
#define CHROMABENCH_COLOR_H_

#include <array>

#include "chromabench/image.h"

namespace chromabench {

using Triplet = std::array<double, 3>;

// IEC 61966-2-1 transfer function. Inputs outside [0,1] are extended by the
// same formulas (negative values mirror through zero is NOT applied; callers
// clamp where gamut policy requires it).
double SrgbToLinear(double s);
double LinearToSrgb(double v);

// Row-major 3x3 matrix acting on column triplets.
struct ColorMatrix {
  std::array<double, 9> m;

  Triplet Apply(const Triplet& v) const;
  // Exact adjugate/determinant inverse.
  ColorMatrix Inverse() const;
};

// Linear sRGB -> CIE XYZ (D65).
const ColorMatrix& RgbToXyzMatrix();
// Reference white, taken as the row sums of RgbToXyzMatrix() so that neutral
// axes map to a = b = 0 exactly (up to rounding).
const Triplet& WhitePointXyz();

// Scalar converters between nonlinear sRGB in [0,1] and the other working
// spaces. The YUV pair uses BT.709 luma weights on nonlinear sRGB with
// full-range analog chroma (U, V in [-0.5, 0.5]). The Lab pair goes through
// linear RGB and D65 XYZ (L in [0,100], a/b roughly [-128,127]).
// Conversions *to* sRGB clamp the result to [0,1]; no other space is
// clamped.
Triplet SrgbToYuv(const Triplet& rgb);
Triplet YuvToSrgb(const Triplet& yuv);
Triplet SrgbToLab(const Triplet& rgb);
Triplet LabToSrgb(const Triplet& lab);

// Converts between any two supported spaces, routing through sRGB. A
// same-space conversion returns a copy.
PlanarImage ConvertImage(const PlanarImage& in, ColorSpace target);

}  // namespace chromabench

#endif  // CHROMABENCH_COLOR_H_
