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

#ifndef CHROMABENCH_IMAGE_H_
#define CHROMABENCH_IMAGE_H_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace chromabench {

// Library-wide error type; carries a human-readable reason. The CLI maps
// these to the "data error" exit code.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

enum class ColorSpace : uint8_t {
  kSrgb = 0,       // nonlinear sRGB, samples nominally in [0,1]
  kLinearRgb = 1,  // linear-light RGB, [0,1]
  kYuv = 2,        // full-range BT.709 luma/chroma, Y in [0,1], U/V in [-0.5,0.5]
  kLab = 3,        // CIELAB D65, L in [0,100], a/b nominal [-128,127]
};

const char* ColorSpaceName(ColorSpace space);
ColorSpace ColorSpaceFromName(const std::string& name);

struct PlaneRange {
  float nominal_min = 0.0f;
  float nominal_max = 1.0f;
};

// Nominal value range of plane `p` (0..2) in the given space. These are
// presentation/normalization hints; samples may exceed them transiently.
PlaneRange NominalRange(ColorSpace space, int plane);

// H x W x 3 image stored as three planar float channels, row-major.
// Values are treated as immutable once a transform has produced the image;
// all color/metric operations take const references and return new images.
class PlanarImage {
 public:
  static constexpr int kPlaneCount = 3;

  PlanarImage() = default;
  PlanarImage(int width, int height, ColorSpace space)
      : width_(width), height_(height), space_(space) {
    if (width <= 0 || height <= 0) throw Error("image dimensions must be positive");
    for (auto& p : planes_) p.assign(static_cast<size_t>(width) * height, 0.0f);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  ColorSpace space() const { return space_; }
  size_t pixel_count() const { return static_cast<size_t>(width_) * height_; }

  const std::vector<float>& plane(int p) const { return planes_[p]; }
  std::vector<float>& plane(int p) { return planes_[p]; }

  float at(int p, int y, int x) const {
    return planes_[p][static_cast<size_t>(y) * width_ + x];
  }
  float& at(int p, int y, int x) {
    return planes_[p][static_cast<size_t>(y) * width_ + x];
  }

  PlaneRange range(int p) const { return NominalRange(space_, p); }

  bool SameShape(const PlanarImage& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  ColorSpace space_ = ColorSpace::kSrgb;
  std::array<std::vector<float>, kPlaneCount> planes_;
};

}  // namespace chromabench

#endif  // CHROMABENCH_IMAGE_H_
