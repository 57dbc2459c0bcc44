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

#include "chromabench/image.h"

namespace chromabench {

const char* ColorSpaceName(ColorSpace space) {
  switch (space) {
    case ColorSpace::kSrgb: return "srgb";
    case ColorSpace::kLinearRgb: return "linear";
    case ColorSpace::kYuv: return "yuv";
    case ColorSpace::kLab: return "lab";
  }
  return "unknown";
}

ColorSpace ColorSpaceFromName(const std::string& name) {
  if (name == "srgb" || name == "rgb") return ColorSpace::kSrgb;
  if (name == "linear") return ColorSpace::kLinearRgb;
  if (name == "yuv") return ColorSpace::kYuv;
  if (name == "lab") return ColorSpace::kLab;
  throw Error("unknown color space name: " + name);
}

PlaneRange NominalRange(ColorSpace space, int plane) {
  switch (space) {
    case ColorSpace::kSrgb:
    case ColorSpace::kLinearRgb:
      return {0.0f, 1.0f};
    case ColorSpace::kYuv:
      return plane == 0 ? PlaneRange{0.0f, 1.0f} : PlaneRange{-0.5f, 0.5f};
    case ColorSpace::kLab:
      return plane == 0 ? PlaneRange{0.0f, 100.0f} : PlaneRange{-128.0f, 127.0f};
  }
  return {0.0f, 1.0f};
}

}  // namespace chromabench
