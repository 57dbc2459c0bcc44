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

#ifndef CHROMABENCH_IMAGEIO_H_
#define CHROMABENCH_IMAGEIO_H_

#include <string>
#include <vector>

#include "chromabench/image.h"

namespace chromabench {

// Reads a binary PPM (P6, maxval 255) or an 8-bit truecolor PNG. The format
// is sniffed from the file's magic bytes. Samples are mapped to byte/255 and
// the result is tagged sRGB.
PlanarImage ReadImage(const std::string& path);

// Writes an sRGB image as P6 (.ppm/.pnm) or PNG (.png), chosen by extension.
// Samples are stored as round(clamp(s,0,1)*255), rounding half away from
// zero. Throws on a non-sRGB tag; convert first.
void WriteImage(const std::string& path, const PlanarImage& image);

// Writes a single plane as an 8-bit grayscale PNG. `values` is row-major
// H*W; samples are normalized with the same clamp+round rule as WriteImage.
void WriteGrayPng(const std::string& path, const std::vector<float>& values,
                  int width, int height);

// 16-bit variant; used where 8-bit quantization would dominate round-trip
// error.
void WriteGrayPng16(const std::string& path, const std::vector<float>& values,
                    int width, int height);

// Reads an 8- or 16-bit grayscale PNG back to [0,1] row-major samples.
std::vector<float> ReadGrayPng(const std::string& path, int* width,
                               int* height);

// Quantizes one [0,1] sample to a byte: round half away from zero.
uint8_t QuantizeSample(float s);

}  // namespace chromabench

#endif  // CHROMABENCH_IMAGEIO_H_
