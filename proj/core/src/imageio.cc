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

#include "chromabench/imageio.h"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>

namespace chromabench {
namespace {

struct FileCloser {
  void operator()(FILE* f) const {
    if (f != nullptr) fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

FilePtr OpenOrThrow(const std::string& path, const char* mode) {
  FilePtr f(fopen(path.c_str(), mode));
  if (f == nullptr) {
    throw Error("cannot open " + path);
  }
  return f;
}

std::string LowerExtension(const std::string& path) {
  const size_t dot = path.find_last_of('.');
  if (dot == std::string::npos) return "";
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

// PPM token reader: skips whitespace and '#' comments between header fields.
int NextPnmInt(FILE* f, const std::string& path) {
  int c = fgetc(f);
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = fgetc(f);
    } else if (std::isspace(c)) {
      c = fgetc(f);
    } else {
      break;
    }
  }
  if (c == EOF || !std::isdigit(c)) {
    throw Error("malformed PPM header in " + path);
  }
  long v = 0;
  while (c != EOF && std::isdigit(c)) {
    v = v * 10 + (c - '0');
    if (v > 1000000000L) throw Error("PPM header value out of range in " + path);
    c = fgetc(f);
  }
  if (c != EOF) ungetc(c, f);
  return static_cast<int>(v);
}

PlanarImage FromInterleavedBytes(const std::vector<uint8_t>& rgb, int width,
                                 int height) {
  PlanarImage image(width, height, ColorSpace::kSrgb);
  const size_t n = image.pixel_count();
  for (size_t i = 0; i < n; ++i) {
    for (int p = 0; p < PlanarImage::kPlaneCount; ++p) {
      image.plane(p)[i] = rgb[3 * i + p] / 255.0f;
    }
  }
  return image;
}

PlanarImage ReadPpm(FILE* f, const std::string& path) {
  // Caller consumed no bytes; re-check the magic so the header parse is
  // self-contained.
  if (fgetc(f) != 'P' || fgetc(f) != '6') {
    throw Error("not a P6 PPM: " + path);
  }
  const int width = NextPnmInt(f, path);
  const int height = NextPnmInt(f, path);
  const int maxval = NextPnmInt(f, path);
  if (width <= 0 || height <= 0) throw Error("bad PPM size in " + path);
  if (maxval != 255) throw Error("only maxval 255 PPM is supported: " + path);
  const int sep = fgetc(f);
  if (sep == EOF || !std::isspace(sep)) {
    throw Error("malformed PPM header in " + path);
  }
  std::vector<uint8_t> rgb(static_cast<size_t>(width) * height * 3);
  if (fread(rgb.data(), 1, rgb.size(), f) != rgb.size()) {
    throw Error("truncated PPM payload in " + path);
  }
  return FromInterleavedBytes(rgb, width, height);
}

void WritePpm(const std::string& path, const std::vector<uint8_t>& rgb,
              int width, int height) {
  FilePtr f = OpenOrThrow(path, "wb");
  fprintf(f.get(), "P6\n%d %d\n255\n", width, height);
  if (fwrite(rgb.data(), 1, rgb.size(), f.get()) != rgb.size()) {
    throw Error("short write to " + path);
  }
}

PlanarImage ReadPng(FILE* f, const std::string& path) {
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw Error("png init failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error("png init failed");
  }
  std::vector<uint8_t> rgb;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error("failed to decode PNG: " + path);
  }
  png_init_io(png, f);
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);

  // Normalize every supported input to 8-bit RGB.
  if (bit_depth == 16) png_set_strip_16(png);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color_type == PNG_COLOR_TYPE_GRAY ||
      color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  if (png_get_rowbytes(png, info) != width * 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error("unexpected PNG row layout in " + path);
  }
  rgb.resize(static_cast<size_t>(width) * height * 3);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) {
    rows[y] = rgb.data() + static_cast<size_t>(y) * width * 3;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return FromInterleavedBytes(rgb, static_cast<int>(width),
                              static_cast<int>(height));
}

void WritePngBytes(const std::string& path, const std::vector<uint8_t>& data,
                   int width, int height, int color_type) {
  FilePtr f = OpenOrThrow(path, "wb");
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw Error("png init failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("png init failed");
  }
  std::vector<png_bytep> rows(height);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("failed to encode PNG: " + path);
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, width, height, 8, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const int channels = color_type == PNG_COLOR_TYPE_RGB ? 3 : 1;
  for (int y = 0; y < height; ++y) {
    rows[y] = const_cast<png_bytep>(data.data() +
                                    static_cast<size_t>(y) * width * channels);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

std::vector<uint8_t> ToInterleavedBytes(const PlanarImage& image) {
  std::vector<uint8_t> rgb(image.pixel_count() * 3);
  const size_t n = image.pixel_count();
  for (size_t i = 0; i < n; ++i) {
    for (int p = 0; p < PlanarImage::kPlaneCount; ++p) {
      rgb[3 * i + p] = QuantizeSample(image.plane(p)[i]);
    }
  }
  return rgb;
}

}  // namespace

uint8_t QuantizeSample(float s) {
  const float clamped = std::min(1.0f, std::max(0.0f, s));
  return static_cast<uint8_t>(std::lround(clamped * 255.0f));
}

PlanarImage ReadImage(const std::string& path) {
  FilePtr f = OpenOrThrow(path, "rb");
  uint8_t magic[2] = {0, 0};
  if (fread(magic, 1, 2, f.get()) != 2) {
    throw Error("cannot read " + path);
  }
  rewind(f.get());
  if (magic[0] == 'P' && magic[1] == '6') {
    return ReadPpm(f.get(), path);
  }
  if (magic[0] == 0x89 && magic[1] == 'P') {
    return ReadPng(f.get(), path);
  }
  throw Error("unsupported image format: " + path);
}

void WriteImage(const std::string& path, const PlanarImage& image) {
  if (image.space() != ColorSpace::kSrgb) {
    throw Error("WriteImage expects an sRGB image");
  }
  const std::string ext = LowerExtension(path);
  const std::vector<uint8_t> rgb = ToInterleavedBytes(image);
  if (ext == "ppm" || ext == "pnm") {
    WritePpm(path, rgb, image.width(), image.height());
  } else if (ext == "png") {
    WritePngBytes(path, rgb, image.width(), image.height(),
                  PNG_COLOR_TYPE_RGB);
  } else {
    throw Error("unsupported output extension: " + path);
  }
}

void WriteGrayPng(const std::string& path, const std::vector<float>& values,
                  int width, int height) {
  if (values.size() != static_cast<size_t>(width) * height) {
    throw Error("WriteGrayPng: size mismatch");
  }
  std::vector<uint8_t> gray(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    gray[i] = QuantizeSample(values[i]);
  }
  WritePngBytes(path, gray, width, height, PNG_COLOR_TYPE_GRAY);
}

void WriteGrayPng16(const std::string& path, const std::vector<float>& values,
                    int width, int height) {
  if (values.size() != static_cast<size_t>(width) * height) {
    throw Error("WriteGrayPng16: size mismatch");
  }
  FilePtr f = OpenOrThrow(path, "wb");
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw Error("png init failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("png init failed");
  }
  // PNG stores 16-bit samples big-endian.
  std::vector<uint8_t> data(values.size() * 2);
  for (size_t i = 0; i < values.size(); ++i) {
    const float clamped = std::min(1.0f, std::max(0.0f, values[i]));
    const uint16_t v = static_cast<uint16_t>(std::lround(clamped * 65535.0f));
    data[2 * i] = static_cast<uint8_t>(v >> 8);
    data[2 * i + 1] = static_cast<uint8_t>(v & 0xFF);
  }
  std::vector<png_bytep> rows(height);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("failed to encode PNG: " + path);
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, width, height, 16, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height; ++y) {
    rows[y] = data.data() + static_cast<size_t>(y) * width * 2;
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

std::vector<float> ReadGrayPng(const std::string& path, int* width,
                               int* height) {
  FilePtr f = OpenOrThrow(path, "rb");
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw Error("png init failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error("png init failed");
  }
  std::vector<uint8_t> data;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error("failed to decode PNG: " + path);
  }
  png_init_io(png, f.get());
  png_read_info(png, info);
  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  const int color_type = png_get_color_type(png, info);
  if (color_type != PNG_COLOR_TYPE_GRAY) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error("expected a grayscale PNG: " + path);
  }
  if (png_get_bit_depth(png, info) < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  png_read_update_info(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const size_t rowbytes = png_get_rowbytes(png, info);
  data.resize(rowbytes * h);
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) {
    rows[y] = data.data() + static_cast<size_t>(y) * rowbytes;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  std::vector<float> out(static_cast<size_t>(w) * h);
  if (bit_depth == 16) {
    for (size_t i = 0; i < out.size(); ++i) {
      const uint16_t v = static_cast<uint16_t>((data[2 * i] << 8) |
                                               data[2 * i + 1]);
      out[i] = v / 65535.0f;
    }
  } else {
    for (size_t i = 0; i < out.size(); ++i) {
      out[i] = data[i] / 255.0f;
    }
  }
  *width = static_cast<int>(w);
  *height = static_cast<int>(h);
  return out;
}

}  // namespace chromabench
