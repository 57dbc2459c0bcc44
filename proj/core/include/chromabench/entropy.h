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

#ifndef CHROMABENCH_ENTROPY_H_
#define CHROMABENCH_ENTROPY_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace chromabench {

// Error function and standard normal CDF built from fixed rational
// approximations, so every platform produces identical CDF tables.
double DeterministicErf(double x);
double DeterministicErfc(double x);
double NormalCdf(double x);

inline constexpr uint32_t kCdfPrecisionBits = 16;
inline constexpr uint32_t kCdfTotal = 1u << kCdfPrecisionBits;

// A cumulative frequency table with total kCdfTotal and a guaranteed
// nonzero frequency for every symbol.
class CdfTable {
 public:
  // Quantizes a probability vector: floor scaling with a minimum frequency
  // of one, then largest-remainder correction toward the exact total.
  static CdfTable FromPmf(const std::vector<double>& pmf);
  // Proportional quantization of raw counts, same floor/remainder rules.
  static CdfTable FromHistogram(const std::vector<uint64_t>& counts);
  static CdfTable Uniform(int num_symbols);

  int num_symbols() const { return static_cast<int>(cdf_.size()) - 1; }
  uint32_t cum(int s) const { return cdf_[s]; }
  uint32_t freq(int s) const { return cdf_[s + 1] - cdf_[s]; }
  // Returns the symbol whose [cum, cum+freq) interval contains `value`.
  int Lookup(uint32_t value) const;
  // Ideal code length, -log2(freq/total).
  double BitsFor(int s) const;

  // Integer value represented by symbol index 0 (used by models whose
  // symbols are offsets into an integer support window).
  int32_t symbol_offset = 0;

 private:
  std::vector<uint32_t> cdf_;
};

// Carry-less 32-bit range coder (Subbotin style): byte renormalization,
// most significant byte first, four-byte flush. Encoding and decoding walk
// the identical low/range trajectory, so a decoder consumes exactly the
// bytes the encoder emitted.
class RangeEncoder {
 public:
  explicit RangeEncoder(std::vector<uint8_t>* out) : out_(out) {}
  void Encode(const CdfTable& table, int symbol);
  void Finish();

 private:
  void Normalize();

  std::vector<uint8_t>* out_;
  uint32_t low_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
};

class RangeDecoder {
 public:
  RangeDecoder(const uint8_t* data, size_t size);
  int Decode(const CdfTable& table);
  size_t consumed() const { return pos_; }

 private:
  uint8_t NextByte();
  void Normalize();

  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
  uint32_t low_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  uint32_t code_ = 0;
};

// Scale parameters are clamped to [kSigmaMin, kSigmaMax] and stored on a
// log2 grid with step 1/16.
inline constexpr double kSigmaMin = 0.11;
inline constexpr double kSigmaMax = 256.0;
inline constexpr int kSigmaCodeMin = -51;
inline constexpr int kSigmaCodeMax = 128;
inline constexpr int kSigmaCodeCount = kSigmaCodeMax - kSigmaCodeMin + 1;

int QuantizeSigma(double sigma);
double DequantizeSigma(int code);

uint32_t ZigzagEncode32(int32_t v);
int32_t ZigzagDecode32(uint32_t v);

// Discretized Gaussian over an integer support window. The two extreme
// support symbols act as escapes carrying the full tails; a value at or
// beyond an extreme is coded as that escape followed by the four bytes of
// its zigzag-mapped raw value. The default support is
// [floor(mean - 6*sigma), ceil(mean + 6*sigma)], widened to at least three
// symbols.
class GaussianModel {
 public:
  GaussianModel(double mean, double sigma);
  // Explicit support window; must span at least three symbols.
  GaussianModel(double mean, double sigma, int32_t lo, int32_t hi);

  int32_t support_lo() const { return lo_; }
  int32_t support_hi() const { return hi_; }
  const CdfTable& table() const { return table_; }

  void EncodeSymbol(RangeEncoder* enc, int32_t s) const;
  int32_t DecodeSymbol(RangeDecoder* dec) const;
  double EstimateBits(int32_t s) const;
  double EstimateBits(const std::vector<int32_t>& symbols) const;

 private:
  int32_t lo_ = 0;
  int32_t hi_ = 0;
  CdfTable table_;
};

// Shared 256-symbol uniform table for raw bytes coded through the same
// stream (escape payloads, transmitted means).
const CdfTable& ByteTable();

}  // namespace chromabench

#endif  // CHROMABENCH_ENTROPY_H_
