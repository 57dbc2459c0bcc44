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

#include "chromabench/entropy.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chromabench/image.h"

namespace chromabench {
namespace {

// W. J. Cody's rational minimax coefficients for erf/erfc (SPECFUN).
constexpr double kErfA[5] = {3.16112374387056560e+00, 1.13864154151050156e+02,
                             3.77485237685302021e+02, 3.20937758913846947e+03,
                             1.85777706184603153e-01};
constexpr double kErfB[4] = {2.36012909523441209e+01, 2.44024637934444173e+02,
                             1.28261652607737228e+03, 2.84423683343917062e+03};
constexpr double kErfC[9] = {5.64188496988670089e-01, 8.88314979438837594e+00,
                             6.61191906371416295e+01, 2.98635138197400131e+02,
                             8.81952221241769090e+02, 1.71204761263407058e+03,
                             2.05107837782607147e+03, 1.23033935479799725e+03,
                             2.15311535474403846e-08};
constexpr double kErfD[8] = {1.57449261107098347e+01, 1.17693950891312499e+02,
                             5.37181101862009858e+02, 1.62138957456669019e+03,
                             3.29079923573345963e+03, 4.36261909014324716e+03,
                             3.43936767414372164e+03, 1.23033935480374942e+03};
constexpr double kErfP[6] = {3.05326634961232344e-01, 3.60344899949804439e-01,
                             1.25781726111229246e-01, 1.60837851487422766e-02,
                             6.58749161529837803e-04, 1.63153871373020978e-02};
constexpr double kErfQ[5] = {2.56852019228982242e+00, 1.87295284992346047e+00,
                             5.27905102951428412e-01, 6.05183413124413191e-02,
                             2.33520497626869185e-03};
constexpr double kInvSqrtPi = 5.6418958354775628695e-01;
constexpr double kErfcUnderflow = 26.543;

// erfc(y) for y > 0.46875, split at y = 4 as in CALERF.
double ErfcPositive(double y) {
  double result;
  if (y <= 4.0) {
    double num = kErfC[8] * y;
    double den = y;
    for (int i = 0; i < 7; ++i) {
      num = (num + kErfC[i]) * y;
      den = (den + kErfD[i]) * y;
    }
    result = (num + kErfC[7]) / (den + kErfD[7]);
  } else if (y >= kErfcUnderflow) {
    return 0.0;
  } else {
    const double z = 1.0 / (y * y);
    double num = kErfP[5] * z;
    double den = z;
    for (int i = 0; i < 4; ++i) {
      num = (num + kErfP[i]) * z;
      den = (den + kErfQ[i]) * z;
    }
    result = z * (num + kErfP[4]) / (den + kErfQ[4]);
    result = (kInvSqrtPi - result) / y;
  }
  // Split the exponential so both factors stay well conditioned.
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del) * result;
}

}  // namespace

double DeterministicErf(double x) {
  const double y = std::fabs(x);
  if (y <= 0.46875) {
    const double z = y > 1.11e-16 ? y * y : 0.0;
    double num = kErfA[4] * z;
    double den = z;
    for (int i = 0; i < 3; ++i) {
      num = (num + kErfA[i]) * z;
      den = (den + kErfB[i]) * z;
    }
    return x * (num + kErfA[3]) / (den + kErfB[3]);
  }
  const double erfc = ErfcPositive(y);
  return x > 0.0 ? 1.0 - erfc : erfc - 1.0;
}

double DeterministicErfc(double x) {
  if (x < -0.46875) return 2.0 - ErfcPositive(-x);
  if (x <= 0.46875) return 1.0 - DeterministicErf(x);
  return ErfcPositive(x);
}

double NormalCdf(double x) {
  return 0.5 * DeterministicErfc(-x * M_SQRT1_2);
}

CdfTable CdfTable::FromPmf(const std::vector<double>& pmf) {
  const int n = static_cast<int>(pmf.size());
  if (n < 1 || static_cast<uint32_t>(n) > kCdfTotal) {
    throw Error("CdfTable: bad symbol count");
  }
  std::vector<uint32_t> freq(n);
  std::vector<double> remainder(n);
  int64_t total = 0;
  for (int i = 0; i < n; ++i) {
    const double scaled = std::max(pmf[i], 0.0) * kCdfTotal;
    const double fl = std::floor(scaled);
    freq[i] = std::max<uint32_t>(1, static_cast<uint32_t>(fl));
    remainder[i] = scaled - fl;
    total += freq[i];
  }
  if (total < static_cast<int64_t>(kCdfTotal)) {
    // Hand out the deficit by largest remainder, ties to the lower index.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return remainder[a] > remainder[b];
    });
    int64_t deficit = static_cast<int64_t>(kCdfTotal) - total;
    size_t j = 0;
    while (deficit > 0) {
      ++freq[order[j]];
      --deficit;
      j = (j + 1) % order.size();
    }
  } else if (total > static_cast<int64_t>(kCdfTotal)) {
    // Clamping small probabilities to one can overshoot; shave the largest
    // frequencies first, never below one.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return freq[a] > freq[b];
    });
    int64_t surplus = total - static_cast<int64_t>(kCdfTotal);
    size_t j = 0;
    while (surplus > 0) {
      if (freq[order[j]] > 1) {
        --freq[order[j]];
        --surplus;
      }
      j = (j + 1) % order.size();
    }
  }
  CdfTable table;
  table.cdf_.resize(n + 1);
  table.cdf_[0] = 0;
  for (int i = 0; i < n; ++i) table.cdf_[i + 1] = table.cdf_[i] + freq[i];
  return table;
}

CdfTable CdfTable::FromHistogram(const std::vector<uint64_t>& counts) {
  uint64_t total = 0;
  for (uint64_t c : counts) total += c;
  if (total == 0) throw Error("CdfTable: empty histogram");
  std::vector<double> pmf(counts.size());
  for (size_t i = 0; i < counts.size(); ++i) {
    pmf[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return FromPmf(pmf);
}

CdfTable CdfTable::Uniform(int num_symbols) {
  std::vector<double> pmf(num_symbols, 1.0 / num_symbols);
  return FromPmf(pmf);
}

int CdfTable::Lookup(uint32_t value) const {
  // First entry greater than value, minus one.
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), value);
  return static_cast<int>(it - cdf_.begin()) - 1;
}

double CdfTable::BitsFor(int s) const {
  return -std::log2(static_cast<double>(freq(s)) / kCdfTotal);
}

namespace {
constexpr uint32_t kTop = 1u << 24;
constexpr uint32_t kBot = 1u << 16;
}  // namespace

void RangeEncoder::Encode(const CdfTable& table, int symbol) {
  if (symbol < 0 || symbol >= table.num_symbols()) {
    throw Error("range encoder: symbol outside table support");
  }
  const uint32_t r = range_ >> kCdfPrecisionBits;
  low_ += r * table.cum(symbol);
  range_ = r * table.freq(symbol);
  Normalize();
}

void RangeEncoder::Normalize() {
  while ((low_ ^ (low_ + range_)) < kTop ||
         (range_ < kBot && ((range_ = (0u - low_) & (kBot - 1)), true))) {
    out_->push_back(static_cast<uint8_t>(low_ >> 24));
    low_ <<= 8;
    range_ <<= 8;
  }
}

void RangeEncoder::Finish() {
  for (int i = 0; i < 4; ++i) {
    out_->push_back(static_cast<uint8_t>(low_ >> 24));
    low_ <<= 8;
  }
}

RangeDecoder::RangeDecoder(const uint8_t* data, size_t size)
    : data_(data), size_(size) {
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | NextByte();
}

uint8_t RangeDecoder::NextByte() {
  if (pos_ >= size_) throw Error("range decoder: input underrun");
  return data_[pos_++];
}

int RangeDecoder::Decode(const CdfTable& table) {
  const uint32_t r = range_ >> kCdfPrecisionBits;
  uint32_t value = (code_ - low_) / r;
  if (value >= kCdfTotal) value = kCdfTotal - 1;
  const int symbol = table.Lookup(value);
  low_ += r * table.cum(symbol);
  range_ = r * table.freq(symbol);
  Normalize();
  return symbol;
}

void RangeDecoder::Normalize() {
  while ((low_ ^ (low_ + range_)) < kTop ||
         (range_ < kBot && ((range_ = (0u - low_) & (kBot - 1)), true))) {
    code_ = (code_ << 8) | NextByte();
    low_ <<= 8;
    range_ <<= 8;
  }
}

int QuantizeSigma(double sigma) {
  const double clamped = std::min(kSigmaMax, std::max(kSigmaMin, sigma));
  const int code = static_cast<int>(std::lround(std::log2(clamped) * 16.0));
  return std::min(kSigmaCodeMax, std::max(kSigmaCodeMin, code));
}

double DequantizeSigma(int code) {
  return std::exp2(static_cast<double>(code) / 16.0);
}

uint32_t ZigzagEncode32(int32_t v) {
  return (static_cast<uint32_t>(v) << 1) ^ static_cast<uint32_t>(v >> 31);
}

int32_t ZigzagDecode32(uint32_t v) {
  return static_cast<int32_t>(v >> 1) ^ -static_cast<int32_t>(v & 1);
}

const CdfTable& ByteTable() {
  static const CdfTable kTable = CdfTable::Uniform(256);
  return kTable;
}

namespace {
constexpr double kSupportSigmas = 6.0;

void EncodeRawU32(RangeEncoder* enc, uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    enc->Encode(ByteTable(), (v >> shift) & 0xFF);
  }
}

uint32_t DecodeRawU32(RangeDecoder* dec) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v = (v << 8) | static_cast<uint32_t>(dec->Decode(ByteTable()));
  }
  return v;
}
}  // namespace

GaussianModel::GaussianModel(double mean, double sigma) {
  const double s = std::min(kSigmaMax, std::max(kSigmaMin, sigma));
  int32_t lo = static_cast<int32_t>(std::floor(mean - kSupportSigmas * s));
  int32_t hi = static_cast<int32_t>(std::ceil(mean + kSupportSigmas * s));
  while (hi - lo < 2) {
    --lo;
    ++hi;
  }
  *this = GaussianModel(mean, s, lo, hi);
}

GaussianModel::GaussianModel(double mean, double sigma, int32_t lo,
                             int32_t hi) {
  const double s = std::min(kSigmaMax, std::max(kSigmaMin, sigma));
  if (hi - lo < 2) throw Error("gaussian model: support too narrow");
  lo_ = lo;
  hi_ = hi;
  const int n = hi_ - lo_ + 1;
  std::vector<double> pmf(n);
  for (int i = 0; i < n; ++i) {
    const double v = lo_ + i;
    double p;
    if (i == 0) {
      p = NormalCdf((v + 0.5 - mean) / s);
    } else if (i == n - 1) {
      p = 1.0 - NormalCdf((v - 0.5 - mean) / s);
    } else {
      p = NormalCdf((v + 0.5 - mean) / s) - NormalCdf((v - 0.5 - mean) / s);
    }
    pmf[i] = p;
  }
  table_ = CdfTable::FromPmf(pmf);
  table_.symbol_offset = lo_;
}

void GaussianModel::EncodeSymbol(RangeEncoder* enc, int32_t s) const {
  if (s > lo_ && s < hi_) {
    enc->Encode(table_, s - lo_);
    return;
  }
  const int escape = s <= lo_ ? 0 : table_.num_symbols() - 1;
  enc->Encode(table_, escape);
  EncodeRawU32(enc, ZigzagEncode32(s));
}

int32_t GaussianModel::DecodeSymbol(RangeDecoder* dec) const {
  const int idx = dec->Decode(table_);
  if (idx == 0 || idx == table_.num_symbols() - 1) {
    return ZigzagDecode32(DecodeRawU32(dec));
  }
  return lo_ + idx;
}

double GaussianModel::EstimateBits(int32_t s) const {
  if (s > lo_ && s < hi_) {
    return table_.BitsFor(s - lo_);
  }
  const int escape = s <= lo_ ? 0 : table_.num_symbols() - 1;
  return table_.BitsFor(escape) + 32.0;
}

double GaussianModel::EstimateBits(const std::vector<int32_t>& symbols) const {
  double bits = 0.0;
  for (int32_t s : symbols) bits += EstimateBits(s);
  return bits;
}

}  // namespace chromabench
