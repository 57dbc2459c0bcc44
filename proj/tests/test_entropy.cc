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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <random>
#include <vector>

#include "chromabench/entropy.h"

using namespace chromabench;

TEST_CASE("normal cdf") {
  CHECK(NormalCdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(NormalCdf(0.5) == doctest::Approx(0.691462461274013).epsilon(1e-12));
  CHECK(NormalCdf(-8.0) < 1e-14);
  CHECK(NormalCdf(8.0) > 1.0 - 1e-14);
  for (double x : {0.1, 0.7, 1.3, 2.9, 4.5}) {
    CHECK(NormalCdf(-x) == doctest::Approx(1.0 - NormalCdf(x)).epsilon(1e-13));
  }
  CHECK(DeterministicErf(0.0) == 0.0);
  CHECK(DeterministicErf(1.0) ==
        doctest::Approx(0.8427007929497149).epsilon(1e-10));
  CHECK(DeterministicErfc(1.0) ==
        doctest::Approx(1.0 - DeterministicErf(1.0)).epsilon(1e-12));
}

TEST_CASE("cdf table quantization") {
  const CdfTable uniform = CdfTable::Uniform(4);
  CHECK(uniform.num_symbols() == 4);
  CHECK(uniform.cum(0) == 0u);
  CHECK(uniform.cum(4) == kCdfTotal);
  for (int s = 0; s < 4; ++s) {
    CHECK(uniform.freq(s) == kCdfTotal / 4);
    CHECK(uniform.BitsFor(s) == doctest::Approx(2.0).epsilon(1e-15));
  }

  const CdfTable skew = CdfTable::FromPmf({0.75, 0.25});
  CHECK(skew.freq(0) == 49152u);
  CHECK(skew.freq(1) == 16384u);

  // Impossible symbols still receive frequency one so they stay codable.
  const CdfTable degenerate = CdfTable::FromPmf({1.0, 0.0});
  CHECK(degenerate.freq(0) == 65535u);
  CHECK(degenerate.freq(1) == 1u);

  const CdfTable counts = CdfTable::FromHistogram({3, 1});
  CHECK(counts.freq(0) == 49152u);
  CHECK(counts.freq(1) == 16384u);

  CHECK(uniform.Lookup(0) == 0);
  CHECK(uniform.Lookup(16383) == 0);
  CHECK(uniform.Lookup(16384) == 1);
  CHECK(uniform.Lookup(kCdfTotal - 1) == 3);
}

TEST_CASE("cdf table totals on random pmfs") {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 300);
    std::vector<double> pmf(n);
    double sum = 0.0;
    for (double& p : pmf) {
      p = std::pow(dist(rng), 4.0);
      sum += p;
    }
    for (double& p : pmf) p /= sum;
    const CdfTable table = CdfTable::FromPmf(pmf);
    CHECK(table.num_symbols() == n);
    CHECK(table.cum(n) == kCdfTotal);
    uint64_t total = 0;
    for (int s = 0; s < n; ++s) {
      CHECK(table.freq(s) >= 1u);
      total += table.freq(s);
    }
    CHECK(total == kCdfTotal);
  }
}

TEST_CASE("range coder round trips") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 64);
    std::vector<uint64_t> counts(n);
    for (auto& c : counts) c = 1 + rng() % 1000;
    const CdfTable table = CdfTable::FromHistogram(counts);

    const int len = 1 + static_cast<int>(rng() % 500);
    std::vector<int> symbols(len);
    std::discrete_distribution<int> pick(counts.begin(), counts.end());
    for (auto& s : symbols) s = pick(rng);

    std::vector<uint8_t> bytes;
    RangeEncoder enc(&bytes);
    for (int s : symbols) enc.Encode(table, s);
    enc.Finish();
    CHECK(!bytes.empty());

    RangeDecoder dec(bytes.data(), bytes.size());
    for (int s : symbols) {
      CHECK(dec.Decode(table) == s);
    }
    CHECK(dec.consumed() <= bytes.size());
  }
}

TEST_CASE("range coder is deterministic") {
  const CdfTable table = CdfTable::FromPmf({0.5, 0.3, 0.15, 0.05});
  std::vector<int> symbols;
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) symbols.push_back(static_cast<int>(rng() % 4));

  std::vector<uint8_t> first, second;
  for (auto* out : {&first, &second}) {
    RangeEncoder enc(out);
    for (int s : symbols) enc.Encode(table, s);
    enc.Finish();
  }
  CHECK(first == second);
}

TEST_CASE("range coder compression is near the entropy bound") {
  const std::vector<uint64_t> counts = {9000, 600, 250, 100, 40, 10};
  const CdfTable table = CdfTable::FromHistogram(counts);

  std::mt19937 rng(2024);
  std::discrete_distribution<int> pick(counts.begin(), counts.end());
  const int len = 10000;
  std::vector<int> symbols(len);
  double ideal_bits = 0.0;
  for (auto& s : symbols) {
    s = pick(rng);
    ideal_bits += table.BitsFor(s);
  }

  std::vector<uint8_t> bytes;
  RangeEncoder enc(&bytes);
  for (int s : symbols) enc.Encode(table, s);
  enc.Finish();

  const double actual_bits = 8.0 * static_cast<double>(bytes.size());
  CHECK(actual_bits <= ideal_bits + 32.0 + 0.001 * ideal_bits);

  RangeDecoder dec(bytes.data(), bytes.size());
  for (int s : symbols) REQUIRE(dec.Decode(table) == s);
}

TEST_CASE("sigma quantization") {
  CHECK(DequantizeSigma(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(DequantizeSigma(16) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(DequantizeSigma(kSigmaCodeMax) ==
        doctest::Approx(kSigmaMax).epsilon(1e-12));
  CHECK(QuantizeSigma(1.0) == 0);
  CHECK(QuantizeSigma(2.0) == 16);
  CHECK(QuantizeSigma(1e-9) == QuantizeSigma(kSigmaMin));
  CHECK(QuantizeSigma(1e9) == kSigmaCodeMax);
  for (int code = kSigmaCodeMin; code <= kSigmaCodeMax; ++code) {
    CHECK(QuantizeSigma(DequantizeSigma(code)) == code);
    CHECK(DequantizeSigma(code) >= kSigmaMin * 0.999);
    CHECK(DequantizeSigma(code) <= kSigmaMax * 1.001);
  }
}

TEST_CASE("zigzag mapping") {
  CHECK(ZigzagEncode32(0) == 0u);
  CHECK(ZigzagEncode32(-1) == 1u);
  CHECK(ZigzagEncode32(1) == 2u);
  CHECK(ZigzagEncode32(-2) == 3u);
  CHECK(ZigzagEncode32(2) == 4u);
  CHECK(ZigzagEncode32(std::numeric_limits<int32_t>::max()) == 4294967294u);
  CHECK(ZigzagEncode32(std::numeric_limits<int32_t>::min()) == 4294967295u);

  std::mt19937 rng(77);
  for (int i = 0; i < 1000; ++i) {
    const int32_t v = static_cast<int32_t>(rng());
    CHECK(ZigzagDecode32(ZigzagEncode32(v)) == v);
  }
}

TEST_CASE("gaussian model support windows") {
  const GaussianModel unit(0.0, 1.0);
  CHECK(unit.support_lo() == -6);
  CHECK(unit.support_hi() == 6);
  CHECK(unit.table().num_symbols() == 13);
  CHECK(unit.table().symbol_offset == -6);

  const GaussianModel shifted(3.2, 0.5);
  CHECK(shifted.support_lo() == 0);
  CHECK(shifted.support_hi() == 7);

  // Tiny sigmas still give at least three symbols.
  const GaussianModel narrow(10.0, 1e-6);
  CHECK(narrow.support_hi() - narrow.support_lo() >= 2);
  CHECK(narrow.table().num_symbols() >= 3);

  const GaussianModel manual(0.0, 1.0, -2, 2);
  CHECK(manual.support_lo() == -2);
  CHECK(manual.support_hi() == 2);
  CHECK(manual.table().num_symbols() == 5);
}

TEST_CASE("gaussian model probabilities") {
  const GaussianModel unit(0.0, 1.0);
  const CdfTable& t = unit.table();
  // The central bin carries the integral of the density over (-0.5, 0.5).
  const double p0 = static_cast<double>(t.freq(6)) / kCdfTotal;
  CHECK(std::fabs(p0 - 0.38292492254802607) < 1e-4);
  for (int s = 1; s <= 5; ++s) {
    const int64_t left = t.freq(6 - s);
    const int64_t right = t.freq(6 + s);
    CHECK(std::abs(left - right) <= 1);
  }
  // Frequencies decay monotonically away from the mean.
  for (int s = 6; s < 12; ++s) CHECK(t.freq(s + 1) <= t.freq(s));

  CHECK(unit.EstimateBits(0) == doctest::Approx(t.BitsFor(6)).epsilon(1e-15));
  CHECK(unit.EstimateBits(25) ==
        doctest::Approx(t.BitsFor(12) + 32.0).epsilon(1e-15));
  CHECK(unit.EstimateBits({0, 0, 1}) ==
        doctest::Approx(2.0 * t.BitsFor(6) + t.BitsFor(7)).epsilon(1e-12));
}

TEST_CASE("gaussian model round trips with escapes") {
  const GaussianModel unit(0.0, 1.0);
  const GaussianModel manual(0.0, 1.0, -2, 2);
  const std::vector<int32_t> values = {0,  1,  -1, 5,   -5, 6,
                                       -6, 25, -25, 1000, 0,  -3};

  std::vector<uint8_t> bytes;
  RangeEncoder enc(&bytes);
  for (int32_t v : values) unit.EncodeSymbol(&enc, v);
  for (int32_t v : values) manual.EncodeSymbol(&enc, v);
  enc.Finish();

  RangeDecoder dec(bytes.data(), bytes.size());
  for (int32_t v : values) CHECK(unit.DecodeSymbol(&dec) == v);
  for (int32_t v : values) CHECK(manual.DecodeSymbol(&dec) == v);
}

TEST_CASE("gaussian model streams are decodable at scale") {
  std::mt19937 rng(31337);
  std::normal_distribution<double> noise(0.0, 4.0);
  const GaussianModel model(0.0, 4.0);

  std::vector<int32_t> values(5000);
  for (auto& v : values) v = static_cast<int32_t>(std::lround(noise(rng)));

  std::vector<uint8_t> bytes;
  RangeEncoder enc(&bytes);
  for (int32_t v : values) model.EncodeSymbol(&enc, v);
  enc.Finish();

  const double actual_bits = 8.0 * static_cast<double>(bytes.size());
  double estimate = 0.0;
  for (int32_t v : values) estimate += model.EstimateBits(v);
  CHECK(actual_bits <= estimate + 32.0 + 0.001 * estimate);

  RangeDecoder dec(bytes.data(), bytes.size());
  for (int32_t v : values) REQUIRE(model.DecodeSymbol(&dec) == v);
}

TEST_CASE("byte table") {
  const CdfTable& bytes = ByteTable();
  CHECK(bytes.num_symbols() == 256);
  for (int s = 0; s < 256; ++s) CHECK(bytes.freq(s) == kCdfTotal / 256);
}
