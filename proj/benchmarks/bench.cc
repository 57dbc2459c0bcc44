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

#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "chromabench/codec.h"
#include "chromabench/color.h"
#include "chromabench/entropy.h"
#include "chromabench/metrics.h"

namespace chromabench {
namespace {

// Smooth test content, vaguely photographic; good enough to keep the coder
// and the metric kernels on realistic data paths.
PlanarImage BenchImage(int width, int height, double shift) {
  PlanarImage img(width, height, ColorSpace::kSrgb);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double base =
          0.5 + 0.3 * std::sin(0.041 * x + shift) * std::cos(0.053 * y) +
          0.12 * std::sin(0.017 * (x + y) + 2.0 * shift);
      for (int p = 0; p < 3; ++p) {
        double v = base + 0.04 * std::sin(0.011 * x + 1.7 * p);
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
        img.at(p, y, x) = static_cast<float>(v);
      }
    }
  }
  return img;
}

void BM_ForwardDct8x8(benchmark::State& state) {
  double block[64];
  double coeffs[64];
  for (int i = 0; i < 64; ++i) block[i] = std::sin(0.3 * i);
  for (auto _ : state) {
    ForwardDct8x8(block, coeffs);
    benchmark::DoNotOptimize(coeffs);
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_ForwardDct8x8);

void BM_InverseDct8x8(benchmark::State& state) {
  double block[64];
  double coeffs[64];
  for (int i = 0; i < 64; ++i) coeffs[i] = std::sin(0.3 * i);
  for (auto _ : state) {
    InverseDct8x8(coeffs, block);
    benchmark::DoNotOptimize(block);
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_InverseDct8x8);

std::vector<int> BenchMessage(const CdfTable& table, int count) {
  std::mt19937 rng(1234);
  std::vector<double> weights;
  for (int s = 0; s < table.num_symbols(); ++s) {
    weights.push_back(static_cast<double>(table.freq(s)));
  }
  std::discrete_distribution<int> pick(weights.begin(), weights.end());
  std::vector<int> message(count);
  for (int& s : message) s = pick(rng);
  return message;
}

void BM_RangeEncode(benchmark::State& state) {
  GaussianModel model(0.0, 4.0);
  const std::vector<int> message = BenchMessage(model.table(), 10000);
  for (auto _ : state) {
    std::vector<uint8_t> bytes;
    bytes.reserve(16384);
    RangeEncoder enc(&bytes);
    for (int s : message) enc.Encode(model.table(), s);
    enc.Finish();
    benchmark::DoNotOptimize(bytes);
  }
  state.SetItemsProcessed(state.iterations() * message.size());
}
BENCHMARK(BM_RangeEncode);

void BM_RangeDecode(benchmark::State& state) {
  GaussianModel model(0.0, 4.0);
  const std::vector<int> message = BenchMessage(model.table(), 10000);
  std::vector<uint8_t> bytes;
  RangeEncoder enc(&bytes);
  for (int s : message) enc.Encode(model.table(), s);
  enc.Finish();
  for (auto _ : state) {
    RangeDecoder dec(bytes.data(), bytes.size());
    int sink = 0;
    for (size_t i = 0; i < message.size(); ++i) {
      sink += dec.Decode(model.table());
    }
    benchmark::DoNotOptimize(sink);
  }
  state.SetItemsProcessed(state.iterations() * message.size());
}
BENCHMARK(BM_RangeDecode);

void BM_ConvertToLab(benchmark::State& state) {
  const PlanarImage img = BenchImage(256, 256, 0.0);
  for (auto _ : state) {
    PlanarImage lab = ConvertImage(img, ColorSpace::kLab);
    benchmark::DoNotOptimize(lab);
  }
  state.SetItemsProcessed(state.iterations() * img.pixel_count());
}
BENCHMARK(BM_ConvertToLab);

void BM_MsSsim(benchmark::State& state) {
  const PlanarImage a = BenchImage(256, 256, 0.0);
  const PlanarImage b = BenchImage(256, 256, 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MsSsim(a, b));
  }
  state.SetItemsProcessed(state.iterations() * a.pixel_count());
}
BENCHMARK(BM_MsSsim)->Unit(benchmark::kMillisecond);

void BM_MeanCiede2000(benchmark::State& state) {
  const PlanarImage a = BenchImage(256, 256, 0.0);
  const PlanarImage b = BenchImage(256, 256, 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MeanCiede2000(a, b));
  }
  state.SetItemsProcessed(state.iterations() * a.pixel_count());
}
BENCHMARK(BM_MeanCiede2000)->Unit(benchmark::kMillisecond);

void BM_EncodeImage(benchmark::State& state) {
  const PlanarImage img = BenchImage(256, 256, 0.0);
  EncodeConfig cfg;
  cfg.operating_point = static_cast<int>(state.range(0));
  for (auto _ : state) {
    EncodeResult result = EncodeImage(img, cfg);
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations() * img.pixel_count());
}
BENCHMARK(BM_EncodeImage)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DecodeImage(benchmark::State& state) {
  const PlanarImage img = BenchImage(256, 256, 0.0);
  EncodeConfig cfg;
  cfg.operating_point = static_cast<int>(state.range(0));
  const EncodeResult encoded = EncodeImage(img, cfg);
  for (auto _ : state) {
    PlanarImage out = DecodeImage(encoded.bitstream);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * img.pixel_count());
}
BENCHMARK(BM_DecodeImage)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace chromabench

BENCHMARK_MAIN();
