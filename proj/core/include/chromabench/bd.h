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

#ifndef CHROMABENCH_BD_H_
#define CHROMABENCH_BD_H_

#include <string>
#include <vector>

namespace chromabench {

struct RdPoint {
  double rate = 0.0;  // bpp, must be > 0
  double distortion = 0.0;
};

struct RdCurve {
  std::string label;
  std::string metric;
  std::vector<RdPoint> points;  // sorted by rate strictly increasing
};

// Sorts points by rate and enforces the curve invariants: positive finite
// rates, finite distortions, strictly increasing rates. Warns (stderr) if
// distortion is not monotone in rate.
void NormalizeRdCurve(RdCurve* curve);

enum class BdInterpolation {
  // Monotone shape-preserving piecewise cubic (default).
  kPchip,
  // The classic single cubic fitted by least squares.
  kCubicFit,
};

struct BdResult {
  double value = 0.0;  // percent for BD-rate, metric units for BD-distortion
  // Integration interval: distortion units for BD-rate, log10(rate) for
  // BD-distortion.
  double overlap_lo = 0.0;
  double overlap_hi = 0.0;
  std::string method;
};

// Average bitrate difference of `test` against `anchor` at equal
// distortion, in percent. log10(rate) is interpolated as a function of
// distortion over the distortion overlap; positive means the test codec
// spends more bits.
BdResult BdRate(const RdCurve& anchor, const RdCurve& test,
                BdInterpolation interp = BdInterpolation::kPchip);

// Average distortion difference at equal rate, in the curves' metric
// units; positive means the test codec scores higher.
BdResult BdDistortion(const RdCurve& anchor, const RdCurve& test,
                      BdInterpolation interp = BdInterpolation::kPchip);

struct BdTableCell {
  bool available = false;
  std::string error;  // set when unavailable
  BdResult rate;
  BdResult distortion;
  bool rate_best = false;
  bool rate_second = false;
  bool distortion_best = false;
  bool distortion_second = false;
};

struct BdTable {
  std::vector<std::string> codecs;   // row labels, input order
  std::vector<std::string> metrics;  // column labels
  std::vector<std::vector<BdTableCell>> cells;  // [codec][metric]
};

// Builds the full comparison table. For each metric there must be exactly
// one anchor curve; a missing test curve or a per-cell computation error
// yields an unavailable cell. Best/second-best flags are assigned per
// metric column (lowest BD-rate, highest BD-distortion).
BdTable MakeBdTable(const std::vector<RdCurve>& anchors,
                    const std::vector<RdCurve>& tests,
                    BdInterpolation interp = BdInterpolation::kPchip);

// Reads curves from CSV rows `codec,metric,rate_bpp,distortion`. Lines
// starting with '#' and a leading header row are skipped. Points are
// grouped by (codec, metric) in first-appearance order and normalized.
std::vector<RdCurve> LoadRdCurvesCsv(const std::string& path);

// Shape-preserving piecewise-cubic interpolant over strictly increasing
// knots, exposed for reuse and testing.
class PchipInterpolator {
 public:
  PchipInterpolator(std::vector<double> x, std::vector<double> y);
  double Evaluate(double at) const;
  // Exact integral of the piecewise polynomial over [a, b], which must lie
  // within the knot range.
  double Integrate(double a, double b) const;
  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

 private:
  double SegmentIntegral(size_t seg, double a, double b) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;  // knot derivatives
};

}  // namespace chromabench

#endif  // CHROMABENCH_BD_H_
