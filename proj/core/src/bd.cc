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

#include "chromabench/bd.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "chromabench/image.h"

namespace chromabench {
namespace {

int Sign(double v) { return (v > 0.0) - (v < 0.0); }

// Endpoint derivative of the shape-preserving fit: one-sided three-point
// estimate clipped so the end segment stays monotone.
double EdgeDerivative(double h0, double h1, double m0, double m1) {
  double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
  if (Sign(d) != Sign(m0)) {
    return 0.0;
  }
  if (Sign(m0) != Sign(m1) && std::fabs(d) > 3.0 * std::fabs(m0)) {
    return 3.0 * m0;
  }
  return d;
}

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool ParseDouble(const std::string& s, double* out) {
  try {
    size_t pos = 0;
    *out = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
    }
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

struct Samples {
  std::vector<double> x;
  std::vector<double> y;
};

// (distortion, log10 rate) sorted by distortion, used for BD-rate.
Samples RateOverDistortion(const RdCurve& curve) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(curve.points.size());
  for (const RdPoint& p : curve.points) {
    pts.emplace_back(p.distortion, std::log10(p.rate));
  }
  std::sort(pts.begin(), pts.end());
  Samples s;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i > 0 && !(pts[i].first > pts[i - 1].first)) {
      throw Error("bd: curve '" + curve.label +
                  "' has duplicate distortion values");
    }
    s.x.push_back(pts[i].first);
    s.y.push_back(pts[i].second);
  }
  return s;
}

// (log10 rate, distortion); rates are already strictly increasing.
Samples DistortionOverRate(const RdCurve& curve) {
  Samples s;
  for (const RdPoint& p : curve.points) {
    s.x.push_back(std::log10(p.rate));
    s.y.push_back(p.distortion);
  }
  return s;
}

void CheckCurve(const RdCurve& curve) {
  if (curve.points.size() < 3) {
    throw Error("bd: curve '" + curve.label + "' needs at least 3 points, has " +
                std::to_string(curve.points.size()));
  }
}

// Least-squares cubic in a shifted variable to keep the normal equations
// tame; integration is exact on the fitted polynomial.
class CubicFit {
 public:
  CubicFit(const std::vector<double>& x, const std::vector<double>& y) {
    shift_ = 0.0;
    for (double v : x) shift_ += v;
    shift_ /= static_cast<double>(x.size());

    long double s[7] = {0};
    long double t[4] = {0};
    for (size_t i = 0; i < x.size(); ++i) {
      long double u = x[i] - shift_;
      long double pw = 1.0L;
      for (int k = 0; k < 7; ++k) {
        s[k] += pw;
        if (k < 4) t[k] += pw * static_cast<long double>(y[i]);
        pw *= u;
      }
    }
    long double a[4][5];
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) a[r][c] = s[r + c];
      a[r][4] = t[r];
    }
    for (int col = 0; col < 4; ++col) {
      int piv = col;
      for (int r = col + 1; r < 4; ++r) {
        if (std::fabs(static_cast<double>(a[r][col])) >
            std::fabs(static_cast<double>(a[piv][col]))) {
          piv = r;
        }
      }
      std::swap(a[piv], a[col]);
      if (a[col][col] == 0.0L) {
        throw Error("bd: singular cubic fit");
      }
      for (int r = 0; r < 4; ++r) {
        if (r == col) continue;
        long double f = a[r][col] / a[col][col];
        for (int c = col; c < 5; ++c) a[r][c] -= f * a[col][c];
      }
    }
    for (int r = 0; r < 4; ++r) {
      coef_[r] = static_cast<double>(a[r][4] / a[r][r]);
    }
  }

  double Integrate(double lo, double hi) const {
    return Antiderivative(hi - shift_) - Antiderivative(lo - shift_);
  }

 private:
  double Antiderivative(double u) const {
    return u * (coef_[0] +
                u * (coef_[1] / 2.0 +
                     u * (coef_[2] / 3.0 + u * coef_[3] / 4.0)));
  }

  double shift_ = 0.0;
  double coef_[4] = {0, 0, 0, 0};
};

double AverageDifference(const Samples& anchor, const Samples& test,
                         BdInterpolation interp, double* lo, double* hi) {
  *lo = std::max(anchor.x.front(), test.x.front());
  *hi = std::min(anchor.x.back(), test.x.back());
  if (!(*hi > *lo)) {
    throw Error("bd: curves do not overlap");
  }
  double ia;
  double it;
  if (interp == BdInterpolation::kPchip) {
    ia = PchipInterpolator(anchor.x, anchor.y).Integrate(*lo, *hi);
    it = PchipInterpolator(test.x, test.y).Integrate(*lo, *hi);
  } else {
    ia = CubicFit(anchor.x, anchor.y).Integrate(*lo, *hi);
    it = CubicFit(test.x, test.y).Integrate(*lo, *hi);
  }
  return (it - ia) / (*hi - *lo);
}

const char* MethodName(BdInterpolation interp) {
  return interp == BdInterpolation::kPchip ? "pchip" : "cubic-fit";
}

}  // namespace

PchipInterpolator::PchipInterpolator(std::vector<double> x,
                                     std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw Error("pchip: need at least 2 samples");
  }
  for (size_t i = 0; i + 1 < n; ++i) {
    if (!(x_[i + 1] > x_[i])) {
      throw Error("pchip: x values must be strictly increasing");
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(y_[i])) {
      throw Error("pchip: non-finite sample");
    }
  }
  d_.resize(n);
  if (n == 2) {
    double m = (y_[1] - y_[0]) / (x_[1] - x_[0]);
    d_[0] = d_[1] = m;
    return;
  }
  std::vector<double> h(n - 1);
  std::vector<double> m(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    m[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  for (size_t i = 1; i + 1 < n; ++i) {
    if (Sign(m[i - 1]) * Sign(m[i]) <= 0) {
      d_[i] = 0.0;
    } else {
      double w1 = 2.0 * h[i] + h[i - 1];
      double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / m[i - 1] + w2 / m[i]);
    }
  }
  d_[0] = EdgeDerivative(h[0], h[1], m[0], m[1]);
  d_[n - 1] = EdgeDerivative(h[n - 2], h[n - 3], m[n - 2], m[n - 3]);
}

double PchipInterpolator::Evaluate(double at) const {
  if (at < x_.front() || at > x_.back()) {
    throw Error("pchip: evaluation outside the sample range");
  }
  size_t seg =
      std::upper_bound(x_.begin(), x_.end(), at) - x_.begin();
  if (seg > 0) --seg;
  if (seg + 1 >= x_.size()) seg = x_.size() - 2;
  double hseg = x_[seg + 1] - x_[seg];
  double delta = (y_[seg + 1] - y_[seg]) / hseg;
  double c = (3.0 * delta - 2.0 * d_[seg] - d_[seg + 1]) / hseg;
  double e = (d_[seg] + d_[seg + 1] - 2.0 * delta) / (hseg * hseg);
  double t = at - x_[seg];
  return y_[seg] + t * (d_[seg] + t * (c + t * e));
}

double PchipInterpolator::SegmentIntegral(size_t seg, double a,
                                          double b) const {
  double hseg = x_[seg + 1] - x_[seg];
  double delta = (y_[seg + 1] - y_[seg]) / hseg;
  double c = (3.0 * delta - 2.0 * d_[seg] - d_[seg + 1]) / hseg;
  double e = (d_[seg] + d_[seg + 1] - 2.0 * delta) / (hseg * hseg);
  auto anti = [&](double t) {
    return t * (y_[seg] +
                t * (d_[seg] / 2.0 + t * (c / 3.0 + t * e / 4.0)));
  };
  return anti(b - x_[seg]) - anti(a - x_[seg]);
}

double PchipInterpolator::Integrate(double a, double b) const {
  if (a > b) {
    return -Integrate(b, a);
  }
  if (a < x_.front() || b > x_.back()) {
    throw Error("pchip: integration outside the sample range");
  }
  double total = 0.0;
  for (size_t seg = 0; seg + 1 < x_.size(); ++seg) {
    double lo = std::max(a, x_[seg]);
    double hi = std::min(b, x_[seg + 1]);
    if (hi > lo) {
      total += SegmentIntegral(seg, lo, hi);
    }
  }
  return total;
}

void NormalizeRdCurve(RdCurve* curve) {
  std::sort(curve->points.begin(), curve->points.end(),
            [](const RdPoint& a, const RdPoint& b) { return a.rate < b.rate; });
  for (size_t i = 0; i < curve->points.size(); ++i) {
    const RdPoint& p = curve->points[i];
    if (!std::isfinite(p.rate) || !std::isfinite(p.distortion)) {
      throw Error("bd: curve '" + curve->label + "' has a non-finite point");
    }
    if (!(p.rate > 0.0)) {
      throw Error("bd: curve '" + curve->label + "' has a non-positive rate");
    }
    if (i > 0 && !(p.rate > curve->points[i - 1].rate)) {
      throw Error("bd: curve '" + curve->label + "' has duplicate rates");
    }
  }
  for (size_t i = 1; i < curve->points.size(); ++i) {
    if (curve->points[i].distortion < curve->points[i - 1].distortion) {
      std::fprintf(stderr,
                   "chromabench: curve '%s' (%s) is not monotone in rate\n",
                   curve->label.c_str(), curve->metric.c_str());
      break;
    }
  }
}

BdResult BdRate(const RdCurve& anchor, const RdCurve& test,
                BdInterpolation interp) {
  CheckCurve(anchor);
  CheckCurve(test);
  BdResult r;
  double avg = AverageDifference(RateOverDistortion(anchor),
                                 RateOverDistortion(test), interp,
                                 &r.overlap_lo, &r.overlap_hi);
  r.value = (std::pow(10.0, avg) - 1.0) * 100.0;
  r.method = MethodName(interp);
  return r;
}

BdResult BdDistortion(const RdCurve& anchor, const RdCurve& test,
                      BdInterpolation interp) {
  CheckCurve(anchor);
  CheckCurve(test);
  BdResult r;
  r.value = AverageDifference(DistortionOverRate(anchor),
                              DistortionOverRate(test), interp, &r.overlap_lo,
                              &r.overlap_hi);
  r.method = MethodName(interp);
  return r;
}

BdTable MakeBdTable(const std::vector<RdCurve>& anchors,
                    const std::vector<RdCurve>& tests,
                    BdInterpolation interp) {
  BdTable table;
  std::map<std::string, const RdCurve*> anchor_by_metric;
  for (const RdCurve& a : anchors) {
    if (!anchor_by_metric.emplace(a.metric, &a).second) {
      throw Error("bd: multiple anchor curves for metric '" + a.metric + "'");
    }
    table.metrics.push_back(a.metric);
  }
  for (const RdCurve& t : tests) {
    if (std::find(table.codecs.begin(), table.codecs.end(), t.label) ==
        table.codecs.end()) {
      table.codecs.push_back(t.label);
    }
  }
  table.cells.assign(table.codecs.size(),
                     std::vector<BdTableCell>(table.metrics.size()));
  for (size_t row = 0; row < table.codecs.size(); ++row) {
    for (size_t col = 0; col < table.metrics.size(); ++col) {
      BdTableCell& cell = table.cells[row][col];
      const RdCurve* anchor = anchor_by_metric.at(table.metrics[col]);
      const RdCurve* test = nullptr;
      for (const RdCurve& t : tests) {
        if (t.label == table.codecs[row] && t.metric == table.metrics[col]) {
          test = &t;
          break;
        }
      }
      if (test == nullptr) {
        cell.error = "no curve";
        continue;
      }
      try {
        cell.rate = BdRate(*anchor, *test, interp);
        cell.distortion = BdDistortion(*anchor, *test, interp);
        cell.available = true;
      } catch (const Error& e) {
        cell.error = e.what();
      }
    }
  }
  for (size_t col = 0; col < table.metrics.size(); ++col) {
    int best_rate = -1;
    int second_rate = -1;
    int best_dist = -1;
    int second_dist = -1;
    for (size_t row = 0; row < table.codecs.size(); ++row) {
      if (!table.cells[row][col].available) continue;
      double rv = table.cells[row][col].rate.value;
      double dv = table.cells[row][col].distortion.value;
      if (best_rate < 0 || rv < table.cells[best_rate][col].rate.value) {
        second_rate = best_rate;
        best_rate = static_cast<int>(row);
      } else if (second_rate < 0 ||
                 rv < table.cells[second_rate][col].rate.value) {
        second_rate = static_cast<int>(row);
      }
      if (best_dist < 0 || dv > table.cells[best_dist][col].distortion.value) {
        second_dist = best_dist;
        best_dist = static_cast<int>(row);
      } else if (second_dist < 0 ||
                 dv > table.cells[second_dist][col].distortion.value) {
        second_dist = static_cast<int>(row);
      }
    }
    if (best_rate >= 0) table.cells[best_rate][col].rate_best = true;
    if (second_rate >= 0) table.cells[second_rate][col].rate_second = true;
    if (best_dist >= 0) table.cells[best_dist][col].distortion_best = true;
    if (second_dist >= 0) table.cells[second_dist][col].distortion_second = true;
  }
  return table;
}

std::vector<RdCurve> LoadRdCurvesCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open " + path);
  }
  std::vector<RdCurve> curves;
  std::map<std::pair<std::string, std::string>, size_t> index;
  std::string line;
  int lineno = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(t);
    std::string field;
    while (std::getline(ss, field, ',')) {
      fields.push_back(Trim(field));
    }
    if (fields.size() < 4) {
      throw Error(path + ":" + std::to_string(lineno) +
                  ": expected codec,metric,rate_bpp,distortion");
    }
    double rate;
    double dist;
    if (!ParseDouble(fields[2], &rate) || !ParseDouble(fields[3], &dist)) {
      if (!saw_data) {
        continue;  // header row
      }
      throw Error(path + ":" + std::to_string(lineno) + ": bad numeric field");
    }
    saw_data = true;
    auto key = std::make_pair(fields[0], fields[1]);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, curves.size()).first;
      curves.push_back(RdCurve{fields[0], fields[1], {}});
    }
    curves[it->second].points.push_back(RdPoint{rate, dist});
  }
  for (RdCurve& c : curves) {
    NormalizeRdCurve(&c);
  }
  return curves;
}

}  // namespace chromabench
