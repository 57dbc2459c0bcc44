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

#include "chromabench/rdo.h"

#include "chromabench/metrics.h"

namespace chromabench {

const std::vector<LagrangianConfig>& LagrangianPresets() {
  static const std::vector<LagrangianConfig> kPresets = {
      {"q1", 0.001, 0.01, 0.024},
      {"q2", 0.005, 0.12, 0.12},
      {"q3", 0.01, 2.4, 0.24},
      {"q4", 0.02, 4.8, 0.48},
  };
  return kPresets;
}

const LagrangianConfig& PresetByLabel(const std::string& label) {
  for (const LagrangianConfig& p : LagrangianPresets()) {
    if (p.label == label) return p;
  }
  throw Error("unknown preset: " + label);
}

LossBreakdown EvaluateLoss(const PlanarImage& x, const PlanarImage& xhat,
                           double total_bits, const LagrangianConfig& cfg) {
  if (!x.SameShape(xhat)) throw Error("EvaluateLoss: shape mismatch");
  if (total_bits < 0.0) throw Error("EvaluateLoss: negative bit count");
  LossBreakdown out;
  out.rate_bpp = total_bits / static_cast<double>(x.pixel_count());
  out.mse = Mse(x, xhat);
  out.msssim = MsSsim(x, xhat);
  out.ciede = MeanCiede2000(x, xhat);
  out.mse_term = cfg.lambda1 * out.mse;
  out.msssim_term = cfg.lambda2 * (1.0 - out.msssim);
  out.ciede_term = cfg.lambda3 * out.ciede;
  out.total = out.rate_bpp + out.mse_term + out.msssim_term + out.ciede_term;
  return out;
}

}  // namespace chromabench
