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

#ifndef CHROMABENCH_RDO_H_
#define CHROMABENCH_RDO_H_

#include <string>
#include <vector>

#include "chromabench/image.h"

namespace chromabench {

// Multiplier triple of the composite objective
//   total = rate_bpp + lambda1*MSE + lambda2*(1 - MS-SSIM) + lambda3*dE00.
struct LagrangianConfig {
  std::string label;
  double lambda1 = 0.0;  // MSE weight
  double lambda2 = 0.0;  // MS-SSIM complement weight
  double lambda3 = 0.0;  // CIEDE2000 weight
};

// The four operating-point presets, lowest rate first (q1..q4).
const std::vector<LagrangianConfig>& LagrangianPresets();

// Preset lookup by label; throws on an unknown name.
const LagrangianConfig& PresetByLabel(const std::string& label);

struct LossBreakdown {
  double rate_bpp = 0.0;
  // Raw metric values alongside the weighted terms, so the composition can
  // be re-derived exactly.
  double mse = 0.0;
  double msssim = 0.0;
  double ciede = 0.0;
  double mse_term = 0.0;
  double msssim_term = 0.0;
  double ciede_term = 0.0;
  double total = 0.0;
};

// Evaluates the composite loss for a reconstruction that cost `total_bits`
// coded bits. MSE and MS-SSIM are computed on [0,1] sRGB samples (matching
// PSNR's peak of 1); the color term converts to Lab internally.
LossBreakdown EvaluateLoss(const PlanarImage& x, const PlanarImage& xhat,
                           double total_bits, const LagrangianConfig& cfg);

}  // namespace chromabench

#endif  // CHROMABENCH_RDO_H_
