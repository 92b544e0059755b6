// src/loss.cc

// Copyright 2026  svkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "svkit/loss.h"

#include <algorithm>
#include <cmath>

namespace svkit {

namespace {
constexpr double kCosineTolerance = 1e-9;
constexpr double kCosineClamp = 1.0 - 1e-12;
}  // namespace

void AAMConfig::validate() const {
  if (!(scale > 0.0)) throw ValidationError("aam: scale must be > 0");
  if (!(margin >= 0.0 && margin < 1.5707963267948966))
    throw ValidationError("aam: margin must lie in [0, pi/2)");
}

AAMResult aam_loss(const std::vector<double>& cosines, std::size_t label,
                   const AAMConfig& cfg) {
  cfg.validate();
  if (cosines.empty()) throw ValidationError("aam: empty cosine vector");
  if (label >= cosines.size()) throw ValidationError("aam: label out of range");
  for (double c : cosines) {
    if (!std::isfinite(c) || std::abs(c) > 1.0 + kCosineTolerance)
      throw ValidationError("aam: cosine outside [-1, 1]");
  }

  const std::size_t n = cosines.size();
  const double cos_m = std::cos(cfg.margin);
  const double sin_m = std::sin(cfg.margin);

  // target logit gets the angular margin; m = 0 keeps the cosine untouched
  const double cy = std::clamp(cosines[label], -kCosineClamp, kCosineClamp);
  double dtarget_dcos = 1.0;
  std::vector<double> logits(n);
  for (std::size_t j = 0; j < n; ++j)
    logits[j] = cfg.scale * std::clamp(cosines[j], -1.0, 1.0);
  if (cfg.margin != 0.0) {
    const double sin_y = std::sqrt(1.0 - cy * cy);
    logits[label] = cfg.scale * (cy * cos_m - sin_y * sin_m);
    dtarget_dcos = cos_m + cy * sin_m / sin_y;
  }

  const double top = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (double l : logits) z += std::exp(l - top);
  const double log_z = top + std::log(z);

  AAMResult result;
  result.loss = log_z - logits[label];
  result.grad.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double prob = std::exp(logits[j] - log_z);
    result.grad[j] = cfg.scale * prob;
  }
  result.grad[label] = cfg.scale * (std::exp(logits[label] - log_z) - 1.0) * dtarget_dcos;
  return result;
}

}  // namespace svkit
