// include/svkit/loss.h

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

#ifndef SVKIT_LOSS_H_
#define SVKIT_LOSS_H_

#include <cstddef>
#include <vector>

#include "svkit/common.h"

namespace svkit {

/// Additive angular margin softmax settings: scaled cosine logits with the
/// margin added to the target class angle.
struct AAMConfig {
  double scale = 32.0;
  double margin = 0.2;  // radians, in [0, pi/2)

  void validate() const;
};

struct AAMResult {
  double loss = 0.0;
  std::vector<double> grad;  // d loss / d cosine_j
};

// loss = -log( exp(s cos(theta_y + m)) / (exp(s cos(theta_y + m)) +
//              sum_{j != y} exp(s cos theta_j)) ), theta = arccos(cosine),
// evaluated via cos(theta+m) = c cos m - sqrt(1-c^2) sin m and log-sum-exp
// stabilization. With m = 0 this is exactly softmax cross-entropy on the
// s-scaled cosines. Inputs are clamped to [-1+1e-12, 1-1e-12] before the
// margin expansion; values outside [-1,1] by more than 1e-9 are rejected.
AAMResult aam_loss(const std::vector<double>& cosines, std::size_t label,
                   const AAMConfig& cfg);

}  // namespace svkit

#endif  // SVKIT_LOSS_H_
