// include/svkit/gradcheck.h

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

#ifndef SVKIT_GRADCHECK_H_
#define SVKIT_GRADCHECK_H_

#include <functional>
#include <vector>

#include "svkit/attention.h"
#include "svkit/loss.h"
#include "svkit/pooling.h"

namespace svkit {

struct GradCheckReport {
  double max_rel_err = 0.0;
  std::size_t worst_index = 0;
  double analytic_at_worst = 0.0;
  double numeric_at_worst = 0.0;

  bool ok(double tol) const { return max_rel_err <= tol; }
};

using VectorFn = std::function<std::vector<double>(const std::vector<double>&)>;

// Compares an analytic gradient of L(x) = dot(upstream, fn(x)) against
// central finite differences of L. Per-coordinate error is
// |analytic - numeric| / max(1, |analytic|, |numeric|); the report carries
// the worst coordinate.
GradCheckReport check_gradient(const VectorFn& fn, const std::vector<double>& x0,
                               const std::vector<double>& upstream,
                               const std::vector<double>& analytic_grad,
                               double step = 1e-5);

/// Gradient checks for one kernel: wrt the input map and (when the kernel has
/// any) wrt the flattened parameters.
struct KernelGradReport {
  GradCheckReport input;
  GradCheckReport params;

  double max_rel_err() const { return std::max(input.max_rel_err, params.max_rel_err); }
  bool ok(double tol) const { return max_rel_err() <= tol; }
};

KernelGradReport check_attention_kernel(AttentionKernel& kernel, const FeatureMap& x,
                                        const FeatureMap& upstream, double step = 1e-5);

GradCheckReport check_gsp(const FeatureMap& x, const std::vector<double>& upstream,
                          double step = 1e-5);

KernelGradReport check_asp(const FeatureMap& x, const ASPParams& p,
                           const std::vector<double>& upstream, double step = 1e-5);

GradCheckReport check_aam(const std::vector<double>& cosines, std::size_t label,
                          const AAMConfig& cfg, double step = 1e-5);

}  // namespace svkit

#endif  // SVKIT_GRADCHECK_H_
