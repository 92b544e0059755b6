// src/gradcheck.cc

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

#include "svkit/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "svkit/common.h"

namespace svkit {

namespace {
double contract(const std::vector<double>& upstream, const std::vector<double>& y) {
  if (upstream.size() != y.size())
    throw ValidationError("gradcheck: upstream length does not match output");
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) acc += upstream[i] * y[i];
  return acc;
}
}  // namespace

GradCheckReport check_gradient(const VectorFn& fn, const std::vector<double>& x0,
                               const std::vector<double>& upstream,
                               const std::vector<double>& analytic_grad,
                               double step) {
  if (analytic_grad.size() != x0.size())
    throw ValidationError("gradcheck: gradient length does not match input");
  GradCheckReport report;
  std::vector<double> x = x0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + step;
    const double plus = contract(upstream, fn(x));
    x[i] = saved - step;
    const double minus = contract(upstream, fn(x));
    x[i] = saved;
    const double numeric = (plus - minus) / (2.0 * step);
    const double analytic = analytic_grad[i];
    const double denom = std::max({1.0, std::abs(numeric), std::abs(analytic)});
    const double err = std::abs(numeric - analytic) / denom;
    if (err > report.max_rel_err) {
      report.max_rel_err = err;
      report.worst_index = i;
      report.analytic_at_worst = analytic;
      report.numeric_at_worst = numeric;
    }
  }
  return report;
}

KernelGradReport check_attention_kernel(AttentionKernel& kernel, const FeatureMap& x,
                                        const FeatureMap& upstream, double step) {
  const KernelBackward analytic = kernel.backward(x, upstream);
  KernelGradReport report;

  auto wrt_input = [&](const std::vector<double>& flat) {
    FeatureMap probe = x;
    probe.values = flat;
    return kernel.forward(probe).values;
  };
  report.input =
      check_gradient(wrt_input, x.values, upstream.values, analytic.input_grad.values, step);

  if (kernel.param_count() > 0) {
    const std::vector<double> base = kernel.params();
    auto wrt_params = [&](const std::vector<double>& flat) {
      kernel.set_params(flat);
      return kernel.forward(x).values;
    };
    report.params =
        check_gradient(wrt_params, base, upstream.values, analytic.param_grad, step);
    kernel.set_params(base);
  }
  return report;
}

GradCheckReport check_gsp(const FeatureMap& x, const std::vector<double>& upstream,
                          double step) {
  const FeatureMap analytic = gsp_backward(x, upstream);
  auto fn = [&](const std::vector<double>& flat) {
    FeatureMap probe = x;
    probe.values = flat;
    return gsp_pool(probe);
  };
  return check_gradient(fn, x.values, upstream, analytic.values, step);
}

KernelGradReport check_asp(const FeatureMap& x, const ASPParams& p,
                           const std::vector<double>& upstream, double step) {
  const ASPBackward analytic = asp_backward(x, p, upstream);
  KernelGradReport report;

  auto wrt_input = [&](const std::vector<double>& flat) {
    FeatureMap probe = x;
    probe.values = flat;
    return asp_pool(probe, p);
  };
  report.input = check_gradient(wrt_input, x.values, upstream, analytic.input_grad.values,
                                step);

  auto wrt_params = [&](const std::vector<double>& flat) {
    ASPParams probe = p;
    unflatten(flat, &probe);
    return asp_pool(x, probe);
  };
  report.params = check_gradient(wrt_params, flatten(p), upstream, analytic.param_grad, step);
  return report;
}

GradCheckReport check_aam(const std::vector<double>& cosines, std::size_t label,
                          const AAMConfig& cfg, double step) {
  const AAMResult analytic = aam_loss(cosines, label, cfg);
  auto fn = [&](const std::vector<double>& probe) {
    return std::vector<double>{aam_loss(probe, label, cfg).loss};
  };
  return check_gradient(fn, cosines, {1.0}, analytic.grad, step);
}

}  // namespace svkit
