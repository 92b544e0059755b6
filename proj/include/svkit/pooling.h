// include/svkit/pooling.h

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

#ifndef SVKIT_POOLING_H_
#define SVKIT_POOLING_H_

#include <string>
#include <vector>

#include "svkit/feature_map.h"

// Utterance-level encoding layers. Both poolings reduce the time axis of a
// C x F x T map to a vector of length 2*C*F: per-(c,f) means first, then
// per-(c,f) population standard deviations, each indexed c*F + f.

namespace svkit {

// Attentive pooling parameters. Frame t is scored a_t = v . tanh(w h_t + b)
// where h_t is the frame's flattened C*F column; softmax over time gives the
// attention weights.
struct ASPParams {
  std::size_t input_dim = 0;  // C*F
  std::size_t hidden = 0;     // attention bottleneck H
  std::vector<double> w;      // hidden x input_dim, row-major
  std::vector<double> b;      // hidden
  std::vector<double> v;      // hidden

  std::size_t param_count() const { return hidden * input_dim + 2 * hidden; }
  static ASPParams zeros(std::size_t input_dim, std::size_t hidden);
  void validate() const;
};

/// Mean and population std over time. T = 1 yields zero stds.
std::vector<double> gsp_pool(const FeatureMap& x);

/// Attention-weighted mean and std over time. With zero scores (e.g. v = 0)
/// the weights are uniform and the result equals gsp_pool exactly.
std::vector<double> asp_pool(const FeatureMap& x, const ASPParams& p);

/// The softmax attention weights over frames (nonnegative, sums to 1).
std::vector<double> asp_attention(const FeatureMap& x, const ASPParams& p);

/// Gradient of sum(upstream * gsp_pool(x)) wrt x. Where a (c,f) slice has
/// zero variance the std term takes subgradient 0.
FeatureMap gsp_backward(const FeatureMap& x, const std::vector<double>& upstream);

struct ASPBackward {
  FeatureMap input_grad;
  std::vector<double> param_grad;  // w, b, v order
};

ASPBackward asp_backward(const FeatureMap& x, const ASPParams& p,
                         const std::vector<double>& upstream);

std::vector<double> flatten(const ASPParams& p);
void unflatten(const std::vector<double>& flat, ASPParams* p);

void save_asp_params(const ASPParams& p, const std::string& path);
ASPParams load_asp_params(const std::string& path);

}  // namespace svkit

#endif  // SVKIT_POOLING_H_
