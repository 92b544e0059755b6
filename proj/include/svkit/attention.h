// include/svkit/attention.h

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

#ifndef SVKIT_ATTENTION_H_
#define SVKIT_ATTENTION_H_

#include <memory>
#include <string>
#include <vector>

#include "svkit/feature_map.h"

// Attention kernels over a C x F x T feature map, with analytic backward
// passes for gradient verification.
//
//   SimAM:   per-neuron gates from the closed-form minimum of an energy
//            function; no trainable parameters.
//   SE:      channel-wise squeeze-excitation gates.
//   fwSE:    frequency-wise squeeze-excitation gates.
//   ft-CBAM: sequential channel, frequency and temporal gates from shared-MLP
//            avg+max pooling.
//
// Forward passes are templated on the scalar type; double is the reference
// precision (the finite-difference oracles compare against it), float is
// available for parity with single-precision deployments. Backward passes
// are double only.

namespace svkit {

/// SimAM hyperparameters. lambda is the energy regularizer; it is not a
/// trainable parameter (the module trains zero parameters).
struct SimAMConfig {
  double lambda = 1e-4;

  void validate() const {
    if (!(lambda > 0.0)) throw ValidationError("simam: lambda must be > 0");
  }
};

// Two-layer bottleneck shared by the squeeze-excitation family:
//   hidden = relu(w1^T in + b1),  out = w2^T hidden + b2
// with w1 stored input-major [size][hidden] and w2 [hidden][size].
// relu'(0) is taken as 0.
template <typename Real>
struct GateMlpT {
  std::size_t size = 0;       // attended axis length (C for SE, F for fwSE)
  std::size_t reduction = 1;  // hidden = size / reduction
  std::vector<Real> w1;       // size * hidden
  std::vector<Real> b1;       // hidden
  std::vector<Real> w2;       // hidden * size
  std::vector<Real> b2;       // size

  std::size_t hidden() const { return size / reduction; }
  std::size_t param_count() const { return 2 * size * hidden() + hidden() + size; }

  static GateMlpT zeros(std::size_t size, std::size_t reduction) {
    GateMlpT p;
    p.size = size;
    p.reduction = reduction;
    p.validate_shape();
    p.w1.assign(size * p.hidden(), Real(0));
    p.b1.assign(p.hidden(), Real(0));
    p.w2.assign(p.hidden() * size, Real(0));
    p.b2.assign(size, Real(0));
    return p;
  }

  void validate_shape() const {
    if (size == 0 || reduction == 0 || size % reduction != 0)
      throw ValidationError("gate mlp: reduction must divide the axis length");
  }

  void validate() const {
    validate_shape();
    const std::size_t h = hidden();
    if (w1.size() != size * h || b1.size() != h || w2.size() != h * size ||
        b2.size() != size)
      throw ValidationError("gate mlp: parameter shapes inconsistent");
    for (const auto* vec : {&w1, &b1, &w2, &b2})
      for (Real v : *vec)
        if (!std::isfinite(v)) throw ValidationError("gate mlp: non-finite parameter");
  }
};

using GateMlp = GateMlpT<double>;

template <typename Real>
struct SEParamsT {
  GateMlpT<Real> mlp;  // sized on C
};
using SEParams = SEParamsT<double>;

template <typename Real>
struct FwSEParamsT {
  GateMlpT<Real> mlp;  // sized on F
};
using FwSEParams = FwSEParamsT<double>;

// ft-CBAM parameters. Each submodule is one shared GateMlp applied to both
// the avg-pooled and max-pooled vector of its axis; the two outputs (biases
// included in each application) are summed before the logistic.
template <typename Real>
struct CBAMParamsT {
  GateMlpT<Real> channel;   // sized on C
  GateMlpT<Real> frequency; // sized on F
  GateMlpT<Real> temporal;  // sized on T

  std::size_t param_count() const {
    return channel.param_count() + frequency.param_count() + temporal.param_count();
  }
};
using CBAMParams = CBAMParamsT<double>;

// --- Forward passes -------------------------------------------------------

/// Per-neuron minimal energy e* = 4(var + lambda) / ((x - mean)^2 + 2 var +
/// 2 lambda), with mean/var taken per channel over all M = F*T neurons
/// (target included, population normalization). Always > 0 for lambda > 0.
template <typename Real>
BasicFeatureMap<Real> simam_energy(const BasicFeatureMap<Real>& x, const SimAMConfig& cfg);

/// Gated map: logistic(1/E) elementwise times x.
template <typename Real>
BasicFeatureMap<Real> simam_apply(const BasicFeatureMap<Real>& x, const SimAMConfig& cfg);

/// Channel gates from the per-channel mean over F x T.
template <typename Real>
BasicFeatureMap<Real> se_apply(const BasicFeatureMap<Real>& x, const SEParamsT<Real>& p);

/// Frequency gates from the per-bin mean over C x T.
template <typename Real>
BasicFeatureMap<Real> fwse_apply(const BasicFeatureMap<Real>& x, const FwSEParamsT<Real>& p);

/// Sequential channel, then frequency, then temporal gating.
template <typename Real>
BasicFeatureMap<Real> ftcbam_apply(const BasicFeatureMap<Real>& x, const CBAMParamsT<Real>& p);

// --- Backward passes ------------------------------------------------------

// Gradients of sum(upstream * kernel(x)) with respect to x and to the
// flattened parameters. Parameter order is w1, b1, w2, b2 per GateMlp;
// ft-CBAM concatenates channel, frequency, temporal.
struct KernelBackward {
  FeatureMap input_grad;
  std::vector<double> param_grad;
};

KernelBackward simam_backward(const FeatureMap& x, const SimAMConfig& cfg,
                              const FeatureMap& upstream);
KernelBackward se_backward(const FeatureMap& x, const SEParams& p,
                           const FeatureMap& upstream);
KernelBackward fwse_backward(const FeatureMap& x, const FwSEParams& p,
                             const FeatureMap& upstream);
KernelBackward ftcbam_backward(const FeatureMap& x, const CBAMParams& p,
                               const FeatureMap& upstream);

// --- Parameter flattening and serialization --------------------------------

std::vector<double> flatten(const GateMlp& p);
void unflatten(const std::vector<double>& flat, std::size_t offset, GateMlp* p);
std::vector<double> flatten(const CBAMParams& p);
void unflatten(const std::vector<double>& flat, CBAMParams* p);

// Text serialization in the same token family as the embedding format: a
// header line, then one labeled tensor per line ("name rows cols v...").
void save_se_params(const SEParams& p, const std::string& path);
SEParams load_se_params(const std::string& path);
void save_fwse_params(const FwSEParams& p, const std::string& path);
FwSEParams load_fwse_params(const std::string& path);
void save_cbam_params(const CBAMParams& p, const std::string& path);
CBAMParams load_cbam_params(const std::string& path);

// --- Type-erased kernel handle ---------------------------------------------

// Uniform view of one attention kernel: used by the gradient-check harness,
// the CLI self-checks, and the trainable-parameter accounting.
class AttentionKernel {
 public:
  virtual ~AttentionKernel() = default;
  virtual std::string name() const = 0;
  virtual std::size_t param_count() const = 0;
  virtual std::vector<double> params() const = 0;
  virtual void set_params(const std::vector<double>& flat) = 0;
  virtual FeatureMap forward(const FeatureMap& x) const = 0;
  virtual KernelBackward backward(const FeatureMap& x, const FeatureMap& upstream) const = 0;
};

class SimAMKernel final : public AttentionKernel {
 public:
  explicit SimAMKernel(SimAMConfig cfg = {}) : cfg_(cfg) {}
  std::string name() const override { return "simam"; }
  std::size_t param_count() const override { return 0; }  // parameter-free
  std::vector<double> params() const override { return {}; }
  void set_params(const std::vector<double>& flat) override;
  FeatureMap forward(const FeatureMap& x) const override { return simam_apply(x, cfg_); }
  KernelBackward backward(const FeatureMap& x, const FeatureMap& u) const override {
    return simam_backward(x, cfg_, u);
  }

 private:
  SimAMConfig cfg_;
};

class SEKernel final : public AttentionKernel {
 public:
  explicit SEKernel(SEParams p) : p_(std::move(p)) {}
  SEKernel(std::size_t channels, std::size_t reduction)
      : p_{GateMlp::zeros(channels, reduction)} {}
  std::string name() const override { return "se"; }
  std::size_t param_count() const override { return p_.mlp.param_count(); }
  std::vector<double> params() const override { return flatten(p_.mlp); }
  void set_params(const std::vector<double>& flat) override;
  FeatureMap forward(const FeatureMap& x) const override { return se_apply(x, p_); }
  KernelBackward backward(const FeatureMap& x, const FeatureMap& u) const override {
    return se_backward(x, p_, u);
  }

 private:
  SEParams p_;
};

class FwSEKernel final : public AttentionKernel {
 public:
  explicit FwSEKernel(FwSEParams p) : p_(std::move(p)) {}
  FwSEKernel(std::size_t freq_bins, std::size_t reduction)
      : p_{GateMlp::zeros(freq_bins, reduction)} {}
  std::string name() const override { return "fwse"; }
  std::size_t param_count() const override { return p_.mlp.param_count(); }
  std::vector<double> params() const override { return flatten(p_.mlp); }
  void set_params(const std::vector<double>& flat) override;
  FeatureMap forward(const FeatureMap& x) const override { return fwse_apply(x, p_); }
  KernelBackward backward(const FeatureMap& x, const FeatureMap& u) const override {
    return fwse_backward(x, p_, u);
  }

 private:
  FwSEParams p_;
};

class FtCBAMKernel final : public AttentionKernel {
 public:
  explicit FtCBAMKernel(CBAMParams p) : p_(std::move(p)) {}
  std::string name() const override { return "ftcbam"; }
  std::size_t param_count() const override { return p_.param_count(); }
  std::vector<double> params() const override { return flatten(p_); }
  void set_params(const std::vector<double>& flat) override;
  FeatureMap forward(const FeatureMap& x) const override { return ftcbam_apply(x, p_); }
  KernelBackward backward(const FeatureMap& x, const FeatureMap& u) const override {
    return ftcbam_backward(x, p_, u);
  }

 private:
  CBAMParams p_;
};

}  // namespace svkit

#endif  // SVKIT_ATTENTION_H_
