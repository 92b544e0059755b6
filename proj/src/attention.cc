// src/attention.cc

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

#include "svkit/attention.h"

#include <algorithm>
#include <limits>

#include "svkit/text_io.h"

namespace svkit {

namespace {

enum class Axis { kChannel, kFrequency, kTime };

template <typename Real>
std::size_t axis_of(const BasicFeatureMap<Real>& x, Axis a, std::size_t flat) {
  const std::size_t t = flat % x.frames;
  const std::size_t f = (flat / x.frames) % x.freq_bins;
  const std::size_t c = flat / (x.frames * x.freq_bins);
  switch (a) {
    case Axis::kChannel: return c;
    case Axis::kFrequency: return f;
    default: return t;
  }
}

// Per-axis average and maximum over the complementary axes. argmax records
// the first flat index attaining the maximum, which fixes the max-pool
// subgradient deterministically.
template <typename Real>
void pool_avg_max(const BasicFeatureMap<Real>& x, Axis axis, std::vector<Real>* avg,
                  std::vector<Real>* maxv, std::vector<std::size_t>* argmax) {
  const std::size_t k_len = axis == Axis::kChannel   ? x.channels
                            : axis == Axis::kFrequency ? x.freq_bins
                                                       : x.frames;
  avg->assign(k_len, Real(0));
  maxv->assign(k_len, std::numeric_limits<Real>::lowest());
  if (argmax) argmax->assign(k_len, 0);
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    const std::size_t k = axis_of(x, axis, i);
    (*avg)[k] += x.values[i];
    if (x.values[i] > (*maxv)[k]) {
      (*maxv)[k] = x.values[i];
      if (argmax) (*argmax)[k] = i;
    }
  }
  const Real slice = static_cast<Real>(x.values.size() / k_len);
  for (Real& v : *avg) v /= slice;
}

template <typename Real>
struct MlpCache {
  std::vector<Real> in;
  std::vector<Real> pre1;  // before relu
  std::vector<Real> h1;    // after relu
  std::vector<Real> out;   // pre-sigmoid
};

template <typename Real>
MlpCache<Real> mlp_forward(const GateMlpT<Real>& p, std::vector<Real> in) {
  const std::size_t n = p.size, h = p.hidden();
  MlpCache<Real> c;
  c.pre1.assign(h, Real(0));
  c.h1.assign(h, Real(0));
  c.out = p.b2;
  for (std::size_t j = 0; j < h; ++j) {
    Real acc = p.b1[j];
    for (std::size_t i = 0; i < n; ++i) acc += in[i] * p.w1[i * h + j];
    c.pre1[j] = acc;
    c.h1[j] = acc > Real(0) ? acc : Real(0);
  }
  for (std::size_t j = 0; j < h; ++j) {
    const Real hj = c.h1[j];
    for (std::size_t k = 0; k < n; ++k) c.out[k] += hj * p.w2[j * n + k];
  }
  c.in = std::move(in);
  return c;
}

// Accumulates parameter gradients into *grad (same shapes as p) and returns
// the gradient with respect to the MLP input.
std::vector<double> mlp_backward(const GateMlp& p, const MlpCache<double>& c,
                                 const std::vector<double>& dout, GateMlp* grad) {
  const std::size_t n = p.size, h = p.hidden();
  std::vector<double> dh(h, 0.0);
  for (std::size_t j = 0; j < h; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      grad->w2[j * n + k] += c.h1[j] * dout[k];
      acc += p.w2[j * n + k] * dout[k];
    }
    dh[j] = acc;
  }
  for (std::size_t k = 0; k < n; ++k) grad->b2[k] += dout[k];

  std::vector<double> din(n, 0.0);
  for (std::size_t j = 0; j < h; ++j) {
    const double dpre = c.pre1[j] > 0.0 ? dh[j] : 0.0;
    grad->b1[j] += dpre;
    if (dpre == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      grad->w1[i * h + j] += c.in[i] * dpre;
      din[i] += p.w1[i * h + j] * dpre;
    }
  }
  return din;
}

template <typename Real>
void check_same_shape(const BasicFeatureMap<Real>& x, const BasicFeatureMap<Real>& u,
                      const char* op) {
  if (!x.same_shape(u))
    throw ValidationError(std::string(op) + ": upstream shape does not match input");
}

// One ft-CBAM stage: gate over `axis` computed from sigmoid(mlp(avg) +
// mlp(max)), broadcast-multiplied into the map.
template <typename Real>
BasicFeatureMap<Real> gate_stage_forward(const BasicFeatureMap<Real>& a,
                                         const GateMlpT<Real>& p, Axis axis) {
  std::vector<Real> avg, maxv;
  pool_avg_max(a, axis, &avg, &maxv, nullptr);
  const auto za = mlp_forward(p, std::move(avg));
  const auto zm = mlp_forward(p, std::move(maxv));
  std::vector<Real> gate(p.size);
  for (std::size_t k = 0; k < p.size; ++k) gate[k] = sigmoid(za.out[k] + zm.out[k]);
  BasicFeatureMap<Real> out(a.channels, a.freq_bins, a.frames);
  for (std::size_t i = 0; i < a.values.size(); ++i)
    out.values[i] = gate[axis_of(a, axis, i)] * a.values[i];
  return out;
}

// Backward of one stage. Returns the gradient with respect to the stage
// input; parameter gradients accumulate into *grad.
FeatureMap gate_stage_backward(const FeatureMap& a, const GateMlp& p, Axis axis,
                               const FeatureMap& upstream, GateMlp* grad) {
  std::vector<double> avg, maxv;
  std::vector<std::size_t> argmax;
  pool_avg_max(a, axis, &avg, &maxv, &argmax);
  const std::size_t k_len = avg.size();
  const double slice = static_cast<double>(a.values.size() / k_len);

  const auto ca = mlp_forward(p, avg);
  const auto cm = mlp_forward(p, maxv);
  std::vector<double> gate(k_len), dgate(k_len, 0.0);
  for (std::size_t k = 0; k < k_len; ++k) gate[k] = sigmoid(ca.out[k] + cm.out[k]);

  FeatureMap din(a.channels, a.freq_bins, a.frames);
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const std::size_t k = axis_of(a, axis, i);
    dgate[k] += upstream.values[i] * a.values[i];
    din.values[i] = gate[k] * upstream.values[i];
  }

  std::vector<double> dz(k_len);
  for (std::size_t k = 0; k < k_len; ++k)
    dz[k] = dgate[k] * gate[k] * (1.0 - gate[k]);

  const auto davg = mlp_backward(p, ca, dz, grad);
  const auto dmax = mlp_backward(p, cm, dz, grad);
  for (std::size_t i = 0; i < a.values.size(); ++i)
    din.values[i] += davg[axis_of(a, axis, i)] / slice;
  for (std::size_t k = 0; k < k_len; ++k) din.values[argmax[k]] += dmax[k];
  return din;
}

void append(std::vector<double>* out, const std::vector<double>& v) {
  out->insert(out->end(), v.begin(), v.end());
}

}  // namespace

// --- SimAM ------------------------------------------------------------------

template <typename Real>
BasicFeatureMap<Real> simam_energy(const BasicFeatureMap<Real>& x, const SimAMConfig& cfg) {
  x.validate();
  cfg.validate();
  const std::size_t m = x.freq_bins * x.frames;
  const Real lambda = static_cast<Real>(cfg.lambda);
  BasicFeatureMap<Real> energy(x.channels, x.freq_bins, x.frames);
  for (std::size_t c = 0; c < x.channels; ++c) {
    const Real* ch = x.values.data() + c * m;
    Real mean = Real(0);
    for (std::size_t i = 0; i < m; ++i) mean += ch[i];
    mean /= static_cast<Real>(m);
    Real var = Real(0);
    for (std::size_t i = 0; i < m; ++i) {
      const Real d = ch[i] - mean;
      var += d * d;
    }
    var /= static_cast<Real>(m);
    const Real num = Real(4) * (var + lambda);
    Real* out = energy.values.data() + c * m;
    for (std::size_t i = 0; i < m; ++i) {
      const Real d = ch[i] - mean;
      out[i] = num / (d * d + Real(2) * var + Real(2) * lambda);
    }
  }
  return energy;
}

template <typename Real>
BasicFeatureMap<Real> simam_apply(const BasicFeatureMap<Real>& x, const SimAMConfig& cfg) {
  BasicFeatureMap<Real> energy = simam_energy(x, cfg);
  BasicFeatureMap<Real> out(x.channels, x.freq_bins, x.frames);
  for (std::size_t i = 0; i < x.values.size(); ++i)
    out.values[i] = sigmoid(Real(1) / energy.values[i]) * x.values[i];
  return out;
}

KernelBackward simam_backward(const FeatureMap& x, const SimAMConfig& cfg,
                              const FeatureMap& upstream) {
  x.validate();
  cfg.validate();
  check_same_shape(x, upstream, "simam backward");
  const std::size_t m = x.freq_bins * x.frames;
  const double lambda = cfg.lambda;
  KernelBackward result;
  result.input_grad = FeatureMap(x.channels, x.freq_bins, x.frames);

  for (std::size_t c = 0; c < x.channels; ++c) {
    const double* ch = x.values.data() + c * m;
    const double* up = upstream.values.data() + c * m;
    double* out = result.input_grad.values.data() + c * m;

    double mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) mean += ch[i];
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = ch[i] - mean;
      var += d * d;
    }
    var /= static_cast<double>(m);
    const double a = 4.0 * (var + lambda);

    // gate_i = sigmoid(r_i) with r_i = d_i / a and d_i = (x_i-mean)^2 +
    // 2 var + 2 lambda. Accumulate the three channel-level sums the
    // chain rule needs, then a second O(M) pass assembles the gradient.
    std::vector<double> gate(m), dvec(m), coef(m);
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double dev = ch[i] - mean;
      const double d = dev * dev + 2.0 * var + 2.0 * lambda;
      const double g = sigmoid(d / a);
      gate[i] = g;
      dvec[i] = d;
      const double ci = up[i] * ch[i] * g * (1.0 - g);
      coef[i] = ci;
      s0 += ci;
      s1 += ci * dev;
      s2 += ci * d;
    }
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j) {
      const double dev = ch[j] - mean;
      double g = up[j] * gate[j];
      g += (2.0 * coef[j] * dev - 2.0 * inv_m * s1 + 4.0 * inv_m * dev * s0) / a;
      g -= 8.0 * inv_m * dev * s2 / (a * a);
      out[j] = g;
    }
  }
  return result;
}

// --- SE / fwSE ---------------------------------------------------------------

template <typename Real>
BasicFeatureMap<Real> se_apply(const BasicFeatureMap<Real>& x, const SEParamsT<Real>& p) {
  x.validate();
  p.mlp.validate();
  if (p.mlp.size != x.channels)
    throw ValidationError("se: parameters sized for a different channel count");
  const std::size_t m = x.freq_bins * x.frames;
  std::vector<Real> mean(x.channels, Real(0));
  for (std::size_t c = 0; c < x.channels; ++c) {
    const Real* ch = x.values.data() + c * m;
    Real acc = Real(0);
    for (std::size_t i = 0; i < m; ++i) acc += ch[i];
    mean[c] = acc / static_cast<Real>(m);
  }
  const auto cache = mlp_forward(p.mlp, std::move(mean));
  BasicFeatureMap<Real> out(x.channels, x.freq_bins, x.frames);
  for (std::size_t c = 0; c < x.channels; ++c) {
    const Real s = sigmoid(cache.out[c]);
    const Real* ch = x.values.data() + c * m;
    Real* oc = out.values.data() + c * m;
    for (std::size_t i = 0; i < m; ++i) oc[i] = s * ch[i];
  }
  return out;
}

KernelBackward se_backward(const FeatureMap& x, const SEParams& p,
                           const FeatureMap& upstream) {
  x.validate();
  p.mlp.validate();
  check_same_shape(x, upstream, "se backward");
  if (p.mlp.size != x.channels)
    throw ValidationError("se backward: parameters sized for a different channel count");
  const std::size_t m = x.freq_bins * x.frames;

  std::vector<double> mean(x.channels, 0.0);
  for (std::size_t c = 0; c < x.channels; ++c) {
    const double* ch = x.values.data() + c * m;
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += ch[i];
    mean[c] = acc / static_cast<double>(m);
  }
  const auto cache = mlp_forward(p.mlp, mean);

  KernelBackward result;
  result.input_grad = FeatureMap(x.channels, x.freq_bins, x.frames);
  std::vector<double> dz(x.channels);
  for (std::size_t c = 0; c < x.channels; ++c) {
    const double s = sigmoid(cache.out[c]);
    const double* ch = x.values.data() + c * m;
    const double* up = upstream.values.data() + c * m;
    double* out = result.input_grad.values.data() + c * m;
    double ds = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      ds += up[i] * ch[i];
      out[i] = s * up[i];
    }
    dz[c] = ds * s * (1.0 - s);
  }

  GateMlp grad = GateMlp::zeros(p.mlp.size, p.mlp.reduction);
  const auto dmean = mlp_backward(p.mlp, cache, dz, &grad);
  for (std::size_t c = 0; c < x.channels; ++c) {
    const double g = dmean[c] / static_cast<double>(m);
    double* out = result.input_grad.values.data() + c * m;
    for (std::size_t i = 0; i < m; ++i) out[i] += g;
  }
  result.param_grad = flatten(grad);
  return result;
}

template <typename Real>
BasicFeatureMap<Real> fwse_apply(const BasicFeatureMap<Real>& x, const FwSEParamsT<Real>& p) {
  x.validate();
  p.mlp.validate();
  if (p.mlp.size != x.freq_bins)
    throw ValidationError("fwse: parameters sized for a different bin count");
  std::vector<Real> mean(x.freq_bins, Real(0));
  for (std::size_t c = 0; c < x.channels; ++c)
    for (std::size_t f = 0; f < x.freq_bins; ++f) {
      const Real* row = x.values.data() + (c * x.freq_bins + f) * x.frames;
      Real acc = Real(0);
      for (std::size_t t = 0; t < x.frames; ++t) acc += row[t];
      mean[f] += acc;
    }
  const Real slice = static_cast<Real>(x.channels * x.frames);
  for (Real& v : mean) v /= slice;
  const auto cache = mlp_forward(p.mlp, std::move(mean));
  BasicFeatureMap<Real> out(x.channels, x.freq_bins, x.frames);
  for (std::size_t c = 0; c < x.channels; ++c)
    for (std::size_t f = 0; f < x.freq_bins; ++f) {
      const Real s = sigmoid(cache.out[f]);
      const Real* row = x.values.data() + (c * x.freq_bins + f) * x.frames;
      Real* orow = out.values.data() + (c * x.freq_bins + f) * x.frames;
      for (std::size_t t = 0; t < x.frames; ++t) orow[t] = s * row[t];
    }
  return out;
}

KernelBackward fwse_backward(const FeatureMap& x, const FwSEParams& p,
                             const FeatureMap& upstream) {
  x.validate();
  p.mlp.validate();
  check_same_shape(x, upstream, "fwse backward");
  if (p.mlp.size != x.freq_bins)
    throw ValidationError("fwse backward: parameters sized for a different bin count");

  std::vector<double> mean(x.freq_bins, 0.0);
  for (std::size_t c = 0; c < x.channels; ++c)
    for (std::size_t f = 0; f < x.freq_bins; ++f) {
      const double* row = x.values.data() + (c * x.freq_bins + f) * x.frames;
      double acc = 0.0;
      for (std::size_t t = 0; t < x.frames; ++t) acc += row[t];
      mean[f] += acc;
    }
  const double slice = static_cast<double>(x.channels * x.frames);
  for (double& v : mean) v /= slice;
  const auto cache = mlp_forward(p.mlp, mean);

  KernelBackward result;
  result.input_grad = FeatureMap(x.channels, x.freq_bins, x.frames);
  std::vector<double> gate(x.freq_bins), dz(x.freq_bins, 0.0);
  for (std::size_t f = 0; f < x.freq_bins; ++f) gate[f] = sigmoid(cache.out[f]);
  for (std::size_t c = 0; c < x.channels; ++c)
    for (std::size_t f = 0; f < x.freq_bins; ++f) {
      const double* row = x.values.data() + (c * x.freq_bins + f) * x.frames;
      const double* up = upstream.values.data() + (c * x.freq_bins + f) * x.frames;
      double* out = result.input_grad.values.data() + (c * x.freq_bins + f) * x.frames;
      for (std::size_t t = 0; t < x.frames; ++t) {
        dz[f] += up[t] * row[t];
        out[t] = gate[f] * up[t];
      }
    }
  for (std::size_t f = 0; f < x.freq_bins; ++f) dz[f] *= gate[f] * (1.0 - gate[f]);

  GateMlp grad = GateMlp::zeros(p.mlp.size, p.mlp.reduction);
  const auto dmean = mlp_backward(p.mlp, cache, dz, &grad);
  for (std::size_t c = 0; c < x.channels; ++c)
    for (std::size_t f = 0; f < x.freq_bins; ++f) {
      const double g = dmean[f] / slice;
      double* out = result.input_grad.values.data() + (c * x.freq_bins + f) * x.frames;
      for (std::size_t t = 0; t < x.frames; ++t) out[t] += g;
    }
  result.param_grad = flatten(grad);
  return result;
}

// --- ft-CBAM -----------------------------------------------------------------

template <typename Real>
BasicFeatureMap<Real> ftcbam_apply(const BasicFeatureMap<Real>& x, const CBAMParamsT<Real>& p) {
  x.validate();
  p.channel.validate();
  p.frequency.validate();
  p.temporal.validate();
  if (p.channel.size != x.channels || p.frequency.size != x.freq_bins ||
      p.temporal.size != x.frames)
    throw ValidationError("ftcbam: parameters sized for a different shape");
  auto stage1 = gate_stage_forward(x, p.channel, Axis::kChannel);
  auto stage2 = gate_stage_forward(stage1, p.frequency, Axis::kFrequency);
  return gate_stage_forward(stage2, p.temporal, Axis::kTime);
}

KernelBackward ftcbam_backward(const FeatureMap& x, const CBAMParams& p,
                               const FeatureMap& upstream) {
  x.validate();
  check_same_shape(x, upstream, "ftcbam backward");
  if (p.channel.size != x.channels || p.frequency.size != x.freq_bins ||
      p.temporal.size != x.frames)
    throw ValidationError("ftcbam backward: parameters sized for a different shape");

  const FeatureMap x1 = gate_stage_forward(x, p.channel, Axis::kChannel);
  const FeatureMap x2 = gate_stage_forward(x1, p.frequency, Axis::kFrequency);

  GateMlp gc = GateMlp::zeros(p.channel.size, p.channel.reduction);
  GateMlp gf = GateMlp::zeros(p.frequency.size, p.frequency.reduction);
  GateMlp gt = GateMlp::zeros(p.temporal.size, p.temporal.reduction);

  const FeatureMap d2 = gate_stage_backward(x2, p.temporal, Axis::kTime, upstream, &gt);
  const FeatureMap d1 = gate_stage_backward(x1, p.frequency, Axis::kFrequency, d2, &gf);

  KernelBackward result;
  result.input_grad = gate_stage_backward(x, p.channel, Axis::kChannel, d1, &gc);
  result.param_grad = flatten(gc);
  append(&result.param_grad, flatten(gf));
  append(&result.param_grad, flatten(gt));
  return result;
}

// --- Flattening --------------------------------------------------------------

std::vector<double> flatten(const GateMlp& p) {
  std::vector<double> flat;
  flat.reserve(p.param_count());
  append(&flat, p.w1);
  append(&flat, p.b1);
  append(&flat, p.w2);
  append(&flat, p.b2);
  return flat;
}

void unflatten(const std::vector<double>& flat, std::size_t offset, GateMlp* p) {
  p->validate_shape();
  const std::size_t need = p->param_count();
  if (flat.size() < offset + need)
    throw ValidationError("gate mlp: flattened parameter vector too short");
  const double* src = flat.data() + offset;
  const std::size_t n = p->size, h = p->hidden();
  p->w1.assign(src, src + n * h);
  src += n * h;
  p->b1.assign(src, src + h);
  src += h;
  p->w2.assign(src, src + h * n);
  src += h * n;
  p->b2.assign(src, src + n);
}

std::vector<double> flatten(const CBAMParams& p) {
  std::vector<double> flat = flatten(p.channel);
  append(&flat, flatten(p.frequency));
  append(&flat, flatten(p.temporal));
  return flat;
}

void unflatten(const std::vector<double>& flat, CBAMParams* p) {
  std::size_t offset = 0;
  unflatten(flat, offset, &p->channel);
  offset += p->channel.param_count();
  unflatten(flat, offset, &p->frequency);
  offset += p->frequency.param_count();
  unflatten(flat, offset, &p->temporal);
  offset += p->temporal.param_count();
  if (flat.size() != offset)
    throw ValidationError("ftcbam: flattened parameter vector has wrong length");
}

// --- Serialization -----------------------------------------------------------

namespace {

using io_detail::format_real9;
using io_detail::malformed;
using io_detail::parse_int;
using io_detail::parse_real;
using io_detail::read_lines;
using io_detail::split_fields;

void write_tensor_line(std::string* out, const char* label, std::size_t rows,
                       std::size_t cols, const std::vector<double>& values) {
  *out += label;
  *out += ' ';
  *out += std::to_string(rows);
  *out += ' ';
  *out += std::to_string(cols);
  for (double v : values) {
    *out += ' ';
    *out += format_real9(v);
  }
  *out += '\n';
}

void write_mlp_block(std::string* out, const std::string& header, const GateMlp& p) {
  *out += header + " size " + std::to_string(p.size) + " reduction " +
          std::to_string(p.reduction) + "\n";
  write_tensor_line(out, "w1", p.size, p.hidden(), p.w1);
  write_tensor_line(out, "b1", 1, p.hidden(), p.b1);
  write_tensor_line(out, "w2", p.hidden(), p.size, p.w2);
  write_tensor_line(out, "b2", 1, p.size, p.b2);
}

std::vector<double> read_tensor_line(const std::vector<std::string>& lines,
                                     std::size_t* line_idx, const std::string& path,
                                     const char* label, std::size_t rows,
                                     std::size_t cols) {
  const std::size_t line_no = *line_idx + 1;
  if (*line_idx >= lines.size()) malformed(path, line_no, "missing tensor line");
  const auto fields = split_fields(lines[(*line_idx)++]);
  if (fields.size() != 3 + rows * cols || fields[0] != label)
    malformed(path, line_no, std::string("expected tensor '") + label + "'");
  if (parse_int(fields[1], path, line_no) != static_cast<long>(rows) ||
      parse_int(fields[2], path, line_no) != static_cast<long>(cols))
    malformed(path, line_no, std::string("tensor '") + label + "' has wrong shape");
  std::vector<double> values(rows * cols);
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = parse_real(fields[3 + i], path, line_no);
  return values;
}

GateMlp read_mlp_block(const std::vector<std::string>& lines, std::size_t* line_idx,
                       const std::string& path, const std::string& header) {
  const std::size_t line_no = *line_idx + 1;
  if (*line_idx >= lines.size()) malformed(path, line_no, "missing header line");
  const auto fields = split_fields(lines[(*line_idx)++]);
  if (fields.size() != 5 || fields[0] != header || fields[1] != "size" ||
      fields[3] != "reduction")
    malformed(path, line_no, "expected '" + header + " size N reduction R'");
  GateMlp p;
  p.size = static_cast<std::size_t>(parse_int(fields[2], path, line_no));
  p.reduction = static_cast<std::size_t>(parse_int(fields[4], path, line_no));
  p.validate_shape();
  p.w1 = read_tensor_line(lines, line_idx, path, "w1", p.size, p.hidden());
  p.b1 = read_tensor_line(lines, line_idx, path, "b1", 1, p.hidden());
  p.w2 = read_tensor_line(lines, line_idx, path, "w2", p.hidden(), p.size);
  p.b2 = read_tensor_line(lines, line_idx, path, "b2", 1, p.size);
  p.validate();
  return p;
}

}  // namespace

void save_se_params(const SEParams& p, const std::string& path) {
  p.mlp.validate();
  std::string out;
  write_mlp_block(&out, "se", p.mlp);
  io_detail::write_file(path, out);
}

SEParams load_se_params(const std::string& path) {
  const auto lines = read_lines(path);
  std::size_t idx = 0;
  SEParams p{read_mlp_block(lines, &idx, path, "se")};
  if (idx != lines.size()) malformed(path, idx + 1, "trailing content");
  return p;
}

void save_fwse_params(const FwSEParams& p, const std::string& path) {
  p.mlp.validate();
  std::string out;
  write_mlp_block(&out, "fwse", p.mlp);
  io_detail::write_file(path, out);
}

FwSEParams load_fwse_params(const std::string& path) {
  const auto lines = read_lines(path);
  std::size_t idx = 0;
  FwSEParams p{read_mlp_block(lines, &idx, path, "fwse")};
  if (idx != lines.size()) malformed(path, idx + 1, "trailing content");
  return p;
}

void save_cbam_params(const CBAMParams& p, const std::string& path) {
  std::string out;
  write_mlp_block(&out, "ftcbam-channel", p.channel);
  write_mlp_block(&out, "ftcbam-frequency", p.frequency);
  write_mlp_block(&out, "ftcbam-temporal", p.temporal);
  io_detail::write_file(path, out);
}

CBAMParams load_cbam_params(const std::string& path) {
  const auto lines = read_lines(path);
  std::size_t idx = 0;
  CBAMParams p;
  p.channel = read_mlp_block(lines, &idx, path, "ftcbam-channel");
  p.frequency = read_mlp_block(lines, &idx, path, "ftcbam-frequency");
  p.temporal = read_mlp_block(lines, &idx, path, "ftcbam-temporal");
  if (idx != lines.size()) malformed(path, idx + 1, "trailing content");
  return p;
}

// --- Kernel handles ----------------------------------------------------------

void SimAMKernel::set_params(const std::vector<double>& flat) {
  if (!flat.empty())
    throw ValidationError("simam: kernel has no trainable parameters");
}

void SEKernel::set_params(const std::vector<double>& flat) {
  if (flat.size() != p_.mlp.param_count())
    throw ValidationError("se: flattened parameter vector has wrong length");
  unflatten(flat, 0, &p_.mlp);
}

void FwSEKernel::set_params(const std::vector<double>& flat) {
  if (flat.size() != p_.mlp.param_count())
    throw ValidationError("fwse: flattened parameter vector has wrong length");
  unflatten(flat, 0, &p_.mlp);
}

void FtCBAMKernel::set_params(const std::vector<double>& flat) {
  unflatten(flat, &p_);
}

// --- Explicit instantiations ---------------------------------------------------

template BasicFeatureMap<double> simam_energy(const BasicFeatureMap<double>&, const SimAMConfig&);
template BasicFeatureMap<float> simam_energy(const BasicFeatureMap<float>&, const SimAMConfig&);
template BasicFeatureMap<double> simam_apply(const BasicFeatureMap<double>&, const SimAMConfig&);
template BasicFeatureMap<float> simam_apply(const BasicFeatureMap<float>&, const SimAMConfig&);
template BasicFeatureMap<double> se_apply(const BasicFeatureMap<double>&, const SEParamsT<double>&);
template BasicFeatureMap<float> se_apply(const BasicFeatureMap<float>&, const SEParamsT<float>&);
template BasicFeatureMap<double> fwse_apply(const BasicFeatureMap<double>&, const FwSEParamsT<double>&);
template BasicFeatureMap<float> fwse_apply(const BasicFeatureMap<float>&, const FwSEParamsT<float>&);
template BasicFeatureMap<double> ftcbam_apply(const BasicFeatureMap<double>&, const CBAMParamsT<double>&);
template BasicFeatureMap<float> ftcbam_apply(const BasicFeatureMap<float>&, const CBAMParamsT<float>&);

}  // namespace svkit
