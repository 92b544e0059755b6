// src/pooling.cc

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

#include "svkit/pooling.h"

#include <algorithm>
#include <cmath>

#include "svkit/text_io.h"

namespace svkit {

namespace {

// Frame t as a flattened C*F column, index d = c*F + f.
inline double frame_value(const FeatureMap& x, std::size_t d, std::size_t t) {
  return x.values[d * x.frames + t];
}

struct ASPCache {
  std::size_t dim = 0;             // C*F
  std::vector<double> tanh_out;    // frames x hidden
  std::vector<double> scores;      // frames
  std::vector<double> alpha;       // frames
  std::vector<double> wmean;       // dim
  std::vector<double> wsq;         // dim, weighted mean of squares
};

ASPCache asp_forward_cached(const FeatureMap& x, const ASPParams& p) {
  const std::size_t dim = x.channels * x.freq_bins;
  const std::size_t frames = x.frames;
  const std::size_t h = p.hidden;
  ASPCache c;
  c.dim = dim;
  c.tanh_out.assign(frames * h, 0.0);
  c.scores.assign(frames, 0.0);

  for (std::size_t t = 0; t < frames; ++t) {
    double score = 0.0;
    for (std::size_t j = 0; j < h; ++j) {
      double pre = p.b[j];
      for (std::size_t d = 0; d < dim; ++d)
        pre += p.w[j * dim + d] * frame_value(x, d, t);
      const double u = std::tanh(pre);
      c.tanh_out[t * h + j] = u;
      score += p.v[j] * u;
    }
    c.scores[t] = score;
  }

  // softmax over time, shifted by the max score
  c.alpha.assign(frames, 0.0);
  const double top = *std::max_element(c.scores.begin(), c.scores.end());
  double z = 0.0;
  for (std::size_t t = 0; t < frames; ++t) {
    c.alpha[t] = std::exp(c.scores[t] - top);
    z += c.alpha[t];
  }
  for (double& a : c.alpha) a /= z;

  c.wmean.assign(dim, 0.0);
  c.wsq.assign(dim, 0.0);
  for (std::size_t t = 0; t < frames; ++t) {
    const double a = c.alpha[t];
    for (std::size_t d = 0; d < dim; ++d) {
      const double v = frame_value(x, d, t);
      c.wmean[d] += a * v;
      c.wsq[d] += a * v * v;
    }
  }
  return c;
}

}  // namespace

ASPParams ASPParams::zeros(std::size_t input_dim, std::size_t hidden) {
  ASPParams p;
  p.input_dim = input_dim;
  p.hidden = hidden;
  p.w.assign(hidden * input_dim, 0.0);
  p.b.assign(hidden, 0.0);
  p.v.assign(hidden, 0.0);
  return p;
}

void ASPParams::validate() const {
  if (input_dim == 0 || hidden == 0)
    throw ValidationError("asp: dimensions must be positive");
  if (w.size() != hidden * input_dim || b.size() != hidden || v.size() != hidden)
    throw ValidationError("asp: parameter shapes inconsistent");
  for (const auto* vec : {&w, &b, &v})
    for (double x : *vec)
      if (!std::isfinite(x)) throw ValidationError("asp: non-finite parameter");
}

std::vector<double> gsp_pool(const FeatureMap& x) {
  x.validate();
  const std::size_t dim = x.channels * x.freq_bins;
  const double inv_t = 1.0 / static_cast<double>(x.frames);
  std::vector<double> out(2 * dim, 0.0);
  for (std::size_t d = 0; d < dim; ++d) {
    double mean = 0.0;
    for (std::size_t t = 0; t < x.frames; ++t) mean += frame_value(x, d, t);
    mean *= inv_t;
    double var = 0.0;
    for (std::size_t t = 0; t < x.frames; ++t) {
      const double dev = frame_value(x, d, t) - mean;
      var += dev * dev;
    }
    out[d] = mean;
    out[dim + d] = std::sqrt(var * inv_t);
  }
  return out;
}

std::vector<double> asp_attention(const FeatureMap& x, const ASPParams& p) {
  x.validate();
  p.validate();
  if (p.input_dim != x.channels * x.freq_bins)
    throw ValidationError("asp: parameters sized for a different C*F");
  return asp_forward_cached(x, p).alpha;
}

std::vector<double> asp_pool(const FeatureMap& x, const ASPParams& p) {
  x.validate();
  p.validate();
  if (p.input_dim != x.channels * x.freq_bins)
    throw ValidationError("asp: parameters sized for a different C*F");
  const ASPCache c = asp_forward_cached(x, p);
  std::vector<double> out(2 * c.dim, 0.0);
  for (std::size_t d = 0; d < c.dim; ++d) {
    out[d] = c.wmean[d];
    // round-off can push the weighted variance slightly negative
    out[c.dim + d] = std::sqrt(std::max(c.wsq[d] - c.wmean[d] * c.wmean[d], 0.0));
  }
  return out;
}

FeatureMap gsp_backward(const FeatureMap& x, const std::vector<double>& upstream) {
  x.validate();
  const std::size_t dim = x.channels * x.freq_bins;
  if (upstream.size() != 2 * dim)
    throw ValidationError("gsp backward: upstream length must be 2*C*F");
  const double inv_t = 1.0 / static_cast<double>(x.frames);
  FeatureMap grad(x.channels, x.freq_bins, x.frames);
  for (std::size_t d = 0; d < dim; ++d) {
    double mean = 0.0;
    for (std::size_t t = 0; t < x.frames; ++t) mean += frame_value(x, d, t);
    mean *= inv_t;
    double var = 0.0;
    for (std::size_t t = 0; t < x.frames; ++t) {
      const double dev = frame_value(x, d, t) - mean;
      var += dev * dev;
    }
    const double stddev = std::sqrt(var * inv_t);
    const double du_mean = upstream[d];
    const double du_std = upstream[dim + d];
    for (std::size_t t = 0; t < x.frames; ++t) {
      double g = du_mean * inv_t;
      if (stddev > 0.0)
        g += du_std * (frame_value(x, d, t) - mean) * inv_t / stddev;
      grad.values[d * x.frames + t] = g;
    }
  }
  return grad;
}

ASPBackward asp_backward(const FeatureMap& x, const ASPParams& p,
                         const std::vector<double>& upstream) {
  x.validate();
  p.validate();
  const std::size_t dim = x.channels * x.freq_bins;
  const std::size_t frames = x.frames;
  const std::size_t h = p.hidden;
  if (p.input_dim != dim)
    throw ValidationError("asp backward: parameters sized for a different C*F");
  if (upstream.size() != 2 * dim)
    throw ValidationError("asp backward: upstream length must be 2*C*F");

  const ASPCache c = asp_forward_cached(x, p);

  // split the upstream into mean-part and a moment-part via the sqrt chain
  std::vector<double> dmean(dim), dsq(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const double q = c.wsq[d] - c.wmean[d] * c.wmean[d];
    dmean[d] = upstream[d];
    dsq[d] = 0.0;
    if (q > 0.0) {
      const double stddev = std::sqrt(q);
      dsq[d] = upstream[dim + d] / (2.0 * stddev);
      dmean[d] -= upstream[dim + d] * c.wmean[d] / stddev;
    }
  }

  std::vector<double> dalpha(frames, 0.0);
  for (std::size_t t = 0; t < frames; ++t) {
    double acc = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double v = frame_value(x, d, t);
      acc += dmean[d] * v + dsq[d] * v * v;
    }
    dalpha[t] = acc;
  }
  double dot = 0.0;
  for (std::size_t t = 0; t < frames; ++t) dot += c.alpha[t] * dalpha[t];

  ASPBackward result;
  result.input_grad = FeatureMap(x.channels, x.freq_bins, x.frames);
  ASPParams grad = ASPParams::zeros(dim, h);

  for (std::size_t t = 0; t < frames; ++t) {
    const double dscore = c.alpha[t] * (dalpha[t] - dot);
    for (std::size_t d = 0; d < dim; ++d) {
      const double v = frame_value(x, d, t);
      result.input_grad.values[d * frames + t] =
          c.alpha[t] * (dmean[d] + 2.0 * v * dsq[d]);
    }
    for (std::size_t j = 0; j < h; ++j) {
      const double u = c.tanh_out[t * h + j];
      grad.v[j] += dscore * u;
      const double dpre = dscore * p.v[j] * (1.0 - u * u);
      grad.b[j] += dpre;
      if (dpre == 0.0) continue;
      for (std::size_t d = 0; d < dim; ++d) {
        const double v = frame_value(x, d, t);
        grad.w[j * dim + d] += dpre * v;
        result.input_grad.values[d * frames + t] += p.w[j * dim + d] * dpre;
      }
    }
  }
  result.param_grad = flatten(grad);
  return result;
}

std::vector<double> flatten(const ASPParams& p) {
  std::vector<double> flat;
  flat.reserve(p.param_count());
  flat.insert(flat.end(), p.w.begin(), p.w.end());
  flat.insert(flat.end(), p.b.begin(), p.b.end());
  flat.insert(flat.end(), p.v.begin(), p.v.end());
  return flat;
}

void unflatten(const std::vector<double>& flat, ASPParams* p) {
  if (flat.size() != p->param_count())
    throw ValidationError("asp: flattened parameter vector has wrong length");
  const double* src = flat.data();
  p->w.assign(src, src + p->hidden * p->input_dim);
  src += p->hidden * p->input_dim;
  p->b.assign(src, src + p->hidden);
  src += p->hidden;
  p->v.assign(src, src + p->hidden);
}

void save_asp_params(const ASPParams& p, const std::string& path) {
  p.validate();
  std::string out = "asp input_dim " + std::to_string(p.input_dim) + " hidden " +
                    std::to_string(p.hidden) + "\n";
  auto tensor = [&out](const char* label, std::size_t rows, std::size_t cols,
                       const std::vector<double>& values) {
    out += label;
    out += ' ' + std::to_string(rows) + ' ' + std::to_string(cols);
    for (double v : values) {
      out += ' ';
      out += io_detail::format_real9(v);
    }
    out += '\n';
  };
  tensor("w", p.hidden, p.input_dim, p.w);
  tensor("b", 1, p.hidden, p.b);
  tensor("v", 1, p.hidden, p.v);
  io_detail::write_file(path, out);
}

ASPParams load_asp_params(const std::string& path) {
  using io_detail::malformed;
  using io_detail::parse_int;
  using io_detail::parse_real;
  const auto lines = io_detail::read_lines(path);
  if (lines.size() != 4) throw ValidationError(path + ": expected 4 lines");
  const auto header = io_detail::split_fields(lines[0]);
  if (header.size() != 5 || header[0] != "asp" || header[1] != "input_dim" ||
      header[3] != "hidden")
    malformed(path, 1, "expected 'asp input_dim D hidden H'");
  ASPParams p;
  p.input_dim = static_cast<std::size_t>(parse_int(header[2], path, 1));
  p.hidden = static_cast<std::size_t>(parse_int(header[4], path, 1));
  auto tensor = [&](std::size_t line_idx, const char* label,
                    std::size_t count) -> std::vector<double> {
    const auto fields = io_detail::split_fields(lines[line_idx]);
    if (fields.size() != 3 + count || fields[0] != label)
      malformed(path, line_idx + 1, std::string("expected tensor '") + label + "'");
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i)
      values[i] = parse_real(fields[3 + i], path, line_idx + 1);
    return values;
  };
  p.w = tensor(1, "w", p.hidden * p.input_dim);
  p.b = tensor(2, "b", p.hidden);
  p.v = tensor(3, "v", p.hidden);
  p.validate();
  return p;
}

}  // namespace svkit
