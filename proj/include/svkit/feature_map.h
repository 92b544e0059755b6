// include/svkit/feature_map.h

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

#ifndef SVKIT_FEATURE_MAP_H_
#define SVKIT_FEATURE_MAP_H_

#include <cmath>
#include <cstddef>
#include <vector>

#include "svkit/common.h"

namespace svkit {

// Dense channel x frequency x time activation tensor. Storage is
// channel-major: values[(c * freq_bins + f) * frames + t]. All kernels in
// this library agree on that layout, so results are bit-reproducible.
template <typename Real>
struct BasicFeatureMap {
  std::size_t channels = 0;
  std::size_t freq_bins = 0;
  std::size_t frames = 0;
  std::vector<Real> values;

  BasicFeatureMap() = default;
  BasicFeatureMap(std::size_t c, std::size_t f, std::size_t t, Real fill = Real(0))
      : channels(c), freq_bins(f), frames(t), values(c * f * t, fill) {}

  std::size_t size() const { return channels * freq_bins * frames; }

  std::size_t index(std::size_t c, std::size_t f, std::size_t t) const {
    return (c * freq_bins + f) * frames + t;
  }

  Real& at(std::size_t c, std::size_t f, std::size_t t) {
    return values[index(c, f, t)];
  }
  Real at(std::size_t c, std::size_t f, std::size_t t) const {
    return values[index(c, f, t)];
  }

  bool same_shape(const BasicFeatureMap& o) const {
    return channels == o.channels && freq_bins == o.freq_bins && frames == o.frames;
  }

  /// Throws ValidationError unless C,F,T >= 1, the value count matches, and
  /// every entry is finite.
  void validate() const {
    if (channels == 0 || freq_bins == 0 || frames == 0)
      throw ValidationError("feature map: all axes must be >= 1");
    if (values.size() != size())
      throw ValidationError("feature map: value count does not match shape");
    for (Real v : values)
      if (!std::isfinite(v))
        throw ValidationError("feature map: non-finite value");
  }
};

using FeatureMap = BasicFeatureMap<double>;
using FeatureMapF = BasicFeatureMap<float>;

inline FeatureMapF to_single(const FeatureMap& x) {
  FeatureMapF out(x.channels, x.freq_bins, x.frames);
  for (std::size_t i = 0; i < x.values.size(); ++i)
    out.values[i] = static_cast<float>(x.values[i]);
  return out;
}

inline FeatureMap to_double(const FeatureMapF& x) {
  FeatureMap out(x.channels, x.freq_bins, x.frames);
  for (std::size_t i = 0; i < x.values.size(); ++i)
    out.values[i] = static_cast<double>(x.values[i]);
  return out;
}

}  // namespace svkit

#endif  // SVKIT_FEATURE_MAP_H_
