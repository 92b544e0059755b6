// include/svkit/common.h

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

#ifndef SVKIT_COMMON_H_
#define SVKIT_COMMON_H_

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace svkit {

/// Bad data or bad configuration: mapped to exit code 1 by the CLI.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Unreadable / unwritable files: mapped to exit code 2 by the CLI.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Logistic function, evaluated on the non-overflowing branch.
template <typename Real>
inline Real sigmoid(Real x) {
  if (x >= Real(0)) {
    return Real(1) / (Real(1) + std::exp(-x));
  }
  const Real e = std::exp(x);
  return e / (Real(1) + e);
}

/// SplitMix64 step; used to derive independent per-worker seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Runs fn(begin, end) over a partition of [0, n) on up to num_threads
// threads. Each item must write only to its own output slot; with that
// discipline results do not depend on the thread count. The first exception
// thrown by a worker is rethrown on the calling thread.
void parallel_for(std::size_t n, int num_threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace svkit

#endif  // SVKIT_COMMON_H_
