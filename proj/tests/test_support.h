// tests/test_support.h

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

#ifndef SVKIT_TESTS_TEST_SUPPORT_H_
#define SVKIT_TESTS_TEST_SUPPORT_H_

#include <atomic>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "svkit/attention.h"
#include "svkit/feature_map.h"

namespace svtest {

// Self-deleting scratch directory for file-format tests.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("svkit_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline double normal(std::mt19937_64& rng) {
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

inline svkit::FeatureMap random_map(std::mt19937_64& rng, std::size_t c, std::size_t f,
                                    std::size_t t) {
  svkit::FeatureMap x(c, f, t);
  for (double& v : x.values) v = normal(rng);
  return x;
}

inline std::vector<double> random_params(std::mt19937_64& rng, std::size_t n,
                                         double scale = 0.5) {
  std::vector<double> p(n);
  for (double& v : p) v = uniform(rng, -scale, scale);
  return p;
}

inline svkit::GateMlp random_mlp(std::mt19937_64& rng, std::size_t size,
                                 std::size_t reduction) {
  svkit::GateMlp p = svkit::GateMlp::zeros(size, reduction);
  svkit::unflatten(random_params(rng, p.param_count()), 0, &p);
  return p;
}

}  // namespace svtest

#endif  // SVKIT_TESTS_TEST_SUPPORT_H_
