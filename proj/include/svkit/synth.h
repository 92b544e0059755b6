// include/svkit/synth.h

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

#ifndef SVKIT_SYNTH_H_
#define SVKIT_SYNTH_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "svkit/corpus.h"
#include "svkit/scoring.h"

// Synthetic corpora with known noise, plus slow-but-simple reference
// implementations used to cross-check the production kernels: an exact
// numerical minimizer for the attention energy and brute-force metric sweeps.
//
// Randomness is mt19937_64 with uniform doubles taken as (x >> 11) * 2^-53
// and normals from Box-Muller, so corpora reproduce bit-exactly across
// platforms. Per-speaker streams are seeded with splitmix64(seed mixed with
// the speaker index), making generation order-independent.

namespace svkit {

struct SynthSpec {
  std::size_t num_speakers = 0;
  std::size_t videos_per_speaker = 0;
  std::size_t utts_per_video = 0;
  std::size_t dim = 0;
  double spread = 0.1;  // intra-speaker angular noise scale
  std::uint64_t seed = 1;

  void validate() const;
};

/// Unit-norm embeddings clustered around one random direction per speaker:
/// utterance = normalize(mean + spread * gaussian). Deterministic in seed.
CorpusManifest gen_corpus(const SynthSpec& spec);

struct NoiseGroundTruth {
  struct Entry {
    bool is_noisy = false;
    std::string original_speaker;
  };
  std::unordered_map<std::string, Entry> entries;
};

enum class MislabelGranularity { kVideo, kUtterance };

struct MislabelResult {
  CorpusManifest manifest;
  NoiseGroundTruth truth;
};

// Reassigns round(rate * units) whole videos (or single utterances) to a
// uniformly chosen different speaker; embeddings are untouched. Throws when
// a speaker would lose all of its utterances.
MislabelResult inject_mislabels(const CorpusManifest& manifest, double rate,
                                MislabelGranularity granularity, std::uint64_t seed);

/// Ground-truth file: `utt_id is_noisy original_speaker` per line, in the
/// given manifest's order.
void save_ground_truth(const NoiseGroundTruth& truth, const CorpusManifest& manifest,
                       const std::string& path);
NoiseGroundTruth load_ground_truth(const std::string& path);

struct EnergyOracleResult {
  double energy = 0.0;
  double w = 0.0;
  double b = 0.0;
  int iterations = 0;
  double grad_norm = 0.0;
  bool converged = false;
};

// Minimum over (w, b) of the exact per-neuron energy
//   1/(M-1) sum_{i != t} (-1 - (w x_i + b))^2 + (1 - (w x_t + b))^2 + lambda w^2
// found by damped Newton iteration, accurate to ~1e-8 in the energy. This is
// the exclusive-statistics objective; the closed-form kernel uses inclusive
// channel statistics, so the two agree only up to O(1/M).
EnergyOracleResult oracle_numeric_energy(const std::vector<double>& channel,
                                         std::size_t target_index, double lambda);

// Brute-force metric references: recount FAR/FRR by scanning every score at
// every distinct threshold (plus a sentinel), then apply the same crossing
// definitions as the production implementations.
EERResult oracle_eer(const ScoreSet& scores, const TrialList& trials);
double oracle_min_dcf(const ScoreSet& scores, const TrialList& trials,
                      const DCFConfig& cfg);

}  // namespace svkit

#endif  // SVKIT_SYNTH_H_
