// include/svkit/scoring.h

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

#ifndef SVKIT_SCORING_H_
#define SVKIT_SCORING_H_

#include <vector>

#include "svkit/corpus.h"

// Trial scoring and evaluation. Decisions are half-open: accept iff
// score >= threshold. The operating-point sweep visits every distinct score
// plus one sentinel just above the maximum, so accept-all and reject-all are
// always covered.

namespace svkit {

/// Cosine similarity; throws on zero-norm inputs.
double cosine_score(const Embedding& a, const Embedding& b);

/// One cosine score per trial, trial order preserved. All trial sides must
/// exist in the manifest.
ScoreSet score_trials(const CorpusManifest& manifest, const TrialList& trials,
                      int threads = 1);

/// Adaptive symmetric score normalization settings. The cohort holds imposter
/// embeddings (utterance- or speaker-level, supplied by the caller); the
/// top_k best-matching cohort scores per side form the normalization stats.
struct ASNormConfig {
  std::vector<Embedding> cohort;
  std::size_t top_k = 400;

  void validate() const;
};

// 0.5 * ((raw - mu_e)/sigma_e + (raw - mu_t)/sigma_t) where mu/sigma are the
// mean and population std of the top_k largest cohort cosines against the
// enroll and test embedding respectively. Symmetric in (enroll, test).
double asnorm(double raw, const Embedding& enroll, const Embedding& test,
              const ASNormConfig& cfg);

/// AS-Norm applied to a whole score set (one raw score per trial).
ScoreSet asnorm_scores(const CorpusManifest& manifest, const TrialList& trials,
                       const ScoreSet& raw, const ASNormConfig& cfg, int threads = 1);

/// Detection cost parameters.
struct DCFConfig {
  double p_target = 0.01;
  double c_fa = 1.0;
  double c_miss = 1.0;

  void validate() const;
};

struct EERResult {
  double eer = 0.0;
  double threshold = 0.0;
};

// Equal error rate from a threshold sweep over observed scores. An exact
// FAR == FRR point is returned directly; otherwise the two sweep points
// straddling the crossing are interpolated linearly.
EERResult compute_eer(const ScoreSet& scores, const TrialList& trials);

/// Minimum normalized detection cost over the same sweep; always in [0, 1].
double compute_mindcf(const ScoreSet& scores, const TrialList& trials,
                      const DCFConfig& cfg);

}  // namespace svkit

#endif  // SVKIT_SCORING_H_
