// include/svkit/inld.h

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

#ifndef SVKIT_INLD_H_
#define SVKIT_INLD_H_

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "svkit/corpus.h"

// Iterative noisy-label detection: score every utterance against its
// speaker's leave-one-video-out centroid, reject below a per-round
// threshold, rebuild, repeat until few utterances fall below the threshold.

namespace svkit {

enum class SimilarityMode {
  kPooledCentroid,    // cosine against the pooled mean of all other-video utterances
  kPerVideoAverage,   // mean of cosines against each other video's own centroid
};

struct INLDConfig {
  // Per-round thresholds; rounds beyond the list reuse the last entry.
  std::vector<double> thresholds{0.4, 0.5};
  int max_rounds = 5;
  // Stop once a round rejects less than this fraction of the manifest it scored.
  double stop_fraction = 0.001;
  SimilarityMode similarity_mode = SimilarityMode::kPooledCentroid;
  int threads = 1;

  void validate() const;
};

struct SimilarityEntry {
  double similarity = 0.0;
  // False for utterances with no reference to compare against (a speaker's
  // only utterance); such utterances are never rejected.
  bool usable = false;
};

/// One entry per manifest utterance.
struct SimilarityReport {
  std::unordered_map<std::string, SimilarityEntry> entries;
};

// Mean of the speaker's embeddings over all videos other than `video`.
// Throws ValidationError when the speaker has no other video (callers fall
// back to leave-one-utterance-out within the video; see score_corpus).
Embedding loo_centroid(const CorpusManifest& manifest, const std::string& speaker,
                       const std::string& video);

/// Similarity of every utterance to its speaker's reference, per the
/// configured mode. Single-video speakers fall back to leave-one-utterance-out
/// centroids within the video; a speaker's only utterance is flagged unusable.
SimilarityReport score_corpus(const CorpusManifest& manifest, const INLDConfig& cfg);

struct RejectOutcome {
  std::vector<std::string> kept_ids;  // manifest order
  std::vector<Rejection> rejected;    // manifest order
};

/// Rejects exactly the usable utterances with similarity < threshold.
RejectOutcome reject_below(const CorpusManifest& manifest, const SimilarityReport& report,
                           double threshold, int round);

struct RoundStats {
  int round = 0;
  double threshold = 0.0;
  std::size_t rejected = 0;
  std::size_t remaining = 0;
};

struct INLDResult {
  CorpusManifest final_manifest;
  RejectionList rejections;
  std::vector<RoundStats> rounds;
};

// Hook for re-deriving similarities between rounds (e.g. from a retrained
// embedding model). The default recomputes centroid similarities on the
// cleaned manifest.
using RescoreFn = std::function<SimilarityReport(const CorpusManifest&)>;

/// Runs score -> reject rounds until the rejected fraction drops below
/// stop_fraction or max_rounds is reached. Throws if a round empties the
/// manifest (over-aggressive threshold).
INLDResult run_inld(const CorpusManifest& manifest, const INLDConfig& cfg,
                    const RescoreFn& rescore = nullptr);

/// Per-round stats as tab-separated text: round, threshold, rejected, remaining.
void save_round_stats(const std::vector<RoundStats>& rounds, const std::string& path);

}  // namespace svkit

#endif  // SVKIT_INLD_H_
