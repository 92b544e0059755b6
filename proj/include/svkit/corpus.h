// include/svkit/corpus.h

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

#ifndef SVKIT_CORPUS_H_
#define SVKIT_CORPUS_H_

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "svkit/common.h"

namespace svkit {

/// Fixed-dimension speaker embedding for one utterance.
struct Embedding {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  double norm() const;
  /// Requires a nonzero, finite vector (cosine scoring needs norm > 0).
  void validate() const;
};

struct UtteranceRecord {
  std::string utt_id;
  std::string speaker_id;
  std::string video_id;
};

// A set of utterance records joined to their embeddings. Records keep
// insertion order; utterance ids are unique and all embeddings share one
// dimension. Instances are immutable once built (add() is only called while
// assembling), so concurrent reads are safe.
class CorpusManifest {
 public:
  CorpusManifest() = default;

  /// Appends one record. Throws ValidationError on duplicate utt_id, empty
  /// id fields, dimension mismatch, or an invalid embedding.
  void add(UtteranceRecord rec, Embedding emb);

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  /// Embedding dimension, or 0 for an empty manifest.
  std::size_t dim() const { return embeddings_.empty() ? 0 : embeddings_.front().dim(); }

  const std::vector<UtteranceRecord>& records() const { return records_; }
  const UtteranceRecord& record_at(std::size_t i) const { return records_[i]; }
  const Embedding& embedding_at(std::size_t i) const { return embeddings_[i]; }

  bool contains(const std::string& utt_id) const { return index_.count(utt_id) != 0; }
  /// Throws ValidationError naming the id when absent.
  const Embedding& embedding(const std::string& utt_id) const;
  std::size_t position(const std::string& utt_id) const;

  /// New manifest holding the given utterances, in this manifest's order.
  CorpusManifest subset(const std::vector<std::string>& utt_ids) const;

  void validate() const;

 private:
  std::vector<UtteranceRecord> records_;
  std::vector<Embedding> embeddings_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// One verification trial: label 1 = same speaker, 0 = different.
struct Trial {
  int label = 0;
  std::string enroll_utt;
  std::string test_utt;
};

struct TrialList {
  std::vector<Trial> trials;

  /// At least one target and one nontarget are required for error metrics.
  void validate() const;
};

struct ScoreEntry {
  std::string enroll_utt;
  std::string test_utt;
  double score = 0.0;
};

/// One score per trial, in trial order.
struct ScoreSet {
  std::vector<ScoreEntry> scores;
};

struct Rejection {
  std::string utt_id;
  int round = 0;
  double similarity = 0.0;
};

/// Utterances removed by noisy-label detection; each utt_id appears once.
struct RejectionList {
  std::vector<Rejection> entries;

  void validate() const;
};

}  // namespace svkit

#endif  // SVKIT_CORPUS_H_
