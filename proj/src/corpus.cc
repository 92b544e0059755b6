// src/corpus.cc

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

#include "svkit/corpus.h"

#include <cmath>
#include <unordered_set>

namespace svkit {

double Embedding::norm() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return std::sqrt(s);
}

void Embedding::validate() const {
  if (values.empty()) throw ValidationError("embedding: empty vector");
  for (double v : values)
    if (!std::isfinite(v)) throw ValidationError("embedding: non-finite value");
  if (norm() <= 0.0) throw ValidationError("embedding: zero norm");
}

void CorpusManifest::add(UtteranceRecord rec, Embedding emb) {
  if (rec.utt_id.empty() || rec.speaker_id.empty() || rec.video_id.empty())
    throw ValidationError("manifest: empty id field");
  if (index_.count(rec.utt_id))
    throw ValidationError("manifest: duplicate utterance id '" + rec.utt_id + "'");
  emb.validate();
  if (!embeddings_.empty() && emb.dim() != embeddings_.front().dim())
    throw ValidationError("manifest: inconsistent embedding dimension for '" +
                          rec.utt_id + "'");
  index_.emplace(rec.utt_id, records_.size());
  records_.push_back(std::move(rec));
  embeddings_.push_back(std::move(emb));
}

const Embedding& CorpusManifest::embedding(const std::string& utt_id) const {
  auto it = index_.find(utt_id);
  if (it == index_.end())
    throw ValidationError("manifest: unknown utterance id '" + utt_id + "'");
  return embeddings_[it->second];
}

std::size_t CorpusManifest::position(const std::string& utt_id) const {
  auto it = index_.find(utt_id);
  if (it == index_.end())
    throw ValidationError("manifest: unknown utterance id '" + utt_id + "'");
  return it->second;
}

CorpusManifest CorpusManifest::subset(const std::vector<std::string>& utt_ids) const {
  std::unordered_set<std::string> keep(utt_ids.begin(), utt_ids.end());
  CorpusManifest out;
  for (std::size_t i = 0; i < records_.size(); ++i)
    if (keep.count(records_[i].utt_id)) out.add(records_[i], embeddings_[i]);
  return out;
}

void CorpusManifest::validate() const {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    embeddings_[i].validate();
    if (embeddings_[i].dim() != dim())
      throw ValidationError("manifest: inconsistent embedding dimension");
  }
}

void TrialList::validate() const {
  bool has_target = false, has_nontarget = false;
  for (const Trial& t : trials) {
    if (t.label != 0 && t.label != 1)
      throw ValidationError("trial list: invalid label");
    (t.label == 1 ? has_target : has_nontarget) = true;
  }
  if (!has_target || !has_nontarget)
    throw ValidationError("trial list: needs at least one target and one nontarget");
}

void RejectionList::validate() const {
  std::unordered_set<std::string> seen;
  for (const Rejection& r : entries) {
    if (!seen.insert(r.utt_id).second)
      throw ValidationError("rejection list: duplicate utterance id '" + r.utt_id + "'");
    if (r.round <= 0) throw ValidationError("rejection list: round must be positive");
    if (!(r.similarity >= -1.0 && r.similarity <= 1.0))
      throw ValidationError("rejection list: similarity outside [-1, 1]");
  }
}

}  // namespace svkit
