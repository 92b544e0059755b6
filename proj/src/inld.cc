// src/inld.cc

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

#include "svkit/inld.h"

#include <cmath>
#include <cstdio>

#include "svkit/common.h"
#include "svkit/scoring.h"
#include "svkit/text_io.h"

namespace svkit {

void INLDConfig::validate() const {
  if (thresholds.empty()) throw ValidationError("inld: empty threshold schedule");
  for (double t : thresholds)
    if (!(t >= -1.0 && t <= 1.0))
      throw ValidationError("inld: thresholds must lie in [-1, 1]");
  if (max_rounds <= 0) throw ValidationError("inld: max_rounds must be positive");
  if (!(stop_fraction >= 0.0 && stop_fraction < 1.0))
    throw ValidationError("inld: stop_fraction must lie in [0, 1)");
}

namespace {

struct VideoGroup {
  std::vector<std::size_t> positions;  // record indices, manifest order
  std::vector<double> sum;             // embedding sum over the video
};

struct SpeakerGroup {
  std::vector<std::string> video_ids;  // first-appearance order
  std::vector<VideoGroup> videos;
  std::vector<double> total_sum;
  std::size_t total_count = 0;
};

struct CorpusIndex {
  std::vector<std::string> speaker_ids;  // first-appearance order
  std::vector<SpeakerGroup> speakers;
};

CorpusIndex build_index(const CorpusManifest& manifest) {
  CorpusIndex index;
  std::unordered_map<std::string, std::size_t> speaker_pos;
  const std::size_t dim = manifest.dim();
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const UtteranceRecord& rec = manifest.record_at(i);
    auto [it, inserted] = speaker_pos.emplace(rec.speaker_id, index.speakers.size());
    if (inserted) {
      index.speaker_ids.push_back(rec.speaker_id);
      index.speakers.emplace_back();
      index.speakers.back().total_sum.assign(dim, 0.0);
    }
    SpeakerGroup& spk = index.speakers[it->second];

    std::size_t v = 0;
    for (; v < spk.video_ids.size(); ++v)
      if (spk.video_ids[v] == rec.video_id) break;
    if (v == spk.video_ids.size()) {
      spk.video_ids.push_back(rec.video_id);
      spk.videos.emplace_back();
      spk.videos.back().sum.assign(dim, 0.0);
    }

    const Embedding& emb = manifest.embedding_at(i);
    VideoGroup& vid = spk.videos[v];
    vid.positions.push_back(i);
    for (std::size_t d = 0; d < dim; ++d) vid.sum[d] += emb.values[d];
    for (std::size_t d = 0; d < dim; ++d) spk.total_sum[d] += emb.values[d];
    spk.total_count += 1;
  }
  return index;
}

// Cosine against a raw (unnormalized) centroid vector; returns false when the
// centroid is degenerate (vanishing norm).
bool cosine_vs_centroid(const Embedding& emb, const std::vector<double>& centroid,
                        double* out) {
  double dot = 0.0, ne = 0.0, nc = 0.0;
  for (std::size_t d = 0; d < emb.dim(); ++d) {
    dot += emb.values[d] * centroid[d];
    ne += emb.values[d] * emb.values[d];
    nc += centroid[d] * centroid[d];
  }
  if (nc <= 0.0) return false;
  *out = dot / (std::sqrt(ne) * std::sqrt(nc));
  return true;
}

// Pooled mean over all of the speaker's videos except `skip_video`; count 0
// means there is nothing to average.
std::vector<double> other_video_mean(const SpeakerGroup& spk, std::size_t skip_video,
                                     std::size_t dim, std::size_t* count) {
  const VideoGroup& vid = spk.videos[skip_video];
  *count = spk.total_count - vid.positions.size();
  std::vector<double> mean(dim, 0.0);
  if (*count == 0) return mean;
  for (std::size_t d = 0; d < dim; ++d)
    mean[d] = (spk.total_sum[d] - vid.sum[d]) / static_cast<double>(*count);
  return mean;
}

// Leave-one-utterance-out mean within one video (single-video speakers).
std::vector<double> louo_mean(const VideoGroup& vid, const Embedding& emb,
                              std::size_t dim, std::size_t* count) {
  *count = vid.positions.size() - 1;
  std::vector<double> mean(dim, 0.0);
  if (*count == 0) return mean;
  for (std::size_t d = 0; d < dim; ++d)
    mean[d] = (vid.sum[d] - emb.values[d]) / static_cast<double>(*count);
  return mean;
}

SimilarityEntry score_utterance(const CorpusManifest& manifest, const SpeakerGroup& spk,
                                std::size_t video_idx, std::size_t position,
                                SimilarityMode mode) {
  const std::size_t dim = manifest.dim();
  const Embedding& emb = manifest.embedding_at(position);
  SimilarityEntry entry;

  const bool single_video = spk.videos.size() == 1;
  if (single_video) {
    std::size_t count = 0;
    const auto mean = louo_mean(spk.videos[video_idx], emb, dim, &count);
    if (count == 0) return entry;  // speaker's only utterance: unusable
    double sim = 0.0;
    if (!cosine_vs_centroid(emb, mean, &sim)) return entry;
    entry.similarity = sim;
    entry.usable = true;
    return entry;
  }

  if (mode == SimilarityMode::kPooledCentroid) {
    std::size_t count = 0;
    const auto mean = other_video_mean(spk, video_idx, dim, &count);
    double sim = 0.0;
    if (!cosine_vs_centroid(emb, mean, &sim)) return entry;
    entry.similarity = sim;
    entry.usable = true;
    return entry;
  }

  // per-video-average: mean of cosines against each other video's centroid
  double acc = 0.0;
  std::size_t used = 0;
  for (std::size_t v = 0; v < spk.videos.size(); ++v) {
    if (v == video_idx) continue;
    const VideoGroup& other = spk.videos[v];
    std::vector<double> mean(dim, 0.0);
    for (std::size_t d = 0; d < dim; ++d)
      mean[d] = other.sum[d] / static_cast<double>(other.positions.size());
    double sim = 0.0;
    if (!cosine_vs_centroid(emb, mean, &sim)) return SimilarityEntry{};
    acc += sim;
    used += 1;
  }
  entry.similarity = acc / static_cast<double>(used);
  entry.usable = true;
  return entry;
}

}  // namespace

Embedding loo_centroid(const CorpusManifest& manifest, const std::string& speaker,
                       const std::string& video) {
  const std::size_t dim = manifest.dim();
  std::vector<double> sum(dim, 0.0);
  std::size_t count = 0;
  bool speaker_seen = false;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const UtteranceRecord& rec = manifest.record_at(i);
    if (rec.speaker_id != speaker) continue;
    speaker_seen = true;
    if (rec.video_id == video) continue;
    const Embedding& emb = manifest.embedding_at(i);
    for (std::size_t d = 0; d < dim; ++d) sum[d] += emb.values[d];
    count += 1;
  }
  if (!speaker_seen)
    throw ValidationError("loo centroid: unknown speaker '" + speaker + "'");
  if (count == 0)
    throw ValidationError("loo centroid: speaker '" + speaker +
                          "' has no utterance outside video '" + video +
                          "'; leave-one-utterance-out fallback required");
  Embedding centroid;
  centroid.values.resize(dim);
  for (std::size_t d = 0; d < dim; ++d)
    centroid.values[d] = sum[d] / static_cast<double>(count);
  return centroid;
}

SimilarityReport score_corpus(const CorpusManifest& manifest, const INLDConfig& cfg) {
  cfg.validate();
  const CorpusIndex index = build_index(manifest);

  std::vector<SimilarityEntry> slots(manifest.size());
  parallel_for(index.speakers.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const SpeakerGroup& spk = index.speakers[s];
      for (std::size_t v = 0; v < spk.videos.size(); ++v)
        for (std::size_t pos : spk.videos[v].positions)
          slots[pos] = score_utterance(manifest, spk, v, pos, cfg.similarity_mode);
    }
  });

  SimilarityReport report;
  report.entries.reserve(manifest.size());
  for (std::size_t i = 0; i < manifest.size(); ++i)
    report.entries.emplace(manifest.record_at(i).utt_id, slots[i]);
  return report;
}

RejectOutcome reject_below(const CorpusManifest& manifest, const SimilarityReport& report,
                           double threshold, int round) {
  RejectOutcome outcome;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const std::string& utt = manifest.record_at(i).utt_id;
    auto it = report.entries.find(utt);
    if (it == report.entries.end())
      throw ValidationError("reject: report does not cover utterance '" + utt + "'");
    const SimilarityEntry& entry = it->second;
    if (entry.usable && entry.similarity < threshold)
      outcome.rejected.push_back({utt, round, entry.similarity});
    else
      outcome.kept_ids.push_back(utt);
  }
  return outcome;
}

INLDResult run_inld(const CorpusManifest& manifest, const INLDConfig& cfg,
                    const RescoreFn& rescore) {
  cfg.validate();
  INLDResult result;
  result.final_manifest = manifest;
  if (manifest.empty()) return result;

  for (int round = 1; round <= cfg.max_rounds; ++round) {
    const std::size_t k = std::min<std::size_t>(round - 1, cfg.thresholds.size() - 1);
    const double threshold = cfg.thresholds[k];
    const std::size_t before = result.final_manifest.size();

    const SimilarityReport report = rescore ? rescore(result.final_manifest)
                                            : score_corpus(result.final_manifest, cfg);
    RejectOutcome outcome = reject_below(result.final_manifest, report, threshold, round);
    result.rounds.push_back({round, threshold, outcome.rejected.size(),
                             outcome.kept_ids.size()});
    for (Rejection& r : outcome.rejected)
      result.rejections.entries.push_back(std::move(r));

    if (outcome.kept_ids.empty())
      throw ValidationError("inld: every utterance rejected in round " +
                            std::to_string(round) + " (threshold too aggressive)");
    if (!outcome.rejected.empty())
      result.final_manifest = result.final_manifest.subset(outcome.kept_ids);

    const double fraction =
        static_cast<double>(result.rounds.back().rejected) / static_cast<double>(before);
    if (fraction < cfg.stop_fraction) break;
  }
  return result;
}

void save_round_stats(const std::vector<RoundStats>& rounds, const std::string& path) {
  std::string out;
  char buf[128];
  for (const RoundStats& r : rounds) {
    std::snprintf(buf, sizeof(buf), "%d\t%.6f\t%zu\t%zu\n", r.round, r.threshold,
                  r.rejected, r.remaining);
    out += buf;
  }
  io_detail::write_file(path, out);
}

}  // namespace svkit
