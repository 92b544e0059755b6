// src/synth.cc

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

#include "svkit/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>

#include "svkit/common.h"
#include "svkit/text_io.h"

namespace svkit {

namespace {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform
// (std::uniform_real_distribution is not portable across standard libraries).
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller on explicitly constructed uniforms.
class PortableNormal {
 public:
  explicit PortableNormal(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log stays finite
    const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform01(rng_);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::vector<double> unit_gaussian_vector(PortableNormal& gen, std::size_t dim) {
  std::vector<double> v(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      v[d] = gen.next();
      norm += v[d] * v[d];
    }
  } while (norm <= 0.0);
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

std::string zero_pad(std::size_t value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%0*zu", width, value);
  return buf;
}

}  // namespace

void SynthSpec::validate() const {
  if (num_speakers == 0 || videos_per_speaker == 0 || utts_per_video == 0 || dim == 0)
    throw ValidationError("synth: counts and dim must be positive");
  if (!(spread >= 0.0) || !std::isfinite(spread))
    throw ValidationError("synth: spread must be a nonnegative real");
}

CorpusManifest gen_corpus(const SynthSpec& spec) {
  spec.validate();
  CorpusManifest manifest;
  for (std::size_t s = 0; s < spec.num_speakers; ++s) {
    PortableNormal gen(splitmix64(spec.seed + 0x9e3779b97f4a7c15ULL * (s + 1)));
    const auto mean = unit_gaussian_vector(gen, spec.dim);
    const std::string speaker = "s" + zero_pad(s, 5);
    for (std::size_t v = 0; v < spec.videos_per_speaker; ++v) {
      const std::string video = speaker + "-v" + zero_pad(v, 3);
      for (std::size_t u = 0; u < spec.utts_per_video; ++u) {
        Embedding emb;
        emb.values.resize(spec.dim);
        double norm = 0.0;
        for (std::size_t d = 0; d < spec.dim; ++d) {
          emb.values[d] = mean[d] + spec.spread * gen.next();
          norm += emb.values[d] * emb.values[d];
        }
        norm = std::sqrt(norm);
        for (double& x : emb.values) x /= norm;
        manifest.add({video + "-u" + zero_pad(u, 3), speaker, video}, std::move(emb));
      }
    }
  }
  return manifest;
}

MislabelResult inject_mislabels(const CorpusManifest& manifest, double rate,
                                MislabelGranularity granularity, std::uint64_t seed) {
  if (!(rate >= 0.0 && rate < 1.0))
    throw ValidationError("mislabel: rate must lie in [0, 1)");

  // distinct speakers and (speaker, video) groups in first-appearance order
  std::vector<std::string> speakers;
  std::unordered_map<std::string, std::size_t> speaker_pos;
  std::vector<std::pair<std::string, std::string>> groups;  // (speaker, video)
  std::unordered_map<std::string, std::size_t> group_pos;   // key speaker|video
  std::vector<std::vector<std::size_t>> group_members;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const UtteranceRecord& rec = manifest.record_at(i);
    if (speaker_pos.emplace(rec.speaker_id, speakers.size()).second)
      speakers.push_back(rec.speaker_id);
    if (granularity == MislabelGranularity::kVideo) {
      const std::string key = rec.speaker_id + "\x1f" + rec.video_id;
      auto [it, inserted] = group_pos.emplace(key, groups.size());
      if (inserted) {
        groups.emplace_back(rec.speaker_id, rec.video_id);
        group_members.emplace_back();
      }
      group_members[it->second].push_back(i);
    } else {
      groups.emplace_back(rec.speaker_id, rec.video_id);
      group_members.push_back({i});
    }
  }
  if (speakers.size() < 2)
    throw ValidationError("mislabel: need at least 2 speakers");

  const auto flip_count =
      static_cast<std::size_t>(std::llround(rate * static_cast<double>(groups.size())));

  // deterministic partial Fisher-Yates over group indices
  std::mt19937_64 rng(splitmix64(seed));
  std::vector<std::size_t> order(groups.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = 0; i < flip_count; ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(order.size() - i));
    std::swap(order[i], order[std::min(j, order.size() - 1)]);
  }

  std::vector<std::string> new_speaker(manifest.size());
  for (std::size_t i = 0; i < manifest.size(); ++i)
    new_speaker[i] = manifest.record_at(i).speaker_id;

  NoiseGroundTruth truth;
  for (std::size_t i = 0; i < manifest.size(); ++i)
    truth.entries[manifest.record_at(i).utt_id] = {false,
                                                   manifest.record_at(i).speaker_id};

  for (std::size_t i = 0; i < flip_count; ++i) {
    const std::size_t g = order[i];
    const std::string& original = groups[g].first;
    // uniform over the other speakers
    std::size_t pick =
        static_cast<std::size_t>(uniform01(rng) * static_cast<double>(speakers.size() - 1));
    pick = std::min(pick, speakers.size() - 2);
    if (pick >= speaker_pos.at(original)) pick += 1;
    const std::string& target = speakers[pick];
    for (std::size_t pos : group_members[g]) {
      new_speaker[pos] = target;
      truth.entries[manifest.record_at(pos).utt_id] = {true, original};
    }
  }

  // every original speaker must keep at least one utterance
  std::unordered_map<std::string, std::size_t> remaining;
  for (const std::string& s : speakers) remaining[s] = 0;
  for (std::size_t i = 0; i < manifest.size(); ++i) remaining[new_speaker[i]] += 1;
  for (const std::string& s : speakers)
    if (remaining[s] == 0)
      throw ValidationError("mislabel: rate too high, speaker '" + s +
                            "' would lose all utterances");

  MislabelResult result;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    UtteranceRecord rec = manifest.record_at(i);
    rec.speaker_id = new_speaker[i];
    result.manifest.add(std::move(rec), manifest.embedding_at(i));
  }
  result.truth = std::move(truth);
  return result;
}

void save_ground_truth(const NoiseGroundTruth& truth, const CorpusManifest& manifest,
                       const std::string& path) {
  std::string out;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const std::string& utt = manifest.record_at(i).utt_id;
    auto it = truth.entries.find(utt);
    if (it == truth.entries.end())
      throw ValidationError("ground truth: missing entry for '" + utt + "'");
    io_detail::require_token(utt, "save ground truth");
    io_detail::require_token(it->second.original_speaker, "save ground truth");
    out += utt;
    out += it->second.is_noisy ? " 1 " : " 0 ";
    out += it->second.original_speaker;
    out += '\n';
  }
  io_detail::write_file(path, out);
}

NoiseGroundTruth load_ground_truth(const std::string& path) {
  using io_detail::malformed;
  const auto lines = io_detail::read_lines(path);
  NoiseGroundTruth truth;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = io_detail::split_fields(lines[i]);
    if (fields.size() != 3) malformed(path, i + 1, "expected 'utt is_noisy original'");
    if (fields[1] != "0" && fields[1] != "1")
      malformed(path, i + 1, "is_noisy must be 0 or 1");
    if (!truth.entries.emplace(fields[0], NoiseGroundTruth::Entry{fields[1] == "1", fields[2]})
             .second)
      malformed(path, i + 1, "duplicate utterance '" + fields[0] + "'");
  }
  return truth;
}

EnergyOracleResult oracle_numeric_energy(const std::vector<double>& channel,
                                         std::size_t target_index, double lambda) {
  const std::size_t m = channel.size();
  if (m < 2) throw ValidationError("energy oracle: need at least 2 neurons");
  if (target_index >= m) throw ValidationError("energy oracle: target out of range");
  if (!(lambda >= 0.0)) throw ValidationError("energy oracle: lambda must be >= 0");

  const double t = channel[target_index];
  const double inv = 1.0 / static_cast<double>(m - 1);

  auto energy_at = [&](double w, double b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == target_index) continue;
      const double r = -1.0 - (w * channel[i] + b);
      acc += r * r;
    }
    acc *= inv;
    const double rt = 1.0 - (w * t + b);
    return acc + rt * rt + lambda * w * w;
  };
  auto gradient_at = [&](double w, double b, double* gw, double* gb) {
    double sw = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == target_index) continue;
      const double r = w * channel[i] + b + 1.0;
      sw += r * channel[i];
      sb += r;
    }
    const double rt = w * t + b - 1.0;
    *gw = 2.0 * inv * sw + 2.0 * rt * t + 2.0 * lambda * w;
    *gb = 2.0 * inv * sb + 2.0 * rt;
  };

  // constant Hessian of the quadratic objective
  double hww = 2.0 * lambda + 2.0 * t * t, hwb = 2.0 * t, hbb = 2.0;
  double sx = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i == target_index) continue;
    sx += channel[i];
    sxx += channel[i] * channel[i];
  }
  hww += 2.0 * inv * sxx;
  hwb += 2.0 * inv * sx;
  hbb += 2.0 * inv * static_cast<double>(m - 1);

  EnergyOracleResult result;
  double w = 0.0, b = 0.0;
  double e = energy_at(w, b);
  double damping = 0.0;
  constexpr int kMaxIter = 100;
  for (int iter = 1; iter <= kMaxIter; ++iter) {
    double gw, gb;
    gradient_at(w, b, &gw, &gb);
    result.grad_norm = std::max(std::abs(gw), std::abs(gb));
    result.iterations = iter - 1;
    if (result.grad_norm <= 1e-10 * std::max(1.0, std::abs(e))) {
      result.converged = true;
      break;
    }
    // damped Newton step; increase damping until the energy decreases
    bool stepped = false;
    for (int attempt = 0; attempt < 60 && !stepped; ++attempt) {
      const double a11 = hww + damping, a22 = hbb + damping;
      const double det = a11 * a22 - hwb * hwb;
      if (det > 1e-300) {
        const double dw = (-gw * a22 + gb * hwb) / det;
        const double db = (gw * hwb - gb * a11) / det;
        const double en = energy_at(w + dw, b + db);
        if (en <= e) {
          w += dw;
          b += db;
          e = en;
          stepped = true;
          damping *= 0.25;
          break;
        }
      }
      damping = damping == 0.0 ? 1e-8 : damping * 10.0;
    }
    if (!stepped) break;  // no progress possible; report residual
  }
  result.energy = e;
  result.w = w;
  result.b = b;
  return result;
}

namespace {

// Naive recount of FAR/FRR at one threshold (accept iff score >= threshold).
void recount(const std::vector<double>& scores, const std::vector<int>& labels,
             double threshold, double* far, double* frr) {
  std::size_t fa = 0, nn = 0, miss = 0, nt = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] == 1) {
      nt += 1;
      if (scores[i] < threshold) miss += 1;
    } else {
      nn += 1;
      if (scores[i] >= threshold) fa += 1;
    }
  }
  *far = static_cast<double>(fa) / static_cast<double>(nn);
  *frr = static_cast<double>(miss) / static_cast<double>(nt);
}

std::vector<double> oracle_thresholds(const std::vector<double>& scores) {
  std::set<double> distinct(scores.begin(), scores.end());
  std::vector<double> thresholds(distinct.begin(), distinct.end());
  thresholds.push_back(
      std::nextafter(thresholds.back(), std::numeric_limits<double>::infinity()));
  return thresholds;
}

void oracle_inputs(const ScoreSet& scores, const TrialList& trials,
                   std::vector<double>* values, std::vector<int>* labels) {
  if (scores.scores.size() != trials.trials.size())
    throw ValidationError("metric oracle: score count does not match trial count");
  trials.validate();
  for (std::size_t i = 0; i < scores.scores.size(); ++i) {
    values->push_back(scores.scores[i].score);
    labels->push_back(trials.trials[i].label);
  }
}

}  // namespace

EERResult oracle_eer(const ScoreSet& scores, const TrialList& trials) {
  std::vector<double> values;
  std::vector<int> labels;
  oracle_inputs(scores, trials, &values, &labels);
  const auto thresholds = oracle_thresholds(values);

  double prev_far = 0.0, prev_frr = 0.0, prev_th = 0.0;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    double far, frr;
    recount(values, labels, thresholds[i], &far, &frr);
    const double diff = far - frr;
    if (diff <= 0.0) {
      if (diff == 0.0) return {far, thresholds[i]};
      const double d1 = prev_far - prev_frr;
      const double frac = d1 / (d1 + (frr - far));
      return {prev_far + frac * (far - prev_far),
              prev_th + frac * (thresholds[i] - prev_th)};
    }
    prev_far = far;
    prev_frr = frr;
    prev_th = thresholds[i];
  }
  throw ValidationError("metric oracle: no crossing found");
}

double oracle_min_dcf(const ScoreSet& scores, const TrialList& trials,
                      const DCFConfig& cfg) {
  cfg.validate();
  std::vector<double> values;
  std::vector<int> labels;
  oracle_inputs(scores, trials, &values, &labels);
  const double denom = std::min(cfg.c_miss * cfg.p_target, cfg.c_fa * (1.0 - cfg.p_target));
  double best = std::numeric_limits<double>::infinity();
  for (double th : oracle_thresholds(values)) {
    double far, frr;
    recount(values, labels, th, &far, &frr);
    best = std::min(best, (cfg.c_miss * cfg.p_target * frr +
                           cfg.c_fa * (1.0 - cfg.p_target) * far) /
                              denom);
  }
  return best;
}

}  // namespace svkit
