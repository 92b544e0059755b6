// src/scoring.cc

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

#include "svkit/scoring.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "svkit/common.h"

namespace svkit {

double cosine_score(const Embedding& a, const Embedding& b) {
  if (a.dim() != b.dim())
    throw ValidationError("cosine: dimension mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (na <= 0.0 || nb <= 0.0) throw ValidationError("cosine: zero-norm embedding");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

ScoreSet score_trials(const CorpusManifest& manifest, const TrialList& trials,
                      int threads) {
  // resolve ids up front so workers cannot throw
  std::vector<const Embedding*> enroll(trials.trials.size());
  std::vector<const Embedding*> test(trials.trials.size());
  for (std::size_t i = 0; i < trials.trials.size(); ++i) {
    enroll[i] = &manifest.embedding(trials.trials[i].enroll_utt);
    test[i] = &manifest.embedding(trials.trials[i].test_utt);
  }
  ScoreSet out;
  out.scores.resize(trials.trials.size());
  parallel_for(trials.trials.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Trial& t = trials.trials[i];
      out.scores[i] = {t.enroll_utt, t.test_utt, cosine_score(*enroll[i], *test[i])};
    }
  });
  return out;
}

void ASNormConfig::validate() const {
  if (cohort.empty()) throw ValidationError("asnorm: empty cohort");
  if (top_k == 0 || top_k > cohort.size())
    throw ValidationError("asnorm: top_k must be in [1, cohort size]");
}

namespace {

// Mean and population std of the top_k largest cohort cosines against emb.
// The selected scores are summed in descending order so the result does not
// depend on the cohort's storage order beyond ties (which are value-equal).
void cohort_stats(const Embedding& emb, const ASNormConfig& cfg, double* mean,
                  double* stddev) {
  std::vector<double> scores;
  scores.reserve(cfg.cohort.size());
  for (const Embedding& c : cfg.cohort) scores.push_back(cosine_score(emb, c));
  std::sort(scores.begin(), scores.end(), std::greater<double>());
  double m = 0.0;
  for (std::size_t i = 0; i < cfg.top_k; ++i) m += scores[i];
  m /= static_cast<double>(cfg.top_k);
  double var = 0.0;
  for (std::size_t i = 0; i < cfg.top_k; ++i) {
    const double d = scores[i] - m;
    var += d * d;
  }
  var /= static_cast<double>(cfg.top_k);
  *mean = m;
  *stddev = std::sqrt(var);
}

}  // namespace

double asnorm(double raw, const Embedding& enroll, const Embedding& test,
              const ASNormConfig& cfg) {
  cfg.validate();
  double mu_e, sd_e, mu_t, sd_t;
  cohort_stats(enroll, cfg, &mu_e, &sd_e);
  cohort_stats(test, cfg, &mu_t, &sd_t);
  if (sd_e <= 0.0 || sd_t <= 0.0)
    throw ValidationError("asnorm: degenerate cohort (zero variance)");
  return 0.5 * ((raw - mu_e) / sd_e + (raw - mu_t) / sd_t);
}

ScoreSet asnorm_scores(const CorpusManifest& manifest, const TrialList& trials,
                       const ScoreSet& raw, const ASNormConfig& cfg, int threads) {
  cfg.validate();
  if (raw.scores.size() != trials.trials.size())
    throw ValidationError("asnorm: score count does not match trial count");
  std::vector<const Embedding*> enroll(trials.trials.size());
  std::vector<const Embedding*> test(trials.trials.size());
  for (std::size_t i = 0; i < trials.trials.size(); ++i) {
    enroll[i] = &manifest.embedding(trials.trials[i].enroll_utt);
    test[i] = &manifest.embedding(trials.trials[i].test_utt);
  }
  ScoreSet out;
  out.scores.resize(raw.scores.size());
  parallel_for(raw.scores.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      out.scores[i] = raw.scores[i];
      out.scores[i].score = asnorm(raw.scores[i].score, *enroll[i], *test[i], cfg);
    }
  });
  return out;
}

void DCFConfig::validate() const {
  if (!(p_target > 0.0 && p_target < 1.0))
    throw ValidationError("dcf: p_target must lie in (0, 1)");
  if (!(c_fa > 0.0) || !(c_miss > 0.0))
    throw ValidationError("dcf: costs must be positive");
}

namespace {

struct SweepPoint {
  double threshold;
  double far;
  double frr;
};

// Operating points at every distinct score (ascending) plus a sentinel just
// above the maximum. accept iff score >= threshold.
std::vector<SweepPoint> sweep_points(const ScoreSet& scores, const TrialList& trials) {
  if (scores.scores.size() != trials.trials.size())
    throw ValidationError("metrics: score count does not match trial count");
  trials.validate();
  std::vector<double> targets, nontargets;
  for (std::size_t i = 0; i < trials.trials.size(); ++i) {
    const double s = scores.scores[i].score;
    if (!std::isfinite(s)) throw ValidationError("metrics: non-finite score");
    (trials.trials[i].label == 1 ? targets : nontargets).push_back(s);
  }
  std::sort(targets.begin(), targets.end());
  std::sort(nontargets.begin(), nontargets.end());

  std::vector<double> thresholds;
  thresholds.reserve(targets.size() + nontargets.size() + 1);
  thresholds.insert(thresholds.end(), targets.begin(), targets.end());
  thresholds.insert(thresholds.end(), nontargets.begin(), nontargets.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  thresholds.push_back(
      std::nextafter(thresholds.back(), std::numeric_limits<double>::infinity()));

  std::vector<SweepPoint> points;
  points.reserve(thresholds.size());
  for (double th : thresholds) {
    const auto below_t = static_cast<double>(
        std::lower_bound(targets.begin(), targets.end(), th) - targets.begin());
    const auto below_n = static_cast<double>(
        std::lower_bound(nontargets.begin(), nontargets.end(), th) - nontargets.begin());
    points.push_back({th,
                      (static_cast<double>(nontargets.size()) - below_n) /
                          static_cast<double>(nontargets.size()),
                      below_t / static_cast<double>(targets.size())});
  }
  return points;
}

}  // namespace

EERResult compute_eer(const ScoreSet& scores, const TrialList& trials) {
  const auto points = sweep_points(scores, trials);
  // FAR - FRR starts at 1 and ends at -1; take the first nonpositive point.
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double diff = points[i].far - points[i].frr;
    if (diff > 0.0) continue;
    if (diff == 0.0) return {points[i].far, points[i].threshold};
    const SweepPoint& lo = points[i - 1];
    const SweepPoint& hi = points[i];
    const double d1 = lo.far - lo.frr;
    const double frac = d1 / (d1 + (hi.frr - hi.far));
    return {lo.far + frac * (hi.far - lo.far),
            lo.threshold + frac * (hi.threshold - lo.threshold)};
  }
  throw ValidationError("eer: no crossing found");  // unreachable for valid input
}

double compute_mindcf(const ScoreSet& scores, const TrialList& trials,
                      const DCFConfig& cfg) {
  cfg.validate();
  const auto points = sweep_points(scores, trials);
  const double denom = std::min(cfg.c_miss * cfg.p_target, cfg.c_fa * (1.0 - cfg.p_target));
  double best = std::numeric_limits<double>::infinity();
  for (const SweepPoint& p : points) {
    const double cost =
        (cfg.c_miss * cfg.p_target * p.frr + cfg.c_fa * (1.0 - cfg.p_target) * p.far) /
        denom;
    best = std::min(best, cost);
  }
  return best;
}

}  // namespace svkit
