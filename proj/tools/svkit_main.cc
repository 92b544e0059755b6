// tools/svkit_main.cc

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

// svkit: attention kernels, trial scoring, AS-Norm, EER/minDCF metrics and
// iterative noisy-label detection over plain text embedding files.

#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "svkit/gradcheck.h"
#include "svkit/inld.h"
#include "svkit/scoring.h"
#include "svkit/synth.h"
#include "svkit/text_io.h"

using json = nlohmann::ordered_json;
using namespace svkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::string format6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// --- kernel-check -----------------------------------------------------------

struct CheckRow {
  std::string name;
  bool pass = false;
  std::string detail;
};

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

double normal(std::mt19937_64& rng) {
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

FeatureMap random_map(std::mt19937_64& rng, std::size_t c, std::size_t f, std::size_t t) {
  FeatureMap x(c, f, t);
  for (double& v : x.values) v = normal(rng);
  return x;
}

GateMlp random_mlp(std::mt19937_64& rng, std::size_t size) {
  GateMlp p = GateMlp::zeros(size, size % 2 == 0 ? 2 : 1);
  std::vector<double> flat(p.param_count());
  for (double& v : flat) v = uniform(rng, -0.5, 0.5);
  unflatten(flat, 0, &p);
  return p;
}

std::string err_detail(double err) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "max rel err %.3e", err);
  return buf;
}

std::vector<CheckRow> run_kernel_checks(double lambda, double scale, double margin,
                                        int seeds) {
  std::vector<CheckRow> rows;
  const double kGradTol = 1e-4;

  {  // constant-map gate
    bool pass = true;
    const double expected = sigmoid(0.5);
    for (double fill : {0.0, 1.0, -2.5}) {
      const FeatureMap y = simam_apply(FeatureMap(3, 4, 5, fill), {lambda});
      for (double v : y.values) pass &= std::abs(v - expected * fill) <= 1e-9;
    }
    rows.push_back({"simam constant-map gate = logistic(1/2)", pass, ""});
  }
  {  // closed-form fixture
    FeatureMap x(1, 1, 2);
    x.values = {1.0, -1.0};
    const FeatureMap e = simam_energy(x, {0.1});
    const bool pass = std::abs(e.values[0] - 1.375) <= 1e-12;
    rows.push_back({"simam energy fixture {1,-1} lambda=0.1 -> 1.375", pass, ""});
  }
  {  // exact-minimizer oracle fixtures
    const EnergyOracleResult two = oracle_numeric_energy({1.0, -1.0}, 0, 0.1);
    const EnergyOracleResult flat = oracle_numeric_energy({2.0, 2.0, 2.0}, 1, lambda);
    const bool pass = two.converged && std::abs(two.energy - 2.0 / 21.0) <= 1e-8 &&
                      flat.converged && std::abs(flat.energy - 2.0) <= 1e-8;
    rows.push_back({"energy oracle fixtures (exclusive statistics)", pass, ""});
  }
  {  // inclusive closed form vs exact oracle at M = 4096
    std::mt19937_64 rng(2026);
    std::vector<double> gaps;
    for (int rep = 0; rep < 50; ++rep) {
      FeatureMap x(1, 1, 4096);
      for (double& v : x.values) v = normal(rng);
      const std::size_t target = rng() % x.values.size();
      const FeatureMap e = simam_energy(x, {lambda});
      const EnergyOracleResult oracle = oracle_numeric_energy(x.values, target, lambda);
      gaps.push_back(std::abs(e.values[target] - oracle.energy) / oracle.energy);
    }
    std::sort(gaps.begin(), gaps.end());
    const double median = gaps[gaps.size() / 2];
    char buf[64];
    std::snprintf(buf, sizeof(buf), "median gap %.3e", median);
    rows.push_back({"simam closed form vs oracle, M=4096", median <= 1e-2, buf});
  }
  {  // trainable parameter accounting
    const bool pass = SimAMKernel().param_count() == 0 &&
                      SEKernel(128, 16).param_count() == 2184;
    rows.push_back({"parameter counts: simam 0, se(128,16) 2184", pass, ""});
  }
  {  // zero-parameter identities
    std::mt19937_64 rng(7);
    const FeatureMap x = random_map(rng, 2, 3, 4);
    const FeatureMap half = se_apply(x, SEParams{GateMlp::zeros(2, 1)});
    CBAMParams zeros{GateMlp::zeros(2, 1), GateMlp::zeros(3, 1), GateMlp::zeros(4, 2)};
    const FeatureMap eighth = ftcbam_apply(x, zeros);
    bool pass = true;
    for (std::size_t i = 0; i < x.values.size(); ++i) {
      pass &= std::abs(half.values[i] - 0.5 * x.values[i]) <= 1e-12;
      pass &= std::abs(eighth.values[i] - 0.125 * x.values[i]) <= 1e-12;
    }
    rows.push_back({"zero-parameter gates: se 0.5x, ft-cbam 0.125x", pass, ""});
  }
  {  // pooling identity
    std::mt19937_64 rng(8);
    const FeatureMap x = random_map(rng, 2, 2, 6);
    const auto gsp = gsp_pool(x);
    const auto asp = asp_pool(x, ASPParams::zeros(4, 3));
    bool pass = true;
    for (std::size_t i = 0; i < gsp.size(); ++i)
      pass &= std::abs(gsp[i] - asp[i]) <= 1e-12;
    rows.push_back({"asp with uniform attention equals gsp", pass, ""});
  }
  {  // aam fixtures
    const AAMResult fix = aam_loss({1.0, 0.0}, 0, {1.0, 0.0});
    bool pass = std::abs(fix.loss - std::log(1.0 + std::exp(-1.0))) <= 1e-12;
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 20 && pass; ++rep) {
      std::vector<double> cosines(4);
      for (double& c : cosines) c = uniform(rng, -1.0, 1.0);
      double z = 0.0;
      for (double c : cosines) z += std::exp(scale * c);
      const double ce = std::log(z) - scale * cosines[1];
      pass &= std::abs(aam_loss(cosines, 1, {scale, 0.0}).loss - ce) <= 1e-12;
    }
    rows.push_back({"aam margin-0 reduction to softmax cross-entropy", pass, ""});
  }

  // gradient suite
  const auto shapes = {std::array<std::size_t, 3>{2, 3, 4},
                       std::array<std::size_t, 3>{4, 8, 16}};
  std::map<std::string, double> worst;
  for (int seed = 1; seed <= seeds; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    for (const auto& [c, f, t] : shapes) {
      const FeatureMap x = random_map(rng, c, f, t);
      const FeatureMap upstream = random_map(rng, c, f, t);

      SimAMKernel simam({lambda});
      worst["simam"] = std::max(worst["simam"],
                                check_attention_kernel(simam, x, upstream).max_rel_err());
      SEKernel se(SEParams{random_mlp(rng, c)});
      worst["se"] =
          std::max(worst["se"], check_attention_kernel(se, x, upstream).max_rel_err());
      FwSEKernel fwse(FwSEParams{random_mlp(rng, f)});
      worst["fwse"] =
          std::max(worst["fwse"], check_attention_kernel(fwse, x, upstream).max_rel_err());
      FtCBAMKernel cbam(
          CBAMParams{random_mlp(rng, c), random_mlp(rng, f), random_mlp(rng, t)});
      worst["ftcbam"] =
          std::max(worst["ftcbam"], check_attention_kernel(cbam, x, upstream).max_rel_err());

      std::vector<double> pool_upstream(2 * c * f);
      for (double& v : pool_upstream) v = normal(rng);
      worst["gsp"] = std::max(worst["gsp"], check_gsp(x, pool_upstream).max_rel_err);
      ASPParams asp = ASPParams::zeros(c * f, 4);
      std::vector<double> flat(asp.param_count());
      for (double& v : flat) v = uniform(rng, -0.5, 0.5);
      unflatten(flat, &asp);
      worst["asp"] = std::max(worst["asp"], check_asp(x, asp, pool_upstream).max_rel_err());

      std::vector<double> cosines(5);
      for (double& v : cosines) v = uniform(rng, -0.99, 0.99);
      worst["aam"] = std::max(
          worst["aam"],
          check_aam(cosines, rng() % cosines.size(), {scale, margin}).max_rel_err);
    }
  }
  for (const char* name : {"simam", "se", "fwse", "ftcbam", "gsp", "asp", "aam"}) {
    const double err = worst[name];
    rows.push_back({std::string(name) + " gradient vs central differences",
                    err <= kGradTol, err_detail(err)});
  }
  return rows;
}

int cmd_kernel_check(double lambda, double scale, double margin, int seeds, bool as_json) {
  const auto rows = run_kernel_checks(lambda, scale, margin, seeds);
  bool all = true;
  for (const CheckRow& row : rows) all &= row.pass;
  if (as_json) {
    json out;
    out["checks"] = json::array();
    for (const CheckRow& row : rows)
      out["checks"].push_back(
          {{"name", row.name}, {"pass", row.pass}, {"detail", row.detail}});
    out["all_pass"] = all;
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    for (const CheckRow& row : rows)
      std::printf("%-52s %-22s %s\n", row.name.c_str(), row.detail.c_str(),
                  row.pass ? "PASS" : "FAIL");
    std::printf("%s\n", all ? "all checks passed" : "SOME CHECKS FAILED");
  }
  return all ? kExitOk : kExitValidation;
}

// --- remaining subcommands ---------------------------------------------------

int cmd_score(const std::string& emb_path, const std::string& trial_path,
              const std::string& out_path, int threads) {
  const CorpusManifest manifest = load_embeddings(emb_path);
  const TrialList trials = load_trials(trial_path);
  save_scores(score_trials(manifest, trials, threads), out_path);
  return kExitOk;
}

int cmd_norm(const std::string& emb_path, const std::string& trial_path,
             const std::string& score_path, const std::string& cohort_path,
             const std::string& out_path, std::size_t top_k, bool speaker_average,
             int threads) {
  const CorpusManifest manifest = load_embeddings(emb_path);
  const TrialList trials = load_trials(trial_path);
  const ScoreSet raw = load_scores(score_path);
  const CorpusManifest cohort_manifest = load_embeddings(cohort_path);

  ASNormConfig cfg;
  cfg.top_k = top_k;
  if (speaker_average) {
    // one cohort entry per speaker: mean embedding, speakers in file order
    std::vector<std::string> speakers;
    std::map<std::string, std::pair<std::vector<double>, std::size_t>> sums;
    for (std::size_t i = 0; i < cohort_manifest.size(); ++i) {
      const auto& rec = cohort_manifest.record_at(i);
      auto [it, inserted] = sums.emplace(
          rec.speaker_id,
          std::make_pair(std::vector<double>(cohort_manifest.dim(), 0.0), 0));
      if (inserted) speakers.push_back(rec.speaker_id);
      const Embedding& e = cohort_manifest.embedding_at(i);
      for (std::size_t d = 0; d < e.dim(); ++d) it->second.first[d] += e.values[d];
      it->second.second += 1;
    }
    for (const std::string& s : speakers) {
      const auto& [sum, count] = sums.at(s);
      Embedding mean;
      mean.values.resize(sum.size());
      for (std::size_t d = 0; d < sum.size(); ++d)
        mean.values[d] = sum[d] / static_cast<double>(count);
      cfg.cohort.push_back(std::move(mean));
    }
  } else {
    for (std::size_t i = 0; i < cohort_manifest.size(); ++i)
      cfg.cohort.push_back(cohort_manifest.embedding_at(i));
  }
  save_scores(asnorm_scores(manifest, trials, raw, cfg, threads), out_path);
  return kExitOk;
}

int cmd_metrics(const std::string& score_path, const std::string& trial_path,
                const DCFConfig& dcf, bool as_json) {
  const ScoreSet scores = load_scores(score_path);
  const TrialList trials = load_trials(trial_path);
  const EERResult eer = compute_eer(scores, trials);
  const double mindcf = compute_mindcf(scores, trials, dcf);
  if (as_json) {
    json out{{"eer", eer.eer}, {"eer_threshold", eer.threshold}, {"min_dcf", mindcf}};
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("EER %s\n", format6(eer.eer).c_str());
    std::printf("minDCF %s\n", format6(mindcf).c_str());
  }
  return kExitOk;
}

int cmd_inld(const std::string& emb_path, const std::string& rejections_path,
             const std::string& stats_path, const INLDConfig& cfg, bool as_json) {
  const CorpusManifest manifest = load_embeddings(emb_path);
  const INLDResult result = run_inld(manifest, cfg);
  if (!rejections_path.empty()) save_rejections(result.rejections, rejections_path);
  if (!stats_path.empty()) save_round_stats(result.rounds, stats_path);
  if (as_json) {
    json rounds = json::array();
    for (const RoundStats& r : result.rounds)
      rounds.push_back({{"round", r.round},
                        {"threshold", r.threshold},
                        {"rejected", r.rejected},
                        {"remaining", r.remaining}});
    json out{{"rounds", rounds},
             {"total_rejected", result.rejections.entries.size()},
             {"remaining", result.final_manifest.size()}};
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    for (const RoundStats& r : result.rounds)
      std::printf("%d\t%s\t%zu\t%zu\n", r.round, format6(r.threshold).c_str(),
                  r.rejected, r.remaining);
  }
  return kExitOk;
}

int cmd_synth(const SynthSpec& spec, const std::string& out_path,
              const std::string& truth_path, double mislabel_rate,
              const std::string& granularity, std::uint64_t mislabel_seed) {
  const CorpusManifest clean = gen_corpus(spec);
  if (mislabel_rate > 0.0 || !truth_path.empty()) {
    const MislabelResult noisy = inject_mislabels(
        clean, mislabel_rate,
        granularity == "utterance" ? MislabelGranularity::kUtterance
                                   : MislabelGranularity::kVideo,
        mislabel_seed);
    save_embeddings(noisy.manifest, out_path);
    if (!truth_path.empty()) save_ground_truth(noisy.truth, noisy.manifest, truth_path);
  } else {
    save_embeddings(clean, out_path);
  }
  return kExitOk;
}

int cmd_inld_eval(const std::string& rejections_path, const std::string& truth_path,
                  bool as_json) {
  const RejectionList rejections = load_rejections(rejections_path);
  const NoiseGroundTruth truth = load_ground_truth(truth_path);

  std::size_t noisy_total = 0;
  for (const auto& [utt, entry] : truth.entries)
    if (entry.is_noisy) noisy_total += 1;
  std::size_t true_positives = 0;
  for (const Rejection& r : rejections.entries) {
    auto it = truth.entries.find(r.utt_id);
    if (it == truth.entries.end())
      throw ValidationError("inld-eval: rejected utterance '" + r.utt_id +
                            "' missing from ground truth");
    if (it->second.is_noisy) true_positives += 1;
  }
  const std::size_t rejected = rejections.entries.size();
  const double precision =
      rejected == 0 ? 1.0 : static_cast<double>(true_positives) / rejected;
  const double recall =
      noisy_total == 0 ? 1.0 : static_cast<double>(true_positives) / noisy_total;
  if (as_json) {
    json out{{"rejected", rejected},
             {"noisy", noisy_total},
             {"true_positives", true_positives},
             {"precision", precision},
             {"recall", recall}};
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("rejected %zu\n", rejected);
    std::printf("noisy %zu\n", noisy_total);
    std::printf("true_positives %zu\n", true_positives);
    std::printf("precision %s\n", format6(precision).c_str());
    std::printf("recall %s\n", format6(recall).c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"speaker-verification kit: attention kernels, scoring, metrics and "
               "iterative noisy-label detection"};
  app.require_subcommand(1);

  // kernel-check
  auto* check = app.add_subcommand(
      "kernel-check", "run kernel fixtures, oracle comparisons and gradient checks");
  double lambda = 1e-4, scale = 32.0, margin = 0.2;
  int seeds = 10;
  bool check_json = false;
  check->add_option("--lambda", lambda, "SimAM energy regularizer")
      ->capture_default_str();
  check->add_option("--scale", scale, "AAM scale s")->capture_default_str();
  check->add_option("--margin", margin, "AAM angular margin m (radians)")
      ->capture_default_str();
  check->add_option("--seeds", seeds, "random seeds per gradient check")
      ->capture_default_str();
  check->add_flag("--json", check_json, "machine-readable output");

  // score
  auto* score = app.add_subcommand("score", "cosine-score a trial list");
  std::string s_emb, s_trials, s_out;
  int s_threads = 1;
  score->add_option("--embeddings", s_emb, "embedding file")->required();
  score->add_option("--trials", s_trials, "trial file")->required();
  score->add_option("--output", s_out, "score file to write")->required();
  score->add_option("--threads", s_threads, "worker threads")->capture_default_str();

  // norm
  auto* norm = app.add_subcommand("norm", "apply AS-Norm to raw scores");
  std::string n_emb, n_trials, n_scores, n_cohort, n_out;
  std::size_t n_topk = 400;
  bool n_spk_avg = false;
  int n_threads = 1;
  norm->add_option("--embeddings", n_emb, "trial-side embedding file")->required();
  norm->add_option("--trials", n_trials, "trial file")->required();
  norm->add_option("--scores", n_scores, "raw score file")->required();
  norm->add_option("--cohort", n_cohort, "imposter cohort embedding file")->required();
  norm->add_option("--output", n_out, "normalized score file to write")->required();
  norm->add_option("--top-k", n_topk, "cohort scores kept per side")
      ->capture_default_str();
  norm->add_flag("--speaker-average", n_spk_avg,
                 "average the cohort per speaker before normalizing");
  norm->add_option("--threads", n_threads, "worker threads")->capture_default_str();

  // metrics
  auto* metrics = app.add_subcommand("metrics", "EER and minDCF for scored trials");
  std::string m_scores, m_trials;
  DCFConfig dcf;
  bool m_json = false;
  metrics->add_option("--scores", m_scores, "score file")->required();
  metrics->add_option("--trials", m_trials, "trial file")->required();
  metrics->add_option("--p-target", dcf.p_target, "target prior")->capture_default_str();
  metrics->add_option("--c-fa", dcf.c_fa, "false-accept cost")->capture_default_str();
  metrics->add_option("--c-miss", dcf.c_miss, "miss cost")->capture_default_str();
  metrics->add_flag("--json", m_json, "machine-readable output");

  // inld
  auto* inld = app.add_subcommand(
      "inld", "iterative noisy-label detection over an embedding file");
  std::string i_emb, i_rej, i_stats;
  INLDConfig icfg;
  std::string i_mode = "pooled-centroid";
  bool i_json = false;
  inld->add_option("--embeddings", i_emb, "embedding file")->required();
  inld->add_option("--output-rejections", i_rej, "rejection file to write");
  inld->add_option("--output-stats", i_stats, "per-round stats file to write");
  inld->add_option("--thresholds", icfg.thresholds,
                   "per-round similarity thresholds (last repeats)")
      ->delimiter(',')
      ->capture_default_str();
  inld->add_option("--max-rounds", icfg.max_rounds, "round limit")
      ->capture_default_str();
  inld->add_option("--stop-fraction", icfg.stop_fraction,
                   "stop when a round rejects less than this fraction")
      ->capture_default_str();
  inld->add_option("--mode", i_mode, "similarity mode")
      ->check(CLI::IsMember({"pooled-centroid", "per-video-average"}))
      ->capture_default_str();
  inld->add_option("--threads", icfg.threads, "worker threads")->capture_default_str();
  inld->add_flag("--json", i_json, "machine-readable output");

  // synth
  auto* synth = app.add_subcommand(
      "synth", "generate a clustered unit-vector corpus with optional mislabels");
  SynthSpec spec;
  spec.num_speakers = 100;
  spec.videos_per_speaker = 4;
  spec.utts_per_video = 5;
  spec.dim = 64;
  std::string sy_out, sy_truth, sy_gran = "video";
  double sy_rate = 0.0;
  std::uint64_t sy_mseed = 1;
  synth->add_option("--speakers", spec.num_speakers, "speaker count")
      ->capture_default_str();
  synth->add_option("--videos", spec.videos_per_speaker, "videos per speaker")
      ->capture_default_str();
  synth->add_option("--utts", spec.utts_per_video, "utterances per video")
      ->capture_default_str();
  synth->add_option("--dim", spec.dim, "embedding dimension")->capture_default_str();
  synth->add_option("--spread", spec.spread, "intra-speaker noise scale")
      ->capture_default_str();
  synth->add_option("--seed", spec.seed, "generator seed")->capture_default_str();
  synth->add_option("--output", sy_out, "embedding file to write")->required();
  synth->add_option("--ground-truth", sy_truth, "noise ground-truth file to write");
  synth->add_option("--mislabel-rate", sy_rate, "fraction of groups to mislabel")
      ->capture_default_str();
  synth
      ->add_option("--mislabel-granularity", sy_gran,
                   "mislabel whole videos or single utterances")
      ->check(CLI::IsMember({"video", "utterance"}))
      ->capture_default_str();
  synth->add_option("--mislabel-seed", sy_mseed, "mislabel selection seed")
      ->capture_default_str();

  // inld-eval
  auto* ev = app.add_subcommand("inld-eval",
                                "precision/recall of rejections against ground truth");
  std::string e_rej, e_truth;
  bool e_json = false;
  ev->add_option("--rejections", e_rej, "rejection file")->required();
  ev->add_option("--ground-truth", e_truth, "ground-truth file")->required();
  ev->add_flag("--json", e_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (check->parsed())
      return cmd_kernel_check(lambda, scale, margin, seeds, check_json);
    if (score->parsed()) return cmd_score(s_emb, s_trials, s_out, s_threads);
    if (norm->parsed())
      return cmd_norm(n_emb, n_trials, n_scores, n_cohort, n_out, n_topk, n_spk_avg,
                      n_threads);
    if (metrics->parsed()) return cmd_metrics(m_scores, m_trials, dcf, m_json);
    if (inld->parsed()) {
      icfg.similarity_mode = i_mode == "per-video-average"
                                 ? SimilarityMode::kPerVideoAverage
                                 : SimilarityMode::kPooledCentroid;
      return cmd_inld(i_emb, i_rej, i_stats, icfg, i_json);
    }
    if (synth->parsed())
      return cmd_synth(spec, sy_out, sy_truth, sy_rate, sy_gran, sy_mseed);
    if (ev->parsed()) return cmd_inld_eval(e_rej, e_truth, e_json);
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return kExitValidation;
}
