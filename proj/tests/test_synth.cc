// tests/test_synth.cc

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

#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "svkit/attention.h"
#include "svkit/scoring.h"
#include "svkit/synth.h"
#include "test_support.h"

using namespace svkit;

TEST_CASE("gen_corpus: spread 0 collapses every utterance onto the mean") {
  SynthSpec spec{4, 2, 3, 16, 0.0, 123};
  const CorpusManifest m = gen_corpus(spec);
  REQUIRE(m.size() == 24);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::size_t anchor = m.position(
        m.record_at(i).speaker_id + "-v000-u000");
    CHECK(cosine_score(m.embedding_at(i), m.embedding_at(anchor)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("gen_corpus: deterministic in the seed") {
  SynthSpec spec{6, 2, 2, 8, 0.3, 42};
  const CorpusManifest a = gen_corpus(spec);
  const CorpusManifest b = gen_corpus(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.record_at(i).utt_id == b.record_at(i).utt_id);
    CHECK(a.embedding_at(i).values == b.embedding_at(i).values);  // bitwise
  }
  spec.seed = 43;
  const CorpusManifest c = gen_corpus(spec);
  CHECK(c.embedding_at(0).values != a.embedding_at(0).values);
}

TEST_CASE("gen_corpus: unit norms and intra > inter speaker cosine") {
  SynthSpec spec{100, 4, 5, 64, 0.3, 2026};
  const CorpusManifest m = gen_corpus(spec);
  REQUIRE(m.size() == 2000);
  for (std::size_t i = 0; i < m.size(); i += 37)
    CHECK(std::abs(m.embedding_at(i).norm() - 1.0) <= 1e-9);

  double intra = 0.0, inter = 0.0;
  std::size_t intra_n = 0, inter_n = 0;
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 4000; ++rep) {
    const std::size_t i = rng() % m.size(), j = rng() % m.size();
    if (i == j) continue;
    const double cs = cosine_score(m.embedding_at(i), m.embedding_at(j));
    if (m.record_at(i).speaker_id == m.record_at(j).speaker_id) {
      intra += cs;
      intra_n += 1;
    } else {
      inter += cs;
      inter_n += 1;
    }
  }
  REQUIRE(intra_n > 0);
  REQUIRE(inter_n > 0);
  CHECK(intra / intra_n > inter / inter_n);
}

TEST_CASE("gen_corpus: manifest invariants hold") {
  SynthSpec spec{10, 3, 2, 12, 0.5, 77};
  const CorpusManifest m = gen_corpus(spec);
  CHECK_NOTHROW(m.validate());
  CHECK(m.dim() == 12);
}

TEST_CASE("inject_mislabels: rate 0 changes nothing") {
  SynthSpec spec{5, 2, 2, 8, 0.2, 1};
  const CorpusManifest m = gen_corpus(spec);
  const MislabelResult r = inject_mislabels(m, 0.0, MislabelGranularity::kVideo, 5);
  CHECK(r.manifest.size() == m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(r.manifest.record_at(i).speaker_id == m.record_at(i).speaker_id);
    CHECK(r.manifest.embedding_at(i).values == m.embedding_at(i).values);
  }
  for (const auto& [utt, entry] : r.truth.entries) CHECK_FALSE(entry.is_noisy);
}

TEST_CASE("inject_mislabels: a single flipped video is exactly one group") {
  SynthSpec spec{10, 2, 3, 8, 0.2, 2};
  const CorpusManifest m = gen_corpus(spec);
  // 20 videos; rate 1/20 flips exactly one
  const MislabelResult r = inject_mislabels(m, 0.05, MislabelGranularity::kVideo, 9);
  std::map<std::string, int> flipped_videos;
  std::size_t noisy = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto& utt = m.record_at(i).utt_id;
    if (r.truth.entries.at(utt).is_noisy) {
      noisy += 1;
      flipped_videos[m.record_at(i).video_id] += 1;
      CHECK(r.manifest.record_at(i).speaker_id != m.record_at(i).speaker_id);
      CHECK(r.truth.entries.at(utt).original_speaker == m.record_at(i).speaker_id);
    } else {
      CHECK(r.manifest.record_at(i).speaker_id == m.record_at(i).speaker_id);
    }
  }
  CHECK(flipped_videos.size() == 1);
  CHECK(noisy == 3);  // whole video moved together
}

TEST_CASE("inject_mislabels: 5% video rate lands near 5% of utterances") {
  SynthSpec spec{100, 4, 5, 16, 0.2, 3};
  const CorpusManifest m = gen_corpus(spec);
  const MislabelResult r = inject_mislabels(m, 0.05, MislabelGranularity::kVideo, 4);
  std::size_t noisy = 0;
  for (const auto& [utt, entry] : r.truth.entries)
    if (entry.is_noisy) noisy += 1;
  const double fraction = static_cast<double>(noisy) / static_cast<double>(m.size());
  CHECK(fraction >= 0.03);
  CHECK(fraction <= 0.07);
  CHECK(r.manifest.size() == m.size());  // count preserved
}

TEST_CASE("inject_mislabels: utterance granularity and error paths") {
  SynthSpec spec{6, 2, 4, 8, 0.2, 5};
  const CorpusManifest m = gen_corpus(spec);
  const MislabelResult r =
      inject_mislabels(m, 0.25, MislabelGranularity::kUtterance, 6);
  std::size_t noisy = 0;
  for (const auto& [utt, entry] : r.truth.entries)
    if (entry.is_noisy) noisy += 1;
  CHECK(noisy == 12);  // round(0.25 * 48)

  CorpusManifest single;
  single.add({"a", "s1", "v1"}, {{1.0, 0.0}});
  CHECK_THROWS_AS(inject_mislabels(single, 0.1, MislabelGranularity::kVideo, 1),
                  ValidationError);

  // a speaker whose only video flips away (with no flip coming back) must
  // trip the retention check; otherwise every speaker keeps something
  CorpusManifest tiny;
  tiny.add({"a", "s1", "v1"}, {{1.0, 0.0}});
  tiny.add({"b1", "s2", "v2"}, {{0.0, 1.0}});
  tiny.add({"b2", "s2", "v3"}, {{0.0, 1.0}});
  tiny.add({"b3", "s2", "v4"}, {{0.6, 0.8}});
  std::size_t raised = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    try {
      const MislabelResult out =
          inject_mislabels(tiny, 0.25, MislabelGranularity::kVideo, seed);
      std::set<std::string> owners;
      for (const auto& rec : out.manifest.records()) owners.insert(rec.speaker_id);
      CHECK(owners.size() == 2);  // both speakers still present
    } catch (const ValidationError& e) {
      raised += 1;
      CHECK(std::string(e.what()).find("lose all") != std::string::npos);
    }
  }
  CHECK(raised > 0);  // some seed flips s1's only video
}

TEST_CASE("ground truth file roundtrip") {
  svtest::TempDir dir;
  SynthSpec spec{4, 2, 2, 8, 0.2, 8};
  const CorpusManifest m = gen_corpus(spec);
  const MislabelResult r = inject_mislabels(m, 0.1, MislabelGranularity::kVideo, 2);
  save_ground_truth(r.truth, r.manifest, dir.file("gt.txt"));
  const NoiseGroundTruth back = load_ground_truth(dir.file("gt.txt"));
  REQUIRE(back.entries.size() == r.truth.entries.size());
  for (const auto& [utt, entry] : r.truth.entries) {
    CHECK(back.entries.at(utt).is_noisy == entry.is_noisy);
    CHECK(back.entries.at(utt).original_speaker == entry.original_speaker);
  }
}

TEST_CASE("energy oracle: constant channel gives exactly 2") {
  const EnergyOracleResult r = oracle_numeric_energy({1.5, 1.5, 1.5, 1.5}, 2, 0.3);
  CHECK(r.converged);
  CHECK(r.energy == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("energy oracle: exclusive two-point fixture 0.095238") {
  const EnergyOracleResult r = oracle_numeric_energy({1.0, -1.0}, 0, 0.1);
  CHECK(r.converged);
  CHECK(r.energy == doctest::Approx(2.0 / 21.0).epsilon(1e-8));  // 0.0952381
  // the inclusive-statistics closed form gives 1.375 on the same channel:
  // the small-M approximation gap is real and expected
  FeatureMap x(1, 1, 2);
  x.values = {1.0, -1.0};
  const FeatureMap e = simam_energy(x, {0.1});
  CHECK(e.values[0] == doctest::Approx(1.375));
  CHECK(std::abs(e.values[0] - r.energy) > 1.0);
}

TEST_CASE("energy oracle: lower than the objective at any probe point") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<double> channel(16);
    for (double& v : channel) v = svtest::normal(rng);
    const std::size_t target = rng() % channel.size();
    const double lambda = 1e-4;
    const EnergyOracleResult r = oracle_numeric_energy(channel, target, lambda);
    REQUIRE(r.converged);

    auto objective = [&](double w, double b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < channel.size(); ++i) {
        if (i == target) continue;
        const double d = -1.0 - (w * channel[i] + b);
        acc += d * d;
      }
      acc /= static_cast<double>(channel.size() - 1);
      const double dt = 1.0 - (w * channel[target] + b);
      return acc + dt * dt + lambda * w * w;
    };
    for (int probe = 0; probe < 25; ++probe) {
      const double w = svtest::uniform(rng, -2.0, 2.0);
      const double b = svtest::uniform(rng, -2.0, 2.0);
      CHECK(r.energy <= objective(w, b) + 1e-10);
    }
    CHECK(r.energy <= objective(r.w, r.b) + 1e-12);
  }
}

TEST_CASE("energy oracle: gap to the closed form shrinks as M grows") {
  std::mt19937_64 rng(47);
  std::map<std::size_t, double> mean_gap;
  for (std::size_t m : {16u, 256u, 4096u}) {
    double total = 0.0;
    const int reps = 8;
    for (int rep = 0; rep < reps; ++rep) {
      FeatureMap x(1, 1, m);
      for (double& v : x.values) v = svtest::normal(rng);
      const std::size_t target = rng() % m;
      const FeatureMap e = simam_energy(x, {1e-4});
      const EnergyOracleResult oracle = oracle_numeric_energy(x.values, target, 1e-4);
      REQUIRE(oracle.converged);
      total += std::abs(e.values[target] - oracle.energy) / oracle.energy;
    }
    mean_gap[m] = total / reps;
  }
  CHECK(mean_gap[16] > mean_gap[256]);
  CHECK(mean_gap[256] > mean_gap[4096]);
  CHECK(mean_gap[4096] <= 1e-2);
}

TEST_CASE("energy oracle: input validation") {
  CHECK_THROWS_AS(oracle_numeric_energy({1.0}, 0, 0.1), ValidationError);
  CHECK_THROWS_AS(oracle_numeric_energy({1.0, 2.0}, 5, 0.1), ValidationError);
  CHECK_THROWS_AS(oracle_numeric_energy({1.0, 2.0}, 0, -0.5), ValidationError);
}
