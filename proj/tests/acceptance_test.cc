// Copyright 2026 The Pennies Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "belief_oracle.h"
#include "pennies/arena.h"
#include "pennies/belief.h"
#include "pennies/game.h"
#include "pennies/service.h"
#include "pennies/strategy.h"
#include "pennies/transcript_io.h"

namespace pennies {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

// 1. Recursive filter against the dense level-resolved oracle.
Outcome FilterOracle() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 gen(20240601);
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  std::uniform_real_distribution<double> theta_dist(0.1, 3.0);
  std::uniform_int_distribution<int> bit(0, 1);
  double worst = 0.0;
  int cases = 0;

  auto check = [&](const std::vector<double>& grid_values,
                   const std::vector<oracle::Move>& moves, double theta) {
    const QGrid grid(grid_values);
    BeliefState belief = UniformPrior(grid);
    for (std::size_t t = 1; t < moves.size(); ++t) {
      const RoundDecisions prev{DecisionFromInt(moves[t - 1].u1),
                                DecisionFromInt(moves[t - 1].u2)};
      belief = UpdateBelief(belief, prev, HumanPayoff(prev.u1, prev.u2),
                            DecisionFromInt(moves[t].u1), SoftmaxParam(theta));
    }
    const auto dense = oracle::DenseBelief::FromTranscript(grid_values, moves, theta);
    for (int k = 0; k < 4; ++k) {
      for (std::size_t atom = 0; atom < grid.ParamAtoms(); ++atom) {
        const auto idx = belief.GridIndices(atom);
        const double diff = std::abs(belief.Mass(LevelClass(k), atom) -
                                     dense.At(k, idx[0], idx[1], idx[2], idx[3]));
        worst = std::max(worst, diff);
      }
    }
    ++cases;
  };

  for (int c = 0; c < 200; ++c) {
    const int size = 1 + c % 3;
    std::vector<double> grid;
    while (static_cast<int>(grid.size()) < size) {
      const double v = std::round(unit(gen) * 1000.0) / 1000.0;
      if (std::find(grid.begin(), grid.end(), v) == grid.end()) grid.push_back(v);
    }
    std::sort(grid.begin(), grid.end());
    const int length = 1 + static_cast<int>(gen() % 6);
    std::vector<oracle::Move> moves;
    for (int t = 0; t < length; ++t) moves.push_back({bit(gen), bit(gen)});
    check(grid, moves, c % 4 == 0 ? kDefaultTheta : theta_dist(gen));
  }
  // Full default grid, every single observation.
  for (int u1 = 0; u1 < 2; ++u1)
    for (int u2 = 0; u2 < 2; ++u2)
      for (int obs = 0; obs < 2; ++obs)
        check(QGrid::Default().values(), {{u1, u2}, {obs, 0}}, kDefaultTheta);

  const double secs = Seconds(start);
  return {worst <= 1e-12 && secs < 60.0,
          Format("%d transcripts, max atom error %.3g (tol 1e-12), %.2f s (limit 60 s)",
                 cases, worst, secs)};
}

// 2. Payoff and level tables, compared with literal copies.
Outcome Tables() {
  int failures = 0;
  int checks = 0;
  auto expect = [&](bool ok) {
    ++checks;
    failures += !ok;
  };
  // Player 1 wins on a match.
  const int r1_table[2][2] = {{1, -1}, {-1, 1}};
  for (int u1 = 0; u1 < 2; ++u1) {
    for (int u2 = 0; u2 < 2; ++u2) {
      const auto [r1, r2] = ComputePayoff(DecisionFromInt(u1), DecisionFromInt(u2));
      expect(ToInt(r1) == r1_table[u1][u2]);
      expect(ToInt(r2) == -r1_table[u1][u2]);
    }
  }
  // [player][kappa] -> (uses u1?, complement?)
  struct Rule {
    bool from_u1;
    bool flip;
  };
  const Rule level_table[2][4] = {
      {{false, false}, {true, true}, {false, true}, {true, false}},
      {{true, true}, {false, true}, {true, false}, {false, false}},
  };
  for (int p = 0; p < 2; ++p) {
    const Player player = p == 0 ? Player::kHuman : Player::kAi;
    for (int k = 0; k < 4; ++k) {
      for (int u1 = 0; u1 < 2; ++u1) {
        for (int u2 = 0; u2 < 2; ++u2) {
          const Rule rule = level_table[p][k];
          const int base = rule.from_u1 ? u1 : u2;
          const int want = rule.flip ? 1 - base : base;
          const RoundDecisions prev{DecisionFromInt(u1), DecisionFromInt(u2)};
          expect(ToInt(LevelPrediction(player, LevelClass(k), prev)) == want);
        }
      }
    }
  }
  // Group collapse and group difference on every previous pair.
  for (int u1 = 0; u1 < 2; ++u1) {
    for (int u2 = 0; u2 < 2; ++u2) {
      const RoundDecisions prev{DecisionFromInt(u1), DecisionFromInt(u2)};
      const GroupPartition part = LevelGroups(HumanPayoff(prev.u1, prev.u2));
      const std::array<int, 2> first =
          u1 == u2 ? std::array<int, 2>{0, 3} : std::array<int, 2>{0, 1};
      std::array<int, 2> got{part.group1[0].kappa(), part.group1[1].kappa()};
      std::sort(got.begin(), got.end());
      expect(got == first);
      std::array<Decision, 2> act{};
      for (Group g : {Group::kFirst, Group::kSecond}) {
        const auto& m = part.Members(g);
        const Decision a = LevelPrediction(Player::kHuman, m[0], prev);
        expect(a == LevelPrediction(Player::kHuman, m[1], prev));
        expect(a == GroupAction(part, g, prev));
        act[Index(g)] = a;
      }
      expect(act[0] != act[1]);
      expect(act[0] == prev.u2);
    }
  }
  return {failures == 0, Format("%d/%d table checks", checks - failures, checks)};
}

// 3. Softmax constants.
Outcome Softmax() {
  const SoftmaxParam theta(1.5);
  const double c = SoftmaxCompliance(theta);
  const double lo = AiRepeatProbability({1.0, Branch::kWin}, theta);
  const double hi = AiRepeatProbability({0.0, Branch::kLose}, theta);
  const bool ok = std::abs(c - 0.952574) <= 1e-6 &&
                  std::abs(lo - 0.047426) <= 1e-6 &&
                  std::abs(hi - 0.952574) <= 1e-6;
  return {ok, Format("compliance %.7f, repeat endpoints %.7f / %.7f (tol 1e-6)",
                     c, lo, hi)};
}

// 4. Nash AI draws in expectation.
Outcome NashDraw() {
  MatchSetup setup;
  setup.ai = StrategyKind::kNash;
  const ExperimentResult res = RunExperiment(2000, setup, 400000);
  double total = 0.0;
  for (const Transcript& tr : res.transcripts) {
    total += CumulativePayoff(tr, Player::kAi).back();
  }
  const double per_round = total / (2000.0 * 150.0);
  return {std::abs(per_round) <= 0.01,
          Format("2000 x 150 rounds, mean per-round AI payoff %+.5f (limit 0.01)",
                 per_round)};
}

// 5. Proposed AI exploits fake humans.
Outcome Exploitation() {
  MatchSetup setup;
  setup.theta = 1.5;
  constexpr std::size_t kN = 500;
  const ExperimentResult res = RunExperiment(kN, setup, 500000);
  std::vector<double> finals;
  std::size_t wins = 0;
  for (const Transcript& tr : res.transcripts) {
    finals.push_back(CumulativePayoff(tr, Player::kAi).back());
    wins += finals.back() > 0;
  }
  const double mean = std::accumulate(finals.begin(), finals.end(), 0.0) / kN;
  double ss = 0.0;
  for (double x : finals) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / (kN - 1)) / std::sqrt(double(kN));
  const double lower = mean - 3.09 * se;
  const bool a = lower > 0.0;
  const bool b = 3 * wins >= 2 * kN;

  std::vector<double> blocks;
  const auto& series = res.summary.ai_mean;
  for (std::size_t start = 0; start + 30 <= series.size(); start += 30) {
    blocks.push_back(
        std::accumulate(series.begin() + start, series.begin() + start + 30, 0.0) /
        30.0);
  }
  bool c = blocks.size() == 5;
  for (std::size_t i = 1; i < blocks.size(); ++i) c = c && blocks[i] > blocks[i - 1];

  std::string block_text;
  for (double v : blocks) block_text += Format(" %.2f", v);
  return {a && b && c,
          Format("(a) mean final %.2f, 99.9%% lower bound %.2f %s; "
                 "(b) wins %zu/%zu %s; (c) block means%s %s",
                 mean, lower, a ? "ok" : "FAIL", wins, kN, b ? "ok" : "FAIL",
                 block_text.c_str(), c ? "ok" : "FAIL")};
}

// Matches against fake humans with fixed on-grid parameters; calls `seen`
// with the AI's belief after every round.
void PlayFixed(const TransitionParams& params, std::uint64_t seed,
               const std::function<void(int, const BeliefState&)>& seen) {
  MatchSetup setup;
  setup.opponent.params = params;
  PlayMatch(setup, seed,
            [&](const RoundRecord& rec, const AiPlayer& ai, const Opponent&) {
              seen(rec.t, *ai.belief());
            });
}

// 6. Posterior mean error after 150 rounds against the uniform-prior error.
Outcome Identification() {
  const QGrid grid = QGrid::Default();
  const double prior_mean =
      std::accumulate(grid.values().begin(), grid.values().end(), 0.0) / grid.size();
  // For q in {0.1, 0.9} the prior mean is off by the same amount either way.
  const double prior_error =
      (std::abs(prior_mean - 0.1) + std::abs(prior_mean - 0.9)) / 2.0;

  constexpr int kMatches = 200;
  double total = 0.0;
  for (int m = 0; m < kMatches; ++m) {
    const int bits = m % 16;
    const TransitionParams truth{bits & 1 ? 0.9 : 0.1, bits & 2 ? 0.9 : 0.1,
                                 bits & 4 ? 0.9 : 0.1, bits & 8 ? 0.9 : 0.1};
    TransitionParams estimate;
    PlayFixed(truth, 600000 + m, [&](int t, const BeliefState& b) {
      if (t == 149) estimate = b.PosteriorMeanParams();
    });
    const auto e = estimate.AsArray();
    const auto q = truth.AsArray();
    double err = 0.0;
    for (int k = 0; k < 4; ++k) err += std::abs(e[k] - q[k]);
    total += err / 4.0;
  }
  const double posterior_error = total / kMatches;
  return {posterior_error < prior_error,
          Format("posterior mean abs error %.4f vs uniform-prior error %.4f "
                 "(%s 0.2667)",
                 posterior_error, prior_error,
                 posterior_error < 0.2667 ? "also below" : "not below")};
}

// Posterior mass on the true parameter atom grows with data.
Outcome LikelihoodSanity() {
  const QGrid grid = QGrid::Default();
  constexpr int kGames = 200;
  std::mt19937_64 gen(77);
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  double at10 = 0.0, at150 = 0.0;
  for (int m = 0; m < kGames; ++m) {
    const std::array<std::size_t, 4> idx{pick(gen), pick(gen), pick(gen), pick(gen)};
    const TransitionParams truth{grid[idx[0]], grid[idx[1]], grid[idx[2]],
                                 grid[idx[3]]};
    const BeliefState prior = UniformPrior(grid);
    const std::size_t atom = prior.ParamAtomOf(idx);
    PlayFixed(truth, 700000 + m, [&](int t, const BeliefState& b) {
      if (t == 9) at10 += b.ParamMarginal(atom);
      if (t == 149) at150 += b.ParamMarginal(atom);
    });
  }
  at10 /= kGames;
  at150 /= kGames;
  return {at150 > at10,
          Format("mean true-atom mass %.5f at round 10 -> %.5f at round 150 "
                 "(uniform %.5f)",
                 at10, at150, 1.0 / grid.ParamAtoms())};
}

// 7. Determinism, log replay and transcript round-trip.
Outcome Persistence() {
  MatchSetup setup;
  setup.rounds = 80;
  const auto a = RunExperiment(24, setup, 900, 10, 1).transcripts;
  const auto b = RunExperiment(24, setup, 900, 10, 4).transcripts;
  const std::string text_a = TranscriptsToString(a);
  const bool identical = text_a == TranscriptsToString(b);

  const fs::path file = fs::temp_directory_path() / "pennies_acceptance.txt";
  ExportTranscripts(file, a);
  const auto back = ImportTranscripts(file);
  fs::remove(file);
  const bool round_trip = back == a && TranscriptsToString(back) == text_a;

  const fs::path dir = fs::temp_directory_path() / "pennies_acceptance_store";
  fs::remove_all(dir);
  std::vector<std::pair<std::string, std::string>> snapshots;
  {
    StoreOptions opts;
    opts.data_dir = dir;
    SessionStore store(opts);
    std::mt19937_64 gen(5);
    for (SessionMode mode :
         {SessionMode::kProposed, SessionMode::kNash, SessionMode::kPairedStudy}) {
      for (int rounds : {7, 30}) {
        SessionOptions so;
        so.mode = mode;
        so.rounds = rounds;
        so.seed = gen();
        const std::string id = store.Create(so).id;
        const int moves = static_cast<int>(gen() % (rounds + 1));
        for (int i = 0; i < moves; ++i) {
          store.Submit(id, DecisionFromInt(static_cast<int>(gen() % 2)));
        }
        snapshots.emplace_back(id, store.Snapshot(id));
      }
    }
  }
  bool replay = true;
  {
    StoreOptions opts;
    opts.data_dir = dir;
    SessionStore recovered(opts);
    for (const auto& [id, snap] : snapshots) {
      replay = replay && recovered.Snapshot(id) == snap;
    }
  }
  fs::remove_all(dir);
  return {identical && round_trip && replay,
          Format("byte-identical exports %s; round-trip %s; log replay of %zu "
                 "sessions %s",
                 identical ? "ok" : "FAIL", round_trip ? "ok" : "FAIL",
                 snapshots.size(), replay ? "ok" : "FAIL")};
}

}  // namespace
}  // namespace pennies

int main() {
  using pennies::Outcome;
  struct Criterion {
    const char* id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"1", "filter-oracle equivalence", pennies::FilterOracle},
      {"2", "exhaustive tables", pennies::Tables},
      {"3", "softmax constants", pennies::Softmax},
      {"4", "nash draw", pennies::NashDraw},
      {"5", "proposed exploitation", pennies::Exploitation},
      {"6", "parameter identification", pennies::Identification},
      {"6b", "likelihood sanity", pennies::LikelihoodSanity},
      {"7", "determinism and persistence", pennies::Persistence},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failed += !out.pass;
    std::printf("%s criterion %s (%s): %s [%.1f s]\n", out.pass ? "PASS" : "FAIL",
                c.id, c.name, out.detail.c_str(), pennies::Seconds(start));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
