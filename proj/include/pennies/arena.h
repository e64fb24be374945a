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

#ifndef PENNIES_ARENA_H_
#define PENNIES_ARENA_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pennies/belief.h"
#include "pennies/game.h"
#include "pennies/opponents.h"
#include "pennies/strategy.h"

namespace pennies {

struct RoundRecord {
  int t = 0;
  Decision u1 = Decision::kLeft;
  Decision u2 = Decision::kLeft;
  Payoff r1 = Payoff::kWin;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

RoundRecord MakeRecord(int t, Decision u1, Decision u2);

struct MatchConfig {
  StrategyKind ai = StrategyKind::kProposed;
  double theta = kDefaultTheta;
  QGrid grid = QGrid::Default();
  std::uint64_t seed = 0;
  int rounds = 150;
  std::string opponent = "fake-human";
  // Free-form annotations carried through the file format (session id,
  // study run index, ...).
  std::map<std::string, std::string> tags;

  friend bool operator==(const MatchConfig&, const MatchConfig&) = default;
};

struct Transcript {
  MatchConfig config;
  std::vector<RoundRecord> records;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// Everything about a match except its seed.
struct MatchSetup {
  StrategyKind ai = StrategyKind::kProposed;
  double theta = kDefaultTheta;
  QGrid grid = QGrid::Default();
  int rounds = 150;
  OpponentSpec opponent = OpponentSpec::FakeHumanSpec();
};

// Stream ids for the per-match random sources.
inline constexpr std::uint64_t kAiStream = 1;
inline constexpr std::uint64_t kOpponentStream = 2;

// Called after every round with the AI's state after its update.
using RoundObserver = std::function<void(const RoundRecord&, const AiPlayer&,
                                         const Opponent&)>;

// Plays one match. Round 0: both seats draw uniformly. Round t >= 1: the AI
// commits from rounds < t, the opponent reacts to round t-1, then the AI
// observes the human's move and updates its belief. Throws
// ContractViolation when rounds < 1.
Transcript PlayMatch(const MatchSetup& setup, std::uint64_t seed,
                     const RoundObserver& observer = {});

// Prefix sums of the player's payoffs.
std::vector<int> CumulativePayoff(const Transcript& tr, Player player);

struct Histogram {
  int width = 10;
  // bins.size() + 1 edges; bin k covers [edges[k], edges[k+1]).
  std::vector<double> edges;
  std::vector<std::size_t> counts;

  std::size_t Total() const;
};

// Bins of `width` centered on 0, wide enough to cover [-span, span].
Histogram MakeHistogram(std::span<const int> values, int width, int span);

// AI cumulative payoff is the plotted series; the histogram is over the
// human's final payoff.
struct ExperimentSummary {
  int rounds = 0;
  std::size_t matches = 0;
  std::vector<double> ai_mean;
  std::vector<double> ai_half_width;
  Histogram human_final;
  std::size_t ai_wins = 0;
  std::size_t human_wins = 0;
  std::size_t draws = 0;

  friend bool operator==(const ExperimentSummary&,
                         const ExperimentSummary&) = default;
};

inline bool operator==(const Histogram& a, const Histogram& b) {
  return a.width == b.width && a.edges == b.edges && a.counts == b.counts;
}

// Mean and 1.96 s / sqrt(n) half-width per round. Throws ContractViolation
// for fewer than 2 transcripts or unequal lengths.
ExperimentSummary Summarize(std::span<const Transcript> transcripts,
                            int hist_width = 10);

struct ExperimentResult {
  std::vector<Transcript> transcripts;
  ExperimentSummary summary;
};

// Runs n matches with seeds base_seed + i. Matches may run on several
// threads; results are ordered by match index. threads == 0 picks the
// hardware concurrency.
ExperimentResult RunExperiment(std::size_t n, const MatchSetup& setup,
                               std::uint64_t base_seed, int hist_width = 10,
                               unsigned threads = 0);

}  // namespace pennies

#endif  // PENNIES_ARENA_H_
