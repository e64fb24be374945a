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

#include "pennies/arena.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "pennies/errors.h"

namespace pennies {
namespace {

constexpr double kZ95 = 1.96;

int BinIndex(int value, int width) {
  return static_cast<int>(
      std::floor((static_cast<double>(value) + width / 2.0) / width));
}

}  // namespace

RoundRecord MakeRecord(int t, Decision u1, Decision u2) {
  return {t, u1, u2, HumanPayoff(u1, u2)};
}

Transcript PlayMatch(const MatchSetup& setup, std::uint64_t seed,
                     const RoundObserver& observer) {
  if (setup.rounds < 1) throw ContractViolation("a match needs rounds >= 1");
  const SoftmaxParam theta(setup.theta);
  AiPlayer ai(setup.ai, theta, setup.grid,
              RandomSource::Derive(seed, kAiStream));
  auto opponent =
      MakeOpponent(setup.opponent, RandomSource::Derive(seed, kOpponentStream));

  Transcript tr;
  tr.config = {setup.ai,  setup.theta, setup.grid,
               seed,      setup.rounds, setup.opponent.Label(), {}};
  tr.records.reserve(setup.rounds);
  for (int t = 0; t < setup.rounds; ++t) {
    const Decision ai_move = ai.Commit();
    const Decision human_move = opponent->Move(t, ai.last_round());
    ai.Observe(human_move, ai_move);
    tr.records.push_back(MakeRecord(t, human_move, ai_move));
    if (observer) observer(tr.records.back(), ai, *opponent);
  }
  return tr;
}

std::vector<int> CumulativePayoff(const Transcript& tr, Player player) {
  std::vector<int> out;
  out.reserve(tr.records.size());
  int sum = 0;
  for (const RoundRecord& rec : tr.records) {
    sum += player == Player::kHuman ? ToInt(rec.r1) : -ToInt(rec.r1);
    out.push_back(sum);
  }
  return out;
}

std::size_t Histogram::Total() const {
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  return total;
}

Histogram MakeHistogram(std::span<const int> values, int width, int span) {
  if (width < 1) throw ContractViolation("histogram width must be >= 1");
  int lo = BinIndex(-span, width);
  int hi = BinIndex(span, width);
  for (int v : values) {
    lo = std::min(lo, BinIndex(v, width));
    hi = std::max(hi, BinIndex(v, width));
  }
  Histogram h;
  h.width = width;
  h.counts.assign(static_cast<std::size_t>(hi - lo + 1), 0);
  for (int k = lo; k <= hi + 1; ++k) {
    h.edges.push_back(k * static_cast<double>(width) - width / 2.0);
  }
  for (int v : values) ++h.counts[BinIndex(v, width) - lo];
  return h;
}

ExperimentSummary Summarize(std::span<const Transcript> transcripts,
                            int hist_width) {
  const std::size_t n = transcripts.size();
  if (n < 2) throw ContractViolation("summary needs at least 2 matches");
  const std::size_t rounds = transcripts.front().records.size();
  std::vector<std::vector<int>> series;
  series.reserve(n);
  for (const Transcript& tr : transcripts) {
    if (tr.records.size() != rounds) {
      throw ContractViolation("transcripts have unequal lengths");
    }
    series.push_back(CumulativePayoff(tr, Player::kAi));
  }

  ExperimentSummary s;
  s.rounds = static_cast<int>(rounds);
  s.matches = n;
  s.ai_mean.resize(rounds);
  s.ai_half_width.resize(rounds);
  for (std::size_t t = 0; t < rounds; ++t) {
    double sum = 0.0;
    for (const auto& row : series) sum += row[t];
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (const auto& row : series) sq += (row[t] - mean) * (row[t] - mean);
    const double sd = std::sqrt(sq / static_cast<double>(n - 1));
    s.ai_mean[t] = mean;
    s.ai_half_width[t] = kZ95 * sd / std::sqrt(static_cast<double>(n));
  }

  std::vector<int> human_final;
  human_final.reserve(n);
  for (const auto& row : series) {
    const int ai_final = rounds == 0 ? 0 : row.back();
    human_final.push_back(-ai_final);
    if (ai_final > 0) {
      ++s.ai_wins;
    } else if (ai_final < 0) {
      ++s.human_wins;
    } else {
      ++s.draws;
    }
  }
  s.human_final =
      MakeHistogram(human_final, hist_width, static_cast<int>(rounds));
  return s;
}

ExperimentResult RunExperiment(std::size_t n, const MatchSetup& setup,
                               std::uint64_t base_seed, int hist_width,
                               unsigned threads) {
  if (n < 2) throw ContractViolation("an experiment needs n >= 2");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

  ExperimentResult result;
  result.transcripts.resize(n);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        result.transcripts[i] = PlayMatch(setup, base_seed + i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  result.summary = Summarize(result.transcripts, hist_width);
  return result;
}

}  // namespace pennies
