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

#ifndef PENNIES_STRATEGY_H_
#define PENNIES_STRATEGY_H_

#include <optional>
#include <string_view>

#include "pennies/belief.h"
#include "pennies/game.h"
#include "pennies/random.h"

namespace pennies {

enum class StrategyKind { kProposed, kNash };

std::string_view StrategyName(StrategyKind kind);
// Accepts "proposed" or "nash". Throws DomainError.
StrategyKind ParseStrategyKind(std::string_view name);

// Probability that the AI repeats its previous move: the softmax
// counter-move rule marginalized over the predicted group distribution.
// Equals c - (2c - 1) p_group1 with c = SoftmaxCompliance(theta).
double AiRepeatProbability(const GroupProbability& p, SoftmaxParam theta);

// Belief-driven move. Consumes exactly one draw. Throws ContractViolation
// when there is no previous round.
Decision ProposedDecide(const BeliefState& belief,
                        const std::optional<RoundDecisions>& prev,
                        SoftmaxParam theta, RandomSource& rng);

// Uniform move; one draw.
Decision NashDecide(RandomSource& rng);

// Move for round 0 under either strategy; one draw.
Decision FirstRoundDecide(RandomSource& rng);

// The AI seat: strategy state carried across rounds of one game.
//
//   AiPlayer ai(...);
//   Decision mine = ai.Commit();      // from rounds < t only
//   ... human reveals u1 ...
//   ai.Observe(u1, mine);
class AiPlayer {
 public:
  AiPlayer(StrategyKind kind, SoftmaxParam theta, const QGrid& grid,
           RandomSource rng);

  // Decides the move for the current round. Calling twice without an
  // intervening Observe returns the stored move without drawing.
  Decision Commit();
  // Records the completed round and updates the belief.
  void Observe(Decision human, Decision ai);

  StrategyKind kind() const { return kind_; }
  SoftmaxParam theta() const { return theta_; }
  int round() const { return round_; }
  const std::optional<RoundDecisions>& last_round() const { return last_; }
  std::optional<Decision> committed() const { return committed_; }
  // Only the proposed strategy carries a belief.
  const std::optional<BeliefState>& belief() const { return belief_; }
  const RandomSource& rng() const { return rng_; }

 private:
  StrategyKind kind_;
  SoftmaxParam theta_;
  std::optional<BeliefState> belief_;
  RandomSource rng_;
  std::optional<RoundDecisions> last_;
  std::optional<Decision> committed_;
  int round_ = 0;
};

}  // namespace pennies

#endif  // PENNIES_STRATEGY_H_
