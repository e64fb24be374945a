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

#include "pennies/strategy.h"

#include <string>

#include "pennies/errors.h"

namespace pennies {

std::string_view StrategyName(StrategyKind kind) {
  return kind == StrategyKind::kProposed ? "proposed" : "nash";
}

StrategyKind ParseStrategyKind(std::string_view name) {
  if (name == "proposed") return StrategyKind::kProposed;
  if (name == "nash") return StrategyKind::kNash;
  throw DomainError("unknown strategy '" + std::string(name) + "'");
}

double AiRepeatProbability(const GroupProbability& p, SoftmaxParam theta) {
  const double c = SoftmaxCompliance(theta);
  return c - (2.0 * c - 1.0) * p.p_group1;
}

Decision ProposedDecide(const BeliefState& belief,
                        const std::optional<RoundDecisions>& prev,
                        SoftmaxParam theta, RandomSource& rng) {
  if (!prev) {
    throw ContractViolation(
        "proposed strategy needs a previous round; use FirstRoundDecide");
  }
  const GroupProbability p =
      PredictGroupProbability(belief, HumanPayoff(prev->u1, prev->u2));
  const double repeat = AiRepeatProbability(p, theta);
  return rng.Bernoulli(repeat) ? prev->u2 : Complement(prev->u2);
}

Decision NashDecide(RandomSource& rng) {
  return rng.Bernoulli(0.5) ? Decision::kRight : Decision::kLeft;
}

Decision FirstRoundDecide(RandomSource& rng) { return NashDecide(rng); }

AiPlayer::AiPlayer(StrategyKind kind, SoftmaxParam theta, const QGrid& grid,
                   RandomSource rng)
    : kind_(kind), theta_(theta), rng_(std::move(rng)) {
  if (kind_ == StrategyKind::kProposed) belief_ = UniformPrior(grid);
}

Decision AiPlayer::Commit() {
  if (committed_) return *committed_;
  if (!last_) {
    committed_ = FirstRoundDecide(rng_);
  } else if (kind_ == StrategyKind::kNash) {
    committed_ = NashDecide(rng_);
  } else {
    committed_ = ProposedDecide(*belief_, last_, theta_, rng_);
  }
  return *committed_;
}

void AiPlayer::Observe(Decision human, Decision ai) {
  if (committed_ && *committed_ != ai) {
    throw ContractViolation("observed AI move differs from the committed one");
  }
  if (belief_ && last_) {
    belief_ = UpdateBelief(*belief_, *last_, HumanPayoff(last_->u1, last_->u2),
                           human, theta_);
  }
  last_ = RoundDecisions{human, ai};
  committed_.reset();
  ++round_;
}

}  // namespace pennies
