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

#include "pennies/game.h"

#include <cmath>
#include <string>

#include "pennies/errors.h"

namespace pennies {

Decision DecisionFromInt(int value) {
  if (value != 0 && value != 1) {
    throw DomainError("decision must be 0 or 1, got " + std::to_string(value));
  }
  return static_cast<Decision>(value);
}

std::string_view DecisionName(Decision d) {
  return d == Decision::kLeft ? "left" : "right";
}

Payoff PayoffFromInt(int value) {
  if (value != 1 && value != -1) {
    throw DomainError("payoff must be +1 or -1, got " + std::to_string(value));
  }
  return static_cast<Payoff>(value);
}

LevelClass::LevelClass(int kappa) : kappa_(kappa) {
  if (kappa < 0 || kappa >= kCount) {
    throw DomainError("level class must be in 0..3, got " +
                      std::to_string(kappa));
  }
}

std::ostream& operator<<(std::ostream& os, LevelClass level) {
  return os << '[' << level.kappa() << ']';
}

Group GroupPartition::GroupOf(LevelClass level) const {
  for (LevelClass member : group1) {
    if (member == level) return Group::kFirst;
  }
  return Group::kSecond;
}

std::pair<Payoff, Payoff> ComputePayoff(Decision u1, Decision u2) {
  const int r1 = 1 - 2 * ((ToInt(u1) + ToInt(u2)) % 2);
  const Payoff p1 = static_cast<Payoff>(r1);
  return {p1, Negate(p1)};
}

Decision LevelPrediction(Player player, LevelClass level,
                         const RoundDecisions& prev) {
  const Decision u1 = prev.u1;
  const Decision u2 = prev.u2;
  if (player == Player::kHuman) {
    switch (level.kappa()) {
      case 0: return u2;
      case 1: return Complement(u1);
      case 2: return Complement(u2);
      default: return u1;
    }
  }
  switch (level.kappa()) {
    case 0: return Complement(u1);
    case 1: return Complement(u2);
    case 2: return u1;
    default: return u2;
  }
}

GroupPartition LevelGroups(Payoff prev_result_p1) {
  if (prev_result_p1 == Payoff::kWin) {
    return {Branch::kWin,
            {LevelClass(0), LevelClass(3)},
            {LevelClass(1), LevelClass(2)}};
  }
  return {Branch::kLose,
          {LevelClass(0), LevelClass(1)},
          {LevelClass(2), LevelClass(3)}};
}

Decision GroupAction(const GroupPartition& partition, Group which,
                     const RoundDecisions& prev) {
  if (BranchOf(HumanPayoff(prev.u1, prev.u2)) != partition.branch) {
    throw ContractViolation(
        "previous decisions are inconsistent with the partition's branch");
  }
  // Both members agree on this branch; the first one is representative.
  return LevelPrediction(Player::kHuman, partition.Members(which)[0], prev);
}

SoftmaxParam::SoftmaxParam(double theta) : theta_(theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw DomainError("softmax theta must be positive and finite");
  }
}

double SoftmaxCompliance(SoftmaxParam theta) {
  return 1.0 / (1.0 + std::exp(-2.0 * theta.theta()));
}

}  // namespace pennies
