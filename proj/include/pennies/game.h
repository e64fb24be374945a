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

#ifndef PENNIES_GAME_H_
#define PENNIES_GAME_H_

#include <array>
#include <cstdint>
#include <ostream>
#include <string_view>
#include <utility>

// Rules of the repeated penny-matching game: payoffs, level-k predictions and
// the result-dependent grouping of reasoning levels. Player 1 is the human
// (wins on a match), player 2 is the AI (wins on a mismatch).

namespace pennies {

enum class Decision : std::uint8_t { kLeft = 0, kRight = 1 };

constexpr Decision Complement(Decision d) {
  return d == Decision::kLeft ? Decision::kRight : Decision::kLeft;
}
constexpr int ToInt(Decision d) { return static_cast<int>(d); }
// Throws DomainError unless value is 0 or 1.
Decision DecisionFromInt(int value);
std::string_view DecisionName(Decision d);

// Payoff of one round for one player. Never zero.
enum class Payoff : std::int8_t { kLose = -1, kWin = 1 };

constexpr int ToInt(Payoff p) { return static_cast<int>(p); }
constexpr Payoff Negate(Payoff p) {
  return p == Payoff::kWin ? Payoff::kLose : Payoff::kWin;
}
Payoff PayoffFromInt(int value);

enum class Player : std::uint8_t { kHuman = 1, kAi = 2 };

struct RoundDecisions {
  Decision u1;
  Decision u2;

  friend bool operator==(const RoundDecisions&, const RoundDecisions&) = default;
};

// Equivalence class of reasoning levels modulo 4.
class LevelClass {
 public:
  static constexpr int kCount = 4;

  constexpr LevelClass() = default;
  // Throws DomainError unless kappa is in {0,1,2,3}.
  explicit LevelClass(int kappa);

  constexpr int kappa() const { return kappa_; }
  // Class of level k-1 (mod 4).
  LevelClass Previous() const { return LevelClass((kappa_ + 3) % 4); }

  friend bool operator==(LevelClass, LevelClass) = default;

 private:
  int kappa_ = 0;
};

std::ostream& operator<<(std::ostream& os, LevelClass level);

enum class Branch : std::uint8_t { kWin, kLose };

constexpr Branch BranchOf(Payoff human_result) {
  return human_result == Payoff::kWin ? Branch::kWin : Branch::kLose;
}

enum class Group : std::uint8_t { kFirst = 0, kSecond = 1 };

constexpr int Index(Group g) { return static_cast<int>(g); }
constexpr Group Other(Group g) {
  return g == Group::kFirst ? Group::kSecond : Group::kFirst;
}

// Levels that share the same next-round prediction given the previous
// round's result. Win: {[0],[3]} / {[1],[2]}. Lose: {[0],[1]} / {[2],[3]}.
struct GroupPartition {
  Branch branch;
  std::array<LevelClass, 2> group1;
  std::array<LevelClass, 2> group2;

  const std::array<LevelClass, 2>& Members(Group g) const {
    return g == Group::kFirst ? group1 : group2;
  }
  Group GroupOf(LevelClass level) const;
};

// Returns (r1, r2) with r1 = 1 - 2 mod(u1 + u2, 2) and r2 = -r1.
std::pair<Payoff, Payoff> ComputePayoff(Decision u1, Decision u2);

inline Payoff HumanPayoff(Decision u1, Decision u2) {
  return ComputePayoff(u1, u2).first;
}

// Level-k decision of `player` given the previous round.
Decision LevelPrediction(Player player, LevelClass level,
                         const RoundDecisions& prev);

GroupPartition LevelGroups(Payoff prev_result_p1);

// Action the human is predicted to take when their level lies in `which`.
// Throws ContractViolation if prev does not produce partition.branch.
Decision GroupAction(const GroupPartition& partition, Group which,
                     const RoundDecisions& prev);

// Validated softmax temperature.
class SoftmaxParam {
 public:
  // Throws DomainError unless theta > 0 and finite.
  explicit SoftmaxParam(double theta);

  double theta() const { return theta_; }

 private:
  double theta_;
};

// Probability e^theta / (e^theta + e^-theta) that a player executes the
// level-prescribed action rather than its complement.
double SoftmaxCompliance(SoftmaxParam theta);

inline constexpr double kDefaultTheta = 1.5;

}  // namespace pennies

#endif  // PENNIES_GAME_H_
