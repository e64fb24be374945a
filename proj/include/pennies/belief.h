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

#ifndef PENNIES_BELIEF_H_
#define PENNIES_BELIEF_H_

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "pennies/game.h"

namespace pennies {

// Finite set of values the transition probabilities may take.
// Non-empty, strictly increasing, every value in the open interval (0, 1).
class QGrid {
 public:
  // Throws DomainError when the invariants do not hold.
  explicit QGrid(std::vector<double> values);

  // {0.1, 0.3, 0.5, 0.7, 0.9}.
  static QGrid Default();
  // Comma separated list, e.g. "0.1,0.3,0.5". Throws DomainError.
  static QGrid Parse(std::string_view text);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  // Number of points in Q^4.
  std::size_t ParamAtoms() const { return size() * size() * size() * size(); }

  friend bool operator==(const QGrid&, const QGrid&) = default;

 private:
  std::vector<double> values_;
};

// Stay probabilities of the simplified transition model. q1 applies to the
// first group of a partition, q2 to the second; "plus" after a human win,
// "minus" after a human loss.
struct TransitionParams {
  double q1_plus = 0.5;
  double q2_plus = 0.5;
  double q1_minus = 0.5;
  double q2_minus = 0.5;

  double Stay(Branch branch, Group group) const;
  std::array<double, 4> AsArray() const {
    return {q1_plus, q2_plus, q1_minus, q2_minus};
  }

  friend bool operator==(const TransitionParams&,
                         const TransitionParams&) = default;
};

// Discrete probability mass over LevelClass x Q^4. Immutable value; the
// filter operations return new states.
//
// Storage is level-major: mass[kappa * |Q|^4 + param_atom], where
// param_atom = ((i1 * n + i2) * n + i3) * n + i4 indexes
// (q1_plus, q2_plus, q1_minus, q2_minus) on the grid.
class BeliefState {
 public:
  // Validates shape, non-negativity and unit total (within 1e-12).
  // Throws InvariantViolation.
  BeliefState(QGrid grid, std::vector<double> mass);

  const QGrid& grid() const { return grid_; }
  std::size_t ParamAtoms() const { return grid_.ParamAtoms(); }
  std::size_t size() const { return mass_.size(); }
  std::span<const double> masses() const { return mass_; }

  double Mass(LevelClass level, std::size_t param_atom) const {
    return mass_[static_cast<std::size_t>(level.kappa()) * ParamAtoms() +
                 param_atom];
  }
  std::array<std::size_t, 4> GridIndices(std::size_t param_atom) const;
  std::size_t ParamAtomOf(const std::array<std::size_t, 4>& indices) const;
  TransitionParams ParamsAt(std::size_t param_atom) const;

  double Total() const;
  // Sum over levels for one parameter atom.
  double ParamMarginal(std::size_t param_atom) const;
  std::array<double, LevelClass::kCount> LevelMarginal() const;
  TransitionParams PosteriorMeanParams() const;

  // Snapshot table: header then one row per atom,
  // "kappa,q1_plus,q2_plus,q1_minus,q2_minus,mass".
  void WriteTable(std::ostream& os) const;
  // Inverse of WriteTable. Throws ParseError.
  static BeliefState ReadTable(std::istream& is);

  friend bool operator==(const BeliefState&, const BeliefState&) = default;

 private:
  QGrid grid_;
  std::vector<double> mass_;
};

// Every atom gets 1 / (4 |Q|^4).
BeliefState UniformPrior(const QGrid& grid);

struct GroupProbability {
  double p_group1 = 0.5;
  Branch branch = Branch::kWin;

  double p_group2() const { return 1.0 - p_group1; }
};

// Predicted probability that the human's next level lies in the first group
// of the partition selected by the previous round's result.
GroupProbability PredictGroupProbability(const BeliefState& belief,
                                         Payoff prev_result_p1);

// Posterior mass per (group, parameter atom), indexed like the second half
// of the BeliefState layout.
struct GroupPosterior {
  std::vector<double> group1;
  std::vector<double> group2;

  const std::vector<double>& Of(Group g) const {
    return g == Group::kFirst ? group1 : group2;
  }
};

// Splits each group mass between its two indistinguishable levels in the
// ratio the prior assigned to them. A pair with zero prior mass is split
// evenly.
BeliefState ReconstructLevels(const GroupPosterior& posterior,
                              const BeliefState& prior,
                              const GroupPartition& partition);

// One step of the recursive filter. `prev` is the previous round's pair,
// whose result selects the partition; `observed_u1` is the human's move in
// the current round.
BeliefState UpdateBelief(const BeliefState& belief, const RoundDecisions& prev,
                         Payoff prev_result_p1, Decision observed_u1,
                         SoftmaxParam theta);

}  // namespace pennies

#endif  // PENNIES_BELIEF_H_
