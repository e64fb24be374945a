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

#include "pennies/opponents.h"

#include <sstream>

#include "pennies/errors.h"

namespace pennies {

FakeHuman SampleFakeHuman(RandomSource& rng, SoftmaxParam theta) {
  TransitionParams params;
  params.q1_plus = rng.Uniform();
  params.q2_plus = rng.Uniform();
  params.q1_minus = rng.Uniform();
  params.q2_minus = rng.Uniform();
  const LevelClass level(rng.UniformInt(LevelClass::kCount));
  return {level, params, theta};
}

Decision FakeHumanDecide(const FakeHuman& fh, const RoundDecisions& prev,
                         RandomSource& rng) {
  const Decision predicted = LevelPrediction(Player::kHuman, fh.level, prev);
  return rng.Bernoulli(SoftmaxCompliance(fh.theta)) ? predicted
                                                    : Complement(predicted);
}

FakeHuman FakeHumanTransition(const FakeHuman& fh, Payoff prev_result_p1,
                              RandomSource& rng) {
  const GroupPartition partition = LevelGroups(prev_result_p1);
  const Group current = partition.GroupOf(fh.level);
  const double stay = fh.params.Stay(partition.branch, current);
  const Group next = rng.Bernoulli(stay) ? current : Other(current);
  FakeHuman out = fh;
  out.level = partition.Members(next)[rng.UniformInt(2)];
  return out;
}

Decision ReplayDecide(const ReplayOpponent& ro, std::size_t round_index) {
  if (round_index >= ro.moves.size()) {
    throw ExhaustedTranscript("replay has " + std::to_string(ro.moves.size()) +
                              " moves, round " + std::to_string(round_index) +
                              " requested");
  }
  return ro.moves[round_index];
}

std::string OpponentSpec::Label() const {
  switch (kind) {
    case Kind::kFakeHuman: return "fake-human";
    case Kind::kReplay: return "replay:" + source;
    case Kind::kUniform: return "uniform";
  }
  return "unknown";
}

Decision FakeHumanOpponent::Move(std::size_t /*round*/,
                                 const std::optional<RoundDecisions>& prev) {
  if (!prev) return rng_.Bernoulli(0.5) ? Decision::kRight : Decision::kLeft;
  state_ = FakeHumanTransition(state_, HumanPayoff(prev->u1, prev->u2), rng_);
  return FakeHumanDecide(state_, *prev, rng_);
}

std::string FakeHumanOpponent::Describe() const {
  std::ostringstream os;
  const auto& p = state_.params;
  os << "fake-human(q1+=" << p.q1_plus << ", q2+=" << p.q2_plus
     << ", q1-=" << p.q1_minus << ", q2-=" << p.q2_minus
     << ", theta=" << state_.theta.theta() << ")";
  return os.str();
}

Decision ReplayOpponentSeat::Move(std::size_t round,
                                  const std::optional<RoundDecisions>&) {
  return ReplayDecide(replay_, round);
}

Decision UniformOpponent::Move(std::size_t,
                               const std::optional<RoundDecisions>&) {
  return rng_.Bernoulli(0.5) ? Decision::kRight : Decision::kLeft;
}

std::unique_ptr<Opponent> MakeOpponent(const OpponentSpec& spec,
                                       RandomSource rng) {
  switch (spec.kind) {
    case OpponentSpec::Kind::kFakeHuman: {
      const SoftmaxParam theta(spec.theta);
      FakeHuman fh = SampleFakeHuman(rng, theta);
      if (spec.params) fh.params = *spec.params;
      if (spec.initial_level) fh.level = *spec.initial_level;
      return std::make_unique<FakeHumanOpponent>(fh, std::move(rng));
    }
    case OpponentSpec::Kind::kReplay:
      return std::make_unique<ReplayOpponentSeat>(ReplayOpponent{spec.moves});
    case OpponentSpec::Kind::kUniform:
      return std::make_unique<UniformOpponent>(std::move(rng));
  }
  throw ContractViolation("unknown opponent kind");
}

}  // namespace pennies
