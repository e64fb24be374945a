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

#ifndef PENNIES_OPPONENTS_H_
#define PENNIES_OPPONENTS_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pennies/belief.h"
#include "pennies/game.h"
#include "pennies/random.h"

namespace pennies {

// Generative stand-in for a human that follows the softmax level-k model
// exactly, with group transitions driven by real-valued stay probabilities.
struct FakeHuman {
  LevelClass level;
  TransitionParams params;
  SoftmaxParam theta{kDefaultTheta};
};

// Draws q1+, q2+, q1-, q2- (in that order) uniformly on [0,1], then the
// initial level uniformly over the four classes.
FakeHuman SampleFakeHuman(RandomSource& rng, SoftmaxParam theta);

// Plays the level prediction with probability SoftmaxCompliance(theta).
Decision FakeHumanDecide(const FakeHuman& fh, const RoundDecisions& prev,
                         RandomSource& rng);

// Moves to the next round's level: stays in the current group of the
// partition for prev_result_p1 with that group's stay probability,
// otherwise switches; the level inside the destination group is uniform.
FakeHuman FakeHumanTransition(const FakeHuman& fh, Payoff prev_result_p1,
                              RandomSource& rng);

struct ReplayOpponent {
  std::vector<Decision> moves;
};

// Throws ExhaustedTranscript when round_index is past the recording.
Decision ReplayDecide(const ReplayOpponent& ro, std::size_t round_index);

// The human seat as seen by the match engine.
class Opponent {
 public:
  virtual ~Opponent() = default;
  // Move for round `round`; prev is empty only for round 0.
  virtual Decision Move(std::size_t round,
                        const std::optional<RoundDecisions>& prev) = 0;
  virtual std::string Describe() const = 0;
};

struct OpponentSpec {
  enum class Kind { kFakeHuman, kReplay, kUniform };

  Kind kind = Kind::kFakeHuman;
  double theta = kDefaultTheta;
  // Fake human: when unset, sampled per match from the opponent stream.
  std::optional<TransitionParams> params;
  std::optional<LevelClass> initial_level;
  // Replay.
  std::vector<Decision> moves;
  std::string source;

  static OpponentSpec FakeHumanSpec(double theta = kDefaultTheta) {
    OpponentSpec spec;
    spec.theta = theta;
    return spec;
  }
  static OpponentSpec Replay(std::vector<Decision> moves,
                             std::string source = "inline") {
    OpponentSpec spec;
    spec.kind = Kind::kReplay;
    spec.moves = std::move(moves);
    spec.source = std::move(source);
    return spec;
  }
  static OpponentSpec Uniform() {
    OpponentSpec spec;
    spec.kind = Kind::kUniform;
    return spec;
  }

  std::string Label() const;
};

class FakeHumanOpponent : public Opponent {
 public:
  FakeHumanOpponent(FakeHuman fh, RandomSource rng)
      : state_(fh), rng_(std::move(rng)) {}

  Decision Move(std::size_t round,
                const std::optional<RoundDecisions>& prev) override;
  std::string Describe() const override;
  const FakeHuman& state() const { return state_; }

 private:
  FakeHuman state_;
  RandomSource rng_;
};

class ReplayOpponentSeat : public Opponent {
 public:
  explicit ReplayOpponentSeat(ReplayOpponent replay) : replay_(std::move(replay)) {}

  Decision Move(std::size_t round,
                const std::optional<RoundDecisions>& prev) override;
  std::string Describe() const override { return "replay"; }

 private:
  ReplayOpponent replay_;
};

class UniformOpponent : public Opponent {
 public:
  explicit UniformOpponent(RandomSource rng) : rng_(std::move(rng)) {}

  Decision Move(std::size_t round,
                const std::optional<RoundDecisions>& prev) override;
  std::string Describe() const override { return "uniform"; }

 private:
  RandomSource rng_;
};

std::unique_ptr<Opponent> MakeOpponent(const OpponentSpec& spec,
                                       RandomSource rng);

}  // namespace pennies

#endif  // PENNIES_OPPONENTS_H_
