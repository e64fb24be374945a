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

#include <cmath>

#include "doctest.h"
#include "pennies/errors.h"
#include "pennies/opponents.h"

namespace pennies {
namespace {

constexpr Decision L = Decision::kLeft;
constexpr Decision R = Decision::kRight;

double ThreeSigma(double p, int n) { return 3.0 * std::sqrt(p * (1 - p) / n); }

TEST_CASE("sampled fake humans") {
  RandomSource a(77), b(77);
  const FakeHuman x = SampleFakeHuman(a, SoftmaxParam(1.5));
  const FakeHuman y = SampleFakeHuman(b, SoftmaxParam(1.5));
  CHECK(x.level == y.level);
  CHECK(x.params == y.params);

  RandomSource rng(8);
  constexpr int kN = 10000;
  std::array<double, 4> sum{};
  std::array<int, 4> levels{};
  for (int i = 0; i < kN; ++i) {
    const FakeHuman fh = SampleFakeHuman(rng, SoftmaxParam(1.5));
    const auto q = fh.params.AsArray();
    for (int k = 0; k < 4; ++k) {
      CHECK(q[k] >= 0.0);
      CHECK(q[k] <= 1.0);
      sum[k] += q[k];
    }
    ++levels[fh.level.kappa()];
  }
  for (double s : sum) {
    CHECK(s / kN >= 0.49);
    CHECK(s / kN <= 0.51);
  }
  for (int c : levels) CHECK(std::abs(c / double(kN) - 0.25) < ThreeSigma(0.25, kN));
}

TEST_CASE("fake human decisions follow the softmax rule") {
  SUBCASE("large theta is deterministic") {
    FakeHuman fh{LevelClass(0), {}, SoftmaxParam(10.0)};
    CHECK(1.0 - SoftmaxCompliance(fh.theta) <= 1e-8);
    RandomSource rng(1);
    for (int i = 0; i < 1000; ++i) CHECK(FakeHumanDecide(fh, {L, R}, rng) == R);
  }
  SUBCASE("theta 1.5 compliance rate") {
    FakeHuman fh{LevelClass(2), {}, SoftmaxParam(1.5)};
    RandomSource rng(2);
    constexpr int kN = 100000;
    int comply = 0;
    for (int i = 0; i < kN; ++i) {
      const RoundDecisions prev{i % 2 ? L : R, i % 3 ? L : R};
      comply += FakeHumanDecide(fh, prev, rng) ==
                LevelPrediction(Player::kHuman, fh.level, prev);
    }
    const double rate = comply / double(kN);
    CHECK(rate >= 0.9500);
    CHECK(rate <= 0.9551);
  }
  SUBCASE("reproducible") {
    FakeHuman fh{LevelClass(1), {}, SoftmaxParam(1.5)};
    RandomSource a(3), b(3);
    for (int i = 0; i < 100; ++i) {
      CHECK(FakeHumanDecide(fh, {R, L}, a) == FakeHumanDecide(fh, {R, L}, b));
    }
  }
}

TEST_CASE("levels in one group act alike") {
  for (Decision u1 : {L, R}) {
    for (Decision u2 : {L, R}) {
      const RoundDecisions prev{u1, u2};
      const GroupPartition part = LevelGroups(HumanPayoff(u1, u2));
      for (Group g : {Group::kFirst, Group::kSecond}) {
        const auto& m = part.Members(g);
        FakeHuman a{m[0], {}, SoftmaxParam(1.5)};
        FakeHuman b{m[1], {}, SoftmaxParam(1.5)};
        RandomSource ra(4), rb(4);
        for (int i = 0; i < 20; ++i) {
          CHECK(FakeHumanDecide(a, prev, ra) == FakeHumanDecide(b, prev, rb));
        }
      }
    }
  }
}

TEST_CASE("forced transitions") {
  SUBCASE("stay probability 1 keeps the group, level uniform inside it") {
    FakeHuman fh{LevelClass(0), {1.0, 1.0, 1.0, 1.0}, SoftmaxParam(1.5)};
    RandomSource rng(5);
    int zeros = 0;
    constexpr int kN = 10000;
    for (int i = 0; i < kN; ++i) {
      const FakeHuman next = FakeHumanTransition(fh, Payoff::kWin, rng);
      CHECK((next.level == LevelClass(0) || next.level == LevelClass(3)));
      zeros += next.level == LevelClass(0);
    }
    CHECK(std::abs(zeros / double(kN) - 0.5) < ThreeSigma(0.5, kN));
  }
  SUBCASE("stay probability 0 forces a switch") {
    FakeHuman fh{LevelClass(0), {0.0, 0.0, 0.0, 0.0}, SoftmaxParam(1.5)};
    RandomSource rng(6);
    for (int i = 0; i < 1000; ++i) {
      const FakeHuman next = FakeHumanTransition(fh, Payoff::kLose, rng);
      CHECK((next.level == LevelClass(2) || next.level == LevelClass(3)));
    }
  }
}

TEST_CASE("group stay frequencies match the configured q") {
  constexpr int kN = 100000;
  const TransitionParams params{0.7, 0.2, 0.4, 0.9};
  for (Payoff r : {Payoff::kWin, Payoff::kLose}) {
    const GroupPartition part = LevelGroups(r);
    for (Group g : {Group::kFirst, Group::kSecond}) {
      const double q = params.Stay(part.branch, g);
      RandomSource rng(100 + Index(g) + 2 * (r == Payoff::kWin));
      int stays = 0;
      for (int i = 0; i < kN; ++i) {
        const FakeHuman fh{part.Members(g)[i % 2], params, SoftmaxParam(1.5)};
        stays += part.GroupOf(FakeHumanTransition(fh, r, rng).level) == g;
      }
      CHECK(std::abs(stays / double(kN) - q) < ThreeSigma(q, kN));
    }
  }
}

TEST_CASE("replay opponent") {
  const ReplayOpponent ro{{L, R, R}};
  CHECK(ReplayDecide(ro, 1) == R);
  CHECK_THROWS_AS(ReplayDecide(ReplayOpponent{{L}}, 1), ExhaustedTranscript);
}

TEST_CASE("opponent seats") {
  auto fake = MakeOpponent(OpponentSpec::FakeHumanSpec(), RandomSource(9));
  auto fake2 = MakeOpponent(OpponentSpec::FakeHumanSpec(), RandomSource(9));
  CHECK(fake->Describe() == fake2->Describe());
  std::optional<RoundDecisions> prev;
  for (std::size_t t = 0; t < 50; ++t) {
    const Decision d = fake->Move(t, prev);
    CHECK(d == fake2->Move(t, prev));
    prev = RoundDecisions{d, t % 2 ? L : R};
  }

  OpponentSpec fixed = OpponentSpec::FakeHumanSpec();
  fixed.params = TransitionParams{0.1, 0.9, 0.1, 0.9};
  fixed.initial_level = LevelClass(2);
  auto seat = MakeOpponent(fixed, RandomSource(1));
  const auto& state = dynamic_cast<const FakeHumanOpponent&>(*seat).state();
  CHECK(state.params == *fixed.params);
  CHECK(state.level == LevelClass(2));

  auto replay = MakeOpponent(OpponentSpec::Replay({R, L}), RandomSource(0));
  CHECK(replay->Move(0, std::nullopt) == R);
  CHECK(replay->Move(1, RoundDecisions{R, R}) == L);
  CHECK_THROWS_AS(replay->Move(2, RoundDecisions{L, R}), ExhaustedTranscript);
  CHECK(OpponentSpec::Replay({}, "a.txt").Label() == "replay:a.txt");
}

}  // namespace
}  // namespace pennies
