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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "pennies/arena.h"
#include "pennies/belief.h"
#include "pennies/errors.h"
#include "pennies/game.h"
#include "pennies/service.h"
#include "pennies/strategy.h"
#include "pennies/transcript_io.h"

namespace py = pybind11;

namespace pennies {
namespace {

RoundDecisions Pair(int u1, int u2) {
  return {DecisionFromInt(u1), DecisionFromInt(u2)};
}

QGrid GridOrDefault(const std::optional<std::vector<double>>& grid) {
  return grid ? QGrid(*grid) : QGrid::Default();
}

OpponentSpec ParseOpponent(const std::string& name, double theta) {
  if (name == "fake-human") return OpponentSpec::FakeHumanSpec(theta);
  if (name == "uniform") return OpponentSpec::Uniform();
  throw DomainError("unknown opponent '" + name + "'");
}

MatchSetup Setup(const std::string& ai, double theta,
                 const std::optional<std::vector<double>>& grid, int rounds,
                 const std::string& opponent,
                 const std::optional<std::vector<int>>& replay) {
  MatchSetup setup;
  setup.ai = ParseStrategyKind(ai);
  setup.theta = theta;
  setup.grid = GridOrDefault(grid);
  setup.rounds = rounds;
  if (replay) {
    std::vector<Decision> moves;
    for (int m : *replay) moves.push_back(DecisionFromInt(m));
    setup.opponent = OpponentSpec::Replay(std::move(moves));
  } else {
    setup.opponent = ParseOpponent(opponent, theta);
  }
  return setup;
}

py::dict ParamsDict(const TransitionParams& p) {
  py::dict d;
  d["q1_plus"] = p.q1_plus;
  d["q2_plus"] = p.q2_plus;
  d["q1_minus"] = p.q1_minus;
  d["q2_minus"] = p.q2_minus;
  return d;
}

py::dict SummaryDict(const ExperimentSummary& s) {
  py::dict d;
  d["rounds"] = s.rounds;
  d["matches"] = s.matches;
  d["ai_mean"] = s.ai_mean;
  d["ai_half_width"] = s.ai_half_width;
  d["ai_wins"] = s.ai_wins;
  d["human_wins"] = s.human_wins;
  d["draws"] = s.draws;
  d["histogram_edges"] = s.human_final.edges;
  d["histogram_counts"] = s.human_final.counts;
  return d;
}

py::dict ViewDict(const SessionView& v) {
  py::dict d;
  d["id"] = v.id;
  d["mode"] = v.mode;
  d["status"] = std::string(SessionStatusName(v.status));
  d["rounds"] = v.rounds;
  d["runs"] = v.runs;
  d["run"] = v.run;
  d["round_index"] = v.round_index;
  d["cumulative_human"] = v.cumulative_human;
  return d;
}

py::dict ResultDict(const RoundResult& r) {
  py::dict d;
  d["human"] = ToInt(r.human);
  d["ai"] = ToInt(r.ai);
  d["r1"] = ToInt(r.r1);
  d["cumulative_human"] = r.cumulative_human;
  d["round_index"] = r.round_index;
  d["run"] = r.run;
  d["move"] = r.move;
  d["run_complete"] = r.run_complete;
  d["session_complete"] = r.session_complete;
  return d;
}

std::vector<std::tuple<int, int, int, int>> Records(const Transcript& tr) {
  std::vector<std::tuple<int, int, int, int>> out;
  for (const RoundRecord& r : tr.records) {
    out.emplace_back(r.t, ToInt(r.u1), ToInt(r.u2), ToInt(r.r1));
  }
  return out;
}

}  // namespace
}  // namespace pennies

PYBIND11_MODULE(_core, m) {
  using namespace pennies;
  m.doc() = "Repeated matching pennies with a level-k opponent model.";

  py::register_exception<ContractViolation>(m, "ContractViolation",
                                            PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ExhaustedTranscript>(m, "ExhaustedTranscript",
                                              PyExc_IndexError);
  py::register_exception<SessionError>(m, "SessionError", PyExc_RuntimeError);

  m.attr("DEFAULT_THETA") = kDefaultTheta;
  m.attr("DEFAULT_GRID") = QGrid::Default().values();

  m.def("payoff", [](int u1, int u2) {
    const auto [r1, r2] = ComputePayoff(DecisionFromInt(u1), DecisionFromInt(u2));
    return std::make_pair(ToInt(r1), ToInt(r2));
  }, py::arg("u1"), py::arg("u2"));
  m.def("level_prediction", [](int player, int kappa, int u1, int u2) {
    if (player != 1 && player != 2) throw DomainError("player must be 1 or 2");
    return ToInt(LevelPrediction(player == 1 ? Player::kHuman : Player::kAi,
                                 LevelClass(kappa), Pair(u1, u2)));
  }, py::arg("player"), py::arg("kappa"), py::arg("u1"), py::arg("u2"));
  m.def("level_groups", [](int r1) {
    const GroupPartition p = LevelGroups(PayoffFromInt(r1));
    return std::make_pair(
        std::vector<int>{p.group1[0].kappa(), p.group1[1].kappa()},
        std::vector<int>{p.group2[0].kappa(), p.group2[1].kappa()});
  }, py::arg("r1"));
  m.def("softmax_compliance",
        [](double theta) { return SoftmaxCompliance(SoftmaxParam(theta)); },
        py::arg("theta"));
  m.def("ai_repeat_probability", [](double p_group1, double theta) {
    return AiRepeatProbability({p_group1, Branch::kWin}, SoftmaxParam(theta));
  }, py::arg("p_group1"), py::arg("theta"));

  py::class_<BeliefState>(m, "Belief")
      .def_static("uniform", [](const std::optional<std::vector<double>>& grid) {
        return UniformPrior(GridOrDefault(grid));
      }, py::arg("grid") = py::none())
      .def("update", [](const BeliefState& b, int prev_u1, int prev_u2,
                        int observed_u1, double theta) {
        const RoundDecisions prev = Pair(prev_u1, prev_u2);
        return UpdateBelief(b, prev, HumanPayoff(prev.u1, prev.u2),
                            DecisionFromInt(observed_u1), SoftmaxParam(theta));
      }, py::arg("prev_u1"), py::arg("prev_u2"), py::arg("observed_u1"),
           py::arg("theta") = kDefaultTheta)
      .def("predict_group1", [](const BeliefState& b, int r1) {
        return PredictGroupProbability(b, PayoffFromInt(r1)).p_group1;
      }, py::arg("prev_r1"))
      .def_property_readonly("grid", [](const BeliefState& b) {
        return b.grid().values();
      })
      .def_property_readonly("masses", [](const BeliefState& b) {
        return std::vector<double>(b.masses().begin(), b.masses().end());
      })
      .def("mass", [](const BeliefState& b, int kappa,
                      const std::array<std::size_t, 4>& indices) {
        return b.Mass(LevelClass(kappa), b.ParamAtomOf(indices));
      }, py::arg("kappa"), py::arg("indices"))
      .def("total", &BeliefState::Total)
      .def("level_marginal", &BeliefState::LevelMarginal)
      .def("posterior_mean", [](const BeliefState& b) {
        return ParamsDict(b.PosteriorMeanParams());
      })
      .def("table", [](const BeliefState& b) {
        std::ostringstream os;
        b.WriteTable(os);
        return os.str();
      })
      .def_static("from_table", [](const std::string& text) {
        std::istringstream is(text);
        return BeliefState::ReadTable(is);
      })
      .def("__len__", &BeliefState::size)
      .def("__eq__", [](const BeliefState& a, const BeliefState& b) {
        return a == b;
      });

  py::class_<Transcript>(m, "Transcript")
      .def_property_readonly("ai", [](const Transcript& t) {
        return std::string(StrategyName(t.config.ai));
      })
      .def_property_readonly("theta", [](const Transcript& t) { return t.config.theta; })
      .def_property_readonly("seed", [](const Transcript& t) { return t.config.seed; })
      .def_property_readonly("rounds", [](const Transcript& t) { return t.config.rounds; })
      .def_property_readonly("opponent", [](const Transcript& t) { return t.config.opponent; })
      .def_property_readonly("tags", [](const Transcript& t) { return t.config.tags; })
      .def_property_readonly("records", &Records)
      .def("cumulative", [](const Transcript& t, int player) {
        if (player != 1 && player != 2) throw DomainError("player must be 1 or 2");
        return CumulativePayoff(t, player == 1 ? Player::kHuman : Player::kAi);
      }, py::arg("player") = 2)
      .def("__eq__", [](const Transcript& a, const Transcript& b) { return a == b; });

  m.def("play_match", [](std::uint64_t seed, const std::string& ai, double theta,
                         const std::optional<std::vector<double>>& grid, int rounds,
                         const std::string& opponent,
                         const std::optional<std::vector<int>>& replay) {
    py::gil_scoped_release release;
    return PlayMatch(Setup(ai, theta, grid, rounds, opponent, replay), seed);
  }, py::arg("seed"), py::arg("ai") = "proposed", py::arg("theta") = kDefaultTheta,
        py::arg("grid") = py::none(), py::arg("rounds") = 150,
        py::arg("opponent") = "fake-human", py::arg("replay") = py::none());

  m.def("run_experiment", [](std::size_t n, std::uint64_t seed, const std::string& ai,
                             double theta,
                             const std::optional<std::vector<double>>& grid,
                             int rounds, const std::string& opponent,
                             int hist_width, unsigned threads) {
    ExperimentResult res;
    {
      py::gil_scoped_release release;
      res = RunExperiment(n, Setup(ai, theta, grid, rounds, opponent, std::nullopt),
                          seed, hist_width, threads);
    }
    return std::make_pair(SummaryDict(res.summary), res.transcripts);
  }, py::arg("n"), py::arg("seed"), py::arg("ai") = "proposed",
        py::arg("theta") = kDefaultTheta, py::arg("grid") = py::none(),
        py::arg("rounds") = 150, py::arg("opponent") = "fake-human",
        py::arg("hist_width") = 10, py::arg("threads") = 0);

  m.def("summarize", [](const std::vector<Transcript>& trs, int hist_width) {
    return SummaryDict(Summarize(trs, hist_width));
  }, py::arg("transcripts"), py::arg("hist_width") = 10);
  m.def("transcripts_to_string", [](const std::vector<Transcript>& trs) {
    return TranscriptsToString(trs);
  }, py::arg("transcripts"));
  m.def("transcripts_from_string", [](const std::string& text) {
    return TranscriptsFromString(text);
  }, py::arg("text"));

  py::class_<SessionStore>(m, "SessionStore")
      .def(py::init([](const std::optional<std::filesystem::path>& data_dir) {
        StoreOptions opts;
        if (data_dir) opts.data_dir = *data_dir;
        return std::make_unique<SessionStore>(opts);
      }), py::arg("data_dir") = py::none())
      .def("create", [](SessionStore& s, const std::string& mode, int rounds,
                        std::optional<std::uint64_t> seed, double theta) {
        SessionOptions o;
        o.mode = ParseSessionMode(mode);
        o.rounds = rounds;
        o.seed = seed;
        o.theta = theta;
        return ViewDict(s.Create(o));
      }, py::arg("mode") = "paired-study", py::arg("rounds") = 150,
           py::arg("seed") = py::none(), py::arg("theta") = kDefaultTheta)
      .def("submit", [](SessionStore& s, const std::string& id, int choice,
                        std::optional<int> move) {
        return ResultDict(s.Submit(id, DecisionFromInt(choice), move));
      }, py::arg("id"), py::arg("choice"), py::arg("move") = py::none())
      .def("get", [](const SessionStore& s, const std::string& id) {
        return ViewDict(s.Get(id));
      }, py::arg("id"))
      .def("transcripts", &SessionStore::GetTranscripts, py::arg("id"))
      .def("snapshot", &SessionStore::Snapshot, py::arg("id"))
      .def("session_ids", &SessionStore::SessionIds);
}
