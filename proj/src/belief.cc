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

#include "pennies/belief.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "pennies/errors.h"

namespace pennies {
namespace {

constexpr double kTotalTolerance = 1e-12;
constexpr const char* kTableHeader = "kappa,q1_plus,q2_plus,q1_minus,q2_minus,mass";

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double ParseDouble(std::string_view field, std::size_t line) {
  double v = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, "not a number: '" + std::string(field) + "'");
  }
  return v;
}

std::vector<std::string_view> SplitCommas(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(text.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

QGrid::QGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("q grid must not be empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!(v > 0.0 && v < 1.0)) {
      throw DomainError("q grid values must lie in (0,1), got " +
                        FormatDouble(v));
    }
    if (i > 0 && !(values_[i - 1] < v)) {
      throw DomainError("q grid must be strictly increasing");
    }
  }
}

QGrid QGrid::Default() { return QGrid({0.1, 0.3, 0.5, 0.7, 0.9}); }

QGrid QGrid::Parse(std::string_view text) {
  std::vector<double> values;
  for (std::string_view field : SplitCommas(text)) {
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    double v = 0.0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (field.empty() || ec != std::errc() || ptr != end) {
      throw DomainError("malformed q grid entry '" + std::string(field) + "'");
    }
    values.push_back(v);
  }
  return QGrid(std::move(values));
}

double TransitionParams::Stay(Branch branch, Group group) const {
  if (branch == Branch::kWin) {
    return group == Group::kFirst ? q1_plus : q2_plus;
  }
  return group == Group::kFirst ? q1_minus : q2_minus;
}

BeliefState::BeliefState(QGrid grid, std::vector<double> mass)
    : grid_(std::move(grid)), mass_(std::move(mass)) {
  if (mass_.size() != LevelClass::kCount * grid_.ParamAtoms()) {
    throw InvariantViolation("belief has " + std::to_string(mass_.size()) +
                             " atoms, expected " +
                             std::to_string(LevelClass::kCount *
                                            grid_.ParamAtoms()));
  }
  for (double m : mass_) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw InvariantViolation("belief atom mass must be finite and >= 0");
    }
  }
  const double total = Total();
  if (std::abs(total - 1.0) > kTotalTolerance) {
    throw InvariantViolation("belief total mass is " + FormatDouble(total));
  }
}

std::array<std::size_t, 4> BeliefState::GridIndices(
    std::size_t param_atom) const {
  const std::size_t n = grid_.size();
  std::array<std::size_t, 4> idx{};
  for (int k = 3; k >= 0; --k) {
    idx[k] = param_atom % n;
    param_atom /= n;
  }
  return idx;
}

std::size_t BeliefState::ParamAtomOf(
    const std::array<std::size_t, 4>& indices) const {
  const std::size_t n = grid_.size();
  return ((indices[0] * n + indices[1]) * n + indices[2]) * n + indices[3];
}

TransitionParams BeliefState::ParamsAt(std::size_t param_atom) const {
  const auto idx = GridIndices(param_atom);
  return {grid_[idx[0]], grid_[idx[1]], grid_[idx[2]], grid_[idx[3]]};
}

double BeliefState::Total() const {
  double total = 0.0;
  for (double m : mass_) total += m;
  return total;
}

double BeliefState::ParamMarginal(std::size_t param_atom) const {
  double total = 0.0;
  for (int k = 0; k < LevelClass::kCount; ++k) {
    total += Mass(LevelClass(k), param_atom);
  }
  return total;
}

std::array<double, LevelClass::kCount> BeliefState::LevelMarginal() const {
  std::array<double, LevelClass::kCount> out{};
  const std::size_t atoms = ParamAtoms();
  for (int k = 0; k < LevelClass::kCount; ++k) {
    for (std::size_t a = 0; a < atoms; ++a) out[k] += mass_[k * atoms + a];
  }
  return out;
}

TransitionParams BeliefState::PosteriorMeanParams() const {
  std::array<double, 4> mean{};
  for (std::size_t a = 0; a < ParamAtoms(); ++a) {
    const double w = ParamMarginal(a);
    const auto q = ParamsAt(a).AsArray();
    for (int i = 0; i < 4; ++i) mean[i] += w * q[i];
  }
  return {mean[0], mean[1], mean[2], mean[3]};
}

void BeliefState::WriteTable(std::ostream& os) const {
  os << kTableHeader << '\n';
  for (int k = 0; k < LevelClass::kCount; ++k) {
    for (std::size_t a = 0; a < ParamAtoms(); ++a) {
      const auto q = ParamsAt(a).AsArray();
      os << k;
      for (double v : q) os << ',' << FormatDouble(v);
      os << ',' << FormatDouble(Mass(LevelClass(k), a)) << '\n';
    }
  }
}

BeliefState BeliefState::ReadTable(std::istream& is) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(is, line) || line != kTableHeader) {
    throw ParseError(line_no, "expected belief table header");
  }
  struct Row {
    int kappa;
    std::array<double, 4> q;
    double mass;
  };
  std::vector<Row> rows;
  std::set<double> values;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = SplitCommas(line);
    if (fields.size() != 6) throw ParseError(line_no, "expected 6 fields");
    Row row{};
    const double kappa = ParseDouble(fields[0], line_no);
    if (kappa != 0 && kappa != 1 && kappa != 2 && kappa != 3) {
      throw ParseError(line_no, "kappa out of range");
    }
    row.kappa = static_cast<int>(kappa);
    for (int i = 0; i < 4; ++i) {
      row.q[i] = ParseDouble(fields[i + 1], line_no);
      values.insert(row.q[i]);
    }
    row.mass = ParseDouble(fields[5], line_no);
    rows.push_back(row);
  }
  if (rows.empty()) throw ParseError(line_no, "belief table has no rows");
  QGrid grid(std::vector<double>(values.begin(), values.end()));
  std::map<double, std::size_t> index_of;
  for (std::size_t i = 0; i < grid.size(); ++i) index_of[grid[i]] = i;
  const std::size_t atoms = grid.ParamAtoms();
  std::vector<double> mass(LevelClass::kCount * atoms, -1.0);
  if (rows.size() != mass.size()) {
    throw ParseError(line_no, "belief table has " + std::to_string(rows.size()) +
                                  " rows, expected " +
                                  std::to_string(mass.size()));
  }
  const std::size_t n = grid.size();
  for (const Row& row : rows) {
    std::size_t a = 0;
    for (double q : row.q) a = a * n + index_of[q];
    double& slot = mass[row.kappa * atoms + a];
    if (slot >= 0.0) throw ParseError(line_no, "duplicate belief atom");
    slot = row.mass;
  }
  return BeliefState(std::move(grid), std::move(mass));
}

BeliefState UniformPrior(const QGrid& grid) {
  const std::size_t count = LevelClass::kCount * grid.ParamAtoms();
  return BeliefState(grid,
                     std::vector<double>(count, 1.0 / static_cast<double>(count)));
}

GroupProbability PredictGroupProbability(const BeliefState& belief,
                                         Payoff prev_result_p1) {
  const GroupPartition partition = LevelGroups(prev_result_p1);
  double p = 0.0;
  for (std::size_t a = 0; a < belief.ParamAtoms(); ++a) {
    const TransitionParams q = belief.ParamsAt(a);
    double m1 = 0.0;
    double m2 = 0.0;
    for (LevelClass l : partition.group1) m1 += belief.Mass(l, a);
    for (LevelClass l : partition.group2) m2 += belief.Mass(l, a);
    p += q.Stay(partition.branch, Group::kFirst) * m1 +
         (1.0 - q.Stay(partition.branch, Group::kSecond)) * m2;
  }
  return {std::clamp(p, 0.0, 1.0), partition.branch};
}

BeliefState ReconstructLevels(const GroupPosterior& posterior,
                              const BeliefState& prior,
                              const GroupPartition& partition) {
  const std::size_t atoms = prior.ParamAtoms();
  if (posterior.group1.size() != atoms || posterior.group2.size() != atoms) {
    throw ContractViolation("group posterior does not match the prior's grid");
  }
  std::vector<double> mass(prior.size(), 0.0);
  for (Group g : {Group::kFirst, Group::kSecond}) {
    const auto& members = partition.Members(g);
    const auto& group_mass = posterior.Of(g);
    const std::size_t first = members[0].kappa() * atoms;
    const std::size_t second = members[1].kappa() * atoms;
    for (std::size_t a = 0; a < atoms; ++a) {
      const double pi = prior.Mass(members[0], a);
      const double pj = prior.Mass(members[1], a);
      const double m = group_mass[a];
      const double share = (pi + pj) > 0.0 ? pi / (pi + pj) : 0.5;
      mass[first + a] = m * share;
      mass[second + a] = m - mass[first + a];
    }
  }
  return BeliefState(prior.grid(), std::move(mass));
}

BeliefState UpdateBelief(const BeliefState& belief, const RoundDecisions& prev,
                         Payoff prev_result_p1, Decision observed_u1,
                         SoftmaxParam theta) {
  const GroupPartition partition = LevelGroups(prev_result_p1);
  const Decision first_action = GroupAction(partition, Group::kFirst, prev);
  const double compliance = SoftmaxCompliance(theta);
  const double emit1 = observed_u1 == first_action ? compliance : 1.0 - compliance;
  const double emit2 = observed_u1 == first_action ? 1.0 - compliance : compliance;

  const std::size_t atoms = belief.ParamAtoms();
  GroupPosterior post{std::vector<double>(atoms), std::vector<double>(atoms)};
  double normalizer = 0.0;
  for (std::size_t a = 0; a < atoms; ++a) {
    const TransitionParams q = belief.ParamsAt(a);
    const double stay1 = q.Stay(partition.branch, Group::kFirst);
    const double stay2 = q.Stay(partition.branch, Group::kSecond);
    double m1 = 0.0;
    double m2 = 0.0;
    for (LevelClass l : partition.group1) m1 += belief.Mass(l, a);
    for (LevelClass l : partition.group2) m2 += belief.Mass(l, a);
    post.group1[a] = emit1 * (stay1 * m1 + (1.0 - stay2) * m2);
    post.group2[a] = emit2 * ((1.0 - stay1) * m1 + stay2 * m2);
    normalizer += post.group1[a] + post.group2[a];
  }
  if (!(normalizer > 0.0) || !std::isfinite(normalizer)) {
    throw InvariantViolation("posterior has no mass");
  }
  for (std::size_t a = 0; a < atoms; ++a) {
    post.group1[a] /= normalizer;
    post.group2[a] /= normalizer;
  }
  return ReconstructLevels(post, belief, partition);
}

}  // namespace pennies
