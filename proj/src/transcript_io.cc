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

#include "pennies/transcript_io.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "pennies/errors.h"

namespace pennies {
namespace {

using nlohmann::json;

json ConfigToJson(const MatchConfig& c) {
  json j;
  j["ai"] = std::string(StrategyName(c.ai));
  j["theta"] = c.theta;
  j["grid"] = c.grid.values();
  j["seed"] = c.seed;
  j["rounds"] = c.rounds;
  j["opponent"] = c.opponent;
  if (!c.tags.empty()) j["tags"] = c.tags;
  return j;
}

MatchConfig ConfigFromJson(std::string_view text, std::size_t line) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(line, std::string("bad transcript header: ") + e.what());
  }
  try {
    MatchConfig c;
    c.ai = ParseStrategyKind(j.at("ai").get<std::string>());
    c.theta = j.at("theta").get<double>();
    c.grid = QGrid(j.at("grid").get<std::vector<double>>());
    c.seed = j.at("seed").get<std::uint64_t>();
    c.rounds = j.at("rounds").get<int>();
    c.opponent = j.at("opponent").get<std::string>();
    if (j.contains("tags")) {
      c.tags = j.at("tags").get<std::map<std::string, std::string>>();
    }
    return c;
  } catch (const std::exception& e) {
    throw ParseError(line, std::string("bad transcript header: ") + e.what());
  }
}

int ParseInt(std::string_view field, std::size_t line) {
  int v = 0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(line, "not an integer: '" + std::string(field) + "'");
  }
  return v;
}

RoundRecord ParseRecord(std::string_view text, std::size_t line) {
  int fields[4];
  std::size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t comma = text.find(',', start);
    if ((i < 3) == (comma == std::string_view::npos)) {
      throw ParseError(line, "expected 't,u1,u2,r1'");
    }
    fields[i] = ParseInt(text.substr(start, comma - start), line);
    start = comma + 1;
  }
  RoundRecord rec;
  try {
    rec = MakeRecord(fields[0], DecisionFromInt(fields[1]),
                     DecisionFromInt(fields[2]));
    if (PayoffFromInt(fields[3]) != rec.r1) {
      throw ParseError(line, "r1 does not match u1,u2");
    }
  } catch (const DomainError& e) {
    throw ParseError(line, e.what());
  }
  return rec;
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void WriteTranscripts(std::ostream& os,
                      std::span<const Transcript> transcripts) {
  for (const Transcript& tr : transcripts) {
    os << kTranscriptMagic << ConfigToJson(tr.config).dump() << '\n';
    for (const RoundRecord& r : tr.records) {
      os << r.t << ',' << ToInt(r.u1) << ',' << ToInt(r.u2) << ','
         << ToInt(r.r1) << '\n';
    }
  }
}

std::string TranscriptsToString(std::span<const Transcript> transcripts) {
  std::ostringstream os;
  WriteTranscripts(os, transcripts);
  return os.str();
}

std::vector<Transcript> TranscriptsFromString(std::string_view text) {
  std::vector<Transcript> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      throw ParseError(line_no, "truncated line (missing LF terminator)");
    }
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.find('\r') != std::string_view::npos) {
      throw ParseError(line_no, "carriage return in line (LF terminators only)");
    }
    if (line.starts_with(kTranscriptMagic)) {
      Transcript tr;
      tr.config = ConfigFromJson(line.substr(kTranscriptMagic.size()), line_no);
      out.push_back(std::move(tr));
      continue;
    }
    if (out.empty()) {
      throw ParseError(line_no, "round record before any transcript header");
    }
    Transcript& tr = out.back();
    RoundRecord rec = ParseRecord(line, line_no);
    if (rec.t != static_cast<int>(tr.records.size())) {
      throw ParseError(line_no, "round index " + std::to_string(rec.t) +
                                    " breaks contiguity");
    }
    if (rec.t >= tr.config.rounds) {
      throw ParseError(line_no, "more records than configured rounds");
    }
    tr.records.push_back(rec);
  }
  return out;
}

std::vector<Transcript> ReadTranscripts(std::istream& is) {
  const std::string text{std::istreambuf_iterator<char>(is),
                         std::istreambuf_iterator<char>()};
  return TranscriptsFromString(text);
}

void ExportTranscripts(const std::filesystem::path& path,
                       std::span<const Transcript> transcripts) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  WriteTranscripts(os, transcripts);
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

std::vector<Transcript> ImportTranscripts(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  return ReadTranscripts(is);
}

void WriteSummaryTable(std::ostream& os, const ExperimentSummary& s) {
  os << "# series: AI (player 2) cumulative payoff; human series is its "
        "negation\n";
  os << "# half_width: 1.96 * sample_sd / sqrt(matches)\n";
  os << "# matches=" << s.matches << " rounds=" << s.rounds
     << " ai_wins=" << s.ai_wins << " human_wins=" << s.human_wins
     << " draws=" << s.draws << '\n';
  os << "round,ai_mean,ai_half_width\n";
  for (std::size_t t = 0; t < s.ai_mean.size(); ++t) {
    os << t << ',' << FormatDouble(s.ai_mean[t]) << ','
       << FormatDouble(s.ai_half_width[t]) << '\n';
  }
}

void WriteHistogramTable(std::ostream& os, const ExperimentSummary& s) {
  os << "# histogram of the human (player 1) final cumulative payoff\n";
  os << "# width=" << s.human_final.width << " total=" << s.human_final.Total()
     << '\n';
  os << "lower,upper,count\n";
  const Histogram& h = s.human_final;
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    os << FormatDouble(h.edges[k]) << ',' << FormatDouble(h.edges[k + 1]) << ','
       << h.counts[k] << '\n';
  }
}

}  // namespace pennies
