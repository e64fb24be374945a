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

#ifndef PENNIES_TRANSCRIPT_IO_H_
#define PENNIES_TRANSCRIPT_IO_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pennies/arena.h"

// Line-oriented transcript files (see docs/formats.md):
//
//   #pennies-transcript {"ai":"proposed","grid":[...],"opponent":...}
//   0,1,0,-1
//   1,0,0,1
//
// One header line per transcript followed by one "t,u1,u2,r1" row per
// round. UTF-8, LF line endings, any number of transcripts per file.

namespace pennies {

inline constexpr std::string_view kTranscriptMagic = "#pennies-transcript ";

void WriteTranscripts(std::ostream& os, std::span<const Transcript> transcripts);
std::string TranscriptsToString(std::span<const Transcript> transcripts);

// Throws ParseError naming the 1-based offending line.
std::vector<Transcript> ReadTranscripts(std::istream& is);
std::vector<Transcript> TranscriptsFromString(std::string_view text);

void ExportTranscripts(const std::filesystem::path& path,
                       std::span<const Transcript> transcripts);
// Throws std::runtime_error when the file cannot be opened, ParseError when
// it is malformed.
std::vector<Transcript> ImportTranscripts(const std::filesystem::path& path);

// "round,ai_mean,ai_half_width" preceded by '#' comment lines that record
// the orientation of the series.
void WriteSummaryTable(std::ostream& os, const ExperimentSummary& summary);
// "lower,upper,count" over the human's final cumulative payoff.
void WriteHistogramTable(std::ostream& os, const ExperimentSummary& summary);

}  // namespace pennies

#endif  // PENNIES_TRANSCRIPT_IO_H_
