# Copyright 2026 The Pennies Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Repeated matching pennies against a level-k opponent model."""

from pennies._core import (
    DEFAULT_GRID,
    DEFAULT_THETA,
    Belief,
    ContractViolation,
    ExhaustedTranscript,
    ParseError,
    SessionError,
    SessionStore,
    Transcript,
    ai_repeat_probability,
    level_groups,
    level_prediction,
    payoff,
    play_match,
    run_experiment,
    softmax_compliance,
    summarize,
    transcripts_from_string,
    transcripts_to_string,
)

LEFT = 0
RIGHT = 1

__all__ = [
    "DEFAULT_GRID",
    "LEFT",
    "DEFAULT_THETA",
    "RIGHT",
    "Belief",
    "ContractViolation",
    "ExhaustedTranscript",
    "ParseError",
    "SessionError",
    "SessionStore",
    "Transcript",
    "ai_repeat_probability",
    "level_groups",
    "level_prediction",
    "payoff",
    "play_match",
    "run_experiment",
    "softmax_compliance",
    "summarize",
    "transcripts_from_string",
    "transcripts_to_string",
]
