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

#ifndef PENNIES_ERRORS_H_
#define PENNIES_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pennies {

// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An argument lies outside its mathematical domain (theta <= 0, empty grid).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Internal numerical invariant failed (e.g. the posterior lost all mass).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ExhaustedTranscript : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pennies

#endif  // PENNIES_ERRORS_H_
