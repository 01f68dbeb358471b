// Copyright 2026 The eigenmark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eigenmark {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Register size or array length out of the supported range.
class SizeError : public Error {
  public:
    using Error::Error;
};

/// Qubit index out of range, duplicated, or colliding with another role.
class QubitIndexError : public Error {
  public:
    using Error::Error;
};

/// The single-winner promise of the original algorithm does not hold.
class PromiseViolation : public Error {
  public:
    using Error::Error;
};

/// A metric whose denominator vanishes or whose inputs are degenerate.
class UndefinedMetric : public Error {
  public:
    using Error::Error;
};

/// Winning margins are not defined for no-winner or all-winner scenarios.
class ScenarioExcluded : public Error {
  public:
    using Error::Error;
};

/// Aggregation needs a scenario class that the inputs do not contain.
class IncompleteCoverage : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    IoError(const std::string &path, const std::string &what)
        : Error(path + ": " + what), path_(path) {}
    [[nodiscard]] const std::string &path() const noexcept { return path_; }

  private:
    std::string path_;
};

/// Malformed formula text or results file; carries the byte offset.
class ParseError : public Error {
  public:
    ParseError(std::size_t offset, const std::string &what)
        : Error("at offset " + std::to_string(offset) + ": " + what),
          offset_(offset) {}
    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

  private:
    std::size_t offset_;
};

} // namespace eigenmark
