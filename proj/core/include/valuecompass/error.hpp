// Copyright 2026 The ValueCompass Authors
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

namespace valuecompass {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input. `line()` is 1-based, or 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class CardinalityError : public Error {
 public:
  CardinalityError(std::size_t found, std::size_t expected)
      : Error("found " + std::to_string(found) + " entries, expected " +
              std::to_string(expected)),
        found_(found),
        expected_(expected) {}
  std::size_t found() const noexcept { return found_; }
  std::size_t expected() const noexcept { return expected_; }

 private:
  std::size_t found_;
  std::size_t expected_;
};

class UniquenessError : public Error {
 public:
  using Error::Error;
};

/// Unknown country, topic or grouping selector.
class ScopeError : public Error {
 public:
  using Error::Error;
};

/// A survey export is missing mandatory columns.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Duplicate or out-of-shape keys when assembling matrices.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Missing or rejected API credential.
class CredentialError : public Error {
 public:
  using Error::Error;
};

}  // namespace valuecompass
