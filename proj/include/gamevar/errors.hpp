// Copyright 2026 The gamevar Authors.
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

#ifndef GAMEVAR_ERRORS_HPP_
#define GAMEVAR_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace gamevar {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based; column 0 means the
// whole line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) +
              (column > 0 ? ":" + std::to_string(column) : std::string()) +
              ": " + message),
        line_(line),
        column_(column),
        detail_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

// Bad caller-supplied argument (unknown player, empty dataset, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed its configured cap. Raised instead of
// truncating.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, double required, double cap)
      : Error(what + ": " + std::to_string(static_cast<long double>(required)) +
              " exceeds cap " + std::to_string(static_cast<long double>(cap))),
        required_(required),
        cap_(cap) {}

  double required() const { return required_; }
  double cap() const { return cap_; }

 private:
  double required_;
  double cap_;
};

class MissingTableEntry : public Error {
 public:
  explicit MissingTableEntry(std::string info_state)
      : Error("missing table entry for info state '" + info_state + "'"),
        info_state_(std::move(info_state)) {}
  const std::string& info_state() const { return info_state_; }

 private:
  std::string info_state_;
};

class SingularDesign : public Error {
 public:
  using Error::Error;
};

class AsymmetricGame : public Error {
 public:
  using Error::Error;
};

}  // namespace gamevar

#endif  // GAMEVAR_ERRORS_HPP_
