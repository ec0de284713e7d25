// Copyright 2026 The HIVA Kiosk Authors.
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

#ifndef HIVA_ERRORS_H_
#define HIVA_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hiva {

// Base of every error thrown by the engine. Callers that only care about
// "domain failure vs. success" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input. `position()` is a byte offset for JSON
// documents or a 1-based line number for line-oriented files.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class UnavailableError : public Error {
 public:
  using Error::Error;
};

// Short-answer extraction found no candidate sentence.
class NoAnswerError : public Error {
 public:
  using Error::Error;
};

}  // namespace hiva

#endif  // HIVA_ERRORS_H_
