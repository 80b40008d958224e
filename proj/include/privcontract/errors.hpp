// Copyright 2026 The privcontract Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVCONTRACT_ERRORS_HPP_
#define PRIVCONTRACT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace privcontract {

// Root of every error thrown by the library. The C API maps each subclass to
// a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied argument is outside the operation's precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A privacy level was evaluated outside the model's interval.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An evaluator produced NaN (or another unusable value).
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double x) : Error(what), x_(x) {}
  double offending_x() const { return x_; }

 private:
  double x_;
};

// The model failed validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The operation needs something the model does not provide (e.g. a slope).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration or data file. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, std::string field = {})
      : Error(what), line_(line), field_(std::move(field)) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A postcondition that must hold by construction did not.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace privcontract

#endif  // PRIVCONTRACT_ERRORS_HPP_
