// Copyright 2026 The emojipred Authors.
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

#ifndef EMOJIPRED_ERROR_HPP_
#define EMOJIPRED_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace emojipred {

// Base class for every error raised by the library. Command-line front ends
// catch this and map it to a non-zero exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

// A malformed line in an input file. `line` is 1-based and counts the header.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class MappingError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Raised when training produces a non-finite loss or parameter.
class TrainingError : public Error {
 public:
  TrainingError(const std::string& what, long step, long last_good_step)
      : Error(what), step_(step), last_good_step_(last_good_step) {}
  long step() const { return step_; }
  long last_good_step() const { return last_good_step_; }

 private:
  long step_;
  long last_good_step_;
};

}  // namespace emojipred

#endif  // EMOJIPRED_ERROR_HPP_
