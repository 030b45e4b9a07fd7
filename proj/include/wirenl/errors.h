// Copyright 2026 The wirenl Authors.
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

#ifndef WIRENL_ERRORS_H_
#define WIRENL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace wirenl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A correlator vector that maps to a table with a negative entry.
class NegativeProbability : public Error {
 public:
  NegativeProbability(int index, const std::string& what)
      : Error(what), index_(index) {}
  // Flat Box3 index of the first negative entry.
  int index() const { return index_; }

 private:
  int index_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int position, const std::string& reason)
      : Error(Format(line, position, reason)), line_(line), position_(position) {}
  // 1-based; 0 when not applicable.
  int line() const { return line_; }
  int position() const { return position_; }

 private:
  static std::string Format(int line, int position, const std::string& reason) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (position > 0) out += "position " + std::to_string(position) + ": ";
    return out + reason;
  }
  int line_;
  int position_;
};

// A probability table that is negative somewhere or not normalized.
class InvalidBox : public Error {
 public:
  using Error::Error;
};

// A bipartite box that signals where a non-signaling one is required.
class SignalingInput : public Error {
 public:
  using Error::Error;
};

class NotNonsignaling : public Error {
 public:
  using Error::Error;
};

class NotFullyBilocal : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class MalformedProblem : public Error {
 public:
  using Error::Error;
};

class UnboundedClass : public Error {
 public:
  using Error::Error;
};

}  // namespace wirenl

#endif  // WIRENL_ERRORS_H_
