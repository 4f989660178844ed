// Copyright 2026 The Detgram Authors.
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

#ifndef DETGRAM_ERRORS_H_
#define DETGRAM_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace detgram {

// Malformed line-oriented input (dictionary, grammar, rewrite table, Fsa
// file). line() is 1-based, or 0 when the error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &message, size_t line)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": " +
                                           message),
        line_(line) {}

  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Malformed annotated text. offset() is a byte offset into the input.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string &message, size_t offset)
      : std::runtime_error("offset " + std::to_string(offset) + ": " +
                           message),
        offset_(offset) {}

  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

}  // namespace detgram

#endif  // DETGRAM_ERRORS_H_
