// Copyright 2026 The evsum Authors.
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

#ifndef EVSUM_ERROR_H_
#define EVSUM_ERROR_H_

#include <stdexcept>
#include <string>

namespace evsum {

// Broad failure classes. The CLI maps these onto its exit codes.
enum class ErrorCode {
  kParse,       // malformed input document
  kValidation,  // well-formed input that violates a schema invariant
  kIo,          // unreadable or unwritable file
  kInvariant,   // internal consistency check failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure with a 1-based line/column position in the source text.
class ParseError : public Error {
 public:
  ParseError(const std::string &message, int line, int column)
      : Error(ErrorCode::kParse, message), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

inline Error ValidationError(const std::string &message) {
  return Error(ErrorCode::kValidation, message);
}

inline Error InvariantError(const std::string &message) {
  return Error(ErrorCode::kInvariant, message);
}

}  // namespace evsum

#endif  // EVSUM_ERROR_H_
