// Copyright 2026 The hop Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOP_COMMON_HPP_
#define HOP_COMMON_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hop {

using Name = std::string;
using Label = std::string;

struct SourceLoc {
  int line = 0;
  int col = 0;
  // Index into the program's file table; -1 when unknown.
  int file = -1;
};

enum class ErrorCode {
  SyntaxError,
  DuplicateDefinition,
  UnknownEffectLabel,
  UnknownVariable,
  UnknownOperation,
  AmbiguousOperation,
  ArityMismatch,
  UnknownTypeVariable,
  KindMismatch,
  OpenLeftRow,
  RowMismatch,
  OccursCheck,
  TypeMismatch,
  EffectMismatch,
  ImpureFunctionBody,
  LatentOperationCall,
  MissingClause,
  ExtraClause,
  AnnotationRequired,
  LabelNotLatent,
  ShapeMismatch,
  UnknownEntry,
  IoError,
};

std::string_view error_code_name(ErrorCode code);

// All user-facing failures are reported through this exception. The
// location is optional (line 0 means "no location").
class HopError : public std::runtime_error {
 public:
  HopError(ErrorCode code, std::string message, SourceLoc loc = {});

  ErrorCode code() const { return code_; }
  const SourceLoc& loc() const { return loc_; }
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
  SourceLoc loc_;
};

struct Diagnostic {
  ErrorCode code;
  std::string message;
  SourceLoc loc;
  std::string file;
  std::string definition;
};

// `file:line:col: error[CODE]: message`
std::string format_diagnostic(const Diagnostic& d);

}  // namespace hop

#endif  // HOP_COMMON_HPP_
