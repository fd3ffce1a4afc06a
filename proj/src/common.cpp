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

#include "hop/common.hpp"

#include <fmt/format.h>

namespace hop {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateDefinition: return "DuplicateDefinition";
    case ErrorCode::UnknownEffectLabel: return "UnknownEffectLabel";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::UnknownOperation: return "UnknownOperation";
    case ErrorCode::AmbiguousOperation: return "AmbiguousOperation";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnknownTypeVariable: return "UnknownTypeVariable";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::OpenLeftRow: return "OpenLeftRow";
    case ErrorCode::RowMismatch: return "RowMismatch";
    case ErrorCode::OccursCheck: return "OccursCheck";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::EffectMismatch: return "EffectMismatch";
    case ErrorCode::ImpureFunctionBody: return "ImpureFunctionBody";
    case ErrorCode::LatentOperationCall: return "LatentOperationCall";
    case ErrorCode::MissingClause: return "MissingClause";
    case ErrorCode::ExtraClause: return "ExtraClause";
    case ErrorCode::AnnotationRequired: return "AnnotationRequired";
    case ErrorCode::LabelNotLatent: return "LabelNotLatent";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::UnknownEntry: return "UnknownEntry";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

HopError::HopError(ErrorCode code, std::string message, SourceLoc loc)
    : std::runtime_error(fmt::format("error[{}]: {}", error_code_name(code), message)),
      code_(code),
      message_(std::move(message)),
      loc_(loc) {}

std::string format_diagnostic(const Diagnostic& d) {
  std::string where = d.file.empty() ? "<input>" : d.file;
  if (d.loc.line > 0) where += fmt::format(":{}:{}", d.loc.line, d.loc.col);
  return fmt::format("{}: error[{}]: {}", where, error_code_name(d.code), d.message);
}

}  // namespace hop
