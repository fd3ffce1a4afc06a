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

#ifndef HOP_SYNTAX_LEXER_HPP_
#define HOP_SYNTAX_LEXER_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hop/common.hpp"

namespace hop {

struct Token {
  enum class Kind { Lower, Upper, Qualified, Int, Str, Sym, End };

  Kind kind = Kind::End;
  std::string text;
  std::int64_t int_value = 0;
  SourceLoc loc;

  bool is_sym(std::string_view s) const { return kind == Kind::Sym && text == s; }
  bool is_word(std::string_view s) const { return kind == Kind::Lower && text == s; }
};

// Unicode spellings are normalized: ↦ to |->, → to ->, λ to \, ∀ to forall,
// ⟨ ⟩ to < >.
std::vector<Token> lex(std::string_view source, int file);

bool is_keyword(std::string_view word);

std::string describe(const Token& t);

}  // namespace hop

#endif  // HOP_SYNTAX_LEXER_HPP_
