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

#include "syntax/lexer.hpp"

#include <array>
#include <cctype>
#include <utility>

#include <fmt/format.h>

namespace hop {

namespace {

constexpr std::array<std::pair<std::string_view, std::string_view>, 7> kUnicode = {{
    {"↦", "|->"},
    {"→", "->"},
    {"λ", "\\"},
    {"∀", "forall"},
    {"⟨", "<"},
    {"⟩", ">"},
    {"⊕", "+"},
}};

// Longest first.
constexpr std::array<std::string_view, 26> kSymbols = {
    "|->", "->", "::", "++", "==", "<>", "(", ")", "{", "}", "[", "]", ",",
    "|",   "=",  "!",  "^",  "\\", ".",  ":", "+", "<", ">", "*", "_", "/",
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

bool is_keyword(std::string_view w) {
  return w == "let" || w == "in" || w == "match" || w == "handle" || w == "return" ||
         w == "effect" || w == "type" || w == "forall" || w == "susp";
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::End: return "end of input";
    case Token::Kind::Int: return fmt::format("integer {}", t.int_value);
    case Token::Kind::Str: return "string literal";
    default: return fmt::format("'{}'", t.text);
  }
}

std::vector<Token> lex(std::string_view src, int file) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](std::size_t bytes, int cols) {
    i += bytes;
    col += cols;
  };
  auto error = [&](const std::string& msg) {
    return HopError(ErrorCode::SyntaxError, msg, SourceLoc{line, col, file});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1, 1);
      continue;
    }
    if (src.substr(i, 2) == "--") {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    Token tok;
    tok.loc = SourceLoc{line, col, file};
    bool matched = false;
    for (const auto& [spelling, canonical] : kUnicode) {
      if (src.substr(i, spelling.size()) == spelling) {
        tok.kind = canonical == "forall" ? Token::Kind::Lower : Token::Kind::Sym;
        tok.text = std::string(canonical);
        advance(spelling.size(), 1);
        matched = true;
        break;
      }
    }
    if (matched) {
      out.push_back(std::move(tok));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      tok.kind = Token::Kind::Int;
      tok.text = std::string(src.substr(i, j - i));
      try {
        tok.int_value = std::stoll(tok.text);
      } catch (const std::out_of_range&) {
        throw error("integer literal out of range");
      }
      advance(j - i, static_cast<int>(j - i));
      out.push_back(std::move(tok));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      if (word == "_") {
        tok.kind = Token::Kind::Sym;
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        tok.kind = Token::Kind::Upper;
        // Label-qualified operation: Ca.abort
        if (j + 1 < src.size() && src[j] == '.' && std::islower(static_cast<unsigned char>(src[j + 1]))) {
          std::size_t k = j + 1;
          while (k < src.size() && ident_char(src[k])) ++k;
          word = std::string(src.substr(i, k - i));
          j = k;
          tok.kind = Token::Kind::Qualified;
        }
      } else {
        tok.kind = Token::Kind::Lower;
      }
      tok.text = std::move(word);
      advance(j - i, static_cast<int>(j - i));
      out.push_back(std::move(tok));
      continue;
    }
    if (c == '"') {
      std::string value;
      std::size_t j = i + 1;
      int width = 1;
      while (true) {
        if (j >= src.size() || src[j] == '\n') throw error("unterminated string literal");
        if (src[j] == '"') break;
        if (src[j] == '\\' && j + 1 < src.size()) {
          char e = src[j + 1];
          value += e == 'n' ? '\n' : e;
          j += 2;
          width += 2;
          continue;
        }
        value += src[j++];
        ++width;
      }
      tok.kind = Token::Kind::Str;
      tok.text = std::move(value);
      advance(j + 1 - i, width + 1);
      out.push_back(std::move(tok));
      continue;
    }
    for (std::string_view sym : kSymbols) {
      if (src.substr(i, sym.size()) == sym) {
        tok.kind = Token::Kind::Sym;
        tok.text = std::string(sym);
        advance(sym.size(), static_cast<int>(sym.size()));
        matched = true;
        break;
      }
    }
    if (!matched) throw error(fmt::format("unexpected character '{}'", c));
    out.push_back(std::move(tok));
  }
  Token end;
  end.loc = SourceLoc{line, col, file};
  out.push_back(end);
  return out;
}

}  // namespace hop
