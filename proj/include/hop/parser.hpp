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

// Surface syntax. Top-level items start in column 1; anything indented
// continues the previous item.
//
//   type S = Int
//   effect St { get/0 : S, put/1 : S -> () }
//   hSt : forall a r r'. S -> susp[<St|r> * r'] a -> susp[r * <St|r'>] (a, S)
//   hSt s0 prog = handle^St { get s k ↦ k s {s}, put s' _ k ↦ k s' {()},
//                             return x s ↦ {(x, s)} } s0 prog!
//   (hSt 0 incr)!
//
// Postfix `!` binds tighter than application, so `f x!` is `f (x!)`.

#ifndef HOP_PARSER_HPP_
#define HOP_PARSER_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "hop/syntax.hpp"

namespace hop {

// Parses a complete source text. Free identifiers that name operations,
// constants or definitions are resolved; unknown ones remain variables.
Program parse(std::string_view source, const std::string& filename = "<input>");

// Parses `source` on top of `program` and resolves the result against all
// declarations and definitions seen so far.
void parse_into(Program& program, std::string_view source, const std::string& filename);

// Reads and parses files in order, resolving after the last one so that
// definitions may refer forward across files. Throws IoError.
Program load_program(const std::vector<std::string>& paths);

// Parses a standalone expression resolved against `context`.
ExprPtr parse_expr(std::string_view source, const Program& context);

// Parses a type scheme (aliases from `context` are expanded).
Scheme parse_scheme(std::string_view source, const Program& context);

// Re-runs name resolution on every definition and the main expression.
void resolve(Program& program);
ExprPtr resolve(const Program& program, const ExprPtr& e);

}  // namespace hop

#endif  // HOP_PARSER_HPP_
