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

#include <string>

#include <gtest/gtest.h>

#include "hop/parser.hpp"
#include "hop/stdlib.hpp"
#include "hop/typecheck.hpp"

namespace hop {
namespace {

const Stdlib& lib() {
  static const Stdlib l = load_stdlib();
  return l;
}

Program with_stdlib(const std::string& path) {
  std::vector<std::string> paths = stdlib_sources();
  paths.push_back(path);
  return load_program(paths);
}

std::string fixture(const std::string& rel) { return std::string(HOP_TEST_DATA_DIR) + "/" + rel; }

ErrorCode toplevel_error(const std::string& text) {
  try {
    check_toplevel(lib().env(), parse_expr(text, lib().program));
  } catch (const HopError& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorCode::IoError;
}

TEST(Typecheck, StdlibIsWellTyped) {
  EXPECT_TRUE(lib().types.ok());
  for (const HandlerEntry& h : lib().handlers) {
    auto it = lib().types.schemes.find(h.name);
    ASSERT_NE(it, lib().types.schemes.end()) << h.name;
    EXPECT_TRUE(scheme_equiv(it->second, h.expected_scheme)) << h.name << ": " << to_string(it->second);
  }
}

TEST(Typecheck, HandlerSchemes) {
  const Program& p = lib().program;
  EXPECT_TRUE(scheme_equiv(lib().types.schemes.at("hState"),
                           parse_scheme("forall a r r'. Int -> susp[<St|r> * r'] a -> susp[r * <St|r'>] (a, Int)", p)));
  EXPECT_TRUE(scheme_equiv(lib().types.schemes.at("hCatch"),
                           parse_scheme("forall a r r'. susp[<Ca|r> * r'] a -> susp[r * <Ca|r'>] (Maybe a)", p)));
}

TEST(Typecheck, RejectsOperationUnderLatentEffect) {
  ProgramTypes t = check_program(with_stdlib(fixture("reject/inline_handler.hop")));
  ASSERT_FALSE(t.ok());
  EXPECT_EQ(t.errors[0].code, ErrorCode::LatentOperationCall);
}

TEST(Typecheck, RejectsUnhandledPutInsideCatch) {
  ProgramTypes t = check_program(with_stdlib(fixture("reject/catch_put.hop")));
  ASSERT_FALSE(t.ok());
  EXPECT_EQ(t.errors[0].code, ErrorCode::EffectMismatch);
}

TEST(Typecheck, AcceptsReorderedHandlers) {
  ProgramTypes t = check_program(with_stdlib(fixture("data/ordered.hop")));
  EXPECT_TRUE(t.ok()) << (t.ok() ? "" : t.errors[0].message);
}

TEST(Typecheck, ToplevelErrors) {
  EXPECT_EQ(toplevel_error("1 + {2}"), ErrorCode::TypeMismatch);
  EXPECT_EQ(toplevel_error("get!"), ErrorCode::EffectMismatch);
  EXPECT_EQ(toplevel_error("nope"), ErrorCode::UnknownVariable);
}

TEST(Typecheck, ToplevelTypeOfHandledProgram) {
  TopLevelType t = check_toplevel(lib().env(), parse_expr("(hState 0 incr)!", lib().program));
  EXPECT_EQ(to_string(t.type), "((), Int)");
}

TEST(Typecheck, ResurfacingCoercion) {
  EffectAnnotation a{Row::empty(), Row{{"Ca"}, {}}};
  EffectAnnotation r = resurface(a, "Ca");
  EXPECT_TRUE(row_equiv(r.immediate, Row{{"Ca"}, {}}));
  EXPECT_TRUE(r.latent.is_empty());
  EXPECT_THROW(resurface(a, "St"), HopError);
}

}  // namespace
}  // namespace hop
