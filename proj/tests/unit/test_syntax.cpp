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

#include <random>

#include <gtest/gtest.h>

#include "hop/eval.hpp"
#include "hop/parser.hpp"
#include "hop/stdlib.hpp"
#include "support/oracles.hpp"

namespace hop {
namespace {

const Stdlib& lib() {
  static const Stdlib l = load_stdlib();
  return l;
}

oracle::TermGenOptions gen_options() {
  oracle::TermGenOptions o;
  o.depth = 4;
  o.names = {"incr", "hState", "flippy"};
  return o;
}

TEST(Parser, ReportsSyntaxErrorWithLocation) {
  try {
    parse("main = (1 +", "bad.hop");
    FAIL() << "expected a syntax error";
  } catch (const HopError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
    EXPECT_EQ(e.loc().line, 1u);
  }
}

// Qualifies operation names that several effects declare.
PrintOptions qualified() {
  PrintOptions o;
  o.qualify = lib().program.ambiguous_ops();
  return o;
}

TEST(Parser, PrettyOutputParsesBack) {
  for (const Definition& d : lib().program.definitions) {
    std::string text = pretty(d.body, qualified());
    ExprPtr again = parse_expr(text, lib().program);
    EXPECT_EQ(oracle::de_bruijn(again), oracle::de_bruijn(d.body)) << d.name << ": " << text;
  }
}

TEST(Parser, RandomTermsRoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    ExprPtr e = oracle::random_closed_term(rng, gen_options());
    std::string text = pretty(e, qualified());
    // Parsing folds `(+) x` into a constant application, so compare the
    // printed forms rather than the trees.
    ExprPtr again = parse_expr(text, lib().program);
    ASSERT_EQ(pretty(again, qualified()), text);
  }
}

TEST(Binding, FreeVarsMatchOracle) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    std::vector<Name> scope{"x", "y"};
    ExprPtr e = oracle::random_term(rng, gen_options(), 4, scope);
    EXPECT_EQ(free_vars(e), oracle::naive_free_vars(e)) << pretty(e);
  }
}

TEST(Binding, SubstitutingClosedValuesMatchesOracle) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 2000; ++i) {
    std::vector<Name> scope{"x"};
    ExprPtr e = oracle::random_term(rng, gen_options(), 4, scope);
    Value v = v_suspend(oracle::random_closed_term(rng, gen_options()));
    EXPECT_EQ(oracle::de_bruijn(substitute(e, "x", v)), oracle::de_bruijn(oracle::naive_substitute_closed(e, "x", v)))
        << pretty(e);
  }
}

TEST(Binding, SubstitutionRespectsAlphaEquivalence) {
  std::mt19937_64 rng(23);
  std::size_t counter = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<Name> scope{"x", "y"};
    ExprPtr e = oracle::random_term(rng, gen_options(), 4, scope);
    ExprPtr renamed = oracle::rename_binders(e, counter);
    ASSERT_EQ(oracle::de_bruijn(e), oracle::de_bruijn(renamed));
    // The substituted value mentions y, which binders in e may capture.
    Value v = v_suspend(mk_app(mk_val(v_var("y")), mk_val(v_int(1))));
    EXPECT_EQ(oracle::de_bruijn(substitute(e, "x", v)), oracle::de_bruijn(substitute(renamed, "x", v)))
        << pretty(e);
  }
}

TEST(Binding, SubstitutionAvoidsCapture) {
  // (\y. x)[x := y] must not bind the substituted y.
  ExprPtr e = mk_val(v_lam("y", mk_val(v_var("x"))));
  ExprPtr r = substitute(e, "x", v_var("y"));
  EXPECT_EQ(free_vars(r), std::set<Name>{"y"});
  EXPECT_NE(oracle::de_bruijn(r), oracle::de_bruijn(mk_val(v_lam("y", mk_val(v_var("y"))))));
}

}  // namespace
}  // namespace hop
