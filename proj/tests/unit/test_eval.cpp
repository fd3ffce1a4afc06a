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

#include <gtest/gtest.h>

#include "hop/eval.hpp"
#include "hop/parser.hpp"
#include "hop/stdlib.hpp"

namespace hop {
namespace {

const Stdlib& lib() {
  static const Stdlib l = load_stdlib();
  return l;
}

EvalResult run(const std::string& text, EvalOptions opts = {}) {
  Machine m(lib().program, std::move(opts));
  return m.evaluate(parse_expr(text, lib().program));
}

std::string value_of(const std::string& text) {
  EvalResult r = run(text);
  if (!r.value) return "<no value>";
  return pretty(*r.value);
}

TEST(Eval, SmallHandlers) {
  EXPECT_EQ(value_of("(hRead 20 readTwice)!"), "40");
  EXPECT_EQ(value_of("(hLocal 1 localAsk)!"), "3");
  EXPECT_EQ(value_of("(hCatch catchThrow)!"), "Just 7");
  EXPECT_EQ(value_of("(hState 0 incr)!"), "((), 1)");
  EXPECT_EQ(value_of("(hAbort (hSt 0 abortEarly))!"), "Nothing");
}

TEST(Eval, CorpusMatchesRecordedResults) {
  Machine m(lib().program);
  for (const CorpusProgram& c : lib().corpus) {
    if (!c.expected) continue;
    EvalResult r = m.evaluate(c.expr);
    ASSERT_TRUE(r.value) << c.name;
    EXPECT_TRUE(equal(*r.value, *c.expected)) << c.name << ": " << pretty(*r.value);
  }
}

TEST(Eval, Delta) {
  EXPECT_TRUE(equal(*delta("+", {v_int(2), v_int(3)}), v_int(5)));
  EXPECT_TRUE(equal(*delta("++", {v_list({v_int(1)}), v_list({v_int(2)})}), v_list({v_int(1), v_int(2)})));
  EXPECT_TRUE(equal(*delta("fst", {v_pair(v_int(1), v_int(2))}), v_int(1)));
  EXPECT_FALSE(delta("+", {v_int(1), v_str("a")}));
}

TEST(Eval, UnhandledOperationIsStuck) {
  EvalResult r = run("(hCatch (catch {(put 0)!} {()}))!");
  ASSERT_EQ(r.outcome, EvalResult::Outcome::Stuck);
  EXPECT_EQ(r.stuck->reason, StuckReason::UnhandledOp);
}

TEST(Eval, MatchFailureIsStuck) {
  EvalResult r = run("match 1 | 2 -> 3");
  ASSERT_EQ(r.outcome, EvalResult::Outcome::Stuck);
  EXPECT_EQ(r.stuck->reason, StuckReason::MatchFailure);
}

TEST(Eval, FuelRunsOut) {
  EvalOptions opts;
  opts.fuel = 3;
  EvalResult r = run("(hState 0 transact)!", opts);
  EXPECT_EQ(r.outcome, EvalResult::Outcome::FuelExhausted);
  EXPECT_EQ(r.steps, 3u);
}

TEST(Eval, HandleNotEnactedIsDelayed) {
  Machine m(lib().program);
  ExprPtr e = parse_expr("handle^Rd { read r k -> k r {r}, return x _ -> {x} } 1 read!", lib().program);
  StepResult s = m.step(e);
  ASSERT_EQ(s.kind, StepResult::Kind::Stepped);
  EXPECT_EQ(s.rule, Rule::Delay);
  EXPECT_TRUE(is_value(s.next));
}

TEST(Eval, TraceNumbersStepsAndSkipsUnfold) {
  EvalOptions opts;
  opts.record_trace = true;
  EvalResult r = run("(hState 0 incr)!", opts);
  ASSERT_FALSE(r.trace.empty());
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    EXPECT_EQ(r.trace[i].index, i + 1);
    EXPECT_NE(r.trace[i].rule, Rule::Unfold);
  }
}

}  // namespace
}  // namespace hop
