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

#include "hop/bag.hpp"
#include "hop/soc.hpp"
#include "hop/stdlib.hpp"
#include "hop/syntax.hpp"

namespace hop {
namespace {

const Stdlib& lib() {
  static const Stdlib l = load_stdlib();
  return l;
}

TEST(Bag, MultisetEquality) {
  EXPECT_EQ(Bag::of({v_int(0), v_int(1)}), Bag::of({v_int(1), v_int(0)}));
  EXPECT_NE(Bag::of({v_int(0), v_int(0)}), Bag::of({v_int(0), v_int(1)}));
  EXPECT_NE(Bag::of({v_int(1)}), Bag::of({}));
  EXPECT_EQ(to_string(Bag::of({v_int(0), v_int(0)})), "{0, 0}");
}

TEST(Bag, FunctorsCollectPayloads) {
  EXPECT_EQ(to_bag(FunctorDescriptor::maybe(), v_nothing()), Bag());
  EXPECT_EQ(to_bag(FunctorDescriptor::pair_first(), v_pair(v_int(3), v_int(9))), Bag::of({v_int(3)}));
  auto nested = FunctorDescriptor::compose(FunctorDescriptor::list(), FunctorDescriptor::maybe());
  EXPECT_EQ(to_bag(nested, v_list({v_just(v_int(1)), v_nothing(), v_just(v_int(1))})),
            Bag::of({v_int(1), v_int(1)}));
  EXPECT_EQ(FunctorDescriptor::parse("Compose(List, Maybe)"), nested);
  EXPECT_EQ(to_string(nested), "Compose(List, Maybe)");
}

TEST(Soc, SeparateConcernsCommute) {
  const HandlerEntry* st = lib().handler("hSt");
  const HandlerEntry* ab = lib().handler("hAbort");
  ASSERT_TRUE(st && ab);
  SocReport r = check_soc_pair(lib(), *st, *ab, {}, "abortEarly", 100'000);
  EXPECT_EQ(r.verdict, Verdict::Equivalent) << r.failure;
  EXPECT_EQ(r.bag12, r.bag21);
}

TEST(Soc, TransactionalCatchInteractsWithState) {
  const HandlerEntry* c2 = lib().handler("hCatch2");
  const HandlerEntry* st = lib().handler("hState");
  ASSERT_TRUE(c2 && st);
  SocReport r = check_soc_pair(lib(), *c2, *st, {}, "transact", 100'000);
  EXPECT_EQ(r.verdict, Verdict::Violation);
  EXPECT_EQ(r.key(), "hCatch2:hState@transact");
}

TEST(Soc, ContinuationUses) {
  EXPECT_EQ(continuation_uses(lib().program, *lib().handler("hND")), 2u);
  EXPECT_EQ(continuation_uses(lib().program, *lib().handler("hState")), 1u);
}

TEST(Soc, InadmissiblePairsAreSkipped) {
  const HandlerEntry* st = lib().handler("hSt");
  const HandlerEntry* state = lib().handler("hState");
  EXPECT_FALSE(admissible(lib(), *st, *state, {}, "incr"));
}

TEST(Soc, SweepMatchesCheckedInVerdicts) {
  std::vector<SocReport> reports = soc_sweep(lib(), default_sweep(lib()));
  auto expected = load_expectations(lib().dir + "/soc_expectations.json");
  EXPECT_TRUE(compare_expectations(reports, expected, true).empty());
  EXPECT_EQ(report_json(reports), report_json(soc_sweep(lib(), default_sweep(lib()))));
}

TEST(Soc, ReturnLemmaForEveryHandler) {
  for (const HandlerEntry& h : lib().handlers) {
    ReturnLemmaResult r = check_return_lemma(lib(), h, 50, 99);
    EXPECT_EQ(r.failures, 0u) << h.name << ": " << r.counterexample;
  }
}

}  // namespace
}  // namespace hop
