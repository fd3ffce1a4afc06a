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

#include "hop/types.hpp"
#include "support/oracles.hpp"

namespace hop {
namespace {

Row row(std::vector<Label> labels, std::vector<Name> tails = {}) { return Row{std::move(labels), std::move(tails)}; }

TEST(Rows, DistinctLabelsCommute) {
  EXPECT_TRUE(row_equiv(row({"St", "Ab"}), row({"Ab", "St"})));
  EXPECT_TRUE(row_equiv(row({"St", "Ab", "St"}), row({"St", "St", "Ab"})));
}

TEST(Rows, DuplicateLabelsKeepMultiplicity) {
  EXPECT_FALSE(row_equiv(row({"St", "St"}), row({"St"})));
  EXPECT_FALSE(row_equiv(row({"St"}), row({"St"}, {"r"})));
}

TEST(Rows, ConcatRejectsOpenLeft) {
  EXPECT_THROW(row_concat(row({"St"}, {"r"}), row({"Ab"})), HopError);
  Row r = row_concat(row({"St"}), row({"Ab"}, {"r"}));
  EXPECT_TRUE(row_equiv(r, row({"Ab", "St"}, {"r"})));
}

TEST(Rows, RemoveTakesOneOccurrence) {
  auto r = row_remove(row({"St", "Ab", "St"}), "St");
  ASSERT_TRUE(r);
  EXPECT_TRUE(row_equiv(*r, row({"Ab", "St"})));
  EXPECT_FALSE(row_remove(row({"Ab"}), "St"));
}

TEST(Rows, EquivMatchesSwapClosure) {
  std::mt19937_64 rng(11);
  std::vector<Label> labels{"A", "B", "C"};
  for (int i = 0; i < 2000; ++i) {
    Row a = oracle::random_row(rng, labels, 4, {"", "r"});
    Row b = rng() % 2 ? oracle::shuffle_row(rng, a) : oracle::random_row(rng, labels, 4, {"", "r"});
    EXPECT_EQ(row_equiv(a, b), oracle::closure_equiv(a, b)) << to_string(a) << " vs " << to_string(b);
  }
}

TEST(Rows, UnifierAgreesWithBruteForce) {
  std::vector<Label> labels{"A", "B"};
  std::vector<Row> universe = oracle::all_rows(labels, 2, {""});
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    Row a = oracle::random_row(rng, labels, 2, {"", "r1"});
    Row b = oracle::random_row(rng, labels, 2, {"", "r2"});
    bool brute = oracle::brute_unifiable(a, b, universe);
    NameSupply supply;
    bool unified = true;
    Substitution s;
    try {
      s = unify_rows(a, b);
    } catch (const HopError&) {
      unified = false;
    }
    EXPECT_EQ(unified, brute) << to_string(a) << " ~ " << to_string(b);
    if (unified) EXPECT_TRUE(row_equiv(s.apply(a), s.apply(b)));
  }
}

TEST(Types, UnifyArrowsAndSuspensions) {
  NameSupply supply;
  Unifier u(supply);
  TypePtr a = t_arrow(t_var("a"), t_susp(Row::var("r"), Row::empty(), t_var("a")));
  TypePtr b = t_arrow(t_int(), t_susp(row({"St"}), Row::empty(), t_int()));
  u.unify(a, b);
  EXPECT_TRUE(type_equal(u.subst().apply(a), b));
}

TEST(Types, OccursCheck) {
  NameSupply supply;
  Unifier u(supply);
  try {
    u.unify(t_var("a"), t_list(t_var("a")));
    FAIL() << "expected an occurs-check failure";
  } catch (const HopError& e) {
    EXPECT_EQ(e.code(), ErrorCode::OccursCheck);
  }
}

TEST(Types, SchemeEquivIgnoresNamesAndLabelOrder) {
  Scheme a{{"a"}, {"r"}, t_susp(Row{{"St", "Ab"}, {"r"}}, Row::empty(), t_var("a"))};
  Scheme b{{"b"}, {"q"}, t_susp(Row{{"Ab", "St"}, {"q"}}, Row::empty(), t_var("b"))};
  EXPECT_TRUE(scheme_equiv(a, b));
  Scheme c{{}, {"q"}, t_susp(Row{{"Ab", "St"}, {"q"}}, Row::empty(), t_int())};
  EXPECT_FALSE(scheme_equiv(a, c));
}

}  // namespace
}  // namespace hop
