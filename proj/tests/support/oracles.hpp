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

// Test-side reference implementations. They are written independently of
// the library code they check and favour obviousness over speed.

#ifndef HOP_TESTS_ORACLES_HPP_
#define HOP_TESTS_ORACLES_HPP_

#include <cstddef>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hop/eval.hpp"
#include "hop/syntax.hpp"
#include "hop/types.hpp"

namespace hop::oracle {

// ---- rows ----

// Every label sequence reachable from `labels` by swapping adjacent
// distinct labels (the reflexive, transitive closure of the swap rule).
const std::set<std::vector<Label>>& swap_closure(const std::vector<Label>& labels);

// Rows equivalent under the swap closure with identical tails.
bool closure_equiv(const Row& a, const Row& b);

// Replaces tail variables by rows.
Row apply_rows(const Row& r, const std::map<Name, Row>& s);

// Every row with at most `max_labels` labels drawn from `labels` whose tail
// is one of `tails` (an empty name meaning a closed row).
std::vector<Row> all_rows(const std::vector<Label>& labels, std::size_t max_labels,
                          const std::vector<Name>& tails);

// Whether some substitution of the tail variables by rows from `universe`
// makes `a` and `b` closure-equivalent.
bool brute_unifiable(const Row& a, const Row& b, const std::vector<Row>& universe);

Row random_row(std::mt19937_64& rng, const std::vector<Label>& labels, std::size_t max_labels,
               const std::vector<Name>& tails);

// A permutation of the labels of `r` (same tail).
Row shuffle_row(std::mt19937_64& rng, const Row& r);

// Whether `specific` is an instance of `general`: some substitution of the
// type variables in `general_vars`, and of row tails by rows, turns
// `general` into `specific` up to label reordering. The dynamic type
// matches any type on either side.
bool type_instance(const TypePtr& general, const std::set<Name>& general_vars, const TypePtr& specific);

// ---- binding ----

// Nameless rendering: bound variables print as their binder distance, free
// ones by name. Alpha-equivalent terms render identically.
std::string de_bruijn(const ExprPtr& e);
std::string de_bruijn(const Value& v);

// Free variables by direct recursion over the binding structure.
std::set<Name> naive_free_vars(const ExprPtr& e);
std::set<Name> naive_free_vars(const Value& v);

// Substitution of a closed value; no renaming is needed.
ExprPtr naive_substitute_closed(const ExprPtr& e, const Name& x, const Value& v);

// Renames every binder to a fresh name.
ExprPtr rename_binders(const ExprPtr& e, std::size_t& counter);

// ---- terms ----

struct TermGenOptions {
  int depth = 4;
  // Top-level names that may appear as references.
  std::vector<Name> names;
};

// A closed, not necessarily well-typed term over the whole syntax.
ExprPtr random_closed_term(std::mt19937_64& rng, const TermGenOptions& opts);

// A term that may mention the free variables in `scope`.
ExprPtr random_term(std::mt19937_64& rng, const TermGenOptions& opts, int depth, std::vector<Name>& scope);

// The positions an evaluation context can reach that hold a redex or a
// stuck term, found by walking the context grammar directly.
struct Focus {
  ExprPtr expr;
  // Number of context layers above the position.
  std::size_t depth = 0;
  bool stuck = false;
};
std::vector<Focus> redex_positions(const ExprPtr& e);

// Source text of a computation over the stdlib effects, wrapped in a random
// stack of stdlib handlers and enacted. Not every result typechecks.
std::string random_program_text(std::mt19937_64& rng, int depth);

}  // namespace hop::oracle

#endif  // HOP_TESTS_ORACLES_HPP_
