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

// Separation of concerns between handlers: a program run under two
// handlers in either order should hold the same bag of values.

#ifndef HOP_SOC_HPP_
#define HOP_SOC_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hop/bag.hpp"
#include "hop/stdlib.hpp"

namespace hop {

enum class Verdict { Equivalent, Violation, EvalFailure };

std::string_view verdict_name(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view s);

struct SocReport {
  Name h1;
  Name h2;
  // Handlers installed around both orders, outermost first.
  std::vector<Name> context;
  Name program;
  // ctx (h1 (h2 program)) and ctx (h2 (h1 program)).
  std::optional<Value> order12;
  std::optional<Value> order21;
  Bag bag12;
  Bag bag21;
  Verdict verdict = Verdict::EvalFailure;
  // Why an order produced no value.
  std::string failure;
  // Largest number of continuation uses in one clause of h1 and h2.
  std::size_t k_uses1 = 0;
  std::size_t k_uses2 = 0;

  // "hAbort/hLam:hState@lammy".
  std::string key() const;
};

// Largest number of syntactic uses of the continuation in any clause.
std::size_t continuation_uses(const Program& program, const HandlerEntry& h);

// The program under `context` and the two handlers, innermost last:
// `(c1 (c2 (outer (inner program))))!`.
ExprPtr stack_handlers(const std::vector<const HandlerEntry*>& context, const HandlerEntry& outer,
                       const HandlerEntry& inner, const Name& program);

// Both orders typecheck and the labels are pairwise distinct.
bool admissible(const Stdlib& lib, const HandlerEntry& h1, const HandlerEntry& h2,
                const std::vector<const HandlerEntry*>& context, const Name& program);

SocReport check_soc_pair(const Stdlib& lib, const HandlerEntry& h1, const HandlerEntry& h2,
                         const std::vector<const HandlerEntry*>& context, const Name& program,
                         std::size_t fuel);

struct SweepSpec {
  std::vector<std::pair<Name, Name>> pairs;
  std::vector<Name> programs;
  std::vector<std::vector<Name>> contexts;
  std::size_t fuel = 100'000;
};

// Pairs among the separate-concern handlers, (hLam, hState), and the
// handlers whose continuations are used more than once.
SweepSpec default_sweep(const Stdlib& lib);

// Runs every admissible (pair, context, program) tuple. Inadmissible
// tuples are skipped; failures are recorded in the report.
std::vector<SocReport> soc_sweep(const Stdlib& lib, const SweepSpec& spec);

// JSON with "schema": 1 and one object per report.
std::string report_json(const std::vector<SocReport>& reports);
// Aligned text table: pair, program, verdict, bags.
std::string report_table(const std::vector<SocReport>& reports);

// Checked-in verdicts keyed by SocReport::key().
std::map<std::string, Verdict> load_expectations(const std::string& path);

struct ExpectationDiff {
  std::string key;
  std::optional<Verdict> expected;
  std::optional<Verdict> actual;
};

// Reports whose verdict differs from the expectation. With `complete`,
// expectations with no report and reports with no expectation count too.
std::vector<ExpectationDiff> compare_expectations(const std::vector<SocReport>& reports,
                                                  const std::map<std::string, Verdict>& expected,
                                                  bool complete);

// First-order values: integers, booleans, unit, strings, pairs, lists and
// Maybe, nested up to `depth`.
Value random_value(std::mt19937_64& rng, int depth = 2);
// A parameter of the handler's parameter type.
std::optional<Value> random_param(std::mt19937_64& rng, const HandlerEntry& h);

struct ReturnLemmaResult {
  Name handler;
  std::size_t samples = 0;
  std::size_t failures = 0;
  // The first failing value, parameter and bag.
  std::string counterexample;
};

// Runs `(h p {v})!` for random v and p and checks that the result holds
// exactly the bag {v}.
ReturnLemmaResult check_return_lemma(const Stdlib& lib, const HandlerEntry& h, std::size_t samples,
                                     std::uint64_t seed);

}  // namespace hop

#endif  // HOP_SOC_HPP_
