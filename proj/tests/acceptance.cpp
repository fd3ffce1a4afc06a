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

// Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include <fmt/format.h>

#include "hop/eval.hpp"
#include "hop/parser.hpp"
#include "hop/soc.hpp"
#include "hop/stdlib.hpp"
#include "support/oracles.hpp"

namespace {

using namespace hop;

struct Outcome {
  bool ok = true;
  std::vector<std::string> failures;
  std::string summary;

  void fail(std::string why) {
    ok = false;
    if (failures.size() < 5) failures.push_back(std::move(why));
  }
};

const Stdlib& lib() {
  static const Stdlib l = load_stdlib();
  return l;
}

EvalResult run_text(const std::string& text, std::size_t fuel = 100'000, EvalOptions opts = {}) {
  opts.fuel = fuel;
  return Machine(lib().program, opts).evaluate(parse_expr(text, lib().program));
}

Value value_of(const std::string& text) {
  EvalResult r = run_text(text, 1000);
  if (!r.value) throw HopError(ErrorCode::TypeMismatch, "not a value: " + text);
  return *r.value;
}

// 1. Evaluation goldens.
Outcome goldens() {
  Outcome out;
  const std::vector<std::pair<std::string, std::string>> cases{
      {"(hCatch (hState 0 transact))!", "Just (2, 2)"},
      {"(hState 0 (hCatch transact))!", "(Just 2, 2)"},
      {"(hCatch2 (hState 0 transact))!", "Just (1, 1)"},
      {"(hND (hCatch flippy))!", "[Nothing, Just 1]"},
      {"(hCatch (hND flippy))!", "Nothing"},
      {"(hND (hState 0 flippy1))!", "[(0, 1), (0, 0)]"},
      {"(hState 0 (hND flippy1))!", "([0, 1], 1)"},
      {"(hLam0 [] {match (hState 0 lammy)! | (v, _) -> v})!", "5"},
      {"(hLam1 [] {match (hState 0 lammy)! | (v, _) -> v})!", "4"},
      {"(hStack [1] (hRand prog0))!", "1"},
  };
  for (const auto& [program, expected] : cases) {
    EvalResult r = run_text(program);
    if (!r.value || !equal(*r.value, value_of(expected))) {
      out.fail(fmt::format("{} gave {}", program, r.value ? pretty(*r.value) : "no value"));
    }
  }

  // The handler steps of the scoped-catch run pass through state 2 and are
  // then reset to state 1 by the abort.
  EvalOptions opts;
  std::vector<std::string> states;
  Machine* m = nullptr;
  opts.on_step = [&](const TraceEntry& t) {
    if (t.rule == Rule::Handle || t.rule == Rule::Return) states.push_back(pretty(t.expr, m->print_options()));
  };
  opts.fuel = 100'000;
  Machine machine(lib().program, opts);
  m = &machine;
  machine.evaluate(parse_expr("(hCatch2 (hState 0 transact))!", lib().program));
  std::size_t saw2 = states.size();
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].find("handle^St[hState] 2 ") != std::string::npos) {
      saw2 = i;
      break;
    }
  }
  bool reset = false;
  for (std::size_t i = saw2; i < states.size(); ++i) {
    if (states[i].find("handle^St[hState] 1 ") != std::string::npos) reset = true;
  }
  if (saw2 == states.size() || !reset) out.fail("hCatch2 trace lacks the state 2 step or the reset to state 1");
  out.summary = fmt::format("{} goldens, hCatch2 trace has {} handler steps", cases.size(), states.size());
  return out;
}

// 2. Rejections and their ordered counterparts.
Outcome rejections() {
  Outcome out;
  TypeEnv env = lib().env();
  auto expect_error = [&](const std::string& text, std::set<ErrorCode> codes) {
    try {
      check_toplevel(env, parse_expr(text, lib().program));
      out.fail("accepted: " + text);
    } catch (const HopError& e) {
      if (!codes.count(e.code())) out.fail(fmt::format("{}: {}", text, e.what()));
    }
  };
  auto expect_ok = [&](const std::string& text) {
    try {
      check_toplevel(env, parse_expr(text, lib().program));
    } catch (const HopError& e) {
      out.fail(fmt::format("rejected {}: {}", text, e.what()));
    }
  };
  const std::set<ErrorCode> codes{ErrorCode::LatentOperationCall, ErrorCode::EffectMismatch};
  expect_error("(hCatch (catch {(put 0)!} {()}))!", codes);
  expect_error("(hState 0 {let () = (put 1)! in (hLocal 2 {ask!})!})!", codes);
  expect_ok("(hCatch (hState 0 {(catch {(put 0)!} {()})!}))!");
  expect_ok("(hLocal 2 (hState 0 {let () = (put 1)! in ask!}))!");
  out.summary = "2 rejected, 2 reordered programs accepted";
  return out;
}

// 3. Handler-order sweep.
Outcome sweep() {
  Outcome out;
  std::vector<SocReport> reports = soc_sweep(lib(), default_sweep(lib()));
  const std::set<std::pair<Name, Name>> separate{
      {"hSt", "hAbort"},  {"hSt", "hRead"},    {"hSt", "hLocal"},    {"hSt", "hCatch"},   {"hAbort", "hRead"},
      {"hAbort", "hLocal"}, {"hAbort", "hCatch"}, {"hRead", "hLocal"}, {"hRead", "hCatch"}, {"hLocal", "hCatch"},
      {"hLam", "hState"}};
  std::size_t separate_tuples = 0;
  std::set<std::pair<Name, Name>> covered;
  for (const SocReport& r : reports) {
    if (!separate.count({r.h1, r.h2})) continue;
    ++separate_tuples;
    covered.insert({r.h1, r.h2});
    if (r.verdict != Verdict::Equivalent) out.fail(fmt::format("{} is {}", r.key(), verdict_name(r.verdict)));
  }
  if (separate_tuples < 25) out.fail(fmt::format("only {} separate-concern tuples", separate_tuples));
  if (covered.size() != separate.size()) out.fail("a separate-concern pair has no admissible program");

  // Interactions: key and, where given, the two bags.
  struct Predicted {
    std::string key;
    std::string bag12;
    std::string bag21;
  };
  const std::vector<Predicted> predicted{
      {"hND:hCatch@flippy", "{1}", "{}"},
      {"hAbort/hND:hCatch@flippy", "{1}", "{}"},
      {"hND:hSt@flippy1", "{0, 0}", "{0, 1}"},
      {"hND:hState@flippy1", "{0, 0}", "{0, 1}"},
      {"hAbort/hND:hState@flippy1", "{0, 0}", "{0, 1}"},
      {"hCatch2:hSt@transact", "", ""},
      {"hCatch2:hState@transact", "", ""},
      {"hAbort/hCatch2:hState@transact", "", ""},
      {"hLam1:hSt@lammy", "", ""},
      {"hLam1:hState@lammy", "", ""},
      {"hAbort/hLam1:hState@lammy", "", ""},
  };
  for (const Predicted& p : predicted) {
    auto it = std::find_if(reports.begin(), reports.end(), [&](const SocReport& r) { return r.key() == p.key; });
    if (it == reports.end()) {
      out.fail("missing tuple " + p.key);
      continue;
    }
    if (it->verdict != Verdict::Violation) out.fail(fmt::format("{} is {}", p.key, verdict_name(it->verdict)));
    if (!p.bag12.empty() && (to_string(it->bag12) != p.bag12 || to_string(it->bag21) != p.bag21)) {
      out.fail(fmt::format("{} bags {} / {}", p.key, to_string(it->bag12), to_string(it->bag21)));
    }
  }

  auto diffs = compare_expectations(reports, load_expectations(lib().dir + "/soc_expectations.json"), true);
  for (const ExpectationDiff& d : diffs) out.fail("expectation mismatch on " + d.key);
  out.summary = fmt::format("{} tuples, {} separate-concern tuples all Equivalent, {} predicted violations",
                            reports.size(), separate_tuples, predicted.size());
  return out;
}

// 4. Return lemma.
Outcome return_lemma() {
  Outcome out;
  std::uint64_t seed = 2026;
  for (const HandlerEntry& h : lib().handlers) {
    ReturnLemmaResult r = check_return_lemma(lib(), h, 100, seed++);
    if (r.failures > 0) out.fail(fmt::format("{}: {} failures, e.g. {}", h.name, r.failures, r.counterexample));
  }
  out.summary = fmt::format("{} handlers x 100 values", lib().handlers.size());
  return out;
}

Scheme close_over(const TypePtr& t) {
  FreeVars fv = free_type_vars(t);
  return Scheme{{fv.types.begin(), fv.types.end()}, {fv.rows.begin(), fv.rows.end()}, t};
}

// 5. Progress on generated well-typed programs and per-step preservation
// on the corpus.
Outcome soundness() {
  Outcome out;
  TypeEnv env = lib().env();
  EvalOptions opts;
  opts.fuel = 100'000;
  Machine machine(lib().program, opts);

  std::vector<ExprPtr> programs;
  for (const CorpusProgram& c : lib().corpus) programs.push_back(c.expr);
  std::mt19937_64 rng(5);
  std::size_t generated = 0;
  std::size_t rejected = 0;
  while (programs.size() < 500 && generated < 200'000) {
    std::string text = oracle::random_program_text(rng, 1 + static_cast<int>(rng() % 4));
    ++generated;
    ExprPtr e;
    try {
      e = parse_expr(text, lib().program);
    } catch (const HopError& err) {
      out.fail(fmt::format("generator produced unparsable text {}: {}", text, err.what()));
      continue;
    }
    try {
      check_toplevel(env, e);
    } catch (const HopError&) {
      ++rejected;
      continue;
    }
    programs.push_back(e);
  }
  if (programs.size() < 500) out.fail(fmt::format("only {} well-typed programs", programs.size()));

  std::size_t values = 0;
  std::size_t out_of_fuel = 0;
  for (const ExprPtr& e : programs) {
    EvalResult r = machine.evaluate(e);
    if (r.outcome == EvalResult::Outcome::Stuck) {
      out.fail(fmt::format("stuck: {} at {}", pretty(e), r.stuck ? r.stuck->message : "?"));
    } else if (r.outcome == EvalResult::Outcome::Value) {
      ++values;
    } else {
      ++out_of_fuel;
    }
  }

  // Intermediate terms are checked with unrestricted resurfacing.
  CheckOptions mid;
  mid.resurface_any_label = true;
  std::size_t steps_checked = 0;
  std::vector<std::pair<std::string, ExprPtr>> stepped;
  for (const CorpusProgram& c : lib().corpus) stepped.emplace_back(c.name, c.expr);
  for (const auto& [name, start] : stepped) {
    ExprPtr e = start;
    Scheme initial = close_over(check_toplevel(env, e).type);
    for (std::size_t i = 0; i < 20'000; ++i) {
      StepResult s = machine.step(e);
      if (s.kind != StepResult::Kind::Stepped) break;
      e = s.next;
      try {
        // The reduct may be more general (an aborted branch no longer
        // fixes the result type); the original type must be an instance.
        Scheme now = close_over(check_toplevel(env, e, mid).type);
        std::set<Name> vars(now.type_vars.begin(), now.type_vars.end());
        vars.insert(now.row_vars.begin(), now.row_vars.end());
        if (!oracle::type_instance(now.body, vars, initial.body)) {
          out.fail(fmt::format("{} step {} ({}): type {} became {}", name, i + 1, rule_name(s.rule),
                               to_string(initial), to_string(now)));
          break;
        }
      } catch (const HopError& err) {
        out.fail(fmt::format("{} step {} ({}) is ill-typed: {}", name, i + 1, rule_name(s.rule), err.what()));
        break;
      }
      ++steps_checked;
    }
  }
  out.summary = fmt::format("{} programs ({} corpus, {} of {} generated accepted): {} values, {} out of fuel; "
                            "{} preservation steps over {} programs",
                            programs.size(), lib().corpus.size(), programs.size() - lib().corpus.size(),
                            generated, values, out_of_fuel, steps_checked, stepped.size());
  return out;
}

// 6. Row theory.
Outcome rows() {
  Outcome out;
  std::mt19937_64 rng(6);
  const std::vector<Label> labels{"A", "B", "C"};
  const std::vector<Name> tails{"", "r1", "r2"};
  const std::size_t n = 10'000;

  for (std::size_t i = 0; i < n; ++i) {
    Row a = oracle::random_row(rng, labels, 4, tails);
    Row b = rng() % 2 ? oracle::shuffle_row(rng, a) : oracle::random_row(rng, labels, 4, tails);
    Row c = rng() % 2 ? oracle::shuffle_row(rng, b) : oracle::random_row(rng, labels, 4, tails);
    if (!row_equiv(a, a)) out.fail("not reflexive: " + to_string(a));
    if (row_equiv(a, b) != row_equiv(b, a)) out.fail("not symmetric: " + to_string(a) + " " + to_string(b));
    if (row_equiv(a, b) && row_equiv(b, c) && !row_equiv(a, c)) out.fail("not transitive at " + to_string(a));
    if (row_equiv(a, b) != oracle::closure_equiv(a, b)) out.fail("disagrees with closure: " + to_string(a) + " " + to_string(b));
  }

  for (std::size_t i = 0; i < n; ++i) {
    Row r = oracle::random_row(rng, labels, 3, tails);
    std::size_t at = r.labels.empty() ? 0 : rng() % (r.labels.size() + 1);
    Label l1 = labels[rng() % labels.size()];
    Label l2 = labels[rng() % labels.size()];
    Row x = r, y = r;
    x.labels.insert(x.labels.begin() + static_cast<std::ptrdiff_t>(at), {l1, l2});
    y.labels.insert(y.labels.begin() + static_cast<std::ptrdiff_t>(at), {l2, l1});
    if (!row_equiv(x, y)) out.fail("swap: " + to_string(x) + " vs " + to_string(y));
  }

  for (std::size_t i = 0; i < n; ++i) {
    Row a = oracle::random_row(rng, labels, 3, {""});
    Row b = oracle::random_row(rng, labels, 3, tails);
    Row a2 = oracle::shuffle_row(rng, a);
    Row b2 = oracle::shuffle_row(rng, b);
    if (!row_equiv(row_concat(a, b), row_concat(a2, b2))) out.fail("concat congruence at " + to_string(a));
    Row both = row_concat(a, b);
    if (!oracle::closure_equiv(both, Row{[&] {
          auto ls = a.labels;
          ls.insert(ls.end(), b.labels.begin(), b.labels.end());
          return ls;
        }(), b.tails})) {
      out.fail("concat is not label append at " + to_string(a));
    }
  }

  std::size_t unified = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Row a = oracle::random_row(rng, labels, 4, tails);
    Row b = rng() % 3 == 0 ? oracle::shuffle_row(rng, a) : oracle::random_row(rng, labels, 4, tails);
    try {
      Substitution s = unify_rows(a, b);
      ++unified;
      if (!oracle::closure_equiv(s.apply(a), s.apply(b))) out.fail("unsound unifier on " + to_string(a) + " ~ " + to_string(b));
    } catch (const HopError&) {
    }
  }

  // Completeness against exhaustive search on small rows.
  const std::vector<Row> small = oracle::all_rows({"A", "B"}, 3, {"", "r1", "r2"});
  const std::vector<Row> universe = oracle::all_rows({"A", "B"}, 3, {"", "fresh"});
  std::size_t pairs = 0;
  for (const Row& a : small) {
    for (const Row& b : small) {
      ++pairs;
      bool ours = true;
      try {
        Substitution s = unify_rows(a, b);
        if (!oracle::closure_equiv(s.apply(a), s.apply(b))) out.fail("unsound unifier on " + to_string(a) + " ~ " + to_string(b));
      } catch (const HopError&) {
        ours = false;
      }
      if (ours != oracle::brute_unifiable(a, b, universe)) {
        out.fail(fmt::format("{} ~ {}: unifier says {}", to_string(a), to_string(b), ours));
      }
    }
  }
  out.summary = fmt::format("{} cases per law, {} unifiable random pairs, {} exhaustive pairs", n, unified, pairs);
  return out;
}

// 7. Unique decomposition and deterministic steps.
Outcome decomposition() {
  Outcome out;
  std::mt19937_64 rng(7);
  oracle::TermGenOptions gen;
  gen.depth = 4;
  gen.names = {"incr", "transact", "hState", "hCatch", "flippy", "const42"};
  EvalOptions opts;
  opts.fuel = 1;
  Machine m1(lib().program, opts);
  Machine m2(lib().program, opts);
  std::size_t values = 0;
  std::size_t stuck = 0;
  const std::size_t n = 10'000;
  for (std::size_t i = 0; i < n; ++i) {
    ExprPtr e = oracle::random_closed_term(rng, gen);
    std::vector<oracle::Focus> foci = oracle::redex_positions(e);
    auto split = decompose(e);
    if (std::holds_alternative<Value>(split)) {
      ++values;
      if (!foci.empty() || !is_value(e)) out.fail("value with a redex: " + pretty(e));
      continue;
    }
    const Decomposition& d = std::get<Decomposition>(split);
    if (!equal(plug(d.ctx, d.redex.expr), e)) out.fail("plug does not rebuild " + pretty(e));
    if (foci.size() != 1) {
      out.fail(fmt::format("{} redex positions in {}", foci.size(), pretty(e)));
      continue;
    }
    if (foci[0].depth != d.ctx.frames.size() || !equal(foci[0].expr, d.redex.expr)) {
      out.fail(fmt::format("decomposition of {} picks {} at depth {}", pretty(e), pretty(d.redex.expr),
                           d.ctx.frames.size()));
    }
    if (foci[0].stuck != !d.redex.rule.has_value()) out.fail("stuck and redex classification differ on " + pretty(e));
    if (!d.redex.rule) ++stuck;

    StepResult s1 = m1.step(e);
    StepResult s2 = m2.step(e);
    if (s1.kind != s2.kind || s1.rule != s2.rule) {
      out.fail("steps disagree on " + pretty(e));
    } else if (s1.kind == StepResult::Kind::Stepped && oracle::de_bruijn(s1.next) != oracle::de_bruijn(s2.next)) {
      out.fail("steps disagree on " + pretty(e));
    }
  }
  out.summary = fmt::format("{} terms: {} values, {} stuck, {} with a redex", n, values, stuck, n - values - stuck);
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"evaluation goldens", goldens},
      {"type-system rejections", rejections},
      {"handler-order sweep", sweep},
      {"return lemma", return_lemma},
      {"progress and preservation", soundness},
      {"row theory", rows},
      {"decomposition and determinism", decomposition},
  };
  bool all = true;
  int index = 1;
  for (const auto& [name, check] : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << fmt::format("criterion {}: {} {} ({:.1f}s) {}\n", index++, o.ok ? "PASS" : "FAIL", name, secs,
                             o.summary);
    for (const std::string& f : o.failures) std::cout << "    " << f << "\n";
    all = all && o.ok;
  }
  return all ? 0 : 1;
}
