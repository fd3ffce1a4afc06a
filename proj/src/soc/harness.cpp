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

#include "hop/soc.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "hop/eval.hpp"
#include "json.hpp"

namespace hop {

namespace {

using nlohmann::json;

std::size_t count_uses(const ExprPtr& e, const Name& x);

std::size_t count_uses(const Value& v, const Name& x) {
  return std::visit(
      [&](const auto& n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Value::Var>) {
          return n.name == x ? 1 : 0;
        } else if constexpr (std::is_same_v<T, Value::Lam>) {
          return n.binder == x ? 0 : count_uses(n.body, x);
        } else if constexpr (std::is_same_v<T, Value::Suspend>) {
          return count_uses(n.body, x);
        } else if constexpr (std::is_same_v<T, Value::Const> || std::is_same_v<T, Value::Data> ||
                             std::is_same_v<T, Value::Op>) {
          std::size_t total = 0;
          for (const Value& a : n.args) total += count_uses(a, x);
          return total;
        } else {
          return 0;
        }
      },
      v.node);
}

std::size_t count_uses(const ExprPtr& e, const Name& x) {
  return std::visit(
      [&](const auto& n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::App>) {
          return count_uses(n.fun, x) + count_uses(n.arg, x);
        } else if constexpr (std::is_same_v<T, Expr::Let>) {
          return count_uses(n.bound, x) + (n.binder == x ? 0 : count_uses(n.body, x));
        } else if constexpr (std::is_same_v<T, Expr::Handle>) {
          std::size_t total = count_uses(n.param, x) + count_uses(n.body, x);
          for (const OpClause& c : n.handler->ops) {
            bool shadowed = c.param == x || c.cont == x ||
                            std::find(c.binders.begin(), c.binders.end(), x) != c.binders.end();
            if (!shadowed) total += count_uses(c.body, x);
          }
          const ReturnClause& r = n.handler->ret;
          if (r.value != x && r.param != x) total += count_uses(r.body, x);
          return total;
        } else if constexpr (std::is_same_v<T, Expr::Enact>) {
          return count_uses(n.target, x);
        } else if constexpr (std::is_same_v<T, Expr::Val>) {
          return count_uses(n.value, x);
        } else if constexpr (std::is_same_v<T, Expr::Match>) {
          std::size_t total = count_uses(n.scrutinee, x);
          for (const MatchArm& a : n.arms) {
            if (!pattern_vars(a.pattern).count(x)) total += count_uses(a.body, x);
          }
          return total;
        } else {
          return 0;
        }
      },
      e->node);
}

// The first handle for `label` in a handler definition.
const Handler* find_handler(const ExprPtr& e, const Label& label);

const Handler* find_handler(const Value& v, const Label& label) {
  if (auto l = std::get_if<Value::Lam>(&v.node)) return find_handler(l->body, label);
  if (auto s = std::get_if<Value::Suspend>(&v.node)) return find_handler(s->body, label);
  return nullptr;
}

const Handler* find_handler(const ExprPtr& e, const Label& label) {
  return std::visit(
      [&](const auto& n) -> const Handler* {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Handle>) {
          if (n.handler->label == label) return n.handler.get();
          return find_handler(n.body, label);
        } else if constexpr (std::is_same_v<T, Expr::Val>) {
          return find_handler(n.value, label);
        } else if constexpr (std::is_same_v<T, Expr::App>) {
          if (auto h = find_handler(n.fun, label)) return h;
          return find_handler(n.arg, label);
        } else if constexpr (std::is_same_v<T, Expr::Let>) {
          if (auto h = find_handler(n.bound, label)) return h;
          return find_handler(n.body, label);
        } else if constexpr (std::is_same_v<T, Expr::Enact>) {
          return find_handler(n.target, label);
        } else {
          return nullptr;
        }
      },
      e->node);
}

FunctorDescriptor stacked_functor(const std::vector<const HandlerEntry*>& context, const HandlerEntry& outer,
                                  const HandlerEntry& inner) {
  FunctorDescriptor f = FunctorDescriptor::compose(outer.functor, inner.functor);
  for (auto it = context.rbegin(); it != context.rend(); ++it) f = FunctorDescriptor::compose((*it)->functor, f);
  return f;
}

std::string describe_failure(const EvalResult& r) {
  if (r.outcome == EvalResult::Outcome::Stuck && r.stuck) return "stuck: " + r.stuck->message;
  return fmt::format("fuel exhausted after {} steps", r.steps);
}

std::vector<const HandlerEntry*> resolve_context(const Stdlib& lib, const std::vector<Name>& names) {
  std::vector<const HandlerEntry*> out;
  for (const Name& n : names) {
    const HandlerEntry* h = lib.handler(n);
    if (!h) throw HopError(ErrorCode::UnknownEntry, fmt::format("unknown handler {}", n));
    out.push_back(h);
  }
  return out;
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Equivalent: return "Equivalent";
    case Verdict::Violation: return "Violation";
    case Verdict::EvalFailure: return "EvalFailure";
  }
  return "?";
}

std::optional<Verdict> parse_verdict(std::string_view s) {
  for (Verdict v : {Verdict::Equivalent, Verdict::Violation, Verdict::EvalFailure}) {
    if (verdict_name(v) == s) return v;
  }
  return std::nullopt;
}

std::string SocReport::key() const {
  std::string ctx;
  for (const Name& c : context) ctx += c + "/";
  return fmt::format("{}{}:{}@{}", ctx, h1, h2, program);
}

std::size_t continuation_uses(const Program& program, const HandlerEntry& h) {
  const Definition* d = program.definition(h.name);
  if (!d) return 0;
  const Handler* handler = find_handler(d->body, h.label);
  if (!handler) return 0;
  std::size_t most = 0;
  for (const OpClause& c : handler->ops) most = std::max(most, count_uses(c.body, c.cont));
  return most;
}

ExprPtr stack_handlers(const std::vector<const HandlerEntry*>& context, const HandlerEntry& outer,
                       const HandlerEntry& inner, const Name& program) {
  ExprPtr e = apply_handler(outer, apply_handler(inner, mk_nameref(program)));
  for (auto it = context.rbegin(); it != context.rend(); ++it) e = apply_handler(**it, e);
  return mk_enact(e);
}

bool admissible(const Stdlib& lib, const HandlerEntry& h1, const HandlerEntry& h2,
                const std::vector<const HandlerEntry*>& context, const Name& program) {
  std::set<Label> labels{h1.label, h2.label};
  for (const HandlerEntry* c : context) labels.insert(c->label);
  if (labels.size() != context.size() + 2) return false;
  TypeEnv env = lib.env();
  try {
    check_toplevel(env, stack_handlers(context, h1, h2, program));
    check_toplevel(env, stack_handlers(context, h2, h1, program));
  } catch (const HopError&) {
    return false;
  }
  return true;
}

SocReport check_soc_pair(const Stdlib& lib, const HandlerEntry& h1, const HandlerEntry& h2,
                         const std::vector<const HandlerEntry*>& context, const Name& program,
                         std::size_t fuel) {
  SocReport r;
  r.h1 = h1.name;
  r.h2 = h2.name;
  for (const HandlerEntry* c : context) r.context.push_back(c->name);
  r.program = program;
  r.k_uses1 = continuation_uses(lib.program, h1);
  r.k_uses2 = continuation_uses(lib.program, h2);

  EvalOptions opts;
  opts.fuel = fuel;
  Machine m(lib.program, opts);
  EvalResult run12 = m.evaluate(stack_handlers(context, h1, h2, program));
  EvalResult run21 = m.evaluate(stack_handlers(context, h2, h1, program));
  r.order12 = run12.value;
  r.order21 = run21.value;
  std::vector<std::string> failures;
  if (!run12.value) failures.push_back(fmt::format("{} outside: {}", h1.name, describe_failure(run12)));
  if (!run21.value) failures.push_back(fmt::format("{} outside: {}", h2.name, describe_failure(run21)));
  r.failure = fmt::format("{}", fmt::join(failures, "; "));
  if (!run12.value && !run21.value) {
    r.verdict = Verdict::EvalFailure;
    return r;
  }
  if (!run12.value || !run21.value) {
    // Only one order went wrong.
    r.verdict = Verdict::Violation;
    return r;
  }
  try {
    r.bag12 = to_bag(stacked_functor(context, h1, h2), *run12.value);
    r.bag21 = to_bag(stacked_functor(context, h2, h1), *run21.value);
  } catch (const HopError& e) {
    r.failure = e.message();
    r.verdict = Verdict::EvalFailure;
    return r;
  }
  r.verdict = r.bag12 == r.bag21 ? Verdict::Equivalent : Verdict::Violation;
  return r;
}

SweepSpec default_sweep(const Stdlib& lib) {
  SweepSpec spec;
  const std::vector<Name> separate{"hSt", "hAbort", "hRead", "hLocal", "hCatch"};
  for (std::size_t i = 0; i < separate.size(); ++i) {
    for (std::size_t j = i + 1; j < separate.size(); ++j) spec.pairs.emplace_back(separate[i], separate[j]);
  }
  spec.pairs.emplace_back("hLam", "hState");
  for (const char* other : {"hSt", "hState", "hAbort", "hRead", "hLocal", "hCatch"}) spec.pairs.emplace_back("hND", other);
  for (const char* other : {"hSt", "hState", "hAbort", "hRead", "hLocal"}) spec.pairs.emplace_back("hCatch2", other);
  for (const char* other : {"hSt", "hState"}) spec.pairs.emplace_back("hLam1", other);
  spec.programs = lib.soc_programs;
  spec.contexts = {{}, {"hAbort"}};
  return spec;
}

std::vector<SocReport> soc_sweep(const Stdlib& lib, const SweepSpec& spec) {
  std::vector<SocReport> out;
  for (const auto& [n1, n2] : spec.pairs) {
    const HandlerEntry* h1 = lib.handler(n1);
    const HandlerEntry* h2 = lib.handler(n2);
    if (!h1 || !h2) throw HopError(ErrorCode::UnknownEntry, fmt::format("unknown handler in pair {}:{}", n1, n2));
    for (const auto& ctx_names : spec.contexts) {
      std::vector<const HandlerEntry*> ctx = resolve_context(lib, ctx_names);
      for (const Name& p : spec.programs) {
        if (!admissible(lib, *h1, *h2, ctx, p)) continue;
        out.push_back(check_soc_pair(lib, *h1, *h2, ctx, p, spec.fuel));
      }
    }
  }
  return out;
}

std::string report_json(const std::vector<SocReport>& reports) {
  json rows = json::array();
  for (const SocReport& r : reports) {
    json row;
    row["key"] = r.key();
    row["pair"] = {r.h1, r.h2};
    row["context"] = r.context;
    row["program"] = r.program;
    row["order12"] = r.order12 ? json(pretty(*r.order12)) : json(nullptr);
    row["order21"] = r.order21 ? json(pretty(*r.order21)) : json(nullptr);
    row["bag12"] = to_string(r.bag12);
    row["bag21"] = to_string(r.bag21);
    row["verdict"] = verdict_name(r.verdict);
    row["continuation_uses"] = {r.k_uses1, r.k_uses2};
    if (!r.failure.empty()) row["failure"] = r.failure;
    rows.push_back(std::move(row));
  }
  json out;
  out["schema"] = 1;
  out["reports"] = std::move(rows);
  return out.dump(2) + "\n";
}

std::string report_table(const std::vector<SocReport>& reports) {
  std::vector<std::vector<std::string>> rows{{"pair", "context", "program", "verdict", "bag12", "bag21", "k"}};
  for (const SocReport& r : reports) {
    rows.push_back({r.h1 + ":" + r.h2, r.context.empty() ? "-" : fmt::format("{}", fmt::join(r.context, "/")),
                    r.program, std::string(verdict_name(r.verdict)), to_string(r.bag12), to_string(r.bag21),
                    fmt::format("{}/{}", r.k_uses1, r.k_uses2)});
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

std::map<std::string, Verdict> load_expectations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw HopError(ErrorCode::IoError, fmt::format("cannot read {}", path));
  std::map<std::string, Verdict> out;
  try {
    json j = json::parse(in);
    for (const auto& [key, v] : j.at("verdicts").items()) {
      auto verdict = parse_verdict(v.get<std::string>());
      if (!verdict) throw HopError(ErrorCode::IoError, fmt::format("{}: bad verdict for {}", path, key));
      out.emplace(key, *verdict);
    }
  } catch (const json::exception& e) {
    throw HopError(ErrorCode::IoError, fmt::format("{}: {}", path, e.what()));
  }
  return out;
}

std::vector<ExpectationDiff> compare_expectations(const std::vector<SocReport>& reports,
                                                  const std::map<std::string, Verdict>& expected,
                                                  bool complete) {
  std::vector<ExpectationDiff> out;
  std::set<std::string> seen;
  for (const SocReport& r : reports) {
    std::string key = r.key();
    seen.insert(key);
    auto it = expected.find(key);
    if (it == expected.end()) {
      if (complete) out.push_back({key, std::nullopt, r.verdict});
      continue;
    }
    if (it->second != r.verdict) out.push_back({key, it->second, r.verdict});
  }
  if (complete) {
    for (const auto& [key, v] : expected) {
      if (!seen.count(key)) out.push_back({key, v, std::nullopt});
    }
  }
  return out;
}

Value random_value(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 7 : 3);
  std::uniform_int_distribution<int> small(-100, 100);
  switch (pick(rng)) {
    case 0: return v_int(small(rng));
    case 1: return v_bool(rng() % 2 == 0);
    case 2: return v_unit();
    case 3: return v_str(fmt::format("s{}", rng() % 10));
    case 4: return v_pair(random_value(rng, depth - 1), random_value(rng, depth - 1));
    case 5: return rng() % 3 == 0 ? v_nothing() : v_just(random_value(rng, depth - 1));
    default: {
      std::vector<Value> items;
      std::size_t n = rng() % 4;
      Value proto = random_value(rng, depth - 1);
      for (std::size_t i = 0; i < n; ++i) items.push_back(i == 0 ? proto : random_value(rng, 0));
      return v_list(items);
    }
  }
}

std::optional<Value> random_param(std::mt19937_64& rng, const HandlerEntry& h) {
  if (!h.takes_param()) return std::nullopt;
  std::uniform_int_distribution<int> small(-100, 100);
  if (h.param_type == "S" || h.param_type == "R" || h.param_type == "Int") return v_int(small(rng));
  std::vector<Value> items;
  std::size_t n = rng() % 3;
  for (std::size_t i = 0; i < n; ++i) {
    if (h.param_type == "Env") {
      items.push_back(v_pair(v_str(fmt::format("x{}", i)), v_int(small(rng))));
    } else {
      items.push_back(v_int(small(rng)));
    }
  }
  if (h.param_type == "Env" || h.param_type == "Stack") return v_list(items);
  return h.default_param;
}

ReturnLemmaResult check_return_lemma(const Stdlib& lib, const HandlerEntry& h, std::size_t samples,
                                     std::uint64_t seed) {
  ReturnLemmaResult out;
  out.handler = h.name;
  std::mt19937_64 rng(seed);
  EvalOptions opts;
  opts.fuel = 10'000;
  Machine m(lib.program, opts);
  for (std::size_t i = 0; i < samples; ++i) {
    Value v = random_value(rng);
    std::optional<Value> p = random_param(rng, h);
    ++out.samples;
    EvalResult r = m.evaluate(mk_enact(apply_handler(h, mk_val(v_suspend(mk_val(v))), p)));
    std::string bag;
    bool ok = false;
    if (r.value) {
      try {
        Bag b = to_bag(h.functor, *r.value);
        bag = to_string(b);
        ok = b == Bag::of({v});
      } catch (const HopError& e) {
        bag = e.message();
      }
    } else {
      bag = describe_failure(r);
    }
    if (ok) continue;
    if (out.failures++ == 0) {
      out.counterexample = fmt::format("v = {}, p = {}: {}", pretty(v), p ? pretty(*p) : "()", bag);
    }
  }
  return out;
}

}  // namespace hop
