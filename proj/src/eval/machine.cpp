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

#include <cassert>

#include <fmt/format.h>

#include "hop/eval.hpp"

namespace hop {

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::Delta: return "δ";
    case Rule::Beta: return "β";
    case Rule::Let: return "Let";
    case Rule::Enact: return "Enact";
    case Rule::Return: return "Return";
    case Rule::Handle: return "Handle";
    case Rule::Match: return "Match";
    case Rule::Unfold: return "Unfold";
    case Rule::Delay: return "Delay";
  }
  return "?";
}

std::string_view stuck_reason_name(StuckReason r) {
  switch (r) {
    case StuckReason::UnhandledOp: return "UnhandledOp";
    case StuckReason::DeltaUndefined: return "DeltaUndefined";
    case StuckReason::MatchFailure: return "MatchFailure";
    case StuckReason::NotAFunction: return "NotAFunction";
    case StuckReason::NotASuspension: return "NotASuspension";
    case StuckReason::FreeVariable: return "FreeVariable";
    case StuckReason::UnknownDefinition: return "UnknownDefinition";
  }
  return "?";
}

ExprPtr plug(const EvalCtx& ctx, const ExprPtr& hole) {
  ExprPtr e = hole;
  for (auto it = ctx.frames.rbegin(); it != ctx.frames.rend(); ++it) {
    const SourceLoc loc = it->loc;
    e = std::visit(
        [&](const auto& f) -> ExprPtr {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Frame::AppFun>) {
            return mk_app(e, f.arg, loc);
          } else if constexpr (std::is_same_v<T, Frame::AppArg>) {
            return mk_app(mk_val(f.fun, loc), e, loc);
          } else if constexpr (std::is_same_v<T, Frame::LetBound>) {
            return mk_let(f.binder, e, f.body, loc);
          } else if constexpr (std::is_same_v<T, Frame::EnactHole>) {
            return mk_enact(e, loc);
          } else if constexpr (std::is_same_v<T, Frame::HandleBody>) {
            return mk_handle(f.handler, mk_val(f.param, loc), e, loc);
          } else if constexpr (std::is_same_v<T, Frame::HandleParam>) {
            return mk_handle(f.handler, e, f.body, loc);
          } else {
            return mk_match(e, f.arms, loc);
          }
        },
        it->node);
  }
  return e;
}

namespace {

const Value* as_value(const ExprPtr& e) {
  if (auto v = std::get_if<Expr::Val>(&e->node)) return &v->value;
  return nullptr;
}

bool saturated_op(const Value& v) {
  auto op = std::get_if<Value::Op>(&v.node);
  return op && op->args.size() == op->arity;
}

Redex stuck(StuckReason why, ExprPtr e) {
  Redex r;
  r.stuck = why;
  r.expr = std::move(e);
  return r;
}

Redex redex(Rule rule, ExprPtr e) {
  Redex r;
  r.rule = rule;
  r.expr = std::move(e);
  return r;
}

// Classifies the application of value `f` to value `a`.
Redex app_redex(const ExprPtr& e, const Value& f) {
  if (f.is<Value::Lam>()) return redex(Rule::Beta, e);
  if (auto c = std::get_if<Value::Const>(&f.node)) {
    auto it = const_table().find(c->name);
    if (it != const_table().end() && c->args.size() < it->second.arity) return redex(Rule::Delta, e);
  }
  if (auto d = std::get_if<Value::Data>(&f.node)) {
    auto it = constructor_table().find(d->ctor);
    if (it != constructor_table().end() && d->args.size() < it->second.arity) return redex(Rule::Delta, e);
  }
  if (auto o = std::get_if<Value::Op>(&f.node); o && o->args.size() < o->arity) return redex(Rule::Delta, e);
  if (f.is<Value::Var>()) return stuck(StuckReason::FreeVariable, e);
  return stuck(StuckReason::NotAFunction, e);
}

}  // namespace

std::variant<Value, Decomposition> decompose(const ExprPtr& root) {
  Decomposition d;
  std::vector<Frame>& frames = d.ctx.frames;
  ExprPtr e = root;
  while (true) {
    if (const Value* v = as_value(e)) {
      if (frames.empty()) return *v;
      // Only reachable through a frame whose hole holds a value, which the
      // cases below never build.
      assert(false);
    }
    const SourceLoc loc = e->loc;
    if (auto n = std::get_if<Expr::App>(&e->node)) {
      const Value* f = as_value(n->fun);
      if (!f) {
        frames.push_back(Frame{Frame::AppFun{n->arg}, loc});
        e = n->fun;
        continue;
      }
      if (!as_value(n->arg)) {
        frames.push_back(Frame{Frame::AppArg{*f}, loc});
        e = n->arg;
        continue;
      }
      d.redex = app_redex(e, *f);
      return d;
    }
    if (auto n = std::get_if<Expr::Let>(&e->node)) {
      if (as_value(n->bound)) {
        d.redex = redex(Rule::Let, e);
        return d;
      }
      frames.push_back(Frame{Frame::LetBound{n->binder, n->body}, loc});
      e = n->bound;
      continue;
    }
    if (auto n = std::get_if<Expr::Handle>(&e->node)) {
      const Value* p = as_value(n->param);
      if (!p) {
        frames.push_back(Frame{Frame::HandleParam{n->handler, n->body}, loc});
        e = n->param;
        continue;
      }
      // A handle runs its body only when enacted; elsewhere it is a
      // computation like a suspension.
      if (frames.empty() || !std::holds_alternative<Frame::EnactHole>(frames.back().node)) {
        d.redex = redex(Rule::Delay, e);
        return d;
      }
      if (as_value(n->body)) {
        d.redex = redex(Rule::Return, e);
        return d;
      }
      frames.push_back(Frame{Frame::HandleBody{n->handler, *p}, loc});
      e = n->body;
      continue;
    }
    if (auto n = std::get_if<Expr::Enact>(&e->node)) {
      const Value* t = as_value(n->target);
      if (!t) {
        frames.push_back(Frame{Frame::EnactHole{}, loc});
        e = n->target;
        continue;
      }
      if (t->is<Value::Suspend>()) {
        d.redex = redex(Rule::Enact, e);
        return d;
      }
      if (!saturated_op(*t)) {
        d.redex = stuck(t->is<Value::Var>() ? StuckReason::FreeVariable : StuckReason::NotASuspension, e);
        return d;
      }
      // Find the innermost handler for the operation's label.
      const Label& label = t->as<Value::Op>().label;
      std::size_t i = frames.size();
      while (i > 0) {
        auto h = std::get_if<Frame::HandleBody>(&frames[i - 1].node);
        if (h && h->handler->label == label) break;
        --i;
      }
      if (i == 0) {
        d.redex = stuck(StuckReason::UnhandledOp, e);
        return d;
      }
      EvalCtx handled{std::vector<Frame>(frames.begin() + static_cast<std::ptrdiff_t>(i - 1), frames.end())};
      d.redex = redex(Rule::Handle, plug(handled, e));
      d.redex.inner.frames.assign(frames.begin() + static_cast<std::ptrdiff_t>(i), frames.end());
      d.redex.op = *t;
      frames.resize(i - 1);
      return d;
    }
    if (auto n = std::get_if<Expr::Match>(&e->node)) {
      if (as_value(n->scrutinee)) {
        d.redex = redex(Rule::Match, e);
        return d;
      }
      frames.push_back(Frame{Frame::MatchScrutinee{n->arms}, loc});
      e = n->scrutinee;
      continue;
    }
    d.redex = redex(Rule::Unfold, e);
    return d;
  }
}

namespace {

std::optional<std::vector<Value>> list_items(const Value& v) {
  std::vector<Value> out;
  const Value* cur = &v;
  while (true) {
    auto d = std::get_if<Value::Data>(&cur->node);
    if (!d) return std::nullopt;
    if (d->ctor == "Nil" && d->args.empty()) return out;
    if (d->ctor != "Cons" || d->args.size() != 2) return std::nullopt;
    out.push_back(d->args[0]);
    cur = &d->args[1];
  }
}

const std::int64_t* as_int(const Value& v) {
  if (auto i = std::get_if<Value::Int>(&v.node)) return &i->value;
  return nullptr;
}

const Value::Data* as_pair(const Value& v) {
  auto d = std::get_if<Value::Data>(&v.node);
  return d && d->ctor == "Pair" && d->args.size() == 2 ? d : nullptr;
}

}  // namespace

std::optional<Value> delta(const Name& c, const std::vector<Value>& args) {
  if (c == "+" && args.size() == 2) {
    const std::int64_t* a = as_int(args[0]);
    const std::int64_t* b = as_int(args[1]);
    if (a && b) return v_int(*a + *b);
  } else if (c == "++" && args.size() == 2) {
    auto a = list_items(args[0]);
    auto b = list_items(args[1]);
    if (a && b) {
      a->insert(a->end(), b->begin(), b->end());
      return v_list(*a);
    }
  } else if (c == "==" && args.size() == 2) {
    return v_bool(equal(args[0], args[1]));
  } else if ((c == "fst" || c == "snd") && args.size() == 1) {
    if (auto p = as_pair(args[0])) return p->args[c == "fst" ? 0 : 1];
  } else if (c == "lookup" && args.size() == 2) {
    if (auto env = list_items(args[1])) {
      for (const Value& entry : *env) {
        auto p = as_pair(entry);
        if (!p) return std::nullopt;
        if (equal(p->args[0], args[0])) return p->args[1];
      }
    }
  }
  return std::nullopt;
}

bool match_pattern(const Pattern& p, const Value& v, std::vector<std::pair<Name, Value>>& out) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Pattern::Var>) {
          out.emplace_back(x.name, v);
          return true;
        } else if constexpr (std::is_same_v<T, Pattern::Wildcard>) {
          return true;
        } else if constexpr (std::is_same_v<T, Pattern::IntLit>) {
          const std::int64_t* i = as_int(v);
          return i && *i == x.value;
        } else if constexpr (std::is_same_v<T, Pattern::StrLit>) {
          auto s = std::get_if<Value::Str>(&v.node);
          return s && s->value == x.value;
        } else {
          auto d = std::get_if<Value::Data>(&v.node);
          if (!d || d->ctor != x.name || d->args.size() != x.args.size()) return false;
          for (std::size_t i = 0; i < x.args.size(); ++i) {
            if (!match_pattern(x.args[i], d->args[i], out)) return false;
          }
          return true;
        }
      },
      p.node);
}

namespace {

void collect_handlers(const ExprPtr& e, const Name& owner, std::map<const Handler*, Name>& out);

void collect_handlers(const Value& v, const Name& owner, std::map<const Handler*, Name>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Value::Lam> || std::is_same_v<T, Value::Suspend>) {
          collect_handlers(x.body, owner, out);
        }
      },
      v.node);
}

void collect_handlers(const ExprPtr& e, const Name& owner, std::map<const Handler*, Name>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Expr::App>) {
          collect_handlers(x.fun, owner, out);
          collect_handlers(x.arg, owner, out);
        } else if constexpr (std::is_same_v<T, Expr::Let>) {
          collect_handlers(x.bound, owner, out);
          collect_handlers(x.body, owner, out);
        } else if constexpr (std::is_same_v<T, Expr::Handle>) {
          out.emplace(x.handler.get(), owner);
          collect_handlers(x.param, owner, out);
          collect_handlers(x.body, owner, out);
        } else if constexpr (std::is_same_v<T, Expr::Enact>) {
          collect_handlers(x.target, owner, out);
        } else if constexpr (std::is_same_v<T, Expr::Val>) {
          collect_handlers(x.value, owner, out);
        } else if constexpr (std::is_same_v<T, Expr::Match>) {
          collect_handlers(x.scrutinee, owner, out);
          for (const MatchArm& a : x.arms) collect_handlers(a.body, owner, out);
        }
      },
      e->node);
}

ExprPtr substitute_all(ExprPtr e, const std::vector<std::pair<Name, Value>>& binds) {
  for (const auto& [x, v] : binds) {
    if (!x.empty() && x != "_") e = substitute(e, x, v);
  }
  return e;
}

}  // namespace

Machine::Machine(const Program& program, EvalOptions opts) : program_(program), opts_(std::move(opts)) {
  print_.qualify = program.ambiguous_ops();
  for (const Definition& d : program.definitions) collect_handlers(d.body, d.name, print_.handler_names);
}

ExprPtr Machine::contract(const Redex& r) const {
  assert(r.rule);
  const Expr& e = *r.expr;
  switch (*r.rule) {
    case Rule::Beta: {
      const auto& app = e.as<Expr::App>();
      const auto& lam = app.fun->as<Expr::Val>().value.as<Value::Lam>();
      return substitute(lam.body, lam.binder, app.arg->as<Expr::Val>().value);
    }
    case Rule::Delta: {
      const auto& app = e.as<Expr::App>();
      Value f = app.fun->as<Expr::Val>().value;
      const Value& a = app.arg->as<Expr::Val>().value;
      if (auto c = std::get_if<Value::Const>(&f.node)) {
        std::vector<Value> args = c->args;
        args.push_back(a);
        if (args.size() < const_table().at(c->name).arity) return mk_val(v_const(c->name, args), e.loc);
        auto out = delta(c->name, args);
        if (!out) return nullptr;
        return mk_val(*out, e.loc);
      }
      std::visit(
          [&](auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Value::Data> || std::is_same_v<T, Value::Op>) x.args.push_back(a);
          },
          f.node);
      return mk_val(std::move(f), e.loc);
    }
    case Rule::Let: {
      const auto& let = e.as<Expr::Let>();
      return substitute(let.body, let.binder, let.bound->as<Expr::Val>().value);
    }
    case Rule::Delay:
      return mk_val(v_suspend(mk_enact(r.expr, e.loc)), e.loc);
    case Rule::Enact:
      return e.as<Expr::Enact>().target->as<Expr::Val>().value.as<Value::Suspend>().body;
    case Rule::Return: {
      const auto& h = e.as<Expr::Handle>();
      const ReturnClause& ret = h.handler->ret;
      return substitute_all(ret.body, {{ret.value, h.body->as<Expr::Val>().value},
                                       {ret.param, h.param->as<Expr::Val>().value}});
    }
    case Rule::Handle: {
      const auto& h = e.as<Expr::Handle>();
      const auto& op = r.op->as<Value::Op>();
      const OpClause* clause = nullptr;
      for (const OpClause& c : h.handler->ops) {
        if (c.op == op.name) clause = &c;
      }
      if (!clause) return nullptr;
      for (const Frame& f : r.inner.frames) {
        auto hb = std::get_if<Frame::HandleBody>(&f.node);
        assert(!(hb && hb->handler->label == h.handler->label));
        (void)hb;
      }
      // k = \q. \y. handle^L {C} q E[y!]
      const Name q = "q", y = "y";
      ExprPtr resumed = mk_handle(h.handler, mk_val(v_var(q)), plug(r.inner, mk_enact(mk_val(v_var(y)))), e.loc);
      Value k = opts_.order == ContinuationOrder::ParamFirst ? v_lam(q, mk_val(v_lam(y, resumed)))
                                                              : v_lam(y, mk_val(v_lam(q, resumed)));
      std::vector<std::pair<Name, Value>> binds;
      for (std::size_t i = 0; i < clause->binders.size(); ++i) binds.emplace_back(clause->binders[i], op.args[i]);
      binds.emplace_back(clause->param, h.param->as<Expr::Val>().value);
      binds.emplace_back(clause->cont, k);
      return substitute_all(clause->body, binds);
    }
    case Rule::Match: {
      const auto& m = e.as<Expr::Match>();
      const Value& v = m.scrutinee->as<Expr::Val>().value;
      for (const MatchArm& arm : m.arms) {
        std::vector<std::pair<Name, Value>> binds;
        if (match_pattern(arm.pattern, v, binds)) return substitute_all(arm.body, binds);
      }
      return nullptr;
    }
    case Rule::Unfold: {
      const Definition* d = program_.definition(e.as<Expr::NameRef>().name);
      return d ? d->body : nullptr;
    }
  }
  return nullptr;
}

StepResult Machine::step(const ExprPtr& e) const {
  auto split = decompose(e);
  if (auto v = std::get_if<Value>(&split)) {
    StepResult out;
    out.kind = StepResult::Kind::Done;
    out.next = e;
    out.value = *v;
    return out;
  }
  const Decomposition& d = std::get<Decomposition>(split);
  auto stuck_at = [&](StuckReason why, std::string msg) {
    StepResult out;
    out.kind = StepResult::Kind::Stuck;
    out.next = e;
    out.stuck = StuckInfo{why, std::move(msg), d.redex.expr->loc};
    return out;
  };
  std::string where = pretty(d.redex.expr, print_);
  if (where.size() > 200) where = where.substr(0, 197) + "...";
  if (!d.redex.rule) {
    switch (d.redex.stuck) {
      case StuckReason::UnhandledOp:
        return stuck_at(d.redex.stuck, fmt::format("unhandled operation: {}", where));
      case StuckReason::FreeVariable:
        return stuck_at(d.redex.stuck, fmt::format("free variable in {}", where));
      case StuckReason::NotAFunction:
        return stuck_at(d.redex.stuck, fmt::format("applying a non-function: {}", where));
      default:
        return stuck_at(d.redex.stuck, fmt::format("enacting a non-suspension: {}", where));
    }
  }
  ExprPtr next = contract(d.redex);
  if (!next) {
    switch (*d.redex.rule) {
      case Rule::Delta:
        return stuck_at(StuckReason::DeltaUndefined, fmt::format("primitive undefined on {}", where));
      case Rule::Match:
        return stuck_at(StuckReason::MatchFailure, fmt::format("no pattern matches in {}", where));
      case Rule::Unfold:
        return stuck_at(StuckReason::UnknownDefinition, fmt::format("unknown definition {}", where));
      default:
        return stuck_at(StuckReason::UnhandledOp, fmt::format("no clause for the operation in {}", where));
    }
  }
  StepResult out;
  out.next = plug(d.ctx, next);
  out.rule = *d.redex.rule;
  return out;
}

EvalResult Machine::evaluate(const ExprPtr& start) const {
  EvalResult out;
  ExprPtr e = start;
  std::size_t index = 0;
  for (; out.steps < opts_.fuel; ++out.steps) {
    StepResult s = step(e);
    if (s.kind == StepResult::Kind::Done) {
      out.outcome = EvalResult::Outcome::Value;
      out.value = s.value;
      out.last = e;
      return out;
    }
    if (s.kind == StepResult::Kind::Stuck) {
      out.outcome = EvalResult::Outcome::Stuck;
      out.stuck = s.stuck;
      out.last = e;
      return out;
    }
    e = s.next;
    if (s.rule == Rule::Unfold) continue;
    TraceEntry entry{++index, s.rule, e};
    if (opts_.on_step) opts_.on_step(entry);
    if (opts_.record_trace) out.trace.push_back(std::move(entry));
  }
  // Out of fuel, unless the last step produced a value.
  if (auto v = as_value(e)) {
    out.outcome = EvalResult::Outcome::Value;
    out.value = *v;
  }
  out.last = e;
  return out;
}

}  // namespace hop
