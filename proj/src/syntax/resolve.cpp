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

// Name resolution. Identifiers not bound by an enclosing binder become
// operation references, primitive constants or top-level references.
// Applications of constructors, operations and unsaturated constants to
// values are folded into values, which is what a delta step would produce.

#include <fmt/format.h>

#include "hop/parser.hpp"

namespace hop {

namespace {

class Resolver {
 public:
  explicit Resolver(const Program& p) : prog_(p) {
    for (const EffectDecl& e : p.effects) {
      for (const OpDecl& d : e.ops) ops_[d.name].push_back(&e);
    }
  }

  ExprPtr expr(const ExprPtr& e);

 private:
  ExprPtr value(const Value& v, SourceLoc loc);
  ExprPtr var(const Name& n, SourceLoc loc);
  HandlerPtr handler(const Handler& h);
  ExprPtr scoped(const ExprPtr& e, const std::vector<Name>& names);
  bool bound(const Name& n) const {
    return std::find(bound_.begin(), bound_.end(), n) != bound_.end();
  }

  const Program& prog_;
  std::map<Name, std::vector<const EffectDecl*>> ops_;
  std::vector<Name> bound_;
};

Value op_value(const EffectDecl& e, const OpDecl& d) { return v_op(e.label, d.name, d.arity); }

ExprPtr Resolver::var(const Name& n, SourceLoc loc) {
  if (bound(n)) return mk_val(v_var(n), loc);
  if (auto dot = n.find('.'); dot != Name::npos) {
    Label label = n.substr(0, dot);
    Name op = n.substr(dot + 1);
    const EffectDecl* e = prog_.effect(label);
    if (!e) throw HopError(ErrorCode::UnknownEffectLabel, fmt::format("unknown effect label {}", label), loc);
    const OpDecl* d = e->find(op);
    if (!d) {
      throw HopError(ErrorCode::UnknownOperation, fmt::format("effect {} has no operation {}", label, op), loc);
    }
    return mk_val(op_value(*e, *d), loc);
  }
  if (auto it = ops_.find(n); it != ops_.end()) {
    if (it->second.size() > 1) {
      std::vector<std::string> choices;
      for (const EffectDecl* e : it->second) choices.push_back(e->label + "." + n);
      throw HopError(ErrorCode::AmbiguousOperation,
                     fmt::format("operation {} is ambiguous; write one of {}", n, fmt::join(choices, ", ")),
                     loc);
    }
    const EffectDecl* e = it->second.front();
    return mk_val(op_value(*e, *e->find(n)), loc);
  }
  if (const_table().count(n)) return mk_val(v_const(n), loc);
  if (prog_.definition(n)) return mk_nameref(n, loc);
  return mk_val(v_var(n), loc);
}

// Rebuilds `head` applied to `args`, folding as far as the arguments are
// values.
ExprPtr apply_all(Value head, const std::vector<ExprPtr>& args, SourceLoc loc);

ExprPtr fold_app(const ExprPtr& f, const ExprPtr& a, SourceLoc loc) {
  auto fv = std::get_if<Expr::Val>(&f->node);
  auto av = std::get_if<Expr::Val>(&a->node);
  if (fv && av) {
    const Value& h = fv->value;
    if (auto d = std::get_if<Value::Data>(&h.node)) {
      auto it = constructor_table().find(d->ctor);
      if (it != constructor_table().end() && d->args.size() < it->second.arity) {
        Value out = h;
        std::get<Value::Data>(out.node).args.push_back(av->value);
        return mk_val(std::move(out), loc);
      }
    } else if (auto o = std::get_if<Value::Op>(&h.node)) {
      if (o->args.size() < o->arity) {
        Value out = h;
        std::get<Value::Op>(out.node).args.push_back(av->value);
        return mk_val(std::move(out), loc);
      }
    } else if (auto c = std::get_if<Value::Const>(&h.node)) {
      // Saturating a constant computes something; that stays a runtime step.
      if (c->args.size() + 1 < const_table().at(c->name).arity) {
        Value out = h;
        std::get<Value::Const>(out.node).args.push_back(av->value);
        return mk_val(std::move(out), loc);
      }
    }
  }
  return mk_app(f, a, loc);
}

ExprPtr apply_all(Value head, const std::vector<ExprPtr>& args, SourceLoc loc) {
  ExprPtr out = mk_val(std::move(head), loc);
  for (const ExprPtr& a : args) out = fold_app(out, a, loc);
  return out;
}

ExprPtr Resolver::value(const Value& v, SourceLoc loc) {
  return std::visit(
      [&](const auto& x) -> ExprPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Value::Var>) {
          return var(x.name, loc);
        } else if constexpr (std::is_same_v<T, Value::Lam>) {
          return mk_val(v_lam(x.binder, scoped(x.body, {x.binder})), loc);
        } else if constexpr (std::is_same_v<T, Value::Suspend>) {
          return mk_val(v_suspend(expr(x.body)), loc);
        } else if constexpr (std::is_same_v<T, Value::Const> || std::is_same_v<T, Value::Data> ||
                             std::is_same_v<T, Value::Op>) {
          if (x.args.empty()) return mk_val(v, loc);
          std::vector<ExprPtr> args;
          for (const Value& a : x.args) args.push_back(value(a, loc));
          T head = x;
          head.args.clear();
          return apply_all(Value{head}, args, loc);
        } else {
          return mk_val(v, loc);
        }
      },
      v.node);
}

ExprPtr Resolver::scoped(const ExprPtr& e, const std::vector<Name>& names) {
  bound_.insert(bound_.end(), names.begin(), names.end());
  ExprPtr out = expr(e);
  bound_.resize(bound_.size() - names.size());
  return out;
}

HandlerPtr Resolver::handler(const Handler& h) {
  const EffectDecl* eff = prog_.effect(h.label);
  if (!eff) {
    throw HopError(ErrorCode::UnknownEffectLabel, fmt::format("unknown effect label {}", h.label), h.loc);
  }
  auto out = std::make_shared<Handler>();
  out->label = h.label;
  out->loc = h.loc;
  std::set<Name> seen;
  for (const OpClause& c : h.ops) {
    const OpDecl* d = eff->find(c.op);
    if (!d) {
      throw HopError(ErrorCode::ExtraClause,
                     fmt::format("handler for {} has a clause for {}, which {} does not declare", h.label,
                                 c.op, h.label),
                     c.loc);
    }
    if (!seen.insert(c.op).second) {
      throw HopError(ErrorCode::ExtraClause, fmt::format("duplicate clause for {}", c.op), c.loc);
    }
    OpClause r = c;
    if (r.cont.empty()) {
      std::size_t n = d->arity;
      if (c.binders.size() == n + 2) {
        r.binders.assign(c.binders.begin(), c.binders.begin() + n);
        r.param = c.binders[n];
        r.cont = c.binders[n + 1];
      } else if (c.binders.size() == n + 1) {
        r.binders.assign(c.binders.begin(), c.binders.begin() + n);
        r.param = "_";
        r.cont = c.binders[n];
      } else {
        throw HopError(ErrorCode::ArityMismatch,
                       fmt::format("clause for {}/{} needs {} argument binders, an optional parameter "
                                   "binder and a continuation binder",
                                   c.op, n, n),
                       c.loc);
      }
    }
    std::vector<Name> names = r.binders;
    names.push_back(r.param);
    names.push_back(r.cont);
    r.body = scoped(r.body, names);
    out->ops.push_back(std::move(r));
  }
  for (const OpDecl& d : eff->ops) {
    if (!seen.count(d.name)) {
      throw HopError(ErrorCode::MissingClause,
                     fmt::format("handler for {} has no clause for operation {}", h.label, d.name), h.loc);
    }
  }
  out->ret = h.ret;
  out->ret.body = scoped(h.ret.body, {h.ret.value, h.ret.param});
  return out;
}

ExprPtr Resolver::expr(const ExprPtr& e) {
  return std::visit(
      [&](const auto& x) -> ExprPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Expr::App>) {
          ExprPtr f = expr(x.fun);
          ExprPtr a = expr(x.arg);
          return fold_app(f, a, e->loc);
        } else if constexpr (std::is_same_v<T, Expr::Let>) {
          return mk_let(x.binder, expr(x.bound), scoped(x.body, {x.binder}), e->loc);
        } else if constexpr (std::is_same_v<T, Expr::Handle>) {
          return mk_handle(handler(*x.handler), expr(x.param), expr(x.body), e->loc);
        } else if constexpr (std::is_same_v<T, Expr::Enact>) {
          return mk_enact(expr(x.target), e->loc);
        } else if constexpr (std::is_same_v<T, Expr::Val>) {
          return value(x.value, e->loc);
        } else if constexpr (std::is_same_v<T, Expr::Match>) {
          std::vector<MatchArm> arms;
          for (const MatchArm& arm : x.arms) {
            std::set<Name> vars = pattern_vars(arm.pattern);
            arms.push_back(MatchArm{arm.pattern, scoped(arm.body, {vars.begin(), vars.end()})});
          }
          return mk_match(expr(x.scrutinee), std::move(arms), e->loc);
        } else {
          return e;
        }
      },
      e->node);
}

}  // namespace

void resolve(Program& program) {
  Resolver r(program);
  for (Definition& d : program.definitions) d.body = r.expr(d.body);
  if (program.main) program.main = r.expr(*program.main);
}

ExprPtr resolve(const Program& program, const ExprPtr& e) { return Resolver(program).expr(e); }

}  // namespace hop
