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

#include "typecheck/checker.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace hop {

std::string to_string(const EffectAnnotation& a) {
  return fmt::format("{} * {}", to_string(a.immediate), to_string(a.latent));
}

EffectAnnotation resurface(const EffectAnnotation& a, const Label& label) {
  auto rest = row_remove(a.latent, label);
  if (!rest) {
    throw HopError(ErrorCode::LabelNotLatent,
                   fmt::format("label {} is not in the latent row {}", label, to_string(a.latent)));
  }
  return EffectAnnotation{Row::cons(label, a.immediate), *rest};
}

EffectSig EffectSig::from(const Program& p) {
  EffectSig s;
  for (const EffectDecl& e : p.effects) s.effects.emplace(e.label, e.ops);
  return s;
}

const OpDecl* EffectSig::find(const Label& label, const Name& op) const {
  auto it = effects.find(label);
  if (it == effects.end()) return nullptr;
  for (const OpDecl& d : it->second) {
    if (d.name == op) return &d;
  }
  return nullptr;
}

std::set<Label> EffectSig::labels() const {
  std::set<Label> out;
  for (const auto& [l, ops] : effects) out.insert(l);
  return out;
}

Checker::Checker(const TypeEnv& env, const CheckOptions& opts)
    : env_(env), opts_(opts), supply_("?"), u_(supply_) {}

void Checker::unify_at(const TypePtr& a, const TypePtr& b, SourceLoc loc, const char* what) {
  try {
    u_.unify(a, b);
  } catch (const HopError& err) {
    throw HopError(err.code(), fmt::format("{}: {}", what, err.message()), loc);
  }
}

TypePtr Checker::lookup(const Name& n, SourceLoc loc) {
  for (auto it = locals_.rbegin(); it != locals_.rend(); ++it) {
    if (it->first == n) return instantiate(it->second, supply_);
  }
  auto it = env_.vars.find(n);
  if (it != env_.vars.end()) return instantiate(it->second, supply_);
  throw HopError(ErrorCode::UnknownVariable, fmt::format("unbound variable {}", n), loc);
}

Scheme Checker::generalize_here(const TypePtr& t, const EffectAnnotation& ann) const {
  TypePtr z = zonk(t);
  FreeVars fixed = free_type_vars(zonk(ann.immediate));
  fixed.merge(free_type_vars(zonk(ann.latent)));
  for (const auto& [name, s] : locals_) fixed.merge(free_type_vars(u_.subst().apply(s)));
  FreeVars mine = free_type_vars(z);
  Scheme out{{}, {}, z};
  for (const Name& v : mine.types) {
    if (!fixed.types.count(v) && u_.is_flexible(v)) out.type_vars.push_back(v);
  }
  for (const Name& v : mine.rows) {
    if (!fixed.rows.count(v) && u_.is_flexible(v)) out.row_vars.push_back(v);
  }
  return out;
}

TypePtr Checker::skolemize(const Scheme& s) {
  Substitution sub;
  for (const Name& v : s.type_vars) {
    Name r = supply_.fresh_rigid(v);
    u_.rigid().insert(r);
    sub.types.emplace(v, t_var(r));
  }
  for (const Name& v : s.row_vars) {
    Name r = supply_.fresh_rigid(v);
    u_.rigid().insert(r);
    sub.rows.emplace(v, Row::var(r));
  }
  return sub.apply(s.body);
}

TypePtr Checker::apply_args(TypePtr head, const std::vector<Value>& args, SourceLoc loc,
                            const EffectAnnotation& ann) {
  for (const Value& a : args) {
    TypePtr h = zonk(head);
    if (auto arr = std::get_if<Type::Arrow>(&h->node)) {
      infer_value(a, loc, ann, &arr->from);
      head = arr->to;
      continue;
    }
    TypePtr dom = fresh();
    TypePtr cod = fresh();
    unify_at(h, t_arrow(dom, cod), loc, "applying a non-function");
    infer_value(a, loc, ann, &dom);
    head = cod;
  }
  return head;
}

TypePtr Checker::infer_value(const Value& v, SourceLoc loc, const EffectAnnotation& ann,
                             const TypePtr* expected) {
  TypePtr t = std::visit(
      [&](const auto& x) -> TypePtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Value::Var>) {
          return lookup(x.name, loc);
        } else if constexpr (std::is_same_v<T, Value::Lam>) {
          TypePtr a, b;
          TypePtr want = expected ? zonk(*expected) : nullptr;
          if (want && want->is<Type::Arrow>()) {
            a = want->as<Type::Arrow>().from;
            b = want->as<Type::Arrow>().to;
          } else {
            a = fresh();
            b = fresh();
          }
          push(x.binder, Scheme::mono(a));
          bool saved = in_lambda_;
          in_lambda_ = true;
          infer(x.body, EffectAnnotation::pure(), &b);
          in_lambda_ = saved;
          locals_.pop_back();
          return t_arrow(a, b);
        } else if constexpr (std::is_same_v<T, Value::Suspend>) {
          Row imm, lat;
          TypePtr res;
          TypePtr want = expected ? zonk(*expected) : nullptr;
          if (want && want->is<Type::Susp>()) {
            const auto& s = want->as<Type::Susp>();
            imm = s.immediate;
            lat = s.latent;
            res = s.result;
          } else {
            imm = fresh_row();
            lat = fresh_row();
            res = fresh();
          }
          bool saved = in_lambda_;
          in_lambda_ = false;
          infer(x.body, EffectAnnotation{imm, lat}, &res);
          in_lambda_ = saved;
          return t_susp(imm, lat, res);
        } else if constexpr (std::is_same_v<T, Value::Const>) {
          return apply_args(instantiate(const_table().at(x.name).scheme, supply_), x.args, loc, ann);
        } else if constexpr (std::is_same_v<T, Value::Data>) {
          auto it = constructor_table().find(x.ctor);
          if (it == constructor_table().end()) {
            throw HopError(ErrorCode::UnknownVariable, fmt::format("unknown constructor {}", x.ctor), loc);
          }
          return apply_args(instantiate(it->second.scheme, supply_), x.args, loc, ann);
        } else if constexpr (std::is_same_v<T, Value::Int>) {
          return t_int();
        } else if constexpr (std::is_same_v<T, Value::Str>) {
          return t_string();
        } else {
          const OpDecl* d = env_.sigma.find(x.label, x.name);
          if (!d) {
            throw HopError(ErrorCode::UnknownOperation,
                           fmt::format("unknown operation {}.{}", x.label, x.name), loc);
          }
          return apply_args(instantiate(d->scheme, supply_), x.args, loc, ann);
        }
      },
      v.node);
  if (expected) unify_at(*expected, t, loc, "type mismatch");
  return t;
}

void Checker::bind_pattern(const Pattern& p, const TypePtr& t, SourceLoc loc) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Pattern::Var>) {
          push(x.name, Scheme::mono(t));
        } else if constexpr (std::is_same_v<T, Pattern::IntLit>) {
          unify_at(t, t_int(), loc, "integer pattern");
        } else if constexpr (std::is_same_v<T, Pattern::StrLit>) {
          unify_at(t, t_string(), loc, "string pattern");
        } else if constexpr (std::is_same_v<T, Pattern::Ctor>) {
          const auto& info = constructor_table().at(x.name);
          TypePtr ty = instantiate(info.scheme, supply_);
          std::vector<TypePtr> args;
          for (std::size_t i = 0; i < info.arity; ++i) {
            const auto& arr = ty->as<Type::Arrow>();
            args.push_back(arr.from);
            ty = arr.to;
          }
          unify_at(ty, t, loc, fmt::format("pattern {}", x.name).c_str());
          for (std::size_t i = 0; i < x.args.size(); ++i) bind_pattern(x.args[i], args[i], loc);
        }
      },
      p.node);
}

bool Checker::try_fit(const Row& imm, const Row& lat, const EffectAnnotation& ann) {
  auto snap = u_.save();
  try {
    u_.unify_rows(imm, ann.immediate);
    u_.unify_rows(lat, ann.latent);
    return true;
  } catch (const HopError&) {
    u_.restore(std::move(snap));
    return false;
  }
}

std::vector<Name> Checker::row_chain(const Row& r) const {
  std::vector<Name> out;
  std::vector<Name> todo = r.tails;
  while (!todo.empty()) {
    Name v = todo.back();
    todo.pop_back();
    out.push_back(v);
    auto it = u_.subst().rows.find(v);
    if (it != u_.subst().rows.end()) todo.insert(todo.end(), it->second.tails.begin(), it->second.tails.end());
  }
  return out;
}

HopError Checker::enact_error(const TypePtr& target, const EffectAnnotation& ann, SourceLoc loc) {
  TypePtr zt = zonk(target);
  EffectAnnotation za = zonk(ann);
  const auto& s = zt->as<Type::Susp>();
  if (in_lambda_ && za.immediate.is_empty() && za.latent.is_empty()) {
    return HopError(ErrorCode::ImpureFunctionBody,
                    fmt::format("function bodies must be pure, but this enacts a computation of type {}",
                                to_string(zt)),
                    loc);
  }
  bool immediate_fits = false;
  {
    auto snap = u_.save();
    try {
      u_.unify_rows(s.immediate, ann.immediate);
      immediate_fits = true;
    } catch (const HopError&) {
    }
    u_.restore(std::move(snap));
  }
  if (immediate_fits) {
    if (s.latent.is_empty() && !za.latent.labels.empty()) {
      return HopError(ErrorCode::LatentOperationCall,
                      fmt::format("this operation call has no latent effects, but the enclosing "
                                  "computation has latent effects {}",
                                  to_string(za.latent)),
                      loc);
    }
    for (const Name& v : row_chain(ann.latent)) {
      auto it = op_forced_.find(v);
      if (it == op_forced_.end()) continue;
      const auto& [op_loc, op_text] = it->second;
      return HopError(ErrorCode::LatentOperationCall,
                      fmt::format("enacting a computation of type {} needs latent effects {}, but the "
                                  "operation call {} at {}:{} fixes the latent row here to <>",
                                  to_string(zt), to_string(s.latent), op_text, op_loc.line, op_loc.col),
                      loc);
    }
  }
  return HopError(ErrorCode::EffectMismatch,
                  fmt::format("cannot enact a computation of type {} under effect annotation {}",
                              to_string(zt), to_string(za)),
                  loc);
}

TypePtr Checker::infer_enact(const Expr& e, const Expr::Enact& n, const EffectAnnotation& ann,
                             const TypePtr* expected) {
  TypePtr result = expected ? *expected : fresh();
  if (auto v = std::get_if<Expr::Val>(&n.target->node); v && v->value.is<Value::Suspend>()) {
    TypePtr want = t_susp(ann.immediate, ann.latent, result);
    infer(n.target, ann, &want);
    return result;
  }
  TypePtr t = zonk(infer(n.target, ann, nullptr));
  if (auto var = std::get_if<Type::Var>(&t->node); var && u_.is_flexible(var->name)) {
    unify_at(t, t_susp(ann.immediate, ann.latent, result), e.loc, "enacting");
    return result;
  }
  if (auto c = std::get_if<Type::Con>(&t->node); c && c->name == kDynTypeName) return result;
  if (!t->is<Type::Susp>()) {
    throw HopError(ErrorCode::TypeMismatch,
                   fmt::format("only suspended computations can be enacted, not {}", to_string(t)), e.loc);
  }
  const auto& s = t->as<Type::Susp>();
  Row context_latent = zonk(ann.latent);
  auto fit_as_is = [&] {
    if (!try_fit(s.immediate, s.latent, ann)) return false;
    if (zonk(s.latent).is_empty()) {
      for (const Name& v : context_latent.tails) {
        op_forced_.emplace(v, std::make_pair(e.loc, pretty(n.target)));
      }
    }
    return true;
  };
  // Resurfacing: move labels of enclosing handlers from the latent row to
  // the immediate row, smallest sets first.
  Row lat = zonk(s.latent);
  std::vector<Label> eligible;
  for (const Label& l : lat.labels) {
    if (opts_.resurface_any_label || std::find(handlers_.begin(), handlers_.end(), l) != handlers_.end()) {
      eligible.push_back(l);
    }
  }
  // Candidate (immediate, latent) pairs in preference order: as it is,
  // then resurfaced label sets, smallest first.
  std::vector<std::pair<Row, Row>> candidates{{s.immediate, s.latent}};
  std::size_t limit = std::min(eligible.size(), opts_.max_resurface);
  for (std::size_t k = 1; k <= limit; ++k) {
    std::vector<bool> pick(eligible.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      Row imm = s.immediate;
      Row rest = lat;
      for (std::size_t i = 0; i < eligible.size(); ++i) {
        if (!pick[i]) continue;
        imm = Row::cons(eligible[i], imm);
        rest = *row_remove(rest, eligible[i]);
      }
      candidates.emplace_back(imm, rest);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  bool fitted = false;
  if (!opts_.resurface_any_label) {
    fitted = fit_as_is();
    for (std::size_t i = 1; i < candidates.size() && !fitted; ++i) {
      fitted = try_fit(candidates[i].first, candidates[i].second, ann);
    }
  } else {
    std::vector<std::size_t> fitting;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      auto snap = u_.save();
      if (try_fit(candidates[i].first, candidates[i].second, ann)) fitting.push_back(i);
      u_.restore(std::move(snap));
    }
    if (!fitting.empty()) {
      std::size_t point = taken_.size();
      std::size_t choice = point < script_.size() ? std::min(script_[point], fitting.size() - 1) : 0;
      taken_.push_back(choice);
      options_.push_back(fitting.size());
      std::size_t i = fitting[choice];
      fitted = i == 0 ? fit_as_is() : try_fit(candidates[i].first, candidates[i].second, ann);
    }
  }
  if (fitted) {
    unify_at(s.result, result, e.loc, "result of enacted computation");
    return result;
  }
  throw enact_error(t, ann, e.loc);
}

TypePtr Checker::infer_handle(const Expr& e, const Expr::Handle& n, const EffectAnnotation& ann,
                              const TypePtr* expected) {
  const Handler& h = *n.handler;
  auto eff = env_.sigma.effects.find(h.label);
  if (eff == env_.sigma.effects.end()) {
    throw HopError(ErrorCode::UnknownEffectLabel, fmt::format("unknown effect label {}", h.label), e.loc);
  }
  Row eps = fresh_row();
  Row eps_l = fresh_row();
  TypePtr t_body = fresh();
  TypePtr t_out = fresh();
  TypePtr t_param = fresh();
  TypePtr result = t_susp(eps, Row::cons(h.label, eps_l), t_out);
  if (expected) unify_at(*expected, result, e.loc, "handler result");

  infer(n.param, ann, &t_param);

  handlers_.push_back(h.label);
  {
    bool saved = in_lambda_;
    in_lambda_ = false;
    infer(n.body, EffectAnnotation{Row::cons(h.label, eps), eps_l}, &t_body);
    in_lambda_ = saved;
  }

  std::size_t mark = locals_.size();
  push(h.ret.value, Scheme::mono(t_body));
  push(h.ret.param, Scheme::mono(t_param));
  infer(h.ret.body, ann, &result);
  locals_.resize(mark);

  std::set<Name> seen;
  for (const OpClause& c : h.ops) {
    const OpDecl* d = env_.sigma.find(h.label, c.op);
    if (!d) {
      throw HopError(ErrorCode::ExtraClause,
                     fmt::format("{} declares no operation {}", h.label, c.op), c.loc);
    }
    if (!seen.insert(c.op).second) {
      throw HopError(ErrorCode::ExtraClause, fmt::format("duplicate clause for {}", c.op), c.loc);
    }
    if (c.binders.size() != d->arity) {
      throw HopError(ErrorCode::ArityMismatch,
                     fmt::format("clause for {} binds {} arguments, expected {}", c.op, c.binders.size(),
                                 d->arity),
                     c.loc);
    }
    Substitution inst;
    for (const Name& v : d->scheme.type_vars) inst.types.emplace(v, fresh());
    for (const Name& v : d->scheme.row_vars) {
      inst.rows.emplace(v, v == "r" ? eps : v == "rl" ? eps_l : fresh_row());
    }
    TypePtr ty = inst.apply(d->scheme.body);
    for (const Name& b : c.binders) {
      const auto& arr = ty->as<Type::Arrow>();
      push(b, Scheme::mono(arr.from));
      ty = arr.to;
    }
    // `ty` is now susp[<label|eps+eps_l> * <>] result_i, the type of the
    // computation the continuation resumes with.
    TypePtr k = opts_.order == ContinuationOrder::ParamFirst ? t_arrow(t_param, t_arrow(ty, result))
                                                             : t_arrow(ty, t_arrow(t_param, result));
    push(c.param, Scheme::mono(t_param));
    push(c.cont, Scheme::mono(k));
    infer(c.body, ann, &result);
    locals_.resize(mark);
  }
  for (const OpDecl& d : eff->second) {
    if (!seen.count(d.name)) {
      throw HopError(ErrorCode::MissingClause,
                     fmt::format("handler for {} has no clause for {}", h.label, d.name), e.loc);
    }
  }
  handlers_.pop_back();
  return result;
}

TypePtr Checker::infer(const ExprPtr& ep, const EffectAnnotation& ann, const TypePtr* expected) {
  const Expr& e = *ep;
  if (auto v = std::get_if<Expr::Val>(&e.node)) return infer_value(v->value, e.loc, ann, expected);
  if (auto n = std::get_if<Expr::Enact>(&e.node)) return infer_enact(e, *n, ann, expected);
  if (auto n = std::get_if<Expr::Handle>(&e.node)) return infer_handle(e, *n, ann, expected);
  TypePtr t;
  if (auto n = std::get_if<Expr::App>(&e.node)) {
    TypePtr f = zonk(infer(n->fun, ann, nullptr));
    TypePtr dom, cod;
    if (auto arr = std::get_if<Type::Arrow>(&f->node)) {
      dom = arr->from;
      cod = arr->to;
    } else if (auto c = std::get_if<Type::Con>(&f->node); c && c->name == kDynTypeName) {
      dom = fresh();
      cod = t_dyn();
    } else {
      dom = fresh();
      cod = fresh();
      unify_at(f, t_arrow(dom, cod), e.loc, "applying a non-function");
    }
    infer(n->arg, ann, &dom);
    t = cod;
  } else if (auto n = std::get_if<Expr::Let>(&e.node)) {
    TypePtr bound = infer(n->bound, ann, nullptr);
    Scheme s = is_value(n->bound) ? generalize_here(bound, ann) : Scheme::mono(bound);
    push(n->binder, std::move(s));
    t = infer(n->body, ann, expected);
    locals_.pop_back();
  } else if (auto n = std::get_if<Expr::Match>(&e.node)) {
    TypePtr scrut = infer(n->scrutinee, ann, nullptr);
    t = expected ? *expected : fresh();
    for (const MatchArm& arm : n->arms) {
      std::size_t mark = locals_.size();
      bind_pattern(arm.pattern, scrut, e.loc);
      infer(arm.body, ann, &t);
      locals_.resize(mark);
    }
  } else {
    const auto& ref = std::get<Expr::NameRef>(e.node);
    auto it = env_.vars.find(ref.name);
    if (it == env_.vars.end()) {
      throw HopError(ErrorCode::UnknownVariable, fmt::format("unknown definition {}", ref.name), e.loc);
    }
    t = instantiate(it->second, supply_);
  }
  if (expected) unify_at(*expected, t, e.loc, "type mismatch");
  return t;
}

std::pair<TypePtr, Substitution> check_expr(const TypeEnv& env, const ExprPtr& e,
                                             const std::optional<TypePtr>& expected,
                                             const EffectAnnotation& ann, const CheckOptions& opts) {
  Checker c(env, opts);
  TypePtr t = c.infer(e, ann, expected ? &*expected : nullptr);
  return {c.zonk(t), c.unifier().subst().normalized()};
}

Scheme generalize(const TypeEnv& env, const TypePtr& t, const EffectAnnotation& ann) {
  FreeVars fixed = free_type_vars(ann.immediate);
  fixed.merge(free_type_vars(ann.latent));
  for (const auto& [name, s] : env.vars) fixed.merge(free_type_vars(s));
  FreeVars mine = free_type_vars(t);
  Scheme out{{}, {}, t};
  for (const Name& v : mine.types) {
    if (!fixed.types.count(v)) out.type_vars.push_back(v);
  }
  for (const Name& v : mine.rows) {
    if (!fixed.rows.count(v)) out.row_vars.push_back(v);
  }
  return out;
}

}  // namespace hop
