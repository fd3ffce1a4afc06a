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

#include <algorithm>

#include <fmt/format.h>

#include "hop/types.hpp"

namespace hop {

TypePtr t_var(Name name) { return std::make_shared<const Type>(Type{Type::Var{std::move(name)}}); }

TypePtr t_con(Name name) { return std::make_shared<const Type>(Type{Type::Con{std::move(name)}}); }

TypePtr t_app(TypePtr fun, TypePtr arg) {
  return std::make_shared<const Type>(Type{Type::App{std::move(fun), std::move(arg)}});
}

TypePtr t_arrow(TypePtr from, TypePtr to) {
  return std::make_shared<const Type>(Type{Type::Arrow{std::move(from), std::move(to)}});
}

TypePtr t_susp(Row immediate, Row latent, TypePtr result) {
  return std::make_shared<const Type>(
      Type{Type::Susp{std::move(immediate), std::move(latent), std::move(result)}});
}

TypePtr t_int() {
  static const TypePtr t = t_con("Int");
  return t;
}

TypePtr t_unit() {
  static const TypePtr t = t_con("Unit");
  return t;
}

TypePtr t_bool() {
  static const TypePtr t = t_con("Bool");
  return t;
}

TypePtr t_string() {
  static const TypePtr t = t_con("String");
  return t;
}

TypePtr t_dyn() {
  static const TypePtr t = t_con(kDynTypeName);
  return t;
}

TypePtr t_maybe(TypePtr a) { return t_app(t_con("Maybe"), std::move(a)); }

TypePtr t_list(TypePtr a) { return t_app(t_con("List"), std::move(a)); }

TypePtr t_pair(TypePtr a, TypePtr b) {
  return t_app(t_app(t_con("Pair"), std::move(a)), std::move(b));
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  if (auto v = std::get_if<Type::Var>(&a->node)) return v->name == b->as<Type::Var>().name;
  if (auto c = std::get_if<Type::Con>(&a->node)) return c->name == b->as<Type::Con>().name;
  if (auto p = std::get_if<Type::App>(&a->node)) {
    const auto& q = b->as<Type::App>();
    return type_equal(p->fun, q.fun) && type_equal(p->arg, q.arg);
  }
  if (auto p = std::get_if<Type::Arrow>(&a->node)) {
    const auto& q = b->as<Type::Arrow>();
    return type_equal(p->from, q.from) && type_equal(p->to, q.to);
  }
  const auto& p = a->as<Type::Susp>();
  const auto& q = b->as<Type::Susp>();
  return row_equiv(p.immediate, q.immediate) && row_equiv(p.latent, q.latent) &&
         type_equal(p.result, q.result);
}

namespace {

// 0: arrow, 1: application / susp, 2: atom
std::string print_type(const TypePtr& t, int prec) {
  auto paren = [&](std::string s, int level) { return prec > level ? "(" + s + ")" : s; };
  if (auto v = std::get_if<Type::Var>(&t->node)) return v->name;
  if (auto c = std::get_if<Type::Con>(&t->node)) return c->name == "Unit" ? "()" : c->name;
  if (auto a = std::get_if<Type::Arrow>(&t->node)) {
    return paren(print_type(a->from, 1) + " -> " + print_type(a->to, 0), 0);
  }
  if (auto s = std::get_if<Type::Susp>(&t->node)) {
    return paren(fmt::format("susp[{} * {}] {}", to_string(s->immediate), to_string(s->latent),
                             print_type(s->result, 2)),
                 1);
  }
  const auto& app = t->as<Type::App>();
  if (auto inner = std::get_if<Type::App>(&app.fun->node)) {
    if (auto c = std::get_if<Type::Con>(&inner->fun->node); c && c->name == "Pair") {
      return "(" + print_type(inner->arg, 0) + ", " + print_type(app.arg, 0) + ")";
    }
  }
  return paren(print_type(app.fun, 1) + " " + print_type(app.arg, 2), 1);
}

}  // namespace

std::string to_string(const TypePtr& t) { return print_type(t, 0); }

std::string to_string(const Scheme& s) {
  std::string body = to_string(s.body);
  if (s.type_vars.empty() && s.row_vars.empty()) return body;
  std::vector<Name> vars = s.type_vars;
  vars.insert(vars.end(), s.row_vars.begin(), s.row_vars.end());
  return fmt::format("forall {}. {}", fmt::join(vars, " "), body);
}

void FreeVars::merge(const FreeVars& other) {
  types.insert(other.types.begin(), other.types.end());
  rows.insert(other.rows.begin(), other.rows.end());
}

namespace {

void collect(const TypePtr& t, FreeVars& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Type::Var>) {
          out.types.insert(n.name);
        } else if constexpr (std::is_same_v<T, Type::App>) {
          collect(n.fun, out);
          collect(n.arg, out);
        } else if constexpr (std::is_same_v<T, Type::Arrow>) {
          collect(n.from, out);
          collect(n.to, out);
        } else if constexpr (std::is_same_v<T, Type::Susp>) {
          out.rows.insert(n.immediate.tails.begin(), n.immediate.tails.end());
          out.rows.insert(n.latent.tails.begin(), n.latent.tails.end());
          collect(n.result, out);
        }
      },
      t->node);
}

}  // namespace

FreeVars free_type_vars(const TypePtr& t) {
  FreeVars out;
  collect(t, out);
  return out;
}

FreeVars free_type_vars(const Row& r) {
  FreeVars out;
  out.rows.insert(r.tails.begin(), r.tails.end());
  return out;
}

FreeVars free_type_vars(const Scheme& s) {
  FreeVars out = free_type_vars(s.body);
  for (const Name& v : s.type_vars) out.types.erase(v);
  for (const Name& v : s.row_vars) out.rows.erase(v);
  return out;
}

TypePtr Substitution::apply(const TypePtr& t) const {
  if (empty()) return t;
  return std::visit(
      [&](const auto& n) -> TypePtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Type::Var>) {
          auto it = types.find(n.name);
          return it == types.end() ? t : apply(it->second);
        } else if constexpr (std::is_same_v<T, Type::Con>) {
          return t;
        } else if constexpr (std::is_same_v<T, Type::App>) {
          auto f = apply(n.fun);
          auto a = apply(n.arg);
          return f == n.fun && a == n.arg ? t : t_app(f, a);
        } else if constexpr (std::is_same_v<T, Type::Arrow>) {
          auto f = apply(n.from);
          auto a = apply(n.to);
          return f == n.from && a == n.to ? t : t_arrow(f, a);
        } else {
          return t_susp(apply(n.immediate), apply(n.latent), apply(n.result));
        }
      },
      t->node);
}

Row Substitution::apply(const Row& r) const {
  if (rows.empty()) return r;
  Row out;
  out.labels = r.labels;
  for (const Name& v : r.tails) {
    auto it = rows.find(v);
    if (it == rows.end()) {
      out.tails.push_back(v);
      continue;
    }
    Row sub = apply(it->second);
    out.labels.insert(out.labels.end(), sub.labels.begin(), sub.labels.end());
    out.tails.insert(out.tails.end(), sub.tails.begin(), sub.tails.end());
  }
  return out;
}

Scheme Substitution::apply(const Scheme& s) const {
  Substitution inner = *this;
  for (const Name& v : s.type_vars) inner.types.erase(v);
  for (const Name& v : s.row_vars) inner.rows.erase(v);
  return Scheme{s.type_vars, s.row_vars, inner.apply(s.body)};
}

Substitution Substitution::normalized() const {
  Substitution out;
  for (const auto& [k, v] : types) out.types.emplace(k, apply(v));
  for (const auto& [k, v] : rows) out.rows.emplace(k, apply(v));
  return out;
}

Name NameSupply::fresh_type() { return fmt::format("{}t{}", prefix_, ++next_); }

Name NameSupply::fresh_row() { return fmt::format("{}r{}", prefix_, ++next_); }

Name NameSupply::fresh_rigid(const Name& hint) { return fmt::format("{}#{}", hint, ++next_); }

bool is_unification_var(const Name& n) { return !n.empty() && n[0] == '?'; }

TypePtr instantiate(const Scheme& s, NameSupply& supply) {
  if (s.type_vars.empty() && s.row_vars.empty()) return s.body;
  Substitution sub;
  for (const Name& v : s.type_vars) sub.types.emplace(v, t_var(supply.fresh_type()));
  for (const Name& v : s.row_vars) sub.rows.emplace(v, Row::var(supply.fresh_row()));
  return sub.apply(s.body);
}

namespace {

void occurrence_order(const TypePtr& t, std::vector<Name>& tys, std::vector<Name>& rows) {
  auto add = [](std::vector<Name>& v, const Name& n) {
    if (std::find(v.begin(), v.end(), n) == v.end()) v.push_back(n);
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Type::Var>) {
          add(tys, n.name);
        } else if constexpr (std::is_same_v<T, Type::App>) {
          occurrence_order(n.fun, tys, rows);
          occurrence_order(n.arg, tys, rows);
        } else if constexpr (std::is_same_v<T, Type::Arrow>) {
          occurrence_order(n.from, tys, rows);
          occurrence_order(n.to, tys, rows);
        } else if constexpr (std::is_same_v<T, Type::Susp>) {
          for (const Name& v : n.immediate.tails) add(rows, v);
          for (const Name& v : n.latent.tails) add(rows, v);
          occurrence_order(n.result, tys, rows);
        }
      },
      t->node);
}

Name type_var_name(std::size_t i) {
  std::string base(1, static_cast<char>('a' + i % 26));
  return i < 26 ? base : base + std::to_string(i / 26);
}

Name row_var_name(std::size_t i) { return "r" + std::string(i, '\''); }

}  // namespace

Scheme canonicalize(const Scheme& s) {
  std::vector<Name> tys, rows;
  occurrence_order(s.body, tys, rows);
  std::set<Name> bound_t(s.type_vars.begin(), s.type_vars.end());
  std::set<Name> bound_r(s.row_vars.begin(), s.row_vars.end());
  // Substitutions resolve chains, so a renaming like a -> b, b -> a goes
  // through temporary names that cannot occur in the body.
  Substitution to_temp, to_final;
  Scheme out;
  for (const Name& v : tys) {
    if (!bound_t.count(v)) continue;
    Name fresh = type_var_name(out.type_vars.size());
    Name temp = "%" + fresh;
    out.type_vars.push_back(fresh);
    to_temp.types.emplace(v, t_var(temp));
    to_final.types.emplace(temp, t_var(fresh));
  }
  for (const Name& v : rows) {
    if (!bound_r.count(v)) continue;
    Name fresh = row_var_name(out.row_vars.size());
    Name temp = "%" + fresh;
    out.row_vars.push_back(fresh);
    to_temp.rows.emplace(v, Row::var(temp));
    to_final.rows.emplace(temp, Row::var(fresh));
  }
  out.body = to_final.apply(to_temp.apply(s.body));
  return out;
}

namespace {

// True if `general` can be instantiated to `specific` (whose quantified
// variables are held rigid).
bool is_instance(const Scheme& specific, const Scheme& general) {
  NameSupply supply;
  Unifier u(supply);
  Substitution skolem;
  for (const Name& v : specific.type_vars) {
    Name r = supply.fresh_rigid(v);
    u.rigid().insert(r);
    skolem.types.emplace(v, t_var(r));
  }
  for (const Name& v : specific.row_vars) {
    Name r = supply.fresh_rigid(v);
    u.rigid().insert(r);
    skolem.rows.emplace(v, Row::var(r));
  }
  // Free variables of either scheme are fixed.
  FreeVars fv = free_type_vars(specific);
  fv.merge(free_type_vars(general));
  for (const Name& v : fv.types) u.rigid().insert(v);
  for (const Name& v : fv.rows) u.rigid().insert(v);
  try {
    u.unify(instantiate(general, supply), skolem.apply(specific.body));
  } catch (const HopError&) {
    return false;
  }
  return true;
}

}  // namespace

bool scheme_equiv(const Scheme& a, const Scheme& b) {
  if (a.type_vars.size() != b.type_vars.size() || a.row_vars.size() != b.row_vars.size()) {
    return false;
  }
  return is_instance(a, b) && is_instance(b, a);
}

}  // namespace hop
