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

#include "hop/syntax.hpp"

namespace hop {

namespace {

template <class N>
ExprPtr make_node(N n, SourceLoc loc) {
  return std::make_shared<const Expr>(Expr{std::move(n), loc});
}

}  // namespace

ExprPtr mk_app(ExprPtr fun, ExprPtr arg, SourceLoc loc) {
  return make_node(Expr::App{std::move(fun), std::move(arg)}, loc);
}

ExprPtr mk_let(Name binder, ExprPtr bound, ExprPtr body, SourceLoc loc) {
  return make_node(Expr::Let{std::move(binder), std::move(bound), std::move(body)}, loc);
}

ExprPtr mk_handle(HandlerPtr handler, ExprPtr param, ExprPtr body, SourceLoc loc) {
  return make_node(Expr::Handle{std::move(handler), std::move(param), std::move(body)}, loc);
}

ExprPtr mk_enact(ExprPtr target, SourceLoc loc) {
  return make_node(Expr::Enact{std::move(target)}, loc);
}

ExprPtr mk_val(Value v, SourceLoc loc) { return make_node(Expr::Val{std::move(v)}, loc); }

ExprPtr mk_match(ExprPtr scrutinee, std::vector<MatchArm> arms, SourceLoc loc) {
  return make_node(Expr::Match{std::move(scrutinee), std::move(arms)}, loc);
}

ExprPtr mk_nameref(Name name, SourceLoc loc) { return make_node(Expr::NameRef{std::move(name)}, loc); }

Value v_var(Name name) { return Value{Value::Var{std::move(name)}}; }
Value v_lam(Name binder, ExprPtr body) { return Value{Value::Lam{std::move(binder), std::move(body)}}; }
Value v_const(Name name, std::vector<Value> args) {
  return Value{Value::Const{std::move(name), std::move(args)}};
}
Value v_suspend(ExprPtr body) { return Value{Value::Suspend{std::move(body)}}; }
Value v_data(Name ctor, std::vector<Value> args) {
  return Value{Value::Data{std::move(ctor), std::move(args)}};
}
Value v_int(std::int64_t n) { return Value{Value::Int{n}}; }
Value v_str(std::string s) { return Value{Value::Str{std::move(s)}}; }
Value v_op(Label label, Name name, std::size_t arity, std::vector<Value> args) {
  return Value{Value::Op{std::move(label), std::move(name), arity, std::move(args)}};
}
Value v_unit() { return v_data("Unit"); }
Value v_bool(bool b) { return v_data(b ? "True" : "False"); }
Value v_pair(Value a, Value b) { return v_data("Pair", {std::move(a), std::move(b)}); }
Value v_just(Value a) { return v_data("Just", {std::move(a)}); }
Value v_nothing() { return v_data("Nothing"); }

Value v_list(const std::vector<Value>& items) {
  Value out = v_data("Nil");
  for (auto it = items.rbegin(); it != items.rend(); ++it) out = v_data("Cons", {*it, out});
  return out;
}

bool is_value(const ExprPtr& e) { return e->is<Expr::Val>(); }

const std::map<Name, ConstructorInfo>& constructor_table() {
  static const std::map<Name, ConstructorInfo> table = [] {
    TypePtr a = t_var("a");
    TypePtr b = t_var("b");
    TypePtr env = t_list(t_pair(t_string(), t_dyn()));
    std::map<Name, ConstructorInfo> m;
    m.emplace("Unit", ConstructorInfo{0, Scheme::mono(t_unit())});
    m.emplace("True", ConstructorInfo{0, Scheme::mono(t_bool())});
    m.emplace("False", ConstructorInfo{0, Scheme::mono(t_bool())});
    m.emplace("Nothing", ConstructorInfo{0, Scheme{{"a"}, {}, t_maybe(a)}});
    m.emplace("Just", ConstructorInfo{1, Scheme{{"a"}, {}, t_arrow(a, t_maybe(a))}});
    m.emplace("Pair",
              ConstructorInfo{2, Scheme{{"a", "b"}, {}, t_arrow(a, t_arrow(b, t_pair(a, b)))}});
    m.emplace("Nil", ConstructorInfo{0, Scheme{{"a"}, {}, t_list(a)}});
    m.emplace("Cons",
              ConstructorInfo{2, Scheme{{"a"}, {}, t_arrow(a, t_arrow(t_list(a), t_list(a)))}});
    // Closure of the object language: binder, body (any type), environment.
    m.emplace("Clo", ConstructorInfo{3, Scheme{{"a"}, {},
                                               t_arrow(t_string(),
                                                       t_arrow(a, t_arrow(env, t_dyn())))}});
    return m;
  }();
  return table;
}

const std::map<Name, ConstInfo>& const_table() {
  static const std::map<Name, ConstInfo> table = [] {
    TypePtr a = t_var("a");
    TypePtr b = t_var("b");
    std::map<Name, ConstInfo> m;
    m.emplace("+", ConstInfo{2, Scheme::mono(t_arrow(t_int(), t_arrow(t_int(), t_int()))), true});
    m.emplace("++", ConstInfo{2, Scheme{{"a"}, {}, t_arrow(t_list(a), t_arrow(t_list(a), t_list(a)))},
                              true});
    m.emplace("==", ConstInfo{2, Scheme{{"a"}, {}, t_arrow(a, t_arrow(a, t_bool()))}, true});
    m.emplace("fst", ConstInfo{1, Scheme{{"a", "b"}, {}, t_arrow(t_pair(a, b), a)}, false});
    m.emplace("snd", ConstInfo{1, Scheme{{"a", "b"}, {}, t_arrow(t_pair(a, b), b)}, false});
    m.emplace("lookup",
              ConstInfo{2,
                        Scheme{{"a"}, {}, t_arrow(t_string(), t_arrow(t_list(t_pair(t_string(), a)), a))},
                        false});
    return m;
  }();
  return table;
}

namespace {

bool equal_values(const std::vector<Value>& a, const std::vector<Value>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal(a[i], b[i])) return false;
  }
  return true;
}

bool equal_handlers(const Handler& a, const Handler& b) {
  if (a.label != b.label || a.ops.size() != b.ops.size()) return false;
  for (std::size_t i = 0; i < a.ops.size(); ++i) {
    const OpClause& x = a.ops[i];
    const OpClause& y = b.ops[i];
    if (x.op != y.op || x.binders != y.binders || x.param != y.param || x.cont != y.cont ||
        !equal(x.body, y.body)) {
      return false;
    }
  }
  return a.ret.value == b.ret.value && a.ret.param == b.ret.param && equal(a.ret.body, b.ret.body);
}

}  // namespace

bool equal(const Value& a, const Value& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Value::Var>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, Value::Lam>) {
          return x.binder == y.binder && equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, Value::Const>) {
          return x.name == y.name && equal_values(x.args, y.args);
        } else if constexpr (std::is_same_v<T, Value::Suspend>) {
          return equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, Value::Data>) {
          return x.ctor == y.ctor && equal_values(x.args, y.args);
        } else if constexpr (std::is_same_v<T, Value::Int>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Value::Str>) {
          return x.value == y.value;
        } else {
          return x.label == y.label && x.name == y.name && x.arity == y.arity &&
                 equal_values(x.args, y.args);
        }
      },
      a.node);
}

bool equal(const Pattern& a, const Pattern& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto x = std::get_if<Pattern::Ctor>(&a.node)) {
    const auto& y = std::get<Pattern::Ctor>(b.node);
    if (x->name != y.name || x->args.size() != y.args.size()) return false;
    for (std::size_t i = 0; i < x->args.size(); ++i) {
      if (!equal(x->args[i], y.args[i])) return false;
    }
    return true;
  }
  if (auto x = std::get_if<Pattern::Var>(&a.node)) return x->name == std::get<Pattern::Var>(b.node).name;
  if (auto x = std::get_if<Pattern::IntLit>(&a.node)) {
    return x->value == std::get<Pattern::IntLit>(b.node).value;
  }
  if (auto x = std::get_if<Pattern::StrLit>(&a.node)) {
    return x->value == std::get<Pattern::StrLit>(b.node).value;
  }
  return true;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return equal(*a, *b);
}

bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Expr::App>) {
          return equal(x.fun, y.fun) && equal(x.arg, y.arg);
        } else if constexpr (std::is_same_v<T, Expr::Let>) {
          return x.binder == y.binder && equal(x.bound, y.bound) && equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, Expr::Handle>) {
          return (x.handler == y.handler || equal_handlers(*x.handler, *y.handler)) &&
                 equal(x.param, y.param) && equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, Expr::Enact>) {
          return equal(x.target, y.target);
        } else if constexpr (std::is_same_v<T, Expr::Val>) {
          return equal(x.value, y.value);
        } else if constexpr (std::is_same_v<T, Expr::Match>) {
          if (!equal(x.scrutinee, y.scrutinee) || x.arms.size() != y.arms.size()) return false;
          for (std::size_t i = 0; i < x.arms.size(); ++i) {
            if (!equal(x.arms[i].pattern, y.arms[i].pattern) || !equal(x.arms[i].body, y.arms[i].body)) {
              return false;
            }
          }
          return true;
        } else {
          return x.name == y.name;
        }
      },
      a.node);
}

namespace {

void fv_expr(const ExprPtr& e, std::vector<Name>& bound, std::set<Name>& out);

bool is_bound(const std::vector<Name>& bound, const Name& n) {
  return std::find(bound.begin(), bound.end(), n) != bound.end();
}

void fv_value(const Value& v, std::vector<Name>& bound, std::set<Name>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Value::Var>) {
          if (!is_bound(bound, x.name)) out.insert(x.name);
        } else if constexpr (std::is_same_v<T, Value::Lam>) {
          bound.push_back(x.binder);
          fv_expr(x.body, bound, out);
          bound.pop_back();
        } else if constexpr (std::is_same_v<T, Value::Suspend>) {
          fv_expr(x.body, bound, out);
        } else if constexpr (std::is_same_v<T, Value::Const> || std::is_same_v<T, Value::Data> ||
                             std::is_same_v<T, Value::Op>) {
          for (const Value& a : x.args) fv_value(a, bound, out);
        }
      },
      v.node);
}

void pattern_vars_into(const Pattern& p, std::vector<Name>& out) {
  if (auto v = std::get_if<Pattern::Var>(&p.node)) out.push_back(v->name);
  if (auto c = std::get_if<Pattern::Ctor>(&p.node)) {
    for (const Pattern& a : c->args) pattern_vars_into(a, out);
  }
}

void fv_scoped(const ExprPtr& e, const std::vector<Name>& names, std::vector<Name>& bound,
               std::set<Name>& out) {
  bound.insert(bound.end(), names.begin(), names.end());
  fv_expr(e, bound, out);
  bound.resize(bound.size() - names.size());
}

void fv_expr(const ExprPtr& e, std::vector<Name>& bound, std::set<Name>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Expr::App>) {
          fv_expr(x.fun, bound, out);
          fv_expr(x.arg, bound, out);
        } else if constexpr (std::is_same_v<T, Expr::Let>) {
          fv_expr(x.bound, bound, out);
          fv_scoped(x.body, {x.binder}, bound, out);
        } else if constexpr (std::is_same_v<T, Expr::Handle>) {
          fv_expr(x.param, bound, out);
          fv_expr(x.body, bound, out);
          for (const OpClause& c : x.handler->ops) {
            std::vector<Name> names = c.binders;
            names.push_back(c.param);
            names.push_back(c.cont);
            fv_scoped(c.body, names, bound, out);
          }
          fv_scoped(x.handler->ret.body, {x.handler->ret.value, x.handler->ret.param}, bound, out);
        } else if constexpr (std::is_same_v<T, Expr::Enact>) {
          fv_expr(x.target, bound, out);
        } else if constexpr (std::is_same_v<T, Expr::Val>) {
          fv_value(x.value, bound, out);
        } else if constexpr (std::is_same_v<T, Expr::Match>) {
          fv_expr(x.scrutinee, bound, out);
          for (const MatchArm& arm : x.arms) {
            std::vector<Name> names;
            pattern_vars_into(arm.pattern, names);
            fv_scoped(arm.body, names, bound, out);
          }
        }
      },
      e->node);
}

}  // namespace

std::set<Name> free_vars(const ExprPtr& e) {
  std::vector<Name> bound;
  std::set<Name> out;
  fv_expr(e, bound, out);
  return out;
}

std::set<Name> free_vars(const Value& v) {
  std::vector<Name> bound;
  std::set<Name> out;
  fv_value(v, bound, out);
  return out;
}

std::set<Name> pattern_vars(const Pattern& p) {
  std::vector<Name> names;
  pattern_vars_into(p, names);
  return {names.begin(), names.end()};
}

const OpDecl* EffectDecl::find(const Name& op) const {
  for (const OpDecl& d : ops) {
    if (d.name == op) return &d;
  }
  return nullptr;
}

const EffectDecl* Program::effect(const Label& label) const {
  for (const EffectDecl& e : effects) {
    if (e.label == label) return &e;
  }
  return nullptr;
}

const Definition* Program::definition(const Name& name) const {
  for (const Definition& d : definitions) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

std::set<Label> Program::labels() const {
  std::set<Label> out;
  for (const EffectDecl& e : effects) out.insert(e.label);
  return out;
}

std::set<Name> Program::ambiguous_ops() const {
  std::map<Name, int> count;
  for (const EffectDecl& e : effects) {
    for (const OpDecl& d : e.ops) ++count[d.name];
  }
  std::set<Name> out;
  for (const auto& [name, n] : count) {
    if (n > 1) out.insert(name);
  }
  return out;
}

}  // namespace hop
