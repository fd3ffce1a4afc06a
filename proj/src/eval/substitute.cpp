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

#include "hop/eval.hpp"

namespace hop {

namespace {

Pattern rename_pattern(const Pattern& p, const Name& from, const Name& to) {
  return std::visit(
      [&](const auto& x) -> Pattern {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Pattern::Var>) {
          return Pattern{Pattern::Var{x.name == from ? to : x.name}};
        } else if constexpr (std::is_same_v<T, Pattern::Ctor>) {
          Pattern::Ctor c{x.name, {}};
          for (const Pattern& a : x.args) c.args.push_back(rename_pattern(a, from, to));
          return Pattern{std::move(c)};
        } else {
          return Pattern{x};
        }
      },
      p.node);
}

class Substituter {
 public:
  Substituter(const Name& x, const Value& v) : x_(x), v_(v), fv_(free_vars(v)) {}

  ExprPtr expr(const ExprPtr& e);
  Value value(const Value& w);

 private:
  // Substitutes under `binders`. Binders that would capture a free
  // variable of the value are renamed in `binders` and in every body.
  // Returns false when one of the binders shadows x.
  bool enter(std::vector<Name*> binders, std::vector<ExprPtr*> bodies, Pattern* pattern = nullptr);
  Name fresh(const Name& base, const std::vector<ExprPtr*>& bodies) const;

  const Name& x_;
  const Value& v_;
  std::set<Name> fv_;
  // Number of replacements and renamings so far; subtrees where it does
  // not move are shared with the input.
  std::size_t hits_ = 0;
};

Name Substituter::fresh(const Name& base, const std::vector<ExprPtr*>& bodies) const {
  std::set<Name> avoid = fv_;
  avoid.insert(x_);
  for (const ExprPtr* b : bodies) {
    std::set<Name> fv = free_vars(*b);
    avoid.insert(fv.begin(), fv.end());
  }
  for (int i = 1;; ++i) {
    Name n = base + std::to_string(i);
    if (!avoid.count(n)) return n;
  }
}

bool Substituter::enter(std::vector<Name*> binders, std::vector<ExprPtr*> bodies, Pattern* pattern) {
  for (Name* b : binders) {
    if (*b == x_) return false;
  }
  for (Name* b : binders) {
    if (!fv_.count(*b)) continue;
    Name to = fresh(*b, bodies);
    for (ExprPtr* body : bodies) *body = substitute(*body, *b, v_var(to));
    if (pattern) *pattern = rename_pattern(*pattern, *b, to);
    *b = to;
    ++hits_;
  }
  for (ExprPtr* body : bodies) *body = expr(*body);
  return true;
}

Value Substituter::value(const Value& w) {
  return std::visit(
      [&](const auto& y) -> Value {
        using T = std::decay_t<decltype(y)>;
        if constexpr (std::is_same_v<T, Value::Var>) {
          if (y.name != x_) return w;
          ++hits_;
          return v_;
        } else if constexpr (std::is_same_v<T, Value::Lam>) {
          std::size_t before = hits_;
          Value::Lam out = y;
          if (!enter({&out.binder}, {&out.body})) return w;
          return hits_ == before ? w : Value{out};
        } else if constexpr (std::is_same_v<T, Value::Suspend>) {
          std::size_t before = hits_;
          ExprPtr body = expr(y.body);
          return hits_ == before ? w : v_suspend(body);
        } else if constexpr (std::is_same_v<T, Value::Const> || std::is_same_v<T, Value::Data> ||
                             std::is_same_v<T, Value::Op>) {
          if (y.args.empty()) return w;
          std::size_t before = hits_;
          T out = y;
          for (Value& a : out.args) a = value(a);
          return hits_ == before ? w : Value{out};
        } else {
          return w;
        }
      },
      w.node);
}

ExprPtr Substituter::expr(const ExprPtr& e) {
  return std::visit(
      [&](const auto& n) -> ExprPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::App>) {
          std::size_t before = hits_;
          ExprPtr f = expr(n.fun);
          ExprPtr a = expr(n.arg);
          return hits_ == before ? e : mk_app(f, a, e->loc);
        } else if constexpr (std::is_same_v<T, Expr::Let>) {
          std::size_t before = hits_;
          ExprPtr bound = expr(n.bound);
          Name binder = n.binder;
          ExprPtr body = n.body;
          enter({&binder}, {&body});
          return hits_ == before ? e : mk_let(binder, bound, body, e->loc);
        } else if constexpr (std::is_same_v<T, Expr::Handle>) {
          std::size_t before = hits_;
          ExprPtr param = expr(n.param);
          ExprPtr body = expr(n.body);
          std::size_t outside = hits_;
          auto h = std::make_shared<Handler>(*n.handler);
          for (OpClause& c : h->ops) {
            std::vector<Name*> binders;
            for (Name& b : c.binders) binders.push_back(&b);
            binders.push_back(&c.param);
            binders.push_back(&c.cont);
            enter(binders, {&c.body});
          }
          enter({&h->ret.value, &h->ret.param}, {&h->ret.body});
          if (hits_ == before) return e;
          return mk_handle(hits_ == outside ? n.handler : HandlerPtr(h), param, body, e->loc);
        } else if constexpr (std::is_same_v<T, Expr::Enact>) {
          std::size_t before = hits_;
          ExprPtr t = expr(n.target);
          return hits_ == before ? e : mk_enact(t, e->loc);
        } else if constexpr (std::is_same_v<T, Expr::Val>) {
          std::size_t before = hits_;
          Value w = value(n.value);
          return hits_ == before ? e : mk_val(std::move(w), e->loc);
        } else if constexpr (std::is_same_v<T, Expr::Match>) {
          std::size_t before = hits_;
          ExprPtr scrut = expr(n.scrutinee);
          std::vector<MatchArm> arms = n.arms;
          for (MatchArm& arm : arms) {
            std::set<Name> vars = pattern_vars(arm.pattern);
            std::vector<Name> names(vars.begin(), vars.end());
            std::vector<Name*> binders;
            for (Name& b : names) binders.push_back(&b);
            enter(binders, {&arm.body}, &arm.pattern);
          }
          return hits_ == before ? e : mk_match(scrut, std::move(arms), e->loc);
        } else {
          return e;
        }
      },
      e->node);
}

}  // namespace

ExprPtr substitute(const ExprPtr& e, const Name& x, const Value& v) { return Substituter(x, v).expr(e); }

Value substitute(const Value& target, const Name& x, const Value& v) {
  return Substituter(x, v).value(target);
}

}  // namespace hop
