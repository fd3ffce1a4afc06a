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

#include <fmt/format.h>

#include "hop/syntax.hpp"

namespace hop {

namespace {

// Precedence levels, loosest first.
enum Prec : int {
  kOpen = 0,    // let, match, handle, lambda: extend as far right as possible
  kEq = 1,      // ==
  kCons = 2,    // :: and ++ (right associative)
  kPlus = 3,    // + (left associative)
  kApp = 4,     // application
  kAtom = 5,    // atoms and postfix !
};

int infix_prec(const Name& op) {
  if (op == "==") return kEq;
  if (op == "::" || op == "++") return kCons;
  return kPlus;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

class Printer {
 public:
  Printer(const PrintOptions& opts, bool alpha) : opts_(opts), alpha_(alpha) {}

  std::string expr(const ExprPtr& e, int prec);
  std::string value(const Value& v, int prec);
  std::string pattern(const Pattern& p, int prec);

 private:
  // An operand for a binary operator; `a` and `b` may be values or exprs.
  struct Operand {
    const ExprPtr* expr = nullptr;
    const Value* value = nullptr;
  };
  std::string operand(const Operand& o, int prec) {
    return o.expr ? expr(*o.expr, prec) : value(*o.value, prec);
  }
  std::string binary(const Name& op, const Operand& a, const Operand& b, int prec);
  bool binary_view(const ExprPtr& e, Name& op, Operand& a, Operand& b);

  std::string binder(const Name& n);
  std::string var(const Name& n) const;
  void push(const Name& n) { scope_.emplace_back(n, binder(n)); }
  void pop(std::size_t k) { scope_.resize(scope_.size() - k); }
  std::string handler(const Handler& h);

  const PrintOptions& opts_;
  bool alpha_;
  int next_ = 0;
  std::vector<std::pair<Name, std::string>> scope_;
};

std::string paren_if(bool cond, const std::string& s) { return cond ? "(" + s + ")" : s; }

std::string Printer::binder(const Name& n) {
  if (!alpha_ || n == "_") return n;
  return fmt::format("v{}", next_++);
}

std::string Printer::var(const Name& n) const {
  if (!alpha_) return n;
  for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
    if (it->first == n) return it->second;
  }
  return n;
}

bool proper_list(const Value& v, std::vector<const Value*>& items) {
  const Value* cur = &v;
  while (true) {
    auto d = std::get_if<Value::Data>(&cur->node);
    if (!d) return false;
    if (d->ctor == "Nil" && d->args.empty()) return true;
    if (d->ctor != "Cons" || d->args.size() != 2) return false;
    items.push_back(&d->args[0]);
    cur = &d->args[1];
  }
}

std::string Printer::binary(const Name& op, const Operand& a, const Operand& b, int prec) {
  if (op == "Pair") return "(" + operand(a, kOpen) + ", " + operand(b, kOpen) + ")";
  int p = infix_prec(op);
  int lp = p + 1, rp = p + 1;
  if (p == kCons) rp = p;
  if (p == kPlus) lp = p;
  return paren_if(prec > p, operand(a, lp) + " " + op + " " + operand(b, rp));
}

// Recognizes the binary-operator shapes produced by the parser:
// App(App(op, a), b) and App(op a, b) where `op a` is a partial value.
bool Printer::binary_view(const ExprPtr& e, Name& op, Operand& a, Operand& b) {
  auto app = std::get_if<Expr::App>(&e->node);
  if (!app) return false;
  auto name_of = [](const Value& v, std::size_t nargs) -> std::optional<Name> {
    if (auto c = std::get_if<Value::Const>(&v.node)) {
      auto it = const_table().find(c->name);
      if (it != const_table().end() && it->second.infix && c->args.size() == nargs) return c->name;
    }
    if (auto d = std::get_if<Value::Data>(&v.node); d && d->args.size() == nargs) {
      if (d->ctor == "Cons") return Name("::");
      if (d->ctor == "Pair") return Name("Pair");
    }
    return std::nullopt;
  };
  if (auto f = std::get_if<Expr::Val>(&app->fun->node)) {
    if (auto n = name_of(f->value, 1)) {
      op = *n;
      a.value = &std::visit(
          [](const auto& x) -> const Value& {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Value::Const> || std::is_same_v<T, Value::Data>) {
              return x.args[0];
            } else {
              throw std::logic_error("unreachable");
            }
          },
          f->value.node);
      b.expr = &app->arg;
      return true;
    }
  }
  if (auto inner = std::get_if<Expr::App>(&app->fun->node)) {
    if (auto f = std::get_if<Expr::Val>(&inner->fun->node)) {
      if (auto n = name_of(f->value, 0)) {
        op = *n;
        a.expr = &inner->arg;
        b.expr = &app->arg;
        return true;
      }
    }
  }
  return false;
}

std::string Printer::value(const Value& v, int prec) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Value::Var>) {
          return var(x.name);
        } else if constexpr (std::is_same_v<T, Value::Lam>) {
          push(x.binder);
          std::string s = "\\" + scope_.back().second + ". " + expr(x.body, kOpen);
          pop(1);
          return paren_if(prec > kOpen, s);
        } else if constexpr (std::is_same_v<T, Value::Suspend>) {
          return "{" + expr(x.body, kOpen) + "}";
        } else if constexpr (std::is_same_v<T, Value::Int>) {
          return std::to_string(x.value);
        } else if constexpr (std::is_same_v<T, Value::Str>) {
          return quote(x.value);
        } else if constexpr (std::is_same_v<T, Value::Const>) {
          const auto& info = const_table().at(x.name);
          if (info.infix && x.args.size() == 2) {
            return binary(x.name, Operand{nullptr, &x.args[0]}, Operand{nullptr, &x.args[1]}, prec);
          }
          std::string s = info.infix ? "(" + x.name + ")" : x.name;
          if (x.args.empty()) return s;
          for (const Value& a : x.args) s += " " + value(a, kAtom);
          return paren_if(prec > kApp, s);
        } else if constexpr (std::is_same_v<T, Value::Data>) {
          if (x.ctor == "Unit" && x.args.empty()) return "()";
          std::vector<const Value*> items;
          if (proper_list(v, items)) {
            std::vector<std::string> parts;
            for (const Value* i : items) parts.push_back(value(*i, kOpen));
            return fmt::format("[{}]", fmt::join(parts, ", "));
          }
          if ((x.ctor == "Cons" || x.ctor == "Pair") && x.args.size() == 2) {
            return binary(x.ctor == "Cons" ? "::" : "Pair", Operand{nullptr, &x.args[0]},
                          Operand{nullptr, &x.args[1]}, prec);
          }
          std::string s = x.ctor;
          if (x.args.empty()) return s;
          for (const Value& a : x.args) s += " " + value(a, kAtom);
          return paren_if(prec > kApp, s);
        } else {
          std::string s = opts_.qualify.count(x.name) ? x.label + "." + x.name : x.name;
          if (x.args.empty()) return s;
          for (const Value& a : x.args) s += " " + value(a, kAtom);
          return paren_if(prec > kApp, s);
        }
      },
      v.node);
}

std::string Printer::pattern(const Pattern& p, int prec) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Pattern::Ctor>) {
          if (x.name == "Unit" && x.args.empty()) return "()";
          if (x.name == "Nil" && x.args.empty()) return "[]";
          if (x.name == "Pair" && x.args.size() == 2) {
            return "(" + pattern(x.args[0], kOpen) + ", " + pattern(x.args[1], kOpen) + ")";
          }
          if (x.name == "Cons" && x.args.size() == 2) {
            return paren_if(prec > kCons,
                            pattern(x.args[0], kApp) + " :: " + pattern(x.args[1], kCons));
          }
          std::string s = x.name;
          for (const Pattern& a : x.args) s += " " + pattern(a, kAtom);
          return paren_if(prec > kApp && !x.args.empty(), s);
        } else if constexpr (std::is_same_v<T, Pattern::Var>) {
          push(x.name);
          return scope_.back().second;
        } else if constexpr (std::is_same_v<T, Pattern::Wildcard>) {
          return "_";
        } else if constexpr (std::is_same_v<T, Pattern::IntLit>) {
          return std::to_string(x.value);
        } else {
          return quote(x.value);
        }
      },
      p.node);
}

std::string Printer::handler(const Handler& h) {
  if (auto it = opts_.handler_names.find(&h); it != opts_.handler_names.end()) {
    return fmt::format("handle^{}[{}]", h.label, it->second);
  }
  std::vector<std::string> clauses;
  for (const OpClause& c : h.ops) {
    std::string s = c.op;
    std::size_t pushed = 0;
    for (const Name& b : c.binders) {
      push(b);
      ++pushed;
      s += " " + scope_.back().second;
    }
    push(c.param);
    push(c.cont);
    pushed += 2;
    s += " " + scope_[scope_.size() - 2].second + " " + scope_.back().second;
    s += " ↦ " + expr(c.body, kOpen);
    pop(pushed);
    clauses.push_back(std::move(s));
  }
  push(h.ret.value);
  push(h.ret.param);
  clauses.push_back(fmt::format("return {} {} ↦ {}", scope_[scope_.size() - 2].second,
                                scope_.back().second, expr(h.ret.body, kOpen)));
  pop(2);
  return fmt::format("handle^{} {{ {} }}", h.label, fmt::join(clauses, ", "));
}

std::string Printer::expr(const ExprPtr& e, int prec) {
  Name op;
  Operand a, b;
  if (binary_view(e, op, a, b)) return binary(op, a, b, prec);
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Expr::App>) {
          return paren_if(prec > kApp, expr(x.fun, kApp) + " " + expr(x.arg, kAtom));
        } else if constexpr (std::is_same_v<T, Expr::Let>) {
          std::string bound = expr(x.bound, kOpen);
          push(x.binder);
          std::string s = "let " + scope_.back().second + " = " + bound + " in " + expr(x.body, kOpen);
          pop(1);
          return paren_if(prec > kOpen, s);
        } else if constexpr (std::is_same_v<T, Expr::Handle>) {
          std::string param = expr(x.param, kAtom);
          std::string body = expr(x.body, kAtom);
          return paren_if(prec > kOpen, handler(*x.handler) + " " + param + " " + body);
        } else if constexpr (std::is_same_v<T, Expr::Enact>) {
          return expr(x.target, kAtom) + "!";
        } else if constexpr (std::is_same_v<T, Expr::Val>) {
          return value(x.value, prec);
        } else if constexpr (std::is_same_v<T, Expr::Match>) {
          std::string s = "match " + expr(x.scrutinee, kEq);
          for (std::size_t i = 0; i < x.arms.size(); ++i) {
            std::size_t mark = scope_.size();
            std::string pat = pattern(x.arms[i].pattern, kOpen);
            bool last = i + 1 == x.arms.size();
            s += " | " + pat + " -> " + expr(x.arms[i].body, last ? kOpen : kEq);
            scope_.resize(mark);
          }
          return paren_if(prec > kOpen, s);
        } else {
          return x.name;
        }
      },
      e->node);
}

}  // namespace

std::string pretty(const ExprPtr& e, const PrintOptions& opts) { return Printer(opts, false).expr(e, kOpen); }

std::string pretty(const Value& v, const PrintOptions& opts) { return Printer(opts, false).value(v, kOpen); }

std::string pretty(const Pattern& p) {
  PrintOptions opts;
  return Printer(opts, false).pattern(p, kOpen);
}

std::string alpha_normal(const Value& v) {
  PrintOptions opts;
  return Printer(opts, true).value(v, kOpen);
}

std::string pretty(const Program& p) {
  PrintOptions opts;
  opts.qualify = p.ambiguous_ops();
  std::string out;
  for (const auto& [name, t] : p.type_aliases) out += fmt::format("type {} = {}\n", name, to_string(t));
  for (const EffectDecl& e : p.effects) {
    std::vector<std::string> ops;
    for (const OpDecl& d : e.ops) ops.push_back(fmt::format("{}/{} : {}", d.name, d.arity, to_string(d.scheme)));
    out += fmt::format("effect {} {{ {} }}\n", e.label, fmt::join(ops, ", "));
  }
  for (const Definition& d : p.definitions) {
    if (d.annotation) out += fmt::format("{} : {}\n", d.name, to_string(*d.annotation));
    out += fmt::format("{} = {}\n", d.name, pretty(d.body, opts));
  }
  if (p.main) out += pretty(*p.main, opts) + "\n";
  return out;
}

}  // namespace hop
