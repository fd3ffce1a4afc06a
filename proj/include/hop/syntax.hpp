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

// Abstract syntax of the calculus: values, expressions, handlers, programs.

#ifndef HOP_SYNTAX_HPP_
#define HOP_SYNTAX_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "hop/common.hpp"
#include "hop/types.hpp"

namespace hop {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Value {
  struct Var {
    Name name;
  };
  struct Lam {
    Name binder;
    ExprPtr body;
  };
  // Primitive constant, possibly partially applied.
  struct Const {
    Name name;
    std::vector<Value> args;
  };
  struct Suspend {
    ExprPtr body;
  };
  // Data constructor, possibly partially applied.
  struct Data {
    Name ctor;
    std::vector<Value> args;
  };
  // Integer and string literals are nullary data constructors; they get
  // their own cases to avoid encoding the payload in the name.
  struct Int {
    std::int64_t value;
  };
  struct Str {
    std::string value;
  };
  // Operation reference. Partially applied while args.size() < arity; a
  // saturated operation is a suspension that performs the operation.
  struct Op {
    Label label;
    Name name;
    std::size_t arity;
    std::vector<Value> args;
  };

  using Node = std::variant<Var, Lam, Const, Suspend, Data, Int, Str, Op>;
  Node node;

  template <class T>
  bool is() const { return std::holds_alternative<T>(node); }
  template <class T>
  const T& as() const { return std::get<T>(node); }
};

struct Pattern {
  struct Ctor {
    Name name;
    std::vector<Pattern> args;
  };
  struct Var {
    Name name;
  };
  struct Wildcard {};
  struct IntLit {
    std::int64_t value;
  };
  struct StrLit {
    std::string value;
  };

  std::variant<Ctor, Var, Wildcard, IntLit, StrLit> node;
};

// `op x1 .. xn p k -> body`. A parameter binder of "_" means the clause
// ignores the handler parameter.
struct OpClause {
  Name op;
  std::vector<Name> binders;
  Name param;
  Name cont;
  ExprPtr body;
  SourceLoc loc;
};

// `return x p -> body`
struct ReturnClause {
  Name value;
  Name param;
  ExprPtr body;
  SourceLoc loc;
};

struct Handler {
  Label label;
  std::vector<OpClause> ops;
  ReturnClause ret;
  SourceLoc loc;
};
using HandlerPtr = std::shared_ptr<const Handler>;

struct MatchArm {
  Pattern pattern;
  ExprPtr body;
};

struct Expr {
  struct App {
    ExprPtr fun;
    ExprPtr arg;
  };
  struct Let {
    Name binder;
    ExprPtr bound;
    ExprPtr body;
  };
  struct Handle {
    HandlerPtr handler;
    ExprPtr param;
    ExprPtr body;
  };
  struct Enact {
    ExprPtr target;
  };
  struct Val {
    Value value;
  };
  struct Match {
    ExprPtr scrutinee;
    std::vector<MatchArm> arms;
  };
  // Reference to a top-level definition, unfolded on demand.
  struct NameRef {
    Name name;
  };

  std::variant<App, Let, Handle, Enact, Val, Match, NameRef> node;
  SourceLoc loc;

  template <class T>
  bool is() const { return std::holds_alternative<T>(node); }
  template <class T>
  const T& as() const { return std::get<T>(node); }
};

// Builders.
ExprPtr mk_app(ExprPtr fun, ExprPtr arg, SourceLoc loc = {});
ExprPtr mk_let(Name binder, ExprPtr bound, ExprPtr body, SourceLoc loc = {});
ExprPtr mk_handle(HandlerPtr handler, ExprPtr param, ExprPtr body, SourceLoc loc = {});
ExprPtr mk_enact(ExprPtr target, SourceLoc loc = {});
ExprPtr mk_val(Value v, SourceLoc loc = {});
ExprPtr mk_match(ExprPtr scrutinee, std::vector<MatchArm> arms, SourceLoc loc = {});
ExprPtr mk_nameref(Name name, SourceLoc loc = {});

Value v_var(Name name);
Value v_lam(Name binder, ExprPtr body);
Value v_const(Name name, std::vector<Value> args = {});
Value v_suspend(ExprPtr body);
Value v_data(Name ctor, std::vector<Value> args = {});
Value v_int(std::int64_t n);
Value v_str(std::string s);
Value v_op(Label label, Name name, std::size_t arity, std::vector<Value> args = {});
Value v_unit();
Value v_bool(bool b);
Value v_pair(Value a, Value b);
Value v_just(Value a);
Value v_nothing();
Value v_list(const std::vector<Value>& items);

bool is_value(const ExprPtr& e);

// Built-in data constructors with their arities and type schemes.
struct ConstructorInfo {
  std::size_t arity;
  Scheme scheme;
};
const std::map<Name, ConstructorInfo>& constructor_table();

// Primitive constants.
struct ConstInfo {
  std::size_t arity;
  Scheme scheme;
  bool infix;
};
const std::map<Name, ConstInfo>& const_table();

// Structural equality ignoring source locations.
bool equal(const Expr& a, const Expr& b);
bool equal(const ExprPtr& a, const ExprPtr& b);
bool equal(const Value& a, const Value& b);
bool equal(const Pattern& a, const Pattern& b);

// Free term variables. Top-level references are not variables.
std::set<Name> free_vars(const ExprPtr& e);
std::set<Name> free_vars(const Value& v);
std::set<Name> pattern_vars(const Pattern& p);

// Effect signature entry for an operation.
struct OpDecl {
  Name name;
  std::size_t arity = 0;
  // Operation scheme: forall as r rl. A1 -> .. -> An -> susp[<L|r+rl> * <>] B
  Scheme scheme;
  SourceLoc loc;
};

struct EffectDecl {
  Label label;
  std::vector<OpDecl> ops;
  SourceLoc loc;

  const OpDecl* find(const Name& op) const;
};

struct Definition {
  Name name;
  std::optional<Scheme> annotation;
  ExprPtr body;
  SourceLoc loc;
};

struct Program {
  std::vector<EffectDecl> effects;
  std::map<Name, TypePtr> type_aliases;
  // Top-level definitions in source order. Handlers and ordinary values share
  // one namespace and may refer to each other.
  std::vector<Definition> definitions;
  std::optional<ExprPtr> main;
  std::vector<std::string> files;

  const EffectDecl* effect(const Label& label) const;
  const Definition* definition(const Name& name) const;
  std::set<Label> labels() const;
  // Operation names declared by more than one effect.
  std::set<Name> ambiguous_ops() const;
};

struct PrintOptions {
  // Operation names printed with their label qualifier.
  std::set<Name> qualify;
  // Handlers printed by name (`handle^St[hState]`) instead of by clauses.
  std::map<const Handler*, Name> handler_names;
};

std::string pretty(const ExprPtr& e, const PrintOptions& opts = {});
std::string pretty(const Value& v, const PrintOptions& opts = {});
std::string pretty(const Pattern& p);
std::string pretty(const Program& p);

// Alpha-normal rendering (binders renamed canonically); used for ordering
// and comparing values that contain code.
std::string alpha_normal(const Value& v);

}  // namespace hop

#endif  // HOP_SYNTAX_HPP_
