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

// Kinds, effect rows, types and type schemes, plus row-aware unification.

#ifndef HOP_TYPES_HPP_
#define HOP_TYPES_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "hop/common.hpp"

namespace hop {

struct Kind {
  enum class Tag { Star, Row, Arrow };

  Tag tag = Tag::Star;
  std::shared_ptr<const Kind> from;
  std::shared_ptr<const Kind> to;

  static Kind star();
  static Kind row();
  static Kind arrow(const Kind& from, const Kind& to);

  friend bool operator==(const Kind& a, const Kind& b);
};

std::string to_string(const Kind& k);

// An effect row: a multiset of labels followed by an open tail. The tail
// holds zero or more row variables; several variables only appear after
// concatenating rows that are both open (e.g. the row of an operation's
// suspended argument inside a handler).
struct Row {
  std::vector<Label> labels;
  std::vector<Name> tails;

  static Row empty();
  static Row var(Name name);
  static Row cons(Label label, Row tail);

  bool is_closed() const { return tails.empty(); }
  bool is_empty() const { return labels.empty() && tails.empty(); }

  // Structural (order sensitive) comparison. Use row_equiv for the
  // equivalence that ignores label order.
  friend bool operator==(const Row& a, const Row& b) = default;
};

// Equivalence closure of label reordering: equal label multisets and equal
// tails.
bool row_equiv(const Row& a, const Row& b);

// Row concatenation. The left row must be closed (OpenLeftRow otherwise).
Row row_concat(const Row& left, const Row& right);

// Multiset union without the closedness restriction. This is what the type
// checker uses for the suspended argument of an operation.
Row row_union(const Row& left, const Row& right);

// Removes one occurrence of `label`; nullopt if absent.
std::optional<Row> row_remove(const Row& row, const Label& label);

std::string to_string(const Row& row);

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  struct Var {
    Name name;
  };
  struct Con {
    Name name;
  };
  struct App {
    TypePtr fun;
    TypePtr arg;
  };
  struct Arrow {
    TypePtr from;
    TypePtr to;
  };
  struct Susp {
    Row immediate;
    Row latent;
    TypePtr result;
  };

  std::variant<Var, Con, App, Arrow, Susp> node;

  template <class T>
  bool is() const { return std::holds_alternative<T>(node); }
  template <class T>
  const T& as() const { return std::get<T>(node); }
};

TypePtr t_var(Name name);
TypePtr t_con(Name name);
TypePtr t_app(TypePtr fun, TypePtr arg);
TypePtr t_arrow(TypePtr from, TypePtr to);
TypePtr t_susp(Row immediate, Row latent, TypePtr result);

TypePtr t_int();
TypePtr t_unit();
TypePtr t_bool();
TypePtr t_string();
// The dynamic type of object-language values stored by the lambda handlers.
// It is compatible with every type.
TypePtr t_dyn();
TypePtr t_maybe(TypePtr a);
TypePtr t_list(TypePtr a);
TypePtr t_pair(TypePtr a, TypePtr b);

inline constexpr const char* kDynTypeName = "Val";

// Structural equality with rows compared by row_equiv.
bool type_equal(const TypePtr& a, const TypePtr& b);

std::string to_string(const TypePtr& t);

struct Scheme {
  std::vector<Name> type_vars;
  std::vector<Name> row_vars;
  TypePtr body;

  static Scheme mono(TypePtr t) { return Scheme{{}, {}, std::move(t)}; }
};

std::string to_string(const Scheme& s);

struct FreeVars {
  std::set<Name> types;
  std::set<Name> rows;

  void merge(const FreeVars& other);
};

FreeVars free_type_vars(const TypePtr& t);
FreeVars free_type_vars(const Row& r);
FreeVars free_type_vars(const Scheme& s);

// Built-in type constructors and their kinds.
const std::map<Name, Kind>& builtin_type_constructors();

// WF judgement. `delta` maps type and row variables to kinds. Labels are
// checked against `labels` when it is non-null.
Kind kind_check(const std::map<Name, Kind>& delta, const TypePtr& t,
                const std::set<Label>* labels = nullptr);
void kind_check_row(const std::map<Name, Kind>& delta, const Row& r,
                    const std::set<Label>* labels = nullptr);

// Triangular substitution: bindings may mention other bound variables;
// apply() resolves chains fully. normalized() returns an idempotent copy.
class Substitution {
 public:
  std::map<Name, TypePtr> types;
  std::map<Name, Row> rows;

  bool empty() const { return types.empty() && rows.empty(); }
  TypePtr apply(const TypePtr& t) const;
  Row apply(const Row& r) const;
  Scheme apply(const Scheme& s) const;
  Substitution normalized() const;
};

class NameSupply {
 public:
  explicit NameSupply(std::string prefix = "?") : prefix_(std::move(prefix)) {}

  Name fresh_type();
  Name fresh_row();
  // Rigid names print like ordinary variables but are never bound.
  Name fresh_rigid(const Name& hint);

 private:
  std::string prefix_;
  int next_ = 0;
};

bool is_unification_var(const Name& n);

// Unification over types and rows. Variables in `rigid` are skolems and
// never get bound. Failures throw HopError with TypeMismatch, RowMismatch
// or OccursCheck; on failure the substitution may be partially extended, so
// callers that want to retry must take a snapshot first.
class Unifier {
 public:
  explicit Unifier(NameSupply& supply) : supply_(&supply) {}

  void unify(const TypePtr& a, const TypePtr& b);
  void unify_rows(const Row& a, const Row& b);

  Substitution& subst() { return subst_; }
  const Substitution& subst() const { return subst_; }
  std::set<Name>& rigid() { return rigid_; }
  NameSupply& supply() { return *supply_; }

  struct Snapshot {
    Substitution subst;
  };
  Snapshot save() const { return Snapshot{subst_}; }
  void restore(Snapshot s) { subst_ = std::move(s.subst); }

  bool is_flexible(const Name& n) const { return !rigid_.count(n); }

 private:
  void bind_type(const Name& v, const TypePtr& t);
  void bind_row(const Name& v, const Row& r);

  NameSupply* supply_;
  Substitution subst_;
  std::set<Name> rigid_;
};

// Convenience wrapper: unify two rows starting from `subst`, treating every
// variable as flexible. Returns the extended idempotent substitution.
Substitution unify_rows(const Row& a, const Row& b, Substitution subst = {});

// Instantiation with fresh unification variables.
TypePtr instantiate(const Scheme& s, NameSupply& supply);

// Renames quantified variables to a, b, ... and r, r', ... in order of
// first occurrence.
Scheme canonicalize(const Scheme& s);

// Alpha equivalence of schemes modulo row reordering (mutual instances).
bool scheme_equiv(const Scheme& a, const Scheme& b);

}  // namespace hop

#endif  // HOP_TYPES_HPP_
