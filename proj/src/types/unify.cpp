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

namespace {

TypePtr resolve_head(const Substitution& s, TypePtr t) {
  while (auto v = std::get_if<Type::Var>(&t->node)) {
    auto it = s.types.find(v->name);
    if (it == s.types.end()) break;
    t = it->second;
  }
  return t;
}

bool is_dyn(const TypePtr& t) {
  auto c = std::get_if<Type::Con>(&t->node);
  return c && c->name == kDynTypeName;
}

// Removes the elements common to both multisets and returns them.
template <class T>
std::vector<T> cancel(std::vector<T>& a, std::vector<T>& b) {
  std::vector<T> common;
  for (auto it = a.begin(); it != a.end();) {
    auto jt = std::find(b.begin(), b.end(), *it);
    if (jt == b.end()) {
      ++it;
      continue;
    }
    common.push_back(*it);
    b.erase(jt);
    it = a.erase(it);
  }
  return common;
}

}  // namespace

void Unifier::bind_type(const Name& v, const TypePtr& t) {
  TypePtr resolved = subst_.apply(t);
  if (auto w = std::get_if<Type::Var>(&resolved->node); w && w->name == v) return;
  if (free_type_vars(resolved).types.count(v)) {
    throw HopError(ErrorCode::OccursCheck,
                   fmt::format("type variable {} occurs in {}", v, to_string(resolved)));
  }
  subst_.types[v] = resolved;
}

void Unifier::bind_row(const Name& v, const Row& r) {
  Row resolved = subst_.apply(r);
  if (resolved.labels.empty() && resolved.tails.size() == 1 && resolved.tails[0] == v) return;
  if (std::find(resolved.tails.begin(), resolved.tails.end(), v) != resolved.tails.end()) {
    throw HopError(ErrorCode::OccursCheck,
                   fmt::format("row variable {} occurs in {}", v, to_string(resolved)));
  }
  subst_.rows[v] = resolved;
}

void Unifier::unify(const TypePtr& a0, const TypePtr& b0) {
  TypePtr a = resolve_head(subst_, a0);
  TypePtr b = resolve_head(subst_, b0);
  if (a == b) return;
  auto va = std::get_if<Type::Var>(&a->node);
  auto vb = std::get_if<Type::Var>(&b->node);
  if (va && vb && va->name == vb->name) return;
  if (va && is_flexible(va->name)) return bind_type(va->name, b);
  if (vb && is_flexible(vb->name)) return bind_type(vb->name, a);
  if (is_dyn(a) || is_dyn(b)) return;
  auto mismatch = [&] {
    return HopError(ErrorCode::TypeMismatch,
                    fmt::format("cannot match {} with {}", to_string(subst_.apply(a)),
                                to_string(subst_.apply(b))));
  };
  if (va || vb || a->node.index() != b->node.index()) throw mismatch();
  if (auto ca = std::get_if<Type::Con>(&a->node)) {
    if (ca->name != b->as<Type::Con>().name) throw mismatch();
    return;
  }
  if (auto pa = std::get_if<Type::App>(&a->node)) {
    const auto& pb = b->as<Type::App>();
    unify(pa->fun, pb.fun);
    unify(pa->arg, pb.arg);
    return;
  }
  if (auto pa = std::get_if<Type::Arrow>(&a->node)) {
    const auto& pb = b->as<Type::Arrow>();
    unify(pa->from, pb.from);
    unify(pa->to, pb.to);
    return;
  }
  const auto& sa = a->as<Type::Susp>();
  const auto& sb = b->as<Type::Susp>();
  unify_rows(sa.immediate, sb.immediate);
  unify_rows(sa.latent, sb.latent);
  unify(sa.result, sb.result);
}

void Unifier::unify_rows(const Row& a0, const Row& b0) {
  Row a = subst_.apply(a0);
  Row b = subst_.apply(b0);
  const Row shown_a = a;
  const Row shown_b = b;
  cancel(a.labels, b.labels);
  std::vector<Name> shared = cancel(a.tails, b.tails);
  if (a.is_empty() && b.is_empty()) return;

  auto fail = [&](const std::string& why) {
    bool cyclic = std::any_of(shared.begin(), shared.end(),
                              [&](const Name& v) { return is_flexible(v); });
    return HopError(cyclic ? ErrorCode::OccursCheck : ErrorCode::RowMismatch,
                    fmt::format("effect row {} does not match {}: {}", to_string(shown_a),
                                to_string(shown_b), why));
  };

  // Every label left on one side must come from a flexible tail variable of
  // the other side.
  auto supply_labels = [&](const std::vector<Label>& labels, std::vector<Name>& tails) {
    for (const Label& l : labels) {
      auto it = std::find_if(tails.begin(), tails.end(),
                             [&](const Name& v) { return is_flexible(v); });
      if (it == tails.end()) throw fail(fmt::format("label {} is not available", l));
      Name fresh = supply_->fresh_row();
      bind_row(*it, Row{{l}, {fresh}});
      *it = fresh;
    }
  };
  supply_labels(a.labels, b.tails);
  supply_labels(b.labels, a.tails);

  std::vector<Name>& ta = a.tails;
  std::vector<Name>& tb = b.tails;
  if (ta.empty() && tb.empty()) return;
  auto all_flexible = [&](const std::vector<Name>& v) {
    return std::all_of(v.begin(), v.end(), [&](const Name& n) { return is_flexible(n); });
  };
  auto absorb = [&](const std::vector<Name>& vars, const std::vector<Name>& other) {
    bind_row(vars[0], Row{{}, other});
    for (std::size_t i = 1; i < vars.size(); ++i) bind_row(vars[i], Row::empty());
  };
  if (ta.size() == 1 && is_flexible(ta[0])) return bind_row(ta[0], Row{{}, tb});
  if (tb.size() == 1 && is_flexible(tb[0])) return bind_row(tb[0], Row{{}, ta});
  if (!ta.empty() && all_flexible(ta)) return absorb(ta, tb);
  if (!tb.empty() && all_flexible(tb)) return absorb(tb, ta);
  throw fail("row variables cannot be matched");
}

Substitution unify_rows(const Row& a, const Row& b, Substitution subst) {
  NameSupply supply("?u");
  Unifier u(supply);
  u.subst() = std::move(subst);
  u.unify_rows(a, b);
  return u.subst().normalized();
}

}  // namespace hop
