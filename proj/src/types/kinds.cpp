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

#include "hop/types.hpp"

namespace hop {

Kind Kind::star() { return Kind{Tag::Star, nullptr, nullptr}; }

Kind Kind::row() { return Kind{Tag::Row, nullptr, nullptr}; }

Kind Kind::arrow(const Kind& from, const Kind& to) {
  return Kind{Tag::Arrow, std::make_shared<const Kind>(from), std::make_shared<const Kind>(to)};
}

bool operator==(const Kind& a, const Kind& b) {
  if (a.tag != b.tag) return false;
  if (a.tag != Kind::Tag::Arrow) return true;
  return *a.from == *b.from && *a.to == *b.to;
}

std::string to_string(const Kind& k) {
  switch (k.tag) {
    case Kind::Tag::Star: return "*";
    case Kind::Tag::Row: return "R";
    case Kind::Tag::Arrow: {
      std::string from = to_string(*k.from);
      if (k.from->tag == Kind::Tag::Arrow) from = "(" + from + ")";
      return from + " -> " + to_string(*k.to);
    }
  }
  return "?";
}

const std::map<Name, Kind>& builtin_type_constructors() {
  static const std::map<Name, Kind> table = [] {
    Kind s = Kind::star();
    std::map<Name, Kind> m;
    m.emplace("Int", s);
    m.emplace("Unit", s);
    m.emplace("Bool", s);
    m.emplace("String", s);
    m.emplace(kDynTypeName, s);
    m.emplace("Maybe", Kind::arrow(s, s));
    m.emplace("List", Kind::arrow(s, s));
    m.emplace("Pair", Kind::arrow(s, Kind::arrow(s, s)));
    return m;
  }();
  return table;
}

namespace {

void expect_kind(const Kind& got, const Kind& want, const std::string& what) {
  if (!(got == want)) {
    throw HopError(ErrorCode::KindMismatch,
                   fmt::format("{} has kind {} but {} was expected", what, to_string(got),
                               to_string(want)));
  }
}

}  // namespace

void kind_check_row(const std::map<Name, Kind>& delta, const Row& r,
                    const std::set<Label>* labels) {
  if (labels) {
    for (const Label& l : r.labels) {
      if (!labels->count(l)) {
        throw HopError(ErrorCode::UnknownEffectLabel, fmt::format("unknown effect label {}", l));
      }
    }
  }
  for (const Name& v : r.tails) {
    auto it = delta.find(v);
    if (it == delta.end()) {
      throw HopError(ErrorCode::UnknownTypeVariable, fmt::format("unbound row variable {}", v));
    }
    expect_kind(it->second, Kind::row(), "row variable " + v);
  }
}

Kind kind_check(const std::map<Name, Kind>& delta, const TypePtr& t,
                const std::set<Label>* labels) {
  return std::visit(
      [&](const auto& n) -> Kind {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Type::Var>) {
          auto it = delta.find(n.name);
          if (it == delta.end()) {
            throw HopError(ErrorCode::UnknownTypeVariable,
                           fmt::format("unbound type variable {}", n.name));
          }
          return it->second;
        } else if constexpr (std::is_same_v<T, Type::Con>) {
          auto it = delta.find(n.name);
          if (it != delta.end()) return it->second;
          const auto& builtins = builtin_type_constructors();
          auto bt = builtins.find(n.name);
          if (bt == builtins.end()) {
            throw HopError(ErrorCode::UnknownTypeVariable,
                           fmt::format("unknown type constructor {}", n.name));
          }
          return bt->second;
        } else if constexpr (std::is_same_v<T, Type::App>) {
          Kind fk = kind_check(delta, n.fun, labels);
          Kind ak = kind_check(delta, n.arg, labels);
          if (fk.tag != Kind::Tag::Arrow) {
            throw HopError(ErrorCode::KindMismatch,
                           fmt::format("type {} of kind {} is applied to an argument",
                                       to_string(n.fun), to_string(fk)));
          }
          expect_kind(ak, *fk.from, "type argument " + to_string(n.arg));
          return *fk.to;
        } else if constexpr (std::is_same_v<T, Type::Arrow>) {
          expect_kind(kind_check(delta, n.from, labels), Kind::star(), to_string(n.from));
          expect_kind(kind_check(delta, n.to, labels), Kind::star(), to_string(n.to));
          return Kind::star();
        } else {
          kind_check_row(delta, n.immediate, labels);
          kind_check_row(delta, n.latent, labels);
          expect_kind(kind_check(delta, n.result, labels), Kind::star(), to_string(n.result));
          return Kind::star();
        }
      },
      t->node);
}

}  // namespace hop
