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

#include <functional>

#include <fmt/format.h>

#include "typecheck/checker.hpp"

namespace hop {

namespace {

void collect_refs(const ExprPtr& e, std::set<Name>& out);

void collect_refs(const Value& v, std::set<Name>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Value::Lam> || std::is_same_v<T, Value::Suspend>) {
          collect_refs(x.body, out);
        } else if constexpr (std::is_same_v<T, Value::Const> || std::is_same_v<T, Value::Data> ||
                             std::is_same_v<T, Value::Op>) {
          for (const Value& a : x.args) collect_refs(a, out);
        }
      },
      v.node);
}

void collect_refs(const ExprPtr& e, std::set<Name>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Expr::App>) {
          collect_refs(x.fun, out);
          collect_refs(x.arg, out);
        } else if constexpr (std::is_same_v<T, Expr::Let>) {
          collect_refs(x.bound, out);
          collect_refs(x.body, out);
        } else if constexpr (std::is_same_v<T, Expr::Handle>) {
          collect_refs(x.param, out);
          collect_refs(x.body, out);
          collect_refs(x.handler->ret.body, out);
          for (const OpClause& c : x.handler->ops) collect_refs(c.body, out);
        } else if constexpr (std::is_same_v<T, Expr::Enact>) {
          collect_refs(x.target, out);
        } else if constexpr (std::is_same_v<T, Expr::Val>) {
          collect_refs(x.value, out);
        } else if constexpr (std::is_same_v<T, Expr::Match>) {
          collect_refs(x.scrutinee, out);
          for (const MatchArm& a : x.arms) collect_refs(a.body, out);
        } else {
          out.insert(x.name);
        }
      },
      e->node);
}

// Scheme given to a definition that failed to check, so that its users are
// not reported again.
Scheme error_scheme() { return Scheme{{"a"}, {}, t_var("a")}; }

std::map<Name, Kind> scheme_kinds(const Scheme& s) {
  std::map<Name, Kind> delta;
  for (const Name& v : s.type_vars) delta.emplace(v, Kind::star());
  for (const Name& v : s.row_vars) delta.emplace(v, Kind::row());
  return delta;
}

// Tarjan's algorithm; components come out dependencies first.
std::vector<std::vector<Name>> components(const std::vector<Name>& nodes,
                                          const std::map<Name, std::set<Name>>& edges) {
  std::map<Name, int> index, low;
  std::set<Name> on_stack;
  std::vector<Name> stack;
  std::vector<std::vector<Name>> out;
  int next = 0;
  std::function<void(const Name&)> visit = [&](const Name& v) {
    index[v] = low[v] = next++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const Name& w : edges.at(v)) {
      if (!edges.count(w)) continue;
      if (!index.count(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.count(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<Name> comp;
      Name w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp.push_back(w);
      } while (w != v);
      out.push_back(std::move(comp));
    }
  };
  for (const Name& v : nodes) {
    if (!index.count(v)) visit(v);
  }
  return out;
}

}  // namespace

ProgramTypes check_program(const Program& p, const CheckOptions& opts) {
  ProgramTypes out;
  TypeEnv env;
  env.sigma = EffectSig::from(p);
  const std::set<Label> labels = p.labels();

  auto report = [&](const HopError& err, const Name& where) {
    Diagnostic d{err.code(), err.message(), err.loc(), "", where};
    if (err.loc().file >= 0 && static_cast<std::size_t>(err.loc().file) < p.files.size()) {
      d.file = p.files[static_cast<std::size_t>(err.loc().file)];
    }
    out.errors.push_back(std::move(d));
  };
  auto relocate = [](const HopError& err, SourceLoc loc) {
    return err.loc().line ? err : HopError(err.code(), err.message(), loc);
  };

  for (const EffectDecl& e : p.effects) {
    for (const OpDecl& d : e.ops) {
      try {
        kind_check(scheme_kinds(d.scheme), d.scheme.body, &labels);
      } catch (const HopError& err) {
        report(relocate(err, d.loc), e.label + "." + d.name);
      }
    }
  }

  std::vector<Name> unannotated;
  std::map<Name, std::set<Name>> edges;
  std::map<Name, const Definition*> by_name;
  for (const Definition& d : p.definitions) {
    by_name[d.name] = &d;
    if (d.annotation) {
      try {
        kind_check(scheme_kinds(*d.annotation), d.annotation->body, &labels);
        env.vars[d.name] = *d.annotation;
      } catch (const HopError& err) {
        report(relocate(err, d.loc), d.name);
        env.vars[d.name] = error_scheme();
      }
      continue;
    }
    unannotated.push_back(d.name);
    collect_refs(d.body, edges[d.name]);
  }

  for (const auto& comp : components(unannotated, edges)) {
    const Name& first = comp.front();
    bool recursive = comp.size() > 1 || edges[first].count(first);
    if (recursive) {
      for (const Name& n : comp) {
        report(HopError(ErrorCode::AnnotationRequired,
                        fmt::format("recursive definition {} needs a type annotation", n),
                        by_name[n]->loc),
               n);
        env.vars[n] = error_scheme();
      }
      continue;
    }
    const Definition& d = *by_name[first];
    try {
      Checker c(env, opts);
      TypePtr t = c.infer(d.body, EffectAnnotation::pure(), nullptr);
      Scheme s = canonicalize(c.generalize_here(t, EffectAnnotation::pure()));
      env.vars[d.name] = s;
      out.schemes[d.name] = s;
    } catch (const HopError& err) {
      report(relocate(err, d.loc), d.name);
      env.vars[d.name] = error_scheme();
    }
  }

  for (const Definition& d : p.definitions) {
    if (!d.annotation) continue;
    bool kinds_ok = true;
    for (const Diagnostic& diag : out.errors) {
      if (diag.definition == d.name) kinds_ok = false;
    }
    if (!kinds_ok) continue;
    try {
      Checker c(env, opts);
      TypePtr t = c.skolemize(*d.annotation);
      c.infer(d.body, EffectAnnotation::pure(), &t);
      out.schemes[d.name] = *d.annotation;
    } catch (const HopError& err) {
      report(relocate(err, d.loc), d.name);
    }
  }

  if (p.main) {
    try {
      TopLevelType t = check_toplevel(env, *p.main, opts);
      out.main_type = t.type;
      out.main_annotation = t.annotation;
    } catch (const HopError& err) {
      report(relocate(err, (*p.main)->loc), "main");
    }
  }
  return out;
}

namespace {

TopLevelType check_toplevel_once(const TypeEnv& env, const ExprPtr& e, const CheckOptions& opts,
                                 std::vector<std::size_t> script, std::vector<std::size_t>& taken,
                                 std::vector<std::size_t>& options) {
  Checker c(env, opts);
  c.set_script(std::move(script));
  EffectAnnotation ann{Row::empty(), Row::var(c.supply().fresh_row())};
  try {
    TypePtr t = c.infer(e, ann, nullptr);
    return {c.zonk(t), c.zonk(ann)};
  } catch (...) {
    taken = c.taken();
    options = c.options();
    throw;
  }
}

}  // namespace

TopLevelType check_toplevel(const TypeEnv& env, const ExprPtr& e, const CheckOptions& opts) {
  std::vector<std::size_t> taken, options;
  if (!opts.resurface_any_label) return check_toplevel_once(env, e, opts, {}, taken, options);
  // Depth-first search over the choice points, last one first.
  std::optional<HopError> first;
  std::vector<std::size_t> script;
  for (std::size_t attempt = 0; attempt < opts.max_attempts; ++attempt) {
    try {
      return check_toplevel_once(env, e, opts, script, taken, options);
    } catch (const HopError& err) {
      if (!first) first = err;
    }
    std::size_t j = taken.size();
    while (j > 0 && taken[j - 1] + 1 >= options[j - 1]) --j;
    if (j == 0) break;
    script.assign(taken.begin(), taken.begin() + static_cast<std::ptrdiff_t>(j));
    ++script.back();
  }
  throw *first;
}

TypeEnv program_env(const Program& p, const ProgramTypes& types) {
  TypeEnv env;
  env.sigma = EffectSig::from(p);
  for (const Definition& d : p.definitions) {
    auto it = types.schemes.find(d.name);
    env.vars[d.name] = it != types.schemes.end() ? it->second : error_scheme();
  }
  return env;
}

}  // namespace hop
