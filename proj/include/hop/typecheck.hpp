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

// Bidirectional type and effect checking. Every expression is checked under
// an effect annotation: the immediate row (operations it may perform
// directly) and the latent row (effects that must be handled outside the
// nearest enclosing handlers, reachable only through resurfacing).

#ifndef HOP_TYPECHECK_HPP_
#define HOP_TYPECHECK_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hop/syntax.hpp"
#include "hop/types.hpp"

namespace hop {

struct EffectAnnotation {
  Row immediate;
  Row latent;

  static EffectAnnotation pure() { return {}; }
};

std::string to_string(const EffectAnnotation& a);

// Moves one occurrence of `label` from the latent row to the immediate row.
// Throws LabelNotLatent when the label is not in the latent row's prefix.
EffectAnnotation resurface(const EffectAnnotation& a, const Label& label);

enum class ContinuationOrder {
  // k p' {e}: the new handler parameter first, then the suspension.
  ParamFirst,
  SuspensionFirst,
};

struct EffectSig {
  std::map<Label, std::vector<OpDecl>> effects;

  static EffectSig from(const Program& p);
  const OpDecl* find(const Label& label, const Name& op) const;
  std::set<Label> labels() const;
};

struct TypeEnv {
  std::map<Name, Scheme> vars;
  std::map<Name, Kind> tyvars;
  EffectSig sigma;
};

struct CheckOptions {
  ContinuationOrder order = ContinuationOrder::ParamFirst;
  // Upper bound on the number of labels tried when searching for a
  // resurfacing that makes an enactment fit its context.
  std::size_t max_resurface = 3;
  // Let resurfacing move any latent label, not only those of lexically
  // enclosing handlers. Terms in mid-evaluation need this: a clause body
  // passed to a continuation no longer sits inside its handler.
  bool resurface_any_label = false;
  // With resurface_any_label, check_toplevel backtracks over the ways each
  // enactment can fit; this bounds the number of attempts.
  std::size_t max_attempts = 256;
};

// Checks `e` under `ann`; if `expected` is given the result must match it.
// Returns the inferred type and the substitution that was built. Throws
// HopError on failure.
std::pair<TypePtr, Substitution> check_expr(const TypeEnv& env, const ExprPtr& e,
                                             const std::optional<TypePtr>& expected,
                                             const EffectAnnotation& ann,
                                             const CheckOptions& opts = {});

// Generalizes the variables of `t` that are free in neither `env` nor `ann`.
Scheme generalize(const TypeEnv& env, const TypePtr& t, const EffectAnnotation& ann);

struct ProgramTypes {
  std::map<Name, Scheme> schemes;
  std::optional<TypePtr> main_type;
  std::optional<EffectAnnotation> main_annotation;
  std::vector<Diagnostic> errors;

  bool ok() const { return errors.empty(); }
};

// Checks every definition (handlers and values) and the main expression.
// Definitions are checked under the pure annotation; the main expression is
// checked with an empty immediate row and an unconstrained latent row. All
// per-definition errors are collected.
ProgramTypes check_program(const Program& p, const CheckOptions& opts = {});

// Builds the environment used to check expressions against an already
// checked program (operation signatures and definition schemes).
TypeEnv program_env(const Program& p, const ProgramTypes& types);

struct TopLevelType {
  TypePtr type;
  EffectAnnotation annotation;
};

// Infers `e` as a top-level expression: no immediate effects and any
// latent ones. Throws HopError when it is ill-typed.
TopLevelType check_toplevel(const TypeEnv& env, const ExprPtr& e, const CheckOptions& opts = {});

}  // namespace hop

#endif  // HOP_TYPECHECK_HPP_
