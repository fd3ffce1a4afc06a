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

#ifndef HOP_TYPECHECK_CHECKER_HPP_
#define HOP_TYPECHECK_CHECKER_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hop/typecheck.hpp"

namespace hop {

// One checking session. Holds the unifier state, the local scope and the
// stack of lexically enclosing handler labels.
class Checker {
 public:
  Checker(const TypeEnv& env, const CheckOptions& opts);

  TypePtr infer(const ExprPtr& e, const EffectAnnotation& ann, const TypePtr* expected);

  TypePtr zonk(const TypePtr& t) const { return u_.subst().apply(t); }
  Row zonk(const Row& r) const { return u_.subst().apply(r); }
  EffectAnnotation zonk(const EffectAnnotation& a) const { return {zonk(a.immediate), zonk(a.latent)}; }

  Unifier& unifier() { return u_; }
  NameSupply& supply() { return supply_; }

  Scheme generalize_here(const TypePtr& t, const EffectAnnotation& ann) const;

  // Instantiates `s` with rigid variables and returns the body.
  TypePtr skolemize(const Scheme& s);

  // Enactments that fit in several ways are choice points. The script picks
  // the option at each one in order (option 0 past its end); taken() and
  // options() describe the choice points reached by the last run.
  void set_script(std::vector<std::size_t> script) { script_ = std::move(script); }
  const std::vector<std::size_t>& taken() const { return taken_; }
  const std::vector<std::size_t>& options() const { return options_; }

 private:
  TypePtr infer_value(const Value& v, SourceLoc loc, const EffectAnnotation& ann, const TypePtr* expected);
  TypePtr infer_enact(const Expr& e, const Expr::Enact& n, const EffectAnnotation& ann,
                      const TypePtr* expected);
  TypePtr infer_handle(const Expr& e, const Expr::Handle& n, const EffectAnnotation& ann,
                       const TypePtr* expected);
  TypePtr apply_args(TypePtr head, const std::vector<Value>& args, SourceLoc loc,
                     const EffectAnnotation& ann);
  void bind_pattern(const Pattern& p, const TypePtr& t, SourceLoc loc);
  TypePtr lookup(const Name& n, SourceLoc loc);

  void unify_at(const TypePtr& a, const TypePtr& b, SourceLoc loc, const char* what);
  bool try_fit(const Row& imm, const Row& lat, const EffectAnnotation& ann);
  HopError enact_error(const TypePtr& target, const EffectAnnotation& ann, SourceLoc loc);
  std::vector<Name> row_chain(const Row& r) const;

  TypePtr fresh() { return t_var(supply_.fresh_type()); }
  Row fresh_row() { return Row::var(supply_.fresh_row()); }

  void push(const Name& n, Scheme s) {
    if (n != "_") locals_.emplace_back(n, std::move(s));
    else locals_.emplace_back("", std::move(s));
  }

  const TypeEnv& env_;
  CheckOptions opts_;
  NameSupply supply_;
  Unifier u_;
  std::vector<std::pair<Name, Scheme>> locals_;
  std::vector<Label> handlers_;
  // Latent row variables forced to <> by an operation call, with the call.
  std::map<Name, std::pair<SourceLoc, std::string>> op_forced_;
  bool in_lambda_ = false;
  std::vector<std::size_t> script_;
  std::vector<std::size_t> taken_;
  std::vector<std::size_t> options_;
};

}  // namespace hop

#endif  // HOP_TYPECHECK_CHECKER_HPP_
