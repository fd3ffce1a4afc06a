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

// Small-step reduction. An expression is split into an evaluation context
// and its leftmost-outermost redex, the redex is contracted and the result
// is plugged back into the context.

#ifndef HOP_EVAL_HPP_
#define HOP_EVAL_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hop/syntax.hpp"
#include "hop/typecheck.hpp"

namespace hop {

// Capture-avoiding substitution of `v` for the free occurrences of `x`.
ExprPtr substitute(const ExprPtr& e, const Name& x, const Value& v);
Value substitute(const Value& target, const Name& x, const Value& v);

// One layer of an evaluation context. The hole is in the position the
// frame name describes.
struct Frame {
  struct AppFun {
    ExprPtr arg;
  };
  struct AppArg {
    Value fun;
  };
  struct LetBound {
    Name binder;
    ExprPtr body;
  };
  struct EnactHole {};
  struct HandleBody {
    HandlerPtr handler;
    Value param;
  };
  struct HandleParam {
    HandlerPtr handler;
    ExprPtr body;
  };
  struct MatchScrutinee {
    std::vector<MatchArm> arms;
  };

  std::variant<AppFun, AppArg, LetBound, EnactHole, HandleBody, HandleParam, MatchScrutinee> node;
  SourceLoc loc;
};

// Frames from the outside in.
struct EvalCtx {
  std::vector<Frame> frames;
};

ExprPtr plug(const EvalCtx& ctx, const ExprPtr& hole);

enum class Rule { Delta, Beta, Let, Enact, Return, Handle, Match, Unfold, Delay };

// "δ", "β", "Let", ...
std::string_view rule_name(Rule r);

enum class StuckReason {
  UnhandledOp,
  DeltaUndefined,
  MatchFailure,
  NotAFunction,
  NotASuspension,
  FreeVariable,
  UnknownDefinition,
};

std::string_view stuck_reason_name(StuckReason r);

struct Redex {
  // Rule that contracts the redex; nullopt for a stuck term.
  std::optional<Rule> rule;
  StuckReason stuck = StuckReason::UnhandledOp;
  ExprPtr expr;
  // Handle redexes: the context between the handler and the enacted
  // operation (it never contains a handler for the same label), and the
  // operation value.
  EvalCtx inner;
  std::optional<Value> op;
};

struct Decomposition {
  EvalCtx ctx;
  Redex redex;
};

// A closed expression is either a value or splits uniquely into a context
// and a redex.
std::variant<Value, Decomposition> decompose(const ExprPtr& e);

struct StuckInfo {
  StuckReason reason;
  std::string message;
  SourceLoc loc;
};

struct StepResult {
  enum class Kind { Stepped, Done, Stuck };
  Kind kind = Kind::Stepped;
  ExprPtr next;
  Rule rule = Rule::Beta;
  std::optional<Value> value;
  std::optional<StuckInfo> stuck;
};

struct TraceEntry {
  std::size_t index;
  Rule rule;
  ExprPtr expr;
};

struct EvalOptions {
  std::size_t fuel = 1'000'000;
  ContinuationOrder order = ContinuationOrder::ParamFirst;
  bool record_trace = false;
  // Called after every step except unfoldings of top-level names.
  std::function<void(const TraceEntry&)> on_step;
};

struct EvalResult {
  enum class Outcome { Value, Stuck, FuelExhausted };
  Outcome outcome = Outcome::FuelExhausted;
  std::optional<Value> value;
  std::optional<StuckInfo> stuck;
  // The final expression (the stuck term or where fuel ran out).
  ExprPtr last;
  std::size_t steps = 0;
  std::vector<TraceEntry> trace;
};

class Machine {
 public:
  explicit Machine(const Program& program, EvalOptions opts = {});

  // Contracts a redex produced by decompose.
  ExprPtr contract(const Redex& r) const;
  StepResult step(const ExprPtr& e) const;
  EvalResult evaluate(const ExprPtr& e) const;

  // Print options that abbreviate handlers of top-level definitions.
  const PrintOptions& print_options() const { return print_; }

 private:
  const Program& program_;
  EvalOptions opts_;
  PrintOptions print_;
};

// Primitive constant application; nullopt when undefined.
std::optional<Value> delta(const Name& c, const std::vector<Value>& args);

// Binds the variables of `p` if it matches `v`.
bool match_pattern(const Pattern& p, const Value& v, std::vector<std::pair<Name, Value>>& out);

}  // namespace hop

#endif  // HOP_EVAL_HPP_
