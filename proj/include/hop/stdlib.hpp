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

// The shipped effect declarations, handlers and example programs, with
// the manifest that describes each handler.

#ifndef HOP_STDLIB_HPP_
#define HOP_STDLIB_HPP_

#include <optional>
#include <string>
#include <vector>

#include "hop/bag.hpp"
#include "hop/syntax.hpp"
#include "hop/typecheck.hpp"

namespace hop {

struct HandlerEntry {
  Name name;
  std::string source_path;
  Label label;
  // Type of the handler parameter; "Unit" for handlers without one.
  std::string param_type;
  // Parameter used when none is given; nullopt when the handler takes
  // only the computation.
  std::optional<Value> default_param;
  FunctorDescriptor functor;
  Scheme expected_scheme;

  bool takes_param() const { return default_param.has_value(); }
};

struct CorpusProgram {
  Name name;
  // The entry enacted: `name!`.
  ExprPtr expr;
  std::optional<Value> expected;
};

struct Stdlib {
  std::string dir;
  Program program;
  ProgramTypes types;
  std::vector<HandlerEntry> handlers;
  // Effectful programs used as subjects of the handler-order sweep.
  std::vector<Name> soc_programs;
  std::vector<CorpusProgram> corpus;

  const HandlerEntry* handler(const Name& name) const;
  TypeEnv env() const { return program_env(program, types); }
};

// $HOP_STDLIB when set, otherwise the source tree's stdlib directory.
std::string default_stdlib_dir();

// The .hop files of the stdlib in load order.
std::vector<std::string> stdlib_sources(const std::string& dir = default_stdlib_dir());

// Loads and checks the stdlib. Throws HopError when a definition is
// rejected or a handler's scheme differs from the manifest.
Stdlib load_stdlib(const std::string& dir = default_stdlib_dir());

const std::vector<CorpusProgram>& corpus_programs(const Stdlib& lib);

// `h p prog`, or `h prog` for handlers without a parameter. The default
// parameter is used when `param` is empty.
ExprPtr apply_handler(const HandlerEntry& h, const ExprPtr& prog, const std::optional<Value>& param = {});

}  // namespace hop

#endif  // HOP_STDLIB_HPP_
