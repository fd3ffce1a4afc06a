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

#include "hop/stdlib.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <fmt/format.h>

#include "hop/eval.hpp"
#include "hop/parser.hpp"
#include "json.hpp"

namespace hop {

namespace {

using nlohmann::json;

json read_manifest(const std::string& dir) {
  std::filesystem::path path = std::filesystem::path(dir) / "manifest.json";
  std::ifstream in(path);
  if (!in) throw HopError(ErrorCode::IoError, fmt::format("cannot read {}", path.string()));
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw HopError(ErrorCode::IoError, fmt::format("{}: {}", path.string(), e.what()));
  }
}

// Manifest values are written as closed expressions such as "[]" or
// "(Just 2, 2)"; they are evaluated to get the value.
Value manifest_value(const std::string& text, const Program& program) {
  ExprPtr e = parse_expr(text, program);
  EvalOptions opts;
  opts.fuel = 1000;
  EvalResult r = Machine(program, opts).evaluate(e);
  if (!r.value) throw HopError(ErrorCode::TypeMismatch, fmt::format("manifest value '{}' is not a value", text));
  return *r.value;
}

}  // namespace

const HandlerEntry* Stdlib::handler(const Name& name) const {
  for (const HandlerEntry& h : handlers) {
    if (h.name == name) return &h;
  }
  return nullptr;
}

std::string default_stdlib_dir() {
  if (const char* env = std::getenv("HOP_STDLIB"); env && *env) return env;
  return HOP_STDLIB_DIR;
}

std::vector<std::string> stdlib_sources(const std::string& dir) {
  json manifest = read_manifest(dir);
  std::vector<std::string> out;
  for (const auto& s : manifest.at("sources")) out.push_back((std::filesystem::path(dir) / s.get<std::string>()).string());
  return out;
}

Stdlib load_stdlib(const std::string& dir) {
  json manifest = read_manifest(dir);
  Stdlib lib;
  lib.dir = dir;
  lib.program = load_program(stdlib_sources(dir));
  lib.types = check_program(lib.program);
  if (!lib.types.ok()) {
    std::vector<std::string> lines;
    for (const Diagnostic& d : lib.types.errors) lines.push_back(format_diagnostic(d));
    throw HopError(lib.types.errors.front().code, fmt::format("stdlib rejected:\n{}", fmt::join(lines, "\n")));
  }

  try {
    for (const auto& h : manifest.at("handlers")) {
      HandlerEntry e;
      e.name = h.at("name").get<std::string>();
      const Definition* def = lib.program.definition(e.name);
      if (!def) throw HopError(ErrorCode::UnknownEntry, fmt::format("manifest names unknown handler {}", e.name));
      if (def->loc.file >= 0) e.source_path = lib.program.files.at(static_cast<std::size_t>(def->loc.file));
      e.label = h.at("label").get<std::string>();
      e.param_type = h.at("param_type").get<std::string>();
      if (!h.at("param").is_null()) e.default_param = manifest_value(h.at("param").get<std::string>(), lib.program);
      e.functor = FunctorDescriptor::parse(h.at("functor").get<std::string>());
      e.expected_scheme = parse_scheme(h.at("scheme").get<std::string>(), lib.program);
      const Scheme& actual = lib.types.schemes.at(e.name);
      if (!scheme_equiv(canonicalize(actual), canonicalize(e.expected_scheme))) {
        throw HopError(ErrorCode::TypeMismatch, fmt::format("{} has scheme {}, manifest says {}", e.name,
                                                            to_string(actual), to_string(e.expected_scheme)));
      }
      lib.handlers.push_back(std::move(e));
    }
    for (const auto& p : manifest.at("soc_programs")) {
      Name name = p.get<std::string>();
      if (!lib.program.definition(name)) {
        throw HopError(ErrorCode::UnknownEntry, fmt::format("manifest names unknown program {}", name));
      }
      lib.soc_programs.push_back(name);
    }
    for (const auto& c : manifest.at("corpus")) {
      CorpusProgram p;
      p.name = c.at("name").get<std::string>();
      if (!lib.program.definition(p.name)) {
        throw HopError(ErrorCode::UnknownEntry, fmt::format("manifest names unknown entry {}", p.name));
      }
      p.expr = mk_enact(mk_nameref(p.name));
      if (c.contains("expected")) p.expected = manifest_value(c.at("expected").get<std::string>(), lib.program);
      lib.corpus.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw HopError(ErrorCode::IoError, fmt::format("{}/manifest.json: {}", dir, e.what()));
  }
  return lib;
}

const std::vector<CorpusProgram>& corpus_programs(const Stdlib& lib) { return lib.corpus; }

ExprPtr apply_handler(const HandlerEntry& h, const ExprPtr& prog, const std::optional<Value>& param) {
  ExprPtr f = mk_nameref(h.name);
  if (h.takes_param()) f = mk_app(f, mk_val(param ? *param : *h.default_param));
  return mk_app(f, prog);
}

}  // namespace hop
