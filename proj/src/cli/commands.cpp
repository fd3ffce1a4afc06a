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

#include "hop/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "hop/eval.hpp"
#include "hop/parser.hpp"
#include "hop/soc.hpp"
#include "hop/stdlib.hpp"
#include "json.hpp"

namespace hop {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

enum class TraceFilter { All, Handlers, None };

struct CliConfig {
  std::vector<std::string> paths;
  std::string stdlib_dir;
  bool no_stdlib = false;
  std::size_t fuel = 1'000'000;
  TraceFilter trace = TraceFilter::None;
  bool json = false;
  bool json_trace = false;
  std::uint64_t seed = 1;
  ContinuationOrder order = ContinuationOrder::ParamFirst;
  std::string entry;
  bool typecheck = false;
  std::vector<std::string> pairs;
  std::vector<std::string> programs;
  std::vector<std::string> contexts;
  bool no_context = false;
  std::string report_path = "soc-report.json";
  std::string expectations;
  std::size_t lemma_samples = 0;
};

std::size_t default_fuel() {
  if (const char* env = std::getenv("HOP_FUEL"); env && *env) {
    try {
      std::size_t n = std::stoull(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return 1'000'000;
}

std::string diagnostic_for(const HopError& e, const std::vector<std::string>& files) {
  Diagnostic d{e.code(), e.message(), e.loc(), "", ""};
  if (e.loc().file >= 0 && static_cast<std::size_t>(e.loc().file) < files.size()) {
    d.file = files[static_cast<std::size_t>(e.loc().file)];
  }
  return format_diagnostic(d);
}

// Expands directories to their .hop files (sorted) and drops duplicates.
std::vector<std::string> expand_paths(const std::vector<std::string>& inputs) {
  std::vector<std::string> out;
  std::set<fs::path> seen;
  auto add = [&](const fs::path& p) {
    fs::path key = fs::weakly_canonical(p);
    if (seen.insert(key).second) out.push_back(p.string());
  };
  for (const std::string& in : inputs) {
    fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".hop") files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      for (const fs::path& f : files) add(f);
    } else if (fs::exists(p)) {
      add(p);
    } else {
      throw HopError(ErrorCode::IoError, fmt::format("no such file: {}", in));
    }
  }
  return out;
}

// Stdlib sources first so that user files can use its effects and handlers.
std::vector<std::string> program_paths(const CliConfig& cfg) {
  std::vector<std::string> inputs;
  if (!cfg.no_stdlib) inputs = stdlib_sources(cfg.stdlib_dir);
  inputs.insert(inputs.end(), cfg.paths.begin(), cfg.paths.end());
  return expand_paths(inputs);
}

std::string truncate(std::string s) {
  if (s.size() > 200) s = s.substr(0, 197) + "...";
  return s;
}

bool shown(TraceFilter f, Rule r) {
  if (f == TraceFilter::All) return true;
  if (f == TraceFilter::Handlers) return r == Rule::Handle || r == Rule::Return;
  return false;
}

std::string_view outcome_name(EvalResult::Outcome o) {
  switch (o) {
    case EvalResult::Outcome::Value: return "value";
    case EvalResult::Outcome::Stuck: return "stuck";
    case EvalResult::Outcome::FuelExhausted: return "fuel_exhausted";
  }
  return "?";
}

int exit_code(const EvalResult& r) {
  switch (r.outcome) {
    case EvalResult::Outcome::Value: return kExitOk;
    case EvalResult::Outcome::Stuck: return kExitStuck;
    case EvalResult::Outcome::FuelExhausted: return kExitFuel;
  }
  return kExitFailed;
}

int cmd_check(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> paths = program_paths(cfg);
  Program program;
  try {
    program = load_program(paths);
  } catch (const HopError& e) {
    if (e.code() == ErrorCode::IoError) throw;
    err << diagnostic_for(e, paths) << "\n";
    return kExitFailed;
  }
  ProgramTypes types = check_program(program, CheckOptions{cfg.order});

  // Report on the definitions of the files named on the command line.
  std::set<std::string> user_files;
  for (const std::string& p : expand_paths(cfg.paths)) user_files.insert(fs::weakly_canonical(p).string());
  std::vector<const Definition*> defs;
  for (const Definition& d : program.definitions) {
    if (d.loc.file < 0) continue;
    if (user_files.count(fs::weakly_canonical(program.files[static_cast<std::size_t>(d.loc.file)]).string())) {
      defs.push_back(&d);
    }
  }

  if (cfg.json) {
    ordered_json j;
    j["schema"] = 1;
    j["ok"] = types.ok();
    ordered_json errors = ordered_json::array();
    for (const Diagnostic& d : types.errors) {
      errors.push_back({{"code", std::string(error_code_name(d.code))},
                        {"message", d.message},
                        {"file", d.file},
                        {"line", d.loc.line},
                        {"col", d.loc.col},
                        {"definition", d.definition}});
    }
    j["errors"] = errors;
    ordered_json schemes = ordered_json::object();
    for (const Definition* d : defs) {
      auto it = types.schemes.find(d->name);
      if (it != types.schemes.end()) schemes[d->name] = to_string(it->second);
    }
    j["definitions"] = schemes;
    out << j.dump(2) << "\n";
    return types.ok() ? kExitOk : kExitFailed;
  }

  for (const Diagnostic& d : types.errors) err << format_diagnostic(d) << "\n";
  if (!types.ok()) return kExitFailed;
  if (defs.empty()) {
    out << "ok: no definitions\n";
    return kExitOk;
  }
  for (const Definition* d : defs) {
    auto it = types.schemes.find(d->name);
    if (it != types.schemes.end()) out << d->name << " : " << to_string(it->second) << "\n";
  }
  out << fmt::format("ok: {} definitions\n", defs.size());
  return kExitOk;
}

int cmd_run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> paths = program_paths(cfg);
  Program program;
  try {
    program = load_program(paths);
  } catch (const HopError& e) {
    if (e.code() == ErrorCode::IoError) throw;
    err << diagnostic_for(e, paths) << "\n";
    return kExitFailed;
  }

  ExprPtr target;
  if (!cfg.entry.empty()) {
    if (!program.definition(cfg.entry)) {
      throw HopError(ErrorCode::UnknownEntry, fmt::format("no definition named {}", cfg.entry));
    }
    target = mk_enact(mk_nameref(cfg.entry));
  } else if (program.main) {
    target = *program.main;
  } else {
    throw HopError(ErrorCode::UnknownEntry, "no main expression; pass --entry");
  }

  if (cfg.typecheck) {
    ProgramTypes types = check_program(program, CheckOptions{cfg.order});
    for (const Diagnostic& d : types.errors) err << format_diagnostic(d) << "\n";
    if (!types.ok()) return kExitFailed;
    try {
      check_toplevel(program_env(program, types), target, CheckOptions{cfg.order});
    } catch (const HopError& e) {
      err << diagnostic_for(e, program.files) << "\n";
      return kExitFailed;
    }
  }

  EvalOptions opts;
  opts.fuel = cfg.fuel;
  opts.order = cfg.order;
  opts.record_trace = cfg.json_trace;
  Machine* machine = nullptr;
  if (cfg.trace != TraceFilter::None) {
    opts.on_step = [&](const TraceEntry& t) {
      if (!shown(cfg.trace, t.rule)) return;
      // Trace lines go to stderr when stdout carries JSON.
      std::ostream& sink = cfg.json || cfg.json_trace ? err : out;
      sink << fmt::format("#{} [{}] {}\n", t.index, rule_name(t.rule),
                          truncate(pretty(t.expr, machine->print_options())));
    };
  }
  Machine m(program, opts);
  machine = &m;
  EvalResult r = m.evaluate(target);
  const PrintOptions& po = m.print_options();

  if (cfg.json || cfg.json_trace) {
    ordered_json j;
    j["schema"] = 1;
    j["outcome"] = std::string(outcome_name(r.outcome));
    j["value"] = r.value ? ordered_json(pretty(*r.value, po)) : ordered_json(nullptr);
    j["steps"] = r.steps;
    if (r.stuck) j["stuck"] = {{"reason", std::string(stuck_reason_name(r.stuck->reason))}, {"message", r.stuck->message}};
    if (cfg.json_trace) {
      ordered_json steps = ordered_json::array();
      for (const TraceEntry& t : r.trace) {
        steps.push_back({{"index", t.index}, {"rule", std::string(rule_name(t.rule))}, {"expr", pretty(t.expr, po)}});
      }
      j["trace"] = steps;
    }
    out << j.dump(2) << "\n";
    return exit_code(r);
  }

  switch (r.outcome) {
    case EvalResult::Outcome::Value:
      out << pretty(*r.value, po) << "\n";
      break;
    case EvalResult::Outcome::Stuck:
      err << "stuck: " << (r.stuck ? r.stuck->message : "no rule applies") << "\n";
      break;
    case EvalResult::Outcome::FuelExhausted:
      err << fmt::format("fuel exhausted after {} steps\n", r.steps);
      break;
  }
  return exit_code(r);
}

int cmd_soc(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  Stdlib lib = load_stdlib(cfg.stdlib_dir);
  SweepSpec spec = default_sweep(lib);
  bool full = true;
  if (!cfg.pairs.empty()) {
    full = false;
    spec.pairs.clear();
    for (const std::string& p : cfg.pairs) {
      auto colon = p.find(':');
      if (colon == std::string::npos) throw HopError(ErrorCode::UnknownEntry, fmt::format("bad pair '{}', want h1:h2", p));
      spec.pairs.emplace_back(p.substr(0, colon), p.substr(colon + 1));
    }
  }
  if (!cfg.programs.empty()) {
    full = false;
    spec.programs = cfg.programs;
    for (const std::string& p : spec.programs) {
      if (!lib.program.definition(p)) throw HopError(ErrorCode::UnknownEntry, fmt::format("no program named {}", p));
    }
  }
  if (cfg.no_context || !cfg.contexts.empty()) {
    full = false;
    spec.contexts = {{}};
    for (const std::string& c : cfg.contexts) spec.contexts.push_back({c});
  }
  spec.fuel = cfg.fuel;

  std::vector<SocReport> reports = soc_sweep(lib, spec);
  std::string report = report_json(reports);
  {
    std::ofstream f(cfg.report_path);
    if (!f) throw HopError(ErrorCode::IoError, fmt::format("cannot write {}", cfg.report_path));
    f << report;
  }
  if (cfg.json) {
    out << report;
  } else {
    out << report_table(reports);
    std::size_t violations = std::count_if(reports.begin(), reports.end(),
                                           [](const SocReport& r) { return r.verdict == Verdict::Violation; });
    out << fmt::format("{} tuples, {} violations\n", reports.size(), violations);
  }

  int code = kExitOk;
  if (cfg.lemma_samples > 0) {
    for (const HandlerEntry& h : lib.handlers) {
      ReturnLemmaResult r = check_return_lemma(lib, h, cfg.lemma_samples, cfg.seed);
      if (r.failures == 0) continue;
      err << fmt::format("return lemma fails for {} ({} of {}): {}\n", h.name, r.failures, r.samples, r.counterexample);
      code = kExitFailed;
    }
  }

  std::string exp_path = cfg.expectations.empty() ? (fs::path(lib.dir) / "soc_expectations.json").string()
                                                  : cfg.expectations;
  std::vector<ExpectationDiff> diffs = compare_expectations(reports, load_expectations(exp_path), full);
  for (const ExpectationDiff& d : diffs) {
    err << fmt::format("mismatch {}: expected {}, got {}\n", d.key,
                       d.expected ? verdict_name(*d.expected) : "nothing",
                       d.actual ? verdict_name(*d.actual) : "nothing");
  }
  if (!diffs.empty()) code = kExitFailed;
  return code;
}

// Interactive loop over a growing program.
class Repl {
 public:
  Repl(const CliConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {
    program_ = load_program(program_paths(cfg));
    program_.main.reset();
    types_ = check_program(program_, CheckOptions{cfg.order});
    for (const Diagnostic& d : types_.errors) err_ << format_diagnostic(d) << "\n";
  }

  void run(std::istream& in) {
    std::string line;
    while (true) {
      out_ << "hop> " << std::flush;
      if (!std::getline(in, line)) break;
      if (!handle(line)) break;
    }
    out_ << "\n";
  }

 private:
  // False to leave the loop.
  bool handle(const std::string& raw) {
    std::string line = raw;
    line.erase(0, line.find_first_not_of(" \t"));
    if (line.empty() || line.rfind("--", 0) == 0) return true;
    try {
      if (line == ":quit" || line == ":q") return false;
      if (line == ":help") {
        out_ << ":t <expr>      type of an expression\n"
                ":trace <expr>  evaluate and print the handler steps\n"
                ":quit          leave\n"
                "<name> = <expr> adds a definition; anything else is evaluated\n";
      } else if (line.rfind(":t ", 0) == 0 || line.rfind(":type ", 0) == 0) {
        show_type(line.substr(line.find(' ') + 1));
      } else if (line.rfind(":trace ", 0) == 0) {
        evaluate(line.substr(7), true);
      } else if (line[0] == ':') {
        err_ << "unknown command " << line << "\n";
      } else if (!define(line)) {
        evaluate(line, false);
      }
    } catch (const HopError& e) {
      err_ << diagnostic_for(e, program_.files) << "\n";
    }
    return true;
  }

  TypeEnv env() const { return program_env(program_, types_); }

  void show_type(const std::string& text) {
    ExprPtr e = parse_expr(text, program_);
    TopLevelType t = check_toplevel(env(), e, CheckOptions{cfg_.order});
    out_ << to_string(canonicalize(generalize(env(), t.type, t.annotation))) << "\n";
  }

  // Adds definitions; false if the line is an expression.
  bool define(const std::string& text) {
    Program next = program_;
    try {
      parse_into(next, text, "<repl>");
    } catch (const HopError&) {
      return false;
    }
    if (next.main) return false;
    ProgramTypes types = check_program(next, CheckOptions{cfg_.order});
    if (!types.ok()) {
      for (const Diagnostic& d : types.errors) err_ << format_diagnostic(d) << "\n";
      return true;
    }
    for (const Definition& d : next.definitions) {
      if (!program_.definition(d.name)) out_ << d.name << " : " << to_string(types.schemes.at(d.name)) << "\n";
    }
    program_ = std::move(next);
    types_ = std::move(types);
    return true;
  }

  void evaluate(const std::string& text, bool traced) {
    ExprPtr e = parse_expr(text, program_);
    TopLevelType t = check_toplevel(env(), e, CheckOptions{cfg_.order});
    EvalOptions opts;
    opts.fuel = cfg_.fuel;
    opts.order = cfg_.order;
    Machine* machine = nullptr;
    if (traced) {
      opts.on_step = [&](const TraceEntry& s) {
        if (!shown(TraceFilter::Handlers, s.rule)) return;
        out_ << fmt::format("#{} [{}] {}\n", s.index, rule_name(s.rule),
                            truncate(pretty(s.expr, machine->print_options())));
      };
    }
    Machine m(program_, opts);
    machine = &m;
    EvalResult r = m.evaluate(e);
    if (r.value) {
      out_ << pretty(*r.value, m.print_options()) << " : " << to_string(t.type) << " @ " << to_string(t.annotation)
           << "\n";
    } else if (r.stuck) {
      err_ << "stuck: " << r.stuck->message << "\n";
    } else {
      err_ << fmt::format("fuel exhausted after {} steps\n", r.steps);
    }
  }

  const CliConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  Program program_;
  ProgramTypes types_;
};

void add_common(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--stdlib", cfg.stdlib_dir, "Standard library directory");
  cmd->add_option("--fuel", cfg.fuel, "Step budget (default 1000000 or $HOP_FUEL)")->check(CLI::PositiveNumber);
  cmd->add_option("--cont-order", cfg.order, "Continuation argument order")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, ContinuationOrder>{{"paramFirst", ContinuationOrder::ParamFirst},
                                                   {"suspensionFirst", ContinuationOrder::SuspensionFirst}}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  cfg.fuel = default_fuel();
  cfg.stdlib_dir = default_stdlib_dir();

  CLI::App app{"Interpreter, typechecker and handler-ordering checker for hop programs", "hop"};
  app.require_subcommand(1);

  CLI::App* check = app.add_subcommand("check", "Typecheck files or directories");
  check->add_option("paths", cfg.paths, "Source files or directories")->required();
  check->add_flag("--json", cfg.json, "Machine-readable diagnostics");
  check->add_flag("--no-stdlib", cfg.no_stdlib, "Do not load the standard library first");
  add_common(check, cfg);

  const std::map<std::string, TraceFilter> filters{
      {"all", TraceFilter::All}, {"handlers", TraceFilter::Handlers}, {"none", TraceFilter::None}};
  auto add_run = [&](CLI::App* cmd) {
    cmd->add_option("paths", cfg.paths, "Source files");
    cmd->add_option("--entry", cfg.entry, "Definition to enact instead of the main expression");
    cmd->add_option("--trace", cfg.trace, "Steps to print: all, handlers or none")
        ->transform(CLI::CheckedTransformer(filters));
    cmd->add_flag("--json", cfg.json, "Print the outcome as JSON");
    cmd->add_flag("--json-trace", cfg.json_trace, "Print the outcome and every step as JSON");
    cmd->add_flag("--check", cfg.typecheck, "Typecheck before running");
    cmd->add_flag("--no-stdlib", cfg.no_stdlib, "Do not load the standard library first");
    add_common(cmd, cfg);
  };
  CLI::App* run = app.add_subcommand("run", "Evaluate a program");
  add_run(run);
  CLI::App* trace = app.add_subcommand("trace", "Evaluate a program, printing every step");
  add_run(trace);

  CLI::App* soc = app.add_subcommand("soc", "Check that handler pairs commute on the corpus");
  soc->add_option("--pairs", cfg.pairs, "Handler pairs h1:h2 (default: the built-in sweep)");
  soc->add_option("--program", cfg.programs, "Programs to run (default: all corpus programs)");
  soc->add_option("--context", cfg.contexts, "Extra outer handler to try besides none");
  soc->add_flag("--no-context", cfg.no_context, "Only run without an outer handler");
  soc->add_option("--out", cfg.report_path, "Where to write the JSON report");
  soc->add_option("--expectations", cfg.expectations, "Expected verdicts (default: the stdlib's)");
  soc->add_option("--return-lemma", cfg.lemma_samples, "Also check the return lemma with N values per handler");
  soc->add_option("--seed", cfg.seed, "Seed for the return lemma values");
  soc->add_flag("--json", cfg.json, "Print the JSON report instead of a table");
  add_common(soc, cfg);

  CLI::App* repl = app.add_subcommand("repl", "Interactive session");
  repl->add_option("paths", cfg.paths, "Files to load");
  repl->add_flag("--no-stdlib", cfg.no_stdlib, "Do not load the standard library first");
  add_common(repl, cfg);

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitIo;
  }
  if (trace->parsed() && cfg.trace == TraceFilter::None && !trace->count("--trace")) cfg.trace = TraceFilter::All;

  try {
    if (check->parsed()) return cmd_check(cfg, out, err);
    if (run->parsed() || trace->parsed()) return cmd_run(cfg, out, err);
    if (soc->parsed()) return cmd_soc(cfg, out, err);
    if (repl->parsed()) {
      Repl session(cfg, out, err);
      session.run(in);
      return kExitOk;
    }
  } catch (const HopError& e) {
    err << "error[" << error_code_name(e.code()) << "]: " << e.message() << "\n";
    return e.code() == ErrorCode::IoError ? kExitIo : kExitFailed;
  } catch (const fs::filesystem_error& e) {
    err << "error[IoError]: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitFailed;
}

}  // namespace hop
