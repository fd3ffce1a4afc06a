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

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "hop/parser.hpp"
#include "syntax/lexer.hpp"

namespace hop {

namespace {

struct TypeScope {
  // Set when parsing an operation signature: `susp T` then abbreviates
  // susp[<label|r+rl> * <>] T.
  const Label* op_label = nullptr;
  std::vector<Name> type_vars;
  std::vector<Name> row_vars;

  void note(std::vector<Name>& v, const Name& n) {
    if (std::find(v.begin(), v.end(), n) == v.end()) v.push_back(n);
  }
};

struct PendingSignature {
  Scheme scheme;
  SourceLoc loc;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, Program& prog, int file)
      : toks_(std::move(toks)), prog_(prog), file_(file) {}

  void program();
  ExprPtr single_expr();
  Scheme single_scheme();

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t k) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool at_boundary(std::size_t k = 0) const {
    const Token& t = peek(k);
    return t.kind == Token::Kind::End || (layout_ && t.loc.col == 1 && pos_ + k != item_start_);
  }
  bool at_sym(std::string_view s) const { return !at_boundary() && cur().is_sym(s); }
  bool at_word(std::string_view s) const { return !at_boundary() && cur().is_word(s); }
  bool accept_sym(std::string_view s) {
    if (!at_sym(s)) return false;
    ++pos_;
    return true;
  }

  HopError error(const std::string& expected) const {
    const Token& t = cur();
    std::string found = at_boundary() && t.kind != Token::Kind::End ? "start of a new top-level item"
                                                                    : describe(t);
    return HopError(ErrorCode::SyntaxError, fmt::format("expected {}, found {}", expected, found),
                    t.loc);
  }
  void expect_sym(std::string_view s) {
    if (!accept_sym(s)) throw error(fmt::format("'{}'", s));
  }
  Token expect_lower(const char* what) {
    if (at_boundary() || cur().kind != Token::Kind::Lower || is_keyword(cur().text)) throw error(what);
    return take();
  }
  Name binder(const char* what) {
    if (accept_sym("_")) return "_";
    return expect_lower(what).text;
  }

  // Items.
  void item();
  bool definition_ahead() const;
  void definition();
  void effect_decl();
  void type_alias();
  void add_definition(Definition d);

  // Expressions.
  ExprPtr expr();
  ExprPtr infix(int min_prec);
  ExprPtr application();
  ExprPtr postfix();
  ExprPtr atom();
  bool atom_ahead() const;
  ExprPtr let_expr();
  ExprPtr match_expr();
  ExprPtr handle_expr();
  ExprPtr lambda_expr();
  bool open_form_ahead() const {
    return at_word("let") || at_word("match") || at_word("handle") || at_sym("\\");
  }

  // Patterns.
  Pattern pattern();
  Pattern pattern_app();
  Pattern pattern_atom();
  bool pattern_atom_ahead() const;

  // Types.
  Scheme scheme(const Label* op_label = nullptr);
  TypePtr type(TypeScope& sc);
  TypePtr btype(TypeScope& sc);
  TypePtr atype(TypeScope& sc);
  bool atype_ahead() const;
  Row row(TypeScope& sc);
  TypePtr type_constructor(const Token& t);

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Program& prog_;
  int file_;
  bool layout_ = false;
  std::size_t item_start_ = 0;
  std::map<Name, PendingSignature> pending_;
};

// ---------------------------------------------------------------------------
// Items

void Parser::program() {
  layout_ = true;
  while (cur().kind != Token::Kind::End) {
    item_start_ = pos_;
    if (cur().loc.col != 1) {
      throw HopError(ErrorCode::SyntaxError, "top-level items must start in column 1", cur().loc);
    }
    item();
    if (!at_boundary()) throw error("end of item");
  }
  for (const auto& [name, sig] : pending_) {
    throw HopError(ErrorCode::SyntaxError,
                   fmt::format("type signature for {} has no accompanying definition", name), sig.loc);
  }
}

void Parser::item() {
  if (at_word("effect")) return effect_decl();
  if (at_word("type")) return type_alias();
  if (definition_ahead()) return definition();
  SourceLoc loc = cur().loc;
  ExprPtr e = expr();
  if (prog_.main) throw HopError(ErrorCode::DuplicateDefinition, "more than one main expression", loc);
  prog_.main = e;
}

bool Parser::definition_ahead() const {
  if (cur().kind != Token::Kind::Lower || is_keyword(cur().text)) return false;
  std::size_t k = 1;
  if (peek(k).is_sym(":") && !at_boundary(k)) return true;
  while (!at_boundary(k) && ((peek(k).kind == Token::Kind::Lower && !is_keyword(peek(k).text)) ||
                             peek(k).is_sym("_"))) {
    ++k;
  }
  return !at_boundary(k) && peek(k).is_sym("=");
}

void Parser::add_definition(Definition d) {
  if (prog_.definition(d.name)) {
    throw HopError(ErrorCode::DuplicateDefinition, fmt::format("{} is defined more than once", d.name),
                   d.loc);
  }
  prog_.definitions.push_back(std::move(d));
}

void Parser::definition() {
  Token name = take();
  Definition def{name.text, std::nullopt, nullptr, name.loc};
  if (accept_sym(":")) {
    Scheme s = scheme();
    if (!accept_sym("=")) {
      if (pending_.count(name.text) || prog_.definition(name.text)) {
        throw HopError(ErrorCode::DuplicateDefinition,
                       fmt::format("duplicate type signature for {}", name.text), name.loc);
      }
      pending_.emplace(name.text, PendingSignature{std::move(s), name.loc});
      return;
    }
    def.annotation = std::move(s);
    def.body = expr();
    return add_definition(std::move(def));
  }
  std::vector<std::pair<Name, SourceLoc>> params;
  while (!at_sym("=")) {
    SourceLoc loc = cur().loc;
    params.emplace_back(binder("parameter name"), loc);
  }
  expect_sym("=");
  ExprPtr body = expr();
  for (auto it = params.rbegin(); it != params.rend(); ++it) {
    body = mk_val(v_lam(it->first, body), it->second);
  }
  def.body = body;
  if (auto it = pending_.find(name.text); it != pending_.end()) {
    def.annotation = it->second.scheme;
    pending_.erase(it);
  }
  add_definition(std::move(def));
}

void Parser::type_alias() {
  take();
  if (at_boundary() || cur().kind != Token::Kind::Upper) throw error("type name");
  Token name = take();
  expect_sym("=");
  TypeScope sc;
  TypePtr t = type(sc);
  if (!sc.type_vars.empty() || !sc.row_vars.empty()) {
    throw HopError(ErrorCode::UnknownTypeVariable, "type aliases may not mention type variables",
                   name.loc);
  }
  if (prog_.type_aliases.count(name.text) || builtin_type_constructors().count(name.text)) {
    throw HopError(ErrorCode::DuplicateDefinition, fmt::format("type {} is already defined", name.text),
                   name.loc);
  }
  prog_.type_aliases.emplace(name.text, t);
}

void Parser::effect_decl() {
  take();
  if (at_boundary() || cur().kind != Token::Kind::Upper) throw error("effect label");
  Token label = take();
  if (prog_.effect(label.text)) {
    throw HopError(ErrorCode::DuplicateDefinition,
                   fmt::format("effect {} is declared more than once", label.text), label.loc);
  }
  EffectDecl decl{label.text, {}, label.loc};
  expect_sym("{");
  do {
    Token op = expect_lower("operation name");
    if (decl.find(op.text)) {
      throw HopError(ErrorCode::DuplicateDefinition,
                     fmt::format("operation {} is declared twice in {}", op.text, label.text), op.loc);
    }
    std::optional<std::size_t> arity;
    if (accept_sym("/")) {
      if (at_boundary() || cur().kind != Token::Kind::Int) throw error("operation arity");
      arity = static_cast<std::size_t>(take().int_value);
    }
    TypePtr declared;
    std::set<Name> explicit_rows;
    if (accept_sym(":")) {
      Scheme s = scheme(&decl.label);
      declared = s.body;
    } else {
      if (!arity) throw error("':' or '/' after operation name");
      declared = t_var("b");
      for (std::size_t i = *arity; i > 0; --i) declared = t_arrow(t_var(fmt::format("a{}", i)), declared);
    }
    std::vector<TypePtr> args;
    TypePtr t = declared;
    while (arity ? args.size() < *arity : t->is<Type::Arrow>()) {
      if (!t->is<Type::Arrow>()) {
        throw HopError(ErrorCode::ArityMismatch,
                       fmt::format("operation {} is declared with arity {} but its type has {} arguments",
                                   op.text, *arity, args.size()),
                       op.loc);
      }
      args.push_back(t->as<Type::Arrow>().from);
      t = t->as<Type::Arrow>().to;
    }
    TypePtr body = t_susp(Row{{decl.label}, {"r", "rl"}}, Row::empty(), t);
    for (auto it = args.rbegin(); it != args.rend(); ++it) body = t_arrow(*it, body);
    FreeVars fv = free_type_vars(body);
    Scheme sch{{fv.types.begin(), fv.types.end()}, {"r", "rl"}, body};
    for (const Name& r : fv.rows) {
      if (r != "r" && r != "rl") sch.row_vars.push_back(r);
    }
    decl.ops.push_back(OpDecl{op.text, args.size(), std::move(sch), op.loc});
  } while (accept_sym(","));
  expect_sym("}");
  prog_.effects.push_back(std::move(decl));
}

// ---------------------------------------------------------------------------
// Expressions

ExprPtr Parser::expr() {
  if (at_word("let")) return let_expr();
  if (at_word("match")) return match_expr();
  if (at_word("handle")) return handle_expr();
  if (at_sym("\\")) return lambda_expr();
  return infix(1);
}

namespace {

struct InfixOp {
  int prec;
  bool right;
};

std::optional<InfixOp> infix_op(const Token& t) {
  if (t.kind != Token::Kind::Sym) return std::nullopt;
  if (t.text == "==") return InfixOp{1, false};
  if (t.text == "::" || t.text == "++") return InfixOp{2, true};
  if (t.text == "+") return InfixOp{3, false};
  return std::nullopt;
}

ExprPtr infix_head(const std::string& op, SourceLoc loc) {
  if (op == "::") return mk_val(v_data("Cons"), loc);
  return mk_val(v_const(op), loc);
}

}  // namespace

ExprPtr Parser::infix(int min_prec) {
  ExprPtr lhs = application();
  while (!at_boundary()) {
    auto op = infix_op(cur());
    if (!op || op->prec < min_prec) break;
    Token t = take();
    ExprPtr rhs;
    if (open_form_ahead()) {
      rhs = expr();
    } else {
      rhs = infix(op->right ? op->prec : op->prec + 1);
    }
    lhs = mk_app(mk_app(infix_head(t.text, t.loc), lhs, t.loc), rhs, t.loc);
    if (op->prec == 1 && !at_boundary() && infix_op(cur()) && infix_op(cur())->prec == 1) {
      throw error("operand (== is not associative)");
    }
  }
  return lhs;
}

bool Parser::atom_ahead() const {
  if (at_boundary()) return false;
  const Token& t = cur();
  switch (t.kind) {
    case Token::Kind::Lower: return !is_keyword(t.text);
    case Token::Kind::Upper:
    case Token::Kind::Qualified:
    case Token::Kind::Int:
    case Token::Kind::Str: return true;
    case Token::Kind::Sym: return t.text == "(" || t.text == "{" || t.text == "[";
    case Token::Kind::End: return false;
  }
  return false;
}

ExprPtr Parser::application() {
  if (!atom_ahead()) throw error("expression");
  ExprPtr f = postfix();
  while (atom_ahead()) {
    SourceLoc loc = cur().loc;
    f = mk_app(f, postfix(), loc);
  }
  return f;
}

ExprPtr Parser::postfix() {
  ExprPtr a = atom();
  while (at_sym("!")) {
    SourceLoc loc = take().loc;
    a = mk_enact(a, loc);
  }
  return a;
}

ExprPtr Parser::atom() {
  Token t = take();
  switch (t.kind) {
    case Token::Kind::Lower:
    case Token::Kind::Qualified: return mk_val(v_var(t.text), t.loc);
    case Token::Kind::Upper: {
      if (!constructor_table().count(t.text)) {
        throw HopError(ErrorCode::UnknownVariable, fmt::format("unknown constructor {}", t.text), t.loc);
      }
      return mk_val(v_data(t.text), t.loc);
    }
    case Token::Kind::Int: return mk_val(v_int(t.int_value), t.loc);
    case Token::Kind::Str: return mk_val(v_str(t.text), t.loc);
    default: break;
  }
  if (t.is_sym("(")) {
    if (accept_sym(")")) return mk_val(v_unit(), t.loc);
    if (auto op = infix_op(cur()); op && peek(1).is_sym(")")) {
      Token o = take();
      take();
      return infix_head(o.text, o.loc);
    }
    ExprPtr e = expr();
    if (accept_sym(",")) {
      ExprPtr second = expr();
      expect_sym(")");
      return mk_app(mk_app(mk_val(v_data("Pair"), t.loc), e, t.loc), second, t.loc);
    }
    expect_sym(")");
    return e;
  }
  if (t.is_sym("{")) {
    ExprPtr body = expr();
    expect_sym("}");
    return mk_val(v_suspend(body), t.loc);
  }
  if (t.is_sym("[")) {
    std::vector<ExprPtr> items;
    if (!at_sym("]")) {
      do {
        items.push_back(expr());
      } while (accept_sym(","));
    }
    expect_sym("]");
    ExprPtr out = mk_val(v_data("Nil"), t.loc);
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
      out = mk_app(mk_app(mk_val(v_data("Cons"), t.loc), *it, t.loc), out, t.loc);
    }
    return out;
  }
  --pos_;
  throw error("expression");
}

ExprPtr Parser::let_expr() {
  SourceLoc loc = take().loc;
  Pattern p = pattern();
  expect_sym("=");
  ExprPtr bound = expr();
  if (!at_word("in")) throw error("'in'");
  take();
  ExprPtr body = expr();
  if (auto v = std::get_if<Pattern::Var>(&p.node)) return mk_let(v->name, bound, body, loc);
  if (std::holds_alternative<Pattern::Wildcard>(p.node)) return mk_let("_", bound, body, loc);
  return mk_match(bound, {MatchArm{std::move(p), body}}, loc);
}

ExprPtr Parser::match_expr() {
  SourceLoc loc = take().loc;
  ExprPtr scrutinee = expr();
  std::vector<MatchArm> arms;
  while (accept_sym("|")) {
    Pattern p = pattern();
    expect_sym("->");
    arms.push_back(MatchArm{std::move(p), expr()});
  }
  if (arms.empty()) throw error("'|' starting a match arm");
  return mk_match(scrutinee, std::move(arms), loc);
}

ExprPtr Parser::lambda_expr() {
  SourceLoc loc = take().loc;
  std::vector<Name> binders;
  do {
    binders.push_back(binder("lambda binder"));
  } while (!at_sym(".") && !at_sym("->"));
  take();
  ExprPtr body = expr();
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = mk_val(v_lam(*it, body), loc);
  return body;
}

ExprPtr Parser::handle_expr() {
  SourceLoc loc = take().loc;
  expect_sym("^");
  if (at_boundary() || cur().kind != Token::Kind::Upper) throw error("effect label after 'handle^'");
  auto handler = std::make_shared<Handler>();
  handler->label = take().text;
  handler->loc = loc;
  expect_sym("{");
  bool have_return = false;
  do {
    SourceLoc cl = cur().loc;
    bool is_return = at_word("return");
    Name op;
    if (is_return) {
      take();
    } else {
      op = expect_lower("operation clause or 'return'").text;
    }
    std::vector<Name> binders;
    while (!at_sym("|->") && !at_sym("->")) binders.push_back(binder("clause binder or '↦'"));
    take();
    ExprPtr body = expr();
    if (is_return) {
      if (have_return) throw HopError(ErrorCode::SyntaxError, "handler has two return clauses", cl);
      if (binders.empty() || binders.size() > 2) {
        throw HopError(ErrorCode::SyntaxError, "return clause takes a value binder and an optional parameter binder", cl);
      }
      have_return = true;
      handler->ret = ReturnClause{binders[0], binders.size() == 2 ? binders[1] : "_", body, cl};
    } else {
      // Binders are split into arguments, parameter and continuation during
      // resolution, once the operation's arity is known.
      handler->ops.push_back(OpClause{op, std::move(binders), "", "", body, cl});
    }
  } while (accept_sym(","));
  expect_sym("}");
  if (!have_return) throw HopError(ErrorCode::SyntaxError, "handler has no return clause", loc);
  if (!atom_ahead()) throw error("handler parameter or computation");
  ExprPtr first = postfix();
  ExprPtr param, body;
  if (atom_ahead()) {
    param = first;
    body = postfix();
  } else {
    param = mk_val(v_unit(), first->loc);
    body = first;
  }
  return mk_handle(std::move(handler), param, body, loc);
}

// ---------------------------------------------------------------------------
// Patterns

bool Parser::pattern_atom_ahead() const {
  if (at_boundary()) return false;
  const Token& t = cur();
  if (t.kind == Token::Kind::Lower) return !is_keyword(t.text);
  if (t.kind == Token::Kind::Upper || t.kind == Token::Kind::Int || t.kind == Token::Kind::Str) return true;
  return t.is_sym("_") || t.is_sym("(") || t.is_sym("[");
}

Pattern Parser::pattern() {
  Pattern p = pattern_app();
  if (accept_sym("::")) return Pattern{Pattern::Ctor{"Cons", {std::move(p), pattern()}}};
  return p;
}

Pattern Parser::pattern_app() {
  if (!at_boundary() && cur().kind == Token::Kind::Upper) {
    Token t = take();
    auto it = constructor_table().find(t.text);
    if (it == constructor_table().end()) {
      throw HopError(ErrorCode::UnknownVariable, fmt::format("unknown constructor {}", t.text), t.loc);
    }
    std::vector<Pattern> args;
    while (args.size() < it->second.arity && pattern_atom_ahead()) args.push_back(pattern_atom());
    if (args.size() != it->second.arity) {
      throw HopError(ErrorCode::ArityMismatch,
                     fmt::format("constructor {} expects {} arguments in a pattern", t.text, it->second.arity),
                     t.loc);
    }
    return Pattern{Pattern::Ctor{t.text, std::move(args)}};
  }
  return pattern_atom();
}

Pattern Parser::pattern_atom() {
  if (!pattern_atom_ahead()) throw error("pattern");
  Token t = take();
  if (t.is_sym("_")) return Pattern{Pattern::Wildcard{}};
  if (t.kind == Token::Kind::Lower) return Pattern{Pattern::Var{t.text}};
  if (t.kind == Token::Kind::Int) return Pattern{Pattern::IntLit{t.int_value}};
  if (t.kind == Token::Kind::Str) return Pattern{Pattern::StrLit{t.text}};
  if (t.kind == Token::Kind::Upper) {
    auto it = constructor_table().find(t.text);
    if (it == constructor_table().end() || it->second.arity != 0) {
      throw HopError(ErrorCode::ArityMismatch,
                     fmt::format("constructor {} needs parentheses and arguments here", t.text), t.loc);
    }
    return Pattern{Pattern::Ctor{t.text, {}}};
  }
  if (t.is_sym("(")) {
    if (accept_sym(")")) return Pattern{Pattern::Ctor{"Unit", {}}};
    Pattern p = pattern();
    if (accept_sym(",")) {
      Pattern q = pattern();
      expect_sym(")");
      return Pattern{Pattern::Ctor{"Pair", {std::move(p), std::move(q)}}};
    }
    expect_sym(")");
    return p;
  }
  // '['
  std::vector<Pattern> items;
  if (!at_sym("]")) {
    do {
      items.push_back(pattern());
    } while (accept_sym(","));
  }
  expect_sym("]");
  Pattern out{Pattern::Ctor{"Nil", {}}};
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    out = Pattern{Pattern::Ctor{"Cons", {*it, out}}};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Types

Scheme Parser::scheme(const Label* op_label) {
  TypeScope sc;
  sc.op_label = op_label;
  std::vector<Name> explicit_vars;
  if (at_word("forall")) {
    take();
    while (!at_sym(".")) explicit_vars.push_back(expect_lower("type variable or '.'").text);
    take();
  }
  TypePtr body = type(sc);
  for (const Name& v : sc.type_vars) {
    if (std::find(sc.row_vars.begin(), sc.row_vars.end(), v) != sc.row_vars.end()) {
      throw HopError(ErrorCode::KindMismatch,
                     fmt::format("{} is used both as a type and as an effect row", v), cur().loc);
    }
  }
  Scheme s{sc.type_vars, sc.row_vars, body};
  // Explicitly quantified but unused variables are dropped; kinds come from
  // their use sites.
  return s;
}

bool Parser::atype_ahead() const {
  if (at_boundary()) return false;
  const Token& t = cur();
  if (t.kind == Token::Kind::Lower) return !is_keyword(t.text);
  if (t.kind == Token::Kind::Upper) return true;
  return t.is_sym("(") || t.is_sym("[");
}

TypePtr Parser::type(TypeScope& sc) {
  TypePtr t = btype(sc);
  if (accept_sym("->")) return t_arrow(t, type(sc));
  return t;
}

TypePtr Parser::btype(TypeScope& sc) {
  if (at_word("susp")) {
    take();
    Row imm, lat;
    if (accept_sym("[")) {
      imm = row(sc);
      expect_sym("*");
      lat = row(sc);
      expect_sym("]");
    } else if (sc.op_label) {
      imm = Row{{*sc.op_label}, {"r", "rl"}};
      sc.note(sc.row_vars, "r");
      sc.note(sc.row_vars, "rl");
    } else {
      throw error("'[' after susp");
    }
    return t_susp(imm, lat, atype(sc));
  }
  TypePtr head = atype(sc);
  while (atype_ahead()) head = t_app(head, atype(sc));
  return head;
}

TypePtr Parser::type_constructor(const Token& t) {
  if (auto it = prog_.type_aliases.find(t.text); it != prog_.type_aliases.end()) return it->second;
  if (builtin_type_constructors().count(t.text)) return t_con(t.text);
  throw HopError(ErrorCode::UnknownTypeVariable, fmt::format("unknown type {}", t.text), t.loc);
}

TypePtr Parser::atype(TypeScope& sc) {
  if (!atype_ahead()) throw error("type");
  Token t = take();
  if (t.kind == Token::Kind::Lower) {
    sc.note(sc.type_vars, t.text);
    return t_var(t.text);
  }
  if (t.kind == Token::Kind::Upper) return type_constructor(t);
  if (t.is_sym("(")) {
    if (accept_sym(")")) return t_unit();
    TypePtr a = type(sc);
    if (accept_sym(",")) {
      TypePtr b = type(sc);
      expect_sym(")");
      return t_pair(a, b);
    }
    expect_sym(")");
    return a;
  }
  TypePtr elem = type(sc);
  expect_sym("]");
  return t_list(elem);
}

Row Parser::row(TypeScope& sc) {
  Row r;
  auto tails = [&] {
    do {
      Name v = expect_lower("row variable").text;
      sc.note(sc.row_vars, v);
      r.tails.push_back(v);
    } while (accept_sym("+"));
  };
  if (accept_sym("<>")) return r;
  if (accept_sym("<")) {
    if (accept_sym(">")) return r;
    if (!at_sym("|")) {
      do {
        if (at_boundary() || cur().kind != Token::Kind::Upper) throw error("effect label");
        r.labels.push_back(take().text);
      } while (accept_sym(","));
    }
    if (accept_sym("|")) tails();
    expect_sym(">");
    return r;
  }
  tails();
  return r;
}

ExprPtr Parser::single_expr() {
  ExprPtr e = expr();
  if (cur().kind != Token::Kind::End) throw error("end of input");
  return e;
}

Scheme Parser::single_scheme() {
  Scheme s = scheme();
  if (cur().kind != Token::Kind::End) throw error("end of input");
  return s;
}

int register_file(Program& p, const std::string& filename) {
  p.files.push_back(filename);
  return static_cast<int>(p.files.size() - 1);
}

void parse_raw(Program& program, std::string_view source, const std::string& filename) {
  int file = register_file(program, filename);
  Parser(lex(source, file), program, file).program();
}

}  // namespace

Program parse(std::string_view source, const std::string& filename) {
  Program p;
  parse_into(p, source, filename);
  return p;
}

void parse_into(Program& program, std::string_view source, const std::string& filename) {
  parse_raw(program, source, filename);
  resolve(program);
}

Program load_program(const std::vector<std::string>& paths) {
  Program p;
  for (const std::string& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw HopError(ErrorCode::IoError, fmt::format("cannot read {}", path));
    std::stringstream buf;
    buf << in.rdbuf();
    parse_raw(p, buf.str(), path);
  }
  resolve(p);
  return p;
}

ExprPtr parse_expr(std::string_view source, const Program& context) {
  Program scratch = context;
  int file = register_file(scratch, "<expr>");
  ExprPtr e = Parser(lex(source, file), scratch, file).single_expr();
  return resolve(context, e);
}

Scheme parse_scheme(std::string_view source, const Program& context) {
  Program scratch = context;
  int file = register_file(scratch, "<type>");
  return Parser(lex(source, file), scratch, file).single_scheme();
}

}  // namespace hop
