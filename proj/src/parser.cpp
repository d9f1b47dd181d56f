#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "lexer.hpp"
#include "pcplus/error.hpp"
#include "pcplus/language.hpp"
#include "pcplus/surface.hpp"

namespace pcplus {

using detail::SyntaxError;
using detail::Tok;
using detail::TokenCursor;

namespace surface {

namespace {

Diagnostic parse_error(SourceLocation loc, std::string rule, std::string msg) {
  return {Severity::kError, DiagnosticStage::kParse, loc, std::move(rule), std::move(msg)};
}

// Identifier or number used as a domain value or metavariable value.
std::string take_value(TokenCursor& cur) {
  const auto& t = cur.peek();
  if (t.kind != Tok::kIdent && t.kind != Tok::kNumber)
    throw SyntaxError(t.loc, "expected a value, found " + detail::describe(t));
  return cur.take().text;
}

std::vector<std::string> parse_value_set(TokenCursor& cur) {
  cur.expect(Tok::kLBrace, "'{'");
  std::vector<std::string> values;
  if (!cur.at(Tok::kRBrace)) {
    do values.push_back(take_value(cur));
    while (cur.accept(Tok::kComma));
  }
  cur.expect(Tok::kRBrace, "'}'");
  return values;
}

std::vector<DistributionEntry> parse_distribution(TokenCursor& cur) {
  cur.expect(Tok::kLParen, "'(' opening a distribution");
  std::vector<DistributionEntry> out;
  do {
    DistributionEntry e;
    e.loc = cur.peek().loc;
    e.value = take_value(cur);
    cur.expect(Tok::kColon, "':'");
    auto num = cur.expect(Tok::kNumber, "a probability");
    auto q = parse_rational(num.text);
    if (!q) throw SyntaxError(num.loc, "malformed probability '" + num.text + "'");
    e.probability = *q;
    out.push_back(std::move(e));
  } while (cur.accept(Tok::kComma));
  cur.expect(Tok::kRParen, "')' closing a distribution");
  return out;
}

bool at_terminator(const TokenCursor& cur) { return cur.at(Tok::kDot) || cur.at(Tok::kSemicolon); }

void expect_terminator(TokenCursor& cur) {
  if (!cur.accept(Tok::kDot) && !cur.accept(Tok::kSemicolon))
    throw SyntaxError(cur.peek().loc, "expected '.' ending the statement, found " +
                                          detail::describe(cur.peek()));
}

bool at_declaration(const TokenCursor& cur) {
  return cur.at_word("rigid") || cur.at_word("fluent") || cur.at_word("action") ||
         cur.at_word("context") || cur.at_word("ctx");
}

Declaration parse_declaration(TokenCursor& cur) {
  Declaration d;
  d.loc = cur.peek().loc;
  auto kw = cur.take().text;
  if (kw == "rigid") {
    d.cls = VarClass::kRigid;
  } else if (kw == "fluent") {
    d.cls = VarClass::kSimpleFluent;
    if (cur.accept_word("sdet"))
      d.cls = VarClass::kStaticFluent;
    else
      cur.accept_word("simple");
  } else if (kw == "action") {
    d.cls = VarClass::kAction;
  } else {
    d.cls = VarClass::kContext;
  }
  do d.names.push_back(cur.expect(Tok::kIdent, "a variable name").text);
  while (cur.accept(Tok::kComma));

  if (cur.accept(Tok::kColon)) {
    d.domain = parse_value_set(cur);
  } else if (d.cls == VarClass::kAction) {
    d.domain = {"false", "true"};
  } else {
    throw SyntaxError(cur.peek().loc, "expected ':' and a domain for '" + d.names.front() + "'");
  }
  if (d.cls == VarClass::kContext && cur.accept(Tok::kEq)) d.distribution = parse_distribution(cur);
  expect_terminator(cur);
  return d;
}

Law parse_law(TokenCursor& cur) {
  Law law;
  law.loc = cur.peek().loc;
  if (cur.accept_word("caused")) {
    law.kind = Law::Kind::kCaused;
    law.head = detail::parse_surface_formula(cur);
    if (cur.accept_word("if")) law.condition = detail::parse_surface_formula(cur);
    if (cur.accept_word("after")) law.trigger = detail::parse_surface_formula(cur);
  } else if (cur.accept_word("nonexecutable")) {
    law.kind = Law::Kind::kNonexecutable;
    law.trigger = detail::parse_surface_formula(cur);
  } else if (cur.accept_word("inertial")) {
    law.kind = Law::Kind::kInertial;
    do law.names.push_back(cur.expect(Tok::kIdent, "a fluent name").text);
    while (cur.accept(Tok::kComma));
  } else if (cur.accept_word("context-law")) {
    law.kind = Law::Kind::kContextLaw;
    law.context_var = cur.expect(Tok::kIdent, "a context variable").text;
    cur.expect(Tok::kEq, "'='");
    law.distribution = parse_distribution(cur);
    if (cur.accept_word("after")) law.trigger = detail::parse_surface_formula(cur);
  } else {
    throw SyntaxError(cur.peek().loc, "expected a declaration or law, found " +
                                          detail::describe(cur.peek()));
  }
  expect_terminator(cur);
  return law;
}

Statement parse_statement(TokenCursor& cur);

Forall parse_forall(TokenCursor& cur) {
  Forall fa;
  fa.loc = cur.peek().loc;
  cur.expect_word("forall");
  do {
    Binder b;
    b.meta = cur.expect(Tok::kIdent, "a metavariable").text;
    cur.expect_word("in");
    b.values = parse_value_set(cur);
    if (b.values.empty()) throw SyntaxError(fa.loc, "metavariable '" + b.meta + "' ranges over nothing");
    fa.binders.push_back(std::move(b));
  } while (cur.accept(Tok::kComma));
  if (cur.accept_word("where")) {
    do {
      Guard g;
      g.lhs = take_value(cur);
      if (cur.accept(Tok::kEq))
        g.equal = true;
      else
        cur.expect(Tok::kNeq, "'=' or '!='");
      g.rhs = take_value(cur);
      fa.guards.push_back(std::move(g));
    } while (cur.accept(Tok::kComma));
  }
  if (cur.accept(Tok::kLBrace)) {
    while (!cur.at(Tok::kRBrace)) {
      if (cur.at(Tok::kEnd)) throw SyntaxError(cur.peek().loc, "unterminated forall block");
      fa.body.push_back(parse_statement(cur));
    }
    cur.take();
  } else {
    cur.expect(Tok::kColon, "':' or '{' after forall binders");
    fa.body.push_back(parse_statement(cur));
  }
  return fa;
}

Statement parse_statement(TokenCursor& cur) {
  if (cur.at_word("forall")) return {parse_forall(cur)};
  if (at_declaration(cur) && !cur.at_word("context-law")) return {parse_declaration(cur)};
  return {parse_law(cur)};
}

// Skips to just past the next statement terminator or block end.
void recover(TokenCursor& cur) {
  while (!cur.at(Tok::kEnd)) {
    if (at_terminator(cur)) {
      cur.take();
      return;
    }
    if (cur.at(Tok::kRBrace)) return;
    cur.take();
  }
}

std::string substitute_word(const std::string& s, const Substitution& sub) {
  if (sub.empty()) return s;
  std::string out;
  size_t i = 0;
  while (i < s.size()) {
    unsigned char c = s[i];
    if (std::isalnum(c) || c == '_' || c == '\'') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' ||
                              s[j] == '\''))
        ++j;
      std::string w = s.substr(i, j - i);
      auto it = sub.find(w);
      out += it == sub.end() ? w : it->second;
      i = j;
    } else {
      out += s[i++];
    }
  }
  return out;
}

Formula substitute(const Formula& f, const Substitution& sub) {
  Formula g = f;
  g.name = substitute_word(f.name, sub);
  g.value = substitute_word(f.value, sub);
  for (auto& c : g.children) c = substitute(c, sub);
  return g;
}

std::optional<Formula> substitute(const std::optional<Formula>& f, const Substitution& sub) {
  if (!f) return std::nullopt;
  return substitute(*f, sub);
}

std::vector<DistributionEntry> substitute(std::vector<DistributionEntry> dist, const Substitution& sub) {
  for (auto& e : dist) e.value = substitute_word(e.value, sub);
  return dist;
}

void expand_into(const Statement& stmt, const Substitution& sub,
                 std::vector<std::variant<Declaration, Law>>& out) {
  if (auto* d = std::get_if<Declaration>(&stmt.node)) {
    out.emplace_back(substitute(*d, sub));
  } else if (auto* l = std::get_if<Law>(&stmt.node)) {
    out.emplace_back(substitute(*l, sub));
  } else {
    const auto& fa = std::get<Forall>(stmt.node);
    std::function<void(size_t, Substitution)> bind = [&](size_t k, Substitution cur) {
      if (k == fa.binders.size()) {
        for (const auto& g : fa.guards) {
          bool same = substitute_word(g.lhs, cur) == substitute_word(g.rhs, cur);
          if (same != g.equal) return;
        }
        for (const auto& s : fa.body) expand_into(s, cur, out);
        return;
      }
      for (const auto& v : fa.binders[k].values) {
        Substitution next = cur;
        next[fa.binders[k].meta] = substitute_word(v, cur);
        bind(k + 1, std::move(next));
      }
    };
    bind(0, sub);
  }
}

}  // namespace

File parse_file(std::string_view text, std::vector<Diagnostic>& diagnostics) {
  File file;
  std::vector<detail::Token> tokens;
  try {
    tokens = detail::tokenize(text);
  } catch (const SyntaxError& e) {
    diagnostics.push_back(parse_error(e.loc, "syntax", e.what()));
    return file;
  }
  TokenCursor cur(std::move(tokens));
  while (!cur.at(Tok::kEnd)) {
    try {
      if (cur.at_word("initially") || cur.at_word("dynamics")) {
        Section section = cur.take().text == "initially" ? Section::kInitially : Section::kDynamics;
        cur.expect(Tok::kLBrace, "'{' opening a section");
        while (!cur.at(Tok::kRBrace)) {
          if (cur.at(Tok::kEnd)) throw SyntaxError(cur.peek().loc, "unterminated section");
          try {
            file.statements.emplace_back(section, parse_statement(cur));
          } catch (const SyntaxError& e) {
            diagnostics.push_back(parse_error(e.loc, "syntax", e.what()));
            recover(cur);
          }
        }
        cur.take();
      } else {
        file.statements.emplace_back(Section::kTop, parse_statement(cur));
      }
    } catch (const SyntaxError& e) {
      diagnostics.push_back(parse_error(e.loc, "syntax", e.what()));
      recover(cur);
      if (cur.at(Tok::kRBrace)) cur.take();
    }
  }
  return file;
}

Law substitute(const Law& law, const Substitution& sub) {
  Law out = law;
  out.head = substitute(law.head, sub);
  out.condition = substitute(law.condition, sub);
  out.trigger = substitute(law.trigger, sub);
  for (auto& n : out.names) n = substitute_word(n, sub);
  out.context_var = substitute_word(law.context_var, sub);
  out.distribution = substitute(law.distribution, sub);
  return out;
}

Declaration substitute(const Declaration& decl, const Substitution& sub) {
  Declaration out = decl;
  for (auto& n : out.names) n = substitute_word(n, sub);
  for (auto& v : out.domain) v = substitute_word(v, sub);
  if (out.distribution) out.distribution = substitute(*out.distribution, sub);
  return out;
}

std::vector<std::variant<Declaration, Law>> expand(const Statement& stmt) {
  std::vector<std::variant<Declaration, Law>> out;
  expand_into(stmt, {}, out);
  return out;
}

std::optional<pcplus::Formula> resolve(const Signature& sig, const Formula& f,
                                       std::vector<Diagnostic>& diagnostics) {
  using K = Formula::Kind;
  auto lookup = [&](const Formula& a) -> std::optional<VarId> {
    auto v = sig.find(a.name);
    if (!v) diagnostics.push_back(parse_error(a.loc, "undeclared-variable",
                                              "variable '" + a.name + "' is not declared"));
    return v;
  };
  switch (f.kind) {
    case K::kTrue: return pcplus::Formula::top();
    case K::kFalse: return pcplus::Formula::bottom();
    case K::kAtom:
    case K::kNotEqual: {
      auto v = lookup(f);
      if (!v) return std::nullopt;
      auto x = sig.find_value(*v, f.value);
      if (!x) {
        diagnostics.push_back(parse_error(
            f.loc, "unknown-value",
            "'" + f.value + "' is not in the domain of '" + f.name + "'"));
        return std::nullopt;
      }
      return f.kind == K::kAtom ? pcplus::Formula::atom(*v, *x)
                                : pcplus::Formula::not_equal(*v, *x);
    }
    case K::kBareName: {
      auto v = lookup(f);
      if (!v) return std::nullopt;
      if (sig.cls(*v) != VarClass::kAction) {
        diagnostics.push_back(parse_error(
            f.loc, "bare-name",
            "'" + f.name + "' is a " + std::string(to_string(sig.cls(*v))) +
                " variable; only action variables may appear without a value"));
        return std::nullopt;
      }
      return pcplus::Formula::atom(*v, kTrue);
    }
    case K::kNot: {
      auto g = resolve(sig, f.children.at(0), diagnostics);
      if (!g) return std::nullopt;
      return pcplus::Formula::negation(*g);
    }
    case K::kAnd:
    case K::kOr: {
      auto l = resolve(sig, f.children.at(0), diagnostics);
      auto r = resolve(sig, f.children.at(1), diagnostics);
      if (!l || !r) return std::nullopt;
      return f.kind == K::kAnd ? pcplus::Formula::conjunction(*l, *r)
                               : pcplus::Formula::disjunction(*l, *r);
    }
  }
  return std::nullopt;
}

std::vector<CoreLaw> desugar(const Signature& sig, const Law& law,
                             std::vector<Diagnostic>& diagnostics) {
  std::vector<CoreLaw> out;
  auto resolve_or_true = [&](const std::optional<Formula>& f) -> std::optional<pcplus::Formula> {
    if (!f) return pcplus::Formula::top();
    return resolve(sig, *f, diagnostics);
  };
  switch (law.kind) {
    case Law::Kind::kCaused: {
      auto head = resolve(sig, *law.head, diagnostics);
      auto cond = resolve_or_true(law.condition);
      if (!law.trigger) {
        if (head && cond) out.push_back(StaticLaw{*head, *cond, law.loc});
        break;
      }
      auto trig = resolve(sig, *law.trigger, diagnostics);
      if (head && cond && trig) out.push_back(DynamicLaw{*head, *cond, *trig, law.loc});
      break;
    }
    case Law::Kind::kNonexecutable: {
      auto trig = resolve(sig, *law.trigger, diagnostics);
      if (trig)
        out.push_back(DynamicLaw{pcplus::Formula::bottom(), pcplus::Formula::top(), *trig, law.loc});
      break;
    }
    case Law::Kind::kInertial: {
      for (const auto& name : law.names) {
        auto v = sig.find(name);
        if (!v) {
          diagnostics.push_back(parse_error(law.loc, "undeclared-variable",
                                            "inertial variable '" + name + "' is not declared"));
          continue;
        }
        for (ValueId x = 0; x < sig[*v].domain.size(); ++x) {
          auto a = pcplus::Formula::atom(*v, x);
          out.push_back(DynamicLaw{a, a, a, law.loc});
        }
      }
      break;
    }
    case Law::Kind::kContextLaw: {
      auto v = sig.find(law.context_var);
      auto trig = resolve_or_true(law.trigger);
      if (!v) {
        diagnostics.push_back(parse_error(law.loc, "undeclared-variable",
                                          "context variable '" + law.context_var + "' is not declared"));
        break;
      }
      ContextLaw cl{*v, {}, pcplus::Formula::top(), law.loc};
      bool ok = trig.has_value();
      for (const auto& e : law.distribution) {
        auto x = sig.find_value(*v, e.value);
        if (!x) {
          diagnostics.push_back(parse_error(
              e.loc, "unknown-value",
              "'" + e.value + "' is not in the domain of '" + law.context_var + "'"));
          ok = false;
          continue;
        }
        cl.distribution.emplace_back(*x, e.probability);
      }
      if (ok) {
        cl.trigger = *trig;
        out.push_back(std::move(cl));
      }
      break;
    }
  }
  return out;
}

}  // namespace surface

// ------------------------------------------------------------ entry points

namespace {

void add_core(Description& target, surface::CoreLaw law) {
  if (auto* s = std::get_if<StaticLaw>(&law))
    target.static_laws.push_back(std::move(*s));
  else if (auto* d = std::get_if<DynamicLaw>(&law))
    target.dynamic_laws.push_back(std::move(*d));
  else
    target.context_laws.push_back(std::get<ContextLaw>(std::move(law)));
}

}  // namespace

ParseResult parse(std::string_view text) {
  ParseResult result;
  auto& diags = result.diagnostics;
  surface::File file = surface::parse_file(text, diags);

  Domain domain;
  std::vector<std::pair<surface::Section, surface::Law>> laws;
  for (const auto& [section, stmt] : file.statements) {
    for (auto& item : surface::expand(stmt)) {
      if (auto* law = std::get_if<surface::Law>(&item)) {
        laws.emplace_back(section, std::move(*law));
        continue;
      }
      const auto& decl = std::get<surface::Declaration>(item);
      for (const auto& name : decl.names) {
        try {
          domain.signature.add(name, decl.cls, decl.domain);
        } catch (const SignatureError& e) {
          diags.push_back({Severity::kError, DiagnosticStage::kParse, decl.loc, "declaration", e.what()});
        }
        if (decl.distribution) {
          surface::Law cl;
          cl.kind = surface::Law::Kind::kContextLaw;
          cl.loc = decl.loc;
          cl.context_var = name;
          cl.distribution = *decl.distribution;
          laws.emplace_back(section, std::move(cl));
        }
      }
    }
  }

  for (auto& [section, law] : laws) {
    bool inline_ctx = section == surface::Section::kTop && law.kind == surface::Law::Kind::kContextLaw;
    if (section == surface::Section::kTop && !inline_ctx) {
      diags.push_back({Severity::kError, DiagnosticStage::kParse, law.loc, "section",
                       "laws must appear inside an 'initially' or 'dynamics' section"});
      continue;
    }
    Description& target = section == surface::Section::kDynamics
                              ? static_cast<Description&>(domain.dynamics)
                              : static_cast<Description&>(domain.initial);
    for (auto& core : surface::desugar(domain.signature, law, diags)) add_core(target, std::move(core));
  }

  if (has_errors(diags)) return result;
  auto semantic = validate(domain);
  diags.insert(diags.end(), semantic.begin(), semantic.end());
  if (!has_errors(diags)) result.domain = std::move(domain);
  return result;
}

bool ParseResult::has_parse_errors() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
    return d.severity == Severity::kError && d.stage == DiagnosticStage::kParse;
  });
}

FormulaParse parse_formula(const Signature& sig, std::string_view text) {
  FormulaParse out;
  try {
    TokenCursor cur(detail::tokenize(text));
    auto f = detail::parse_surface_formula(cur);
    if (!cur.at(Tok::kEnd))
      throw SyntaxError(cur.peek().loc, "unexpected " + detail::describe(cur.peek()) + " after formula");
    out.formula = surface::resolve(sig, f, out.diagnostics);
  } catch (const SyntaxError& e) {
    out.diagnostics.push_back({Severity::kError, DiagnosticStage::kParse, e.loc, "syntax", e.what()});
  }
  if (has_errors(out.diagnostics)) out.formula.reset();
  return out;
}

}  // namespace pcplus
