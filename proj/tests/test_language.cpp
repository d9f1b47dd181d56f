#include <doctest.h>

#include <algorithm>
#include <random>

#include "corpus.hpp"
#include "oracles.hpp"
#include "pcplus/language.hpp"

using namespace pcplus;

namespace {

std::vector<std::string> rules_of(const ParseResult& r, Severity sev = Severity::kError) {
  std::vector<std::string> out;
  for (const auto& d : r.diagnostics)
    if (d.severity == sev) out.push_back(d.rule);
  return out;
}

bool has_rule(const ParseResult& r, const std::string& rule) {
  auto all = rules_of(r);
  auto warn = rules_of(r, Severity::kWarning);
  all.insert(all.end(), warn.begin(), warn.end());
  return std::find(all.begin(), all.end(), rule) != all.end();
}

size_t count_laws_with_head(const std::vector<DynamicLaw>& laws, const Signature& sig, const std::string& var) {
  auto v = *sig.find(var);
  return std::count_if(laws.begin(), laws.end(), [&](const DynamicLaw& l) {
    return l.head.kind() == Formula::Kind::kAtom && l.head.var() == v && l.condition == l.head &&
           l.trigger == l.head;
  });
}

// A random description that satisfies every structural rule.
std::string random_description(std::mt19937& rng) {
  auto pick = [&](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };
  std::vector<std::pair<std::string, std::vector<std::string>>> fluents;
  size_t nf = 1 + pick(3);
  for (size_t k = 0; k < nf; ++k) {
    std::vector<std::string> values;
    for (size_t x = 0; x < 1 + pick(3); ++x) values.push_back("v" + std::to_string(x));
    fluents.push_back({"f" + std::to_string(k), values});
  }
  std::vector<std::string> actions{"a0", "a1"};
  auto atom = [&] {
    const auto& [name, values] = fluents[pick(fluents.size())];
    return name + (pick(2) ? " = " : " != ") + values[pick(values.size())];
  };
  auto formula = [&](int depth) {
    std::string f = atom();
    for (int d = 0; d < depth; ++d) {
      switch (pick(3)) {
        case 0: f = "(" + f + " & " + atom() + ")"; break;
        case 1: f = "(" + f + " | " + atom() + ")"; break;
        default: f = "~(" + f + ")";
      }
    }
    return f;
  };
  auto probs = [&](size_t n) {
    std::vector<int> w(n);
    int total = 0;
    for (auto& x : w) total += (x = 1 + static_cast<int>(pick(5)));
    std::string out;
    for (size_t k = 0; k < n; ++k)
      out += (k ? ", " : "") + std::string("u") + std::to_string(k) + ": " + std::to_string(w[k]) + "/" +
             std::to_string(total);
    return out;
  };

  std::string text;
  for (const auto& [name, values] : fluents) {
    text += "fluent simple " + name + " : {";
    for (size_t x = 0; x < values.size(); ++x) text += (x ? ", " : "") + values[x];
    text += "}.\n";
  }
  text += "action a0, a1.\n";
  size_t ci = 1 + pick(3), cd = 1 + pick(3);
  text += "context i0 : {";
  for (size_t k = 0; k < ci; ++k) text += (k ? ", u" : "u") + std::to_string(k);
  text += "}.\ncontext d0 : {";
  for (size_t k = 0; k < cd; ++k) text += (k ? ", u" : "u") + std::to_string(k);
  text += "}.\n";

  text += "initially {\n  context-law i0 = (" + probs(ci) + ").\n";
  text += "  caused " + atom() + " if i0 = u0.\n";
  for (size_t k = 0; k < pick(3); ++k) text += "  caused " + formula(1) + " if " + formula(pick(3)) + ".\n";
  text += "}\ndynamics {\n";
  text += "  context-law d0 = (" + probs(cd) + ") after a0.\n";
  text += "  caused " + atom() + " if d0 = u0 after a0.\n";
  for (size_t k = 0; k < pick(4); ++k) {
    switch (pick(4)) {
      case 0: text += "  caused " + formula(1) + " if " + formula(pick(2)) + ".\n"; break;
      case 1:
        text += "  caused " + atom() + " if " + formula(pick(2)) + " after " + actions[pick(2)] + " & " +
                formula(pick(2)) + ".\n";
        break;
      case 2: text += "  nonexecutable " + actions[pick(2)] + " & " + formula(pick(2)) + ".\n"; break;
      default: text += "  inertial " + fluents[pick(fluents.size())].first + ".\n";
    }
  }
  text += "}\n";
  return text;
}

}  // namespace

TEST_SUITE("pcplus-lang") {

TEST_CASE("robot corpus parses and validates") {
  auto r = parse(corpus::read_file(corpus::robot_path()));
  REQUIRE(r.ok());
  CHECK(rules_of(r).empty());
  const auto& d = *r.domain;
  const auto& sig = d.signature;
  CHECK(sig.of_class(VarClass::kAction).size() == 5);
  CHECK(d.dynamics.context_variables(sig).size() == 3);
  CHECK(d.initial.context_variables(sig).size() == 2);
  CHECK(d.dynamics.context_laws.size() == 3);
  CHECK(d.initial.context_laws.size() == 2);
  // Law (6): one static law per object and location.
  CHECK(d.dynamics.static_laws.size() == 8);
  CHECK(validate(d).empty());
}

TEST_CASE("desugaring") {
  const auto& d = corpus::robot().domain();
  const auto& sig = d.signature;
  // inertial holds: one law per value of holds.
  CHECK(count_laws_with_head(d.dynamics.dynamic_laws, sig, "holds") == 3);
  CHECK(count_laws_with_head(d.dynamics.dynamic_laws, sig, "at(r)") == 4);

  // nonexecutable goto(L) & at(r) = L for L in a, b, c.
  size_t goto_denials = 0;
  for (const auto& l : d.dynamics.dynamic_laws) {
    if (!l.is_execution_denial()) continue;
    auto text = to_string(sig, l.trigger);
    if (text.rfind("goto(", 0) == 0 && text.find("at(r) =") != std::string::npos) ++goto_denials;
  }
  CHECK(goto_denials == 3);

  // caused holds = nil after drop.
  VarId holds = *sig.find("holds"), drop = *sig.find("drop");
  auto it = std::find_if(d.dynamics.dynamic_laws.begin(), d.dynamics.dynamic_laws.end(), [&](const DynamicLaw& l) {
    return l.trigger == Formula::atom(drop, kTrue);
  });
  REQUIRE(it != d.dynamics.dynamic_laws.end());
  CHECK(it->head == Formula::atom(holds, *sig.find_value(holds, "nil")));
  CHECK(it->condition.is_true());
}

TEST_CASE("probability literals are exact") {
  const auto& d = corpus::robot().domain();
  const auto& sig = d.signature;
  const auto* law = d.dynamics.context_law(*sig.find("c_g(c)"));
  REQUIRE(law);
  CHECK(law->probability(*sig.find_value(law->var, "ok")) == Rational(9, 10));
  CHECK(law->probability(*sig.find_value(law->var, "fail")) == Rational(1, 10));
}

TEST_CASE("context-law probabilities must sum to one") {
  auto r = parse("ctx c : {ok} = (ok: 0.9).\nfluent simple p : {t, f}.\ninitially { caused p = t if c = ok. }\n");
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.has_parse_errors());
  CHECK(has_rule(r, "context-law.sum"));
  auto it = std::find_if(r.diagnostics.begin(), r.diagnostics.end(),
                         [](const Diagnostic& d) { return d.rule == "context-law.sum"; });
  CHECK(it->loc.line == 1);
  CHECK(it->message.find("0.9") != std::string::npos);
}

TEST_CASE("class restrictions on laws") {
  auto head = parse(
      "fluent simple p : {t, f}. context c : {u, v}. action a.\n"
      "dynamics { caused c = u after a. context-law c = (u: 0.5, v: 0.5) after a. }\n");
  CHECK(has_rule(head, "dynamic-law.head"));

  auto condition = parse("fluent simple p : {t, f}. action a.\ndynamics { caused p = t if a after a. }\n");
  CHECK(has_rule(condition, "dynamic-law.condition"));

  auto trigger = parse(
      "fluent simple p : {t, f}. context c : {u, v}. action a.\n"
      "dynamics { caused p = t after c = u. context-law c = (u: 0.5, v: 0.5) after a. }\n");
  CHECK(has_rule(trigger, "dynamic-law.trigger"));

  auto stat = parse("fluent simple p : {t, f}. action a.\ndynamics { caused p = t if a. }\n");
  CHECK(has_rule(stat, "static-law.classes"));

  auto initial = parse("fluent simple p : {t, f}. action a.\ninitially { caused p = t after a. }\n");
  CHECK(has_rule(initial, "initial-database.static-only"));
}

TEST_CASE("one context law per context variable") {
  auto twice = parse(
      "fluent simple p : {t, f}. context c : {u, v}.\n"
      "dynamics { context-law c = (u: 0.5, v: 0.5). context-law c = (u: 0.5, v: 0.5). caused p = t if c = u. }\n");
  CHECK(has_rule(twice, "context-law.unique"));
  auto missing = parse("fluent simple p : {t, f}. context c : {u, v}.\ndynamics { caused p = t if c = u. }\n");
  CHECK(has_rule(missing, "context-law.missing"));
  auto values = parse(
      "fluent simple p : {t, f}. context c : {u, v}.\n"
      "dynamics { context-law c = (u: 1). caused p = t if c = u. }\n");
  CHECK(has_rule(values, "context-law.values"));
  auto positive = parse(
      "fluent simple p : {t, f}. context c : {u, v}.\n"
      "dynamics { context-law c = (u: 1, v: 0). caused p = t if c = u. }\n");
  CHECK(has_rule(positive, "context-law.positive"));
}

TEST_CASE("rigid static laws of the dynamics must be in the initial database") {
  auto r = parse("rigid k : {x, y}. fluent simple p : {t, f}.\ndynamics { caused k = x. }\n");
  CHECK(has_rule(r, "rigid-law.initial"));
  auto ok = parse("rigid k : {x, y}. fluent simple p : {t, f}.\ninitially { caused k = x. }\ndynamics { caused k = x. }\n");
  CHECK(ok.ok());
}

TEST_CASE("unused context variables are warnings") {
  auto r = parse("fluent simple p : {t, f}. context c : {u, v}.\ninitially { context-law c = (u: 0.5, v: 0.5). }\n");
  CHECK(r.ok());
  CHECK(rules_of(r).empty());
  CHECK_FALSE(rules_of(r, Severity::kWarning).empty());
}

TEST_CASE("syntax and name errors carry positions") {
  auto r = parse("fluent simple p : {t, f}.\ndynamics { caused p = t after }\n");
  CHECK(r.has_parse_errors());
  REQUIRE_FALSE(r.diagnostics.empty());
  CHECK(r.diagnostics.front().loc.line == 2);
  CHECK(r.diagnostics.front().loc.column > 0);

  auto undeclared = parse("fluent simple p : {t, f}.\ndynamics { caused p = t after q. }\n");
  CHECK(undeclared.has_parse_errors());
  CHECK(has_rule(undeclared, "undeclared-variable"));

  auto outside = parse("fluent simple p : {t, f}.\ncaused p = t.\n");
  CHECK_FALSE(outside.ok());

  auto bad_inertial = parse("fluent simple p : {t, f}.\ndynamics { inertial nope. }\n");
  CHECK(bad_inertial.has_parse_errors());

  // Recovery reports more than one error.
  auto several = parse("fluent simple p : {t, f}.\ndynamics { caused p = . caused q = t. }\n");
  CHECK(rules_of(several).size() >= 2);
}

TEST_CASE("pretty-printing round-trips the corpus") {
  const auto& d = corpus::robot().domain();
  auto text = pretty_print(d);
  auto again = parse(text);
  REQUIRE(again.ok());
  CHECK(*again.domain == d);
  CHECK(pretty_print(*again.domain) == text);
}

TEST_CASE("pretty-printing round-trips random descriptions") {
  std::mt19937 rng(11);
  int checked = 0;
  for (int round = 0; round < 200; ++round) {
    auto text = random_description(rng);
    auto r = parse(text);
    INFO(text);
    for (const auto& d : r.diagnostics) INFO(to_string(d));
    REQUIRE(r.ok());
    auto printed = pretty_print(*r.domain);
    auto again = parse(printed);
    INFO(printed);
    REQUIRE(again.ok());
    CHECK(*again.domain == *r.domain);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("formula printing round-trips") {
  std::mt19937 rng(5);
  const auto& sig = corpus::robot().signature();
  std::vector<VarId> vars = sig.state_variables();
  for (VarId a : sig.of_class(VarClass::kAction)) vars.push_back(a);
  for (int round = 0; round < 500; ++round) {
    auto f = oracle::random_formula(rng, sig, vars, 3);
    auto text = to_string(sig, f);
    auto back = parse_formula(sig, text);
    INFO(text);
    REQUIRE(back.formula);
    CHECK(*back.formula == f);
  }
}

}  // TEST_SUITE
