#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"
#include "pcplus/error.hpp"
#include "pcplus/transition.hpp"

using namespace pcplus;
using corpus::act;
using corpus::robot;
using corpus::state;

namespace {

std::string ctx_value(const Context& c, const char* var) {
  const auto& sig = robot().signature();
  VarId v = *sig.find(var);
  return sig.value_name(v, c.assignment.at(v));
}

Context initial_context(const char* o1, const char* o2) {
  for (const auto& c : robot().initial_contexts())
    if (ctx_value(c, "c_at(o1)") == o1 && ctx_value(c, "c_at(o2)") == o2) return c;
  throw std::runtime_error("no such context");
}

Context action_context(const char* action, const char* var, const char* value) {
  for (const auto& c : robot().action_contexts(act(action)))
    if (ctx_value(c, var) == value) return c;
  throw std::runtime_error("no such context");
}

Domain parse_ok(const std::string& text) {
  auto r = parse(text);
  if (!r.ok()) throw std::runtime_error("test domain does not parse");
  return *r.domain;
}

const char* kStart = "at(o1)=b, at(o2)=b, at(r)=a, holds=nil";

}  // namespace

TEST_SUITE("transition-semantics") {

TEST_CASE("initial contexts") {
  auto cs = robot().initial_contexts();
  REQUIRE(cs.size() == 9);
  Rational total = 0;
  for (const auto& c : cs) total += c.probability;
  CHECK(total == 1);
  CHECK(initial_context("b", "b").probability == corpus::q("0.48"));
  CHECK(initial_context("b", "a").probability == corpus::q("0.24"));
  CHECK(initial_context("b", "c").probability == corpus::q("0.08"));
  CHECK(initial_context("c", "b").probability == corpus::q("0.06"));

  TransitionSystem plain(parse_ok("fluent simple p : {t, f}.\ninitially { caused p = t. }\n"));
  auto only = plain.initial_contexts();
  REQUIRE(only.size() == 1);
  CHECK(only[0].probability == 1);
  CHECK(only[0].assignment.empty());
  CHECK(plain.initial_state_set(only[0]).size() == 1);
}

TEST_CASE("initial state sets") {
  CHECK(robot().initial_state_set(initial_context("a", "c")) ==
        StateSet({state("at(o1)=a, at(o2)=c, at(r)=a, holds=nil"), state("at(o1)=a, at(o2)=c, at(r)=b, holds=nil")}));
}

TEST_CASE("state space") {
  const auto& space = robot().state_space();
  const auto& sig = robot().signature();
  VarId holds = *sig.find("holds"), r = *sig.find("at(r)");
  // Every interpretation where a held object is where the robot is.
  size_t expected = 0;
  for (const auto& v : oracle::all_valuations(sig, sig.state_variables())) {
    auto i = oracle::interpretation(sig, v);
    std::string h = sig.value_name(holds, i.at(holds));
    bool ok = h == "nil" || i.at(*sig.find("at(" + h + ")")) == i.at(r);
    CHECK(space.contains(i) == ok);
    expected += ok;
  }
  CHECK(space.size() == expected);

  TransitionSystem free(parse_ok("fluent simple p : {t, f}. fluent simple q : {x, y, z}.\n"));
  CHECK(free.state_space().size() == 6);
  // Initial states count as states too, so D0 must not reintroduce p = t.
  TransitionSystem forced(
      parse_ok("fluent simple p : {t, f}.\ninitially { caused p = f. }\ndynamics { caused false if p = t. }\n"));
  REQUIRE(forced.state_space().size() == 1);
  CHECK(forced.describe(forced.state_space().states()[0]) == "{p=f}");
}

TEST_CASE("executability") {
  CHECK_FALSE(robot().executable(state("at(o1)=b, at(o2)=b, at(r)=a, holds=nil"), act("{goto(a)}")));
  CHECK_FALSE(robot().executable(state(kStart), act("{pickup}")));
  CHECK(robot().executable(state("at(o1)=b, at(o2)=b, at(r)=b, holds=nil"), act("{pickup}")));
  for (const auto& s : robot().state_space()) CHECK_FALSE(robot().executable(s, act("{goto(a), pickup}")));
}

TEST_CASE("executability matches the literal precondition formula") {
  for (const auto& s : robot().state_space())
    for (const auto& a : robot().all_actions()) CHECK(robot().executable(s, a) == oracle::executable(robot(), s, a));
}

TEST_CASE("action contexts") {
  const auto& sig = robot().signature();
  auto gb = robot().action_context_vars(act("{goto(b)}"));
  CHECK(gb == std::vector<VarId>{*sig.find("c_g(b)")});
  CHECK(robot().action_context_vars(act("{pickup}")).empty());
  CHECK(robot().action_context_vars(act("{drop}")).empty());

  CHECK(action_context("{goto(b)}", "c_g(b)", "ok").probability == corpus::q("0.95"));
  CHECK(action_context("{goto(b)}", "c_g(b)", "fail").probability == corpus::q("0.05"));
  CHECK(action_context("{goto(c)}", "c_g(c)", "ok").probability == corpus::q("0.9"));
  CHECK(action_context("{goto(c)}", "c_g(c)", "fail").probability == corpus::q("0.1"));
  auto pick = robot().action_contexts(act("{pickup}"));
  REQUIRE(pick.size() == 1);
  CHECK(pick[0].probability == 1);
  CHECK(pick[0].assignment.empty());
}

TEST_CASE("successors of the worked example") {
  auto s = state(kStart);
  CHECK(robot().successors(s, act("{goto(b)}"), action_context("{goto(b)}", "c_g(b)", "ok")) ==
        StateSet({state("at(o1)=b, at(o2)=b, at(r)=b, holds=nil")}));
  // A failed move leaves the robot anywhere except the target: law (8) makes
  // every at(r) = L' with L' != b self-supporting in the successor.
  CHECK(robot().successors(s, act("{goto(b)}"), action_context("{goto(b)}", "c_g(b)", "fail")) ==
        StateSet({state("at(o1)=b, at(o2)=b, at(r)=a, holds=nil"), state("at(o1)=b, at(o2)=b, at(r)=c, holds=nil"),
                  state("at(o1)=b, at(o2)=b, at(r)=lost, holds=nil")}));
  auto at_b = state("at(o1)=b, at(o2)=b, at(r)=b, holds=nil");
  CHECK(robot().successors(at_b, act("{pickup}"), robot().action_contexts(act("{pickup}"))[0]) ==
        StateSet({state("at(o1)=b, at(o2)=b, at(r)=b, holds=o1"), state("at(o1)=b, at(o2)=b, at(r)=b, holds=o2")}));
  // Not executable: no successors.
  CHECK(robot().successors(s, act("{pickup}"), robot().action_contexts(act("{pickup}"))[0]).empty());
}

TEST_CASE("held objects travel with the robot") {
  auto s = state("at(o1)=b, at(o2)=b, at(r)=b, holds=o1");
  auto next = robot().successors(s, act("{goto(c)}"), action_context("{goto(c)}", "c_g(c)", "ok"));
  CHECK(next == StateSet({state("at(o1)=c, at(o2)=b, at(r)=c, holds=o1")}));
}

TEST_CASE("successors agree with the candidate-enumeration oracle on every triple") {
  size_t triples = 0, nonempty = 0;
  const auto& sig = robot().signature();
  for (const auto& a : robot().all_actions()) {
    auto contexts = robot().action_contexts(a);
    for (const auto& s : robot().state_space())
      for (const auto& gamma : contexts) {
        auto got = robot().successors(s, a, gamma);
        std::set<oracle::Valuation> want = oracle::successors(robot(), s, a, gamma);
        std::set<oracle::Valuation> have;
        for (const auto& t : got) have.insert(oracle::valuation(t));
        CHECK(have == want);
        ++triples;
        nonempty += !got.empty();
        for (const auto& t : got) CHECK(robot().state_space().contains(t));
      }
  }
  (void)sig;
  CHECK(triples > 3000);
  CHECK(nonempty > 0);
}

TEST_CASE("rigid variables persist and the uniqueness scope is switchable") {
  const char* text =
      "rigid k : {x, y}. fluent simple p : {t, f}. action a.\n"
      "initially { caused k = x. caused p = f. }\n"
      "dynamics { caused p = t after a. inertial p. }\n";
  TransitionSystem rigid_equal(parse_ok(text));
  TransitionSystem strict(parse_ok(text), {Uniqueness::kAllInterpretations});
  const auto& sig = rigid_equal.signature();
  Action go = rigid_equal.make_action(std::vector<VarId>{*sig.find("a")});
  for (const auto& s : rigid_equal.state_space()) {
    auto gamma = rigid_equal.action_contexts(go)[0];
    auto next = rigid_equal.successors(s, go, gamma);
    REQUIRE(next.size() == 1);
    CHECK(next.states()[0].at(*sig.find("k")) == s.at(*sig.find("k")));
    // Nothing causes k in the dynamics, so with competitors over all
    // interpretations no successor is explained.
    CHECK(strict.successors(s, go, gamma).empty());
  }
}

TEST_CASE("observations") {
  auto s = state(kStart);
  CHECK(robot().observe_state(s, corpus::obs("at(r)=a")) == StateSet({s}));
  CHECK(robot().observe_state(s, corpus::obs("at(r)=b")).empty());
  CHECK(robot().observe_state(s, corpus::obs("true")) == StateSet({s}));
}

TEST_CASE("step preconditions and targets") {
  auto s1 = state(kStart);
  auto s2 = state("at(o1)=b, at(o2)=b, at(r)=b, holds=nil");
  StateSet both({s1, s2});
  auto here = corpus::obs("at(r)=a");
  CHECK(robot().step_precondition(both, possibly(here)));
  CHECK_FALSE(robot().step_precondition(both, certainly(here)));
  CHECK(robot().step_targets(both, possibly(here), {}) == StateSet({s1}));
  CHECK(robot().step_targets(both, certainly(corpus::obs("true")), {}) == both);
  CHECK_THROWS_AS(robot().step_targets(both, certainly(here), {}), PreconditionError);
  CHECK_THROWS_AS(robot().transition_distribution(both, certainly(here)), PreconditionError);

  // After a failed move the robot is at a, c or lost with no object nearby.
  StateSet failed({s1, state("at(o1)=b, at(o2)=b, at(r)=c, holds=nil"), state("at(o1)=b, at(o2)=b, at(r)=lost, holds=nil")});
  CHECK_FALSE(robot().step_precondition(failed, possibly(act("{pickup}"))));

  StateSet carried({state("at(o1)=c, at(o2)=b, at(r)=c, holds=o1"), state("at(o1)=b, at(o2)=c, at(r)=c, holds=o2")});
  CHECK(robot().step_precondition(carried, certainly(corpus::obs(corpus::kPsi))));
  CHECK_FALSE(robot().step_precondition(carried, certainly(corpus::obs(corpus::kPsiStrong))));

  // goto(b) is not executable where the robot already is at b, so only the
  // <> label applies to both initial states; the targets coincide.
  auto ok = action_context("{goto(b)}", "c_g(b)", "ok");
  CHECK_FALSE(robot().step_precondition(both, certainly(act("{goto(b)}"))));
  CHECK(robot().step_targets(both, possibly(act("{goto(b)}")), ok) == StateSet({s2}));
}

TEST_CASE("transition distributions") {
  auto dist = robot().transition_distribution(StateSet({state(kStart)}), certainly(act("{goto(b)}")));
  REQUIRE(dist.size() == 2);
  CHECK(dist.at(StateSet({state("at(o1)=b, at(o2)=b, at(r)=b, holds=nil")})) == corpus::q("0.95"));
  Rational failed = 0;
  for (const auto& [set, p] : dist)
    if (set.size() == 3) failed = p;
  CHECK(failed == corpus::q("0.05"));

  StateSet both({state(kStart), state("at(o1)=b, at(o2)=b, at(r)=b, holds=nil")});
  auto seen = robot().transition_distribution(both, possibly(corpus::obs("at(r)=a")));
  REQUIRE(seen.size() == 1);
  CHECK(seen.begin()->first == StateSet({state(kStart)}));
  CHECK(seen.begin()->second == 1);
  auto all = robot().transition_distribution(both, certainly(corpus::obs("true")));
  REQUIRE(all.size() == 1);
  CHECK(all.begin()->first == both);

  StateSet held({state("at(o1)=b, at(o2)=b, at(r)=b, holds=o1"), state("at(o1)=b, at(o2)=b, at(r)=b, holds=o2")});
  auto moved = robot().transition_distribution(held, certainly(act("{goto(c)}")));
  REQUIRE(moved.size() == 2);
  std::vector<Rational> masses;
  for (const auto& [set, p] : moved) masses.push_back(p);
  std::sort(masses.begin(), masses.end());
  CHECK(masses == std::vector<Rational>{corpus::q("0.1"), corpus::q("0.9")});
}

TEST_CASE("distributions sum to one and stay inside the state space") {
  for (const auto& a : robot().all_actions())
    for (const auto& s : robot().state_space()) {
      StateSet one({s});
      for (auto mod : {Modality::kPossibly, Modality::kCertainly}) {
        LabeledStep step{mod, a};
        if (!robot().step_precondition(one, step)) continue;
        Rational total = 0;
        for (const auto& [set, p] : robot().transition_distribution(one, step)) {
          total += p;
          CHECK(set.subset_of(robot().state_space()));
        }
        CHECK(total == 1);
      }
    }
}

TEST_CASE("consistency checks") {
  CHECK_FALSE(has_errors(robot().check_consistency()));

  TransitionSystem broken(parse_ok("fluent simple p : {t, f}. action a.\ndynamics { caused false after a. }\n"));
  auto ds = broken.check_consistency();
  CHECK(std::any_of(ds.begin(), ds.end(), [](const Diagnostic& d) { return d.rule == "consistency.transition"; }));

  TransitionSystem empty_init(parse_ok("fluent simple p : {t, f}.\ninitially { caused p = t. caused p = f. }\n"));
  auto di = empty_init.check_consistency();
  CHECK(std::any_of(di.begin(), di.end(), [](const Diagnostic& d) { return d.rule == "consistency.initial"; }));

  TransitionSystem untriggered(parse_ok(
      "fluent simple p : {t, f}. context c : {u, v}. action a, b.\n"
      "dynamics { context-law c = (u: 0.5, v: 0.5) after a. caused p = t if c = u after b. inertial p. }\n"));
  auto dw = untriggered.check_consistency();
  CHECK(std::any_of(dw.begin(), dw.end(), [](const Diagnostic& d) {
    return d.rule == "context-law.trigger" && d.severity == Severity::kWarning;
  }));
}

}  // TEST_SUITE
