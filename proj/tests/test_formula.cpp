#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pcplus/error.hpp"
#include "pcplus/formula.hpp"
#include "pcplus/rational.hpp"

using namespace pcplus;

namespace {

struct Fixture {
  Signature sig;
  VarId at_r, holds, c_gb, goto_b;
  Fixture() {
    at_r = sig.add("at(r)", VarClass::kSimpleFluent, {"a", "b", "c", "lost"});
    holds = sig.add("holds", VarClass::kSimpleFluent, {"o1", "o2", "nil"});
    c_gb = sig.add("c_g(b)", VarClass::kContext, {"ok", "fail"});
    goto_b = sig.add_action("goto(b)");
  }
  Formula atom(VarId v, const char* x) const { return Formula::atom(v, *sig.find_value(v, x)); }
  Interpretation empty() const { return Interpretation(sig.size()); }
};

}  // namespace

TEST_SUITE("formula-core") {

TEST_CASE("rational parsing and rendering") {
  CHECK(*parse_rational("0.95") == Rational(19, 20));
  CHECK(*parse_rational("1") == 1);
  CHECK(*parse_rational("3/4") == Rational(3, 4));
  CHECK(*parse_rational(".5") == Rational(1, 2));
  CHECK_FALSE(parse_rational("1/0"));
  CHECK_FALSE(parse_rational("abc"));
  CHECK_FALSE(parse_rational(""));
  CHECK(to_fraction_string(Rational(171, 200)) == "171/200");
  CHECK(to_fraction_string(Rational(2)) == "2");
  CHECK(to_decimal_string(Rational(171, 200)) == "0.855");
  CHECK(to_decimal_string(Rational(76, 83)) == "0.915663");
  CHECK(to_exact_literal(Rational(29241, 40000)) == "0.731025");
  CHECK(to_exact_literal(Rational(1, 3)) == "1/3");
}

TEST_CASE("signature invariants") {
  Signature sig;
  sig.add("x", VarClass::kRigid, {"a", "b"});
  CHECK_THROWS_AS(sig.add("x", VarClass::kRigid, {"a"}), SignatureError);
  CHECK_THROWS_AS(sig.add("y", VarClass::kRigid, {}), SignatureError);
  CHECK_THROWS_AS(sig.add("z", VarClass::kRigid, {"a", "a"}), SignatureError);
  CHECK_THROWS_AS(sig.add("w", VarClass::kAction, {"a", "b"}), SignatureError);
  VarId a = sig.add_action("act");
  CHECK(sig.value_name(a, kFalse) == "false");
  CHECK(sig.value_name(a, kTrue) == "true");
}

TEST_CASE("satisfies") {
  Fixture f;
  auto i = f.empty().with(f.at_r, 0);
  CHECK(satisfies(i, f.atom(f.at_r, "a")));
  auto j = f.empty().with(f.holds, 2);
  CHECK(satisfies(j, Formula::negation(f.atom(f.holds, "o1"))));
  auto k = f.empty().with(f.at_r, 0).with(f.holds, 2);
  auto g = Formula::conjunction(Formula::conjunction(f.atom(f.at_r, "a"), f.atom(f.holds, "nil")),
                                Formula::negation(Formula::bottom()));
  CHECK(satisfies(k, g));
  CHECK_THROWS_AS(satisfies(j, f.atom(f.at_r, "a")), UnscopedVariableError);
}

TEST_CASE("partial evaluation") {
  Fixture f;
  auto ok = f.empty().with(f.c_gb, 0);
  CHECK(partial_eval(ok, f.atom(f.c_gb, "ok")) == Formula::top());
  auto fail = f.empty().with(f.c_gb, 1);
  auto mixed = Formula::conjunction(f.atom(f.c_gb, "ok"), f.atom(f.at_r, "b"));
  CHECK(partial_eval(fail, mixed) == Formula::conjunction(Formula::bottom(), f.atom(f.at_r, "b")));
  CHECK(partial_eval(f.empty(), mixed) == mixed);
}

TEST_CASE("enumeration") {
  Fixture f;
  CHECK(enumerate_interpretations(f.sig, {}, f.empty()).size() == 1);
  std::vector<VarId> one{f.c_gb};
  CHECK(enumerate_interpretations(f.sig, one, f.empty()).size() == 2);
  Signature s2;
  VarId x = s2.add("c_at(o1)", VarClass::kContext, {"a", "b", "c"});
  VarId y = s2.add("c_at(o2)", VarClass::kContext, {"a", "b", "c"});
  std::vector<VarId> both{y, x};
  auto all = enumerate_interpretations(s2, both, Interpretation(s2.size()));
  REQUIRE(all.size() == 9);
  CHECK(std::is_sorted(all.begin(), all.end()));
  CHECK(all == enumerate_interpretations(s2, both, Interpretation(s2.size())));
  CHECK(count_interpretations(s2, both) == 9);
  std::vector<VarId> bad{42};
  CHECK_THROWS_AS(enumerate_interpretations(s2, bad, Interpretation(s2.size())), UndeclaredVariableError);
}

TEST_CASE("interpretation ordering follows declaration and domain order") {
  Fixture f;
  auto a = f.empty().with(f.at_r, 0).with(f.holds, 2);
  auto b = f.empty().with(f.at_r, 1).with(f.holds, 0);
  CHECK(a < b);
  CHECK(a == f.empty().with(f.holds, 2).with(f.at_r, 0));
  CHECK(a.restricted(std::vector<VarId>{f.holds}) == f.empty().with(f.holds, 2));
}

TEST_CASE("printing") {
  Fixture f;
  auto g = Formula::disjunction(f.atom(f.at_r, "a"), Formula::not_equal(f.holds, 0));
  CHECK(to_string(f.sig, g) == "at(r) = a | holds != o1");
  CHECK(to_string(f.sig, Formula::atom(f.goto_b, kTrue)) == "goto(b)");
}

TEST_CASE("random: partial evaluation composes with satisfaction") {
  std::mt19937 rng(7);
  for (int round = 0; round < 300; ++round) {
    auto rt = oracle::random_theory(rng, 4, 3, 0);
    const auto& sig = rt.sig;
    auto f = oracle::random_formula(rng, sig, rt.theory.scope, 3);
    auto g = oracle::random_formula(rng, sig, rt.theory.scope, 3);
    for (const auto& v : oracle::all_valuations(sig, rt.theory.scope)) {
      auto full = oracle::interpretation(sig, v);
      // Split the variables into two halves.
      Interpretation left(sig.size()), right(sig.size());
      for (const auto& [k, x] : v) (k % 2 ? left : right) = (k % 2 ? left : right).with(k, x);
      CHECK(satisfies(right, partial_eval(left, f)) == satisfies(full, f));
      CHECK(satisfies(full, Formula::negation(f)) == !satisfies(full, f));
      CHECK(satisfies(full, Formula::conjunction(f, g)) == (satisfies(full, f) && satisfies(full, g)));
      CHECK(satisfies(full, f) == oracle::eval(f, v));
    }
  }
}

}  // TEST_SUITE
