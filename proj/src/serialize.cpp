#include "pcplus/serialize.hpp"

#include "pcplus/steps.hpp"

namespace pcplus {

Json rational_json(const Rational& q) {
  return {{"fraction", to_fraction_string(q)}, {"decimal", to_decimal_string(q)}};
}

Json state_json(const Signature& sig, const State& s) {
  Json out = Json::array();
  for (VarId v : s.scope()) out.push_back(sig.name(v) + "=" + sig.value_name(v, s.at(v)));
  return out;
}

Json state_set_json(const Signature& sig, const StateSet& s) {
  Json out = Json::array();
  for (const auto& st : s) out.push_back(state_json(sig, st));
  return out;
}

Json belief_json(const Signature& sig, const BeliefState& b, bool include_states) {
  Json support = Json::array();
  for (const auto& [set, mass] : b.support) {
    Json entry{{"mass", rational_json(mass)}, {"size", set.size()}};
    if (include_states) entry["states"] = state_set_json(sig, set);
    support.push_back(std::move(entry));
  }
  return {{"probability", rational_json(b.probability)}, {"support", std::move(support)}};
}

Json history_json(const Signature& sig, const History& h) {
  Json out = Json::array();
  for (const auto& s : h.steps) out.push_back(to_string(sig, s));
  return out;
}

namespace {

Json optional_rational(const std::optional<Rational>& q) {
  return q ? rational_json(*q) : Json(nullptr);
}

}  // namespace

Json query_json(const Signature& sig, const QueryResult& r, bool include_states) {
  Json out{{"defined", r.defined()},
           {"value", optional_rational(r.value)},
           {"numerator", {{"history", history_json(sig, r.numerator)},
                          {"probability", optional_rational(r.numerator_probability)}}},
           {"denominator", {{"history", history_json(sig, r.denominator)},
                            {"probability", optional_rational(r.denominator_probability)}}}};
  if (!r.trace.empty()) {
    Json trace = Json::array();
    for (const auto& b : r.trace) trace.push_back(belief_json(sig, b, include_states));
    out["trace"] = std::move(trace);
  }
  return out;
}

Json plans_json(const Signature& sig, const std::vector<PlanCandidate>& plans) {
  Json out = Json::array();
  for (const auto& p : plans) {
    Json steps = Json::array();
    for (const auto& a : p.plan) steps.push_back(to_string(sig, Step(a)));
    out.push_back({{"plan", std::move(steps)}, {"goodness", rational_json(p.goodness)}});
  }
  return out;
}

}  // namespace pcplus
