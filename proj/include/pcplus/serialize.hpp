// Structured (JSON) rendering of beliefs and query results. Every
// probability is written as {"fraction": "171/200", "decimal": "0.855"}.
#pragma once

#include <json.hpp>

#include "pcplus/belief.hpp"
#include "pcplus/query.hpp"

namespace pcplus {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& q);
/// Assignments "X=x" in declaration order.
Json state_json(const Signature& sig, const State& s);
Json state_set_json(const Signature& sig, const StateSet& s);
/// With include_states false, each supported set is reported by size only.
Json belief_json(const Signature& sig, const BeliefState& b, bool include_states);
Json history_json(const Signature& sig, const History& h);
Json query_json(const Signature& sig, const QueryResult& r, bool include_states);
Json plans_json(const Signature& sig, const std::vector<PlanCandidate>& plans);

}  // namespace pcplus
