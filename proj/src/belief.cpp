#include "pcplus/belief.hpp"

#include <algorithm>
#include <map>

#include "pcplus/error.hpp"

namespace pcplus {

size_t History::action_length() const {
  return std::count_if(steps.begin(), steps.end(), [](const LabeledStep& s) { return s.is_action(); });
}

Rational BeliefState::mass(const StateSet& s) const {
  for (const auto& [set, p] : support)
    if (set == s) return p;
  return 0;
}

void check_invariants(const BeliefState& b) {
  if (b.probability < 0 || b.probability > 1)
    throw Error("history probability " + to_fraction_string(b.probability) + " is outside [0, 1]");
  Rational total = 0;
  for (size_t i = 0; i < b.support.size(); ++i) {
    const auto& [set, p] = b.support[i];
    if (set.empty()) throw Error("belief state supports an empty state set");
    if (p <= 0) throw Error("belief state has a non-positive mass");
    if (i > 0 && !(b.support[i - 1].first < set))
      throw Error("belief state support is not sorted and duplicate-free");
    total += p;
  }
  if (total != 1) throw Error("belief state masses sum to " + to_fraction_string(total));
}

namespace {

BeliefState from_masses(Rational probability, const std::map<StateSet, Rational>& masses) {
  BeliefState b;
  b.probability = std::move(probability);
  for (const auto& [set, p] : masses) {
    if (set.empty())
      throw InconsistencyError("a supported state set became empty; the description is inconsistent");
    if (p > 0) b.support.emplace_back(set, p);
  }
  return b;
}

}  // namespace

BeliefState initial_belief(const TransitionSystem& ts) {
  std::map<StateSet, Rational> masses;
  for (const auto& gamma : ts.initial_contexts()) {
    StateSet s = ts.initial_state_set(gamma);
    if (s.empty())
      throw InconsistencyError("initial context " + to_string(ts.signature(), gamma.assignment) +
                               " admits no state");
    masses[s] += gamma.probability;
  }
  BeliefState b = from_masses(1, masses);
  check_invariants(b);
  return b;
}

BeliefState point_belief(const StateSet& states) {
  BeliefState b;
  b.support.emplace_back(states, 1);
  return b;
}

std::optional<BeliefState> update(const TransitionSystem& ts, const BeliefState& b,
                                  const LabeledStep& step) {
  Rational passing = 0;
  std::map<StateSet, Rational> weighted;  // sum of Pr(S'|S) * Pr_r(S)
  for (const auto& [set, p] : b.support) {
    if (!ts.step_precondition(set, step)) continue;
    passing += p;
    for (const auto& [target, q] : ts.transition_distribution(set, step)) weighted[target] += q * p;
  }
  if (passing == 0) return std::nullopt;

  // Pr_h(S') = (p_r / p_h) * weighted(S') with p_h = p_r * passing.
  Rational ph = b.probability * passing;
  for (auto& [set, w] : weighted) w /= passing;
  BeliefState out = from_masses(ph, weighted);
  check_invariants(out);
  return out;
}

std::vector<BeliefState> belief_trace(const TransitionSystem& ts, const History& h) {
  std::vector<BeliefState> trace{initial_belief(ts)};
  for (const auto& step : h.steps) {
    auto next = update(ts, trace.back(), step);
    if (!next) break;
    trace.push_back(std::move(*next));
  }
  return trace;
}

std::optional<BeliefState> belief(const TransitionSystem& ts, const History& h) {
  BeliefState b = initial_belief(ts);
  for (const auto& step : h.steps) {
    auto next = update(ts, b, step);
    if (!next) return std::nullopt;
    b = std::move(*next);
  }
  return b;
}

std::optional<BeliefState> observe_fast(const BeliefState& b, const LabeledStep& step) {
  if (step.is_action()) throw Error("observe_fast requires an observation step");
  const Formula& f = step.observation().formula;
  Rational passing = 0;
  std::map<StateSet, Rational> masses;
  for (const auto& [set, p] : b.support) {
    StateSet kept = set.filtered(f);
    bool ok = step.modality == Modality::kPossibly ? !kept.empty() : kept.size() == set.size();
    if (!ok) continue;
    passing += p;
    masses[kept] += p;
  }
  if (passing == 0) return std::nullopt;
  for (auto& [set, m] : masses) m /= passing;
  return from_masses(b.probability * passing, masses);
}

}  // namespace pcplus
