// Histories and their belief states.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pcplus/transition.hpp"

namespace pcplus {

/// Finite sequence of labeled actions and observations.
struct History {
  std::vector<LabeledStep> steps;

  /// Number of action steps.
  size_t action_length() const;
};

/// Probability p_h of a history together with a distribution over the
/// state sets it may have led to. The support is sorted by state set, every
/// set is nonempty and distinct, and masses are positive and sum to one.
struct BeliefState {
  Rational probability = 1;
  std::vector<std::pair<StateSet, Rational>> support;

  /// Mass of the given set, zero if absent.
  Rational mass(const StateSet& s) const;
  friend bool operator==(const BeliefState&, const BeliefState&) = default;
};

/// Throws Error naming the violated invariant.
void check_invariants(const BeliefState& b);

/// Belief of the empty history. Throws InconsistencyError when some initial
/// context admits no state.
BeliefState initial_belief(const TransitionSystem& ts);

/// Belief concentrated on one state set with probability one.
BeliefState point_belief(const StateSet& states);

/// Extends the history of b by one labeled step. nullopt when no supported
/// set meets the step's precondition (the extended history is undefined).
std::optional<BeliefState> update(const TransitionSystem& ts, const BeliefState& b,
                                  const LabeledStep& step);

/// Left fold of update over h from the initial belief.
std::optional<BeliefState> belief(const TransitionSystem& ts, const History& h);

/// Same fold, keeping every intermediate belief. The result holds the
/// initial belief followed by one entry per defined step; it is shorter
/// than h.steps.size() + 1 exactly when the history becomes undefined.
std::vector<BeliefState> belief_trace(const TransitionSystem& ts, const History& h);

/// Observation update by conditioning: keep the sets meeting the
/// precondition, drop their states violating the formula, rescale. Agrees
/// with update on every observation step.
std::optional<BeliefState> observe_fast(const BeliefState& b, const LabeledStep& step);

}  // namespace pcplus
