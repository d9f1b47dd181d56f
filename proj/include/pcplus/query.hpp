// Prediction, postdiction and planning as ratios of history probabilities.
#pragma once

#include <optional>
#include <vector>

#include "pcplus/belief.hpp"

namespace pcplus {

/// Unlabeled action or observation.
using Step = StepPayload;
using StepSequence = std::vector<Step>;

struct QueryResult {
  /// Pr(numerator) / Pr(denominator); nullopt when the denominator history
  /// is undefined or has probability zero. An undefined numerator over a
  /// defined denominator yields zero.
  std::optional<Rational> value;
  History numerator;
  History denominator;
  std::optional<Rational> numerator_probability;
  std::optional<Rational> denominator_probability;
  /// Beliefs along the numerator history when requested.
  std::vector<BeliefState> trace;

  bool defined() const { return value.has_value(); }
};

struct QueryOptions {
  bool trace = false;
};

/// Probability that `query` is certainly possible after `prior` occurred:
/// prior steps are labeled <>, query steps [].
QueryResult pred(const TransitionSystem& ts, const StepSequence& prior, const StepSequence& query,
                 const QueryOptions& options = {});

/// Probability that the observations removed from `hypothesis` to obtain
/// `occurred` certainly held. Removed observations are labeled [], every
/// other step <>. Throws SubsequenceError if `occurred` is not `hypothesis`
/// minus some observations; when several alignments exist the earliest
/// matching one is used.
QueryResult post(const TransitionSystem& ts, const StepSequence& occurred,
                 const StepSequence& hypothesis, const QueryOptions& options = {});

/// pred(prior, plan + [goal]).
QueryResult plan_goodness(const TransitionSystem& ts, const StepSequence& prior,
                          const std::vector<Action>& plan, const Observation& goal,
                          const QueryOptions& options = {});

struct PlanCandidate {
  std::vector<Action> plan;
  Rational goodness;
};

/// Every action sequence of length at most `horizon` whose goodness for
/// `goal` after `prior` is at least `threshold`, best first and then in
/// lexicographic order of the plans. Candidate actions are all
/// interpretations of the action variables; prefixes whose history is
/// undefined are not extended.
std::vector<PlanCandidate> plan_search(const TransitionSystem& ts, const StepSequence& prior,
                                       const Observation& goal, size_t horizon,
                                       const Rational& threshold);

/// Probability of a history, nullopt if undefined.
std::optional<Rational> history_probability(const TransitionSystem& ts, const History& h);

}  // namespace pcplus
