#include "pcplus/query.hpp"

#include <algorithm>
#include <functional>

#include "pcplus/error.hpp"

namespace pcplus {

namespace {

void append(History& h, const StepSequence& steps, Modality m) {
  for (const auto& s : steps) h.steps.push_back({m, s});
}

QueryResult ratio(const TransitionSystem& ts, History numerator, History denominator,
                  const QueryOptions& options) {
  QueryResult r;
  r.numerator = std::move(numerator);
  r.denominator = std::move(denominator);
  r.denominator_probability = history_probability(ts, r.denominator);
  if (options.trace) {
    r.trace = belief_trace(ts, r.numerator);
    if (r.trace.size() == r.numerator.steps.size() + 1)
      r.numerator_probability = r.trace.back().probability;
  } else {
    r.numerator_probability = history_probability(ts, r.numerator);
  }
  if (!r.denominator_probability || *r.denominator_probability == 0) return r;
  r.value = r.numerator_probability ? *r.numerator_probability / *r.denominator_probability
                                    : Rational(0);
  return r;
}

}  // namespace

std::optional<Rational> history_probability(const TransitionSystem& ts, const History& h) {
  auto b = belief(ts, h);
  if (!b) return std::nullopt;
  return b->probability;
}

QueryResult pred(const TransitionSystem& ts, const StepSequence& prior, const StepSequence& query,
                 const QueryOptions& options) {
  History den, num;
  append(den, prior, Modality::kPossibly);
  num = den;
  append(num, query, Modality::kCertainly);
  return ratio(ts, std::move(num), std::move(den), options);
}

QueryResult post(const TransitionSystem& ts, const StepSequence& occurred,
                 const StepSequence& hypothesis, const QueryOptions& options) {
  History num, den;
  size_t k = 0;
  for (const auto& step : hypothesis) {
    if (k < occurred.size() && step == occurred[k]) {
      num.steps.push_back(possibly(step));
      den.steps.push_back(possibly(step));
      ++k;
      continue;
    }
    if (!std::holds_alternative<Observation>(step))
      throw SubsequenceError("the occurred sequence must equal the hypothesis with some "
                             "observations removed; an action does not match");
    num.steps.push_back(certainly(step));
  }
  if (k != occurred.size())
    throw SubsequenceError("the occurred sequence is not a subsequence of the hypothesis");
  return ratio(ts, std::move(num), std::move(den), options);
}

QueryResult plan_goodness(const TransitionSystem& ts, const StepSequence& prior,
                          const std::vector<Action>& plan, const Observation& goal,
                          const QueryOptions& options) {
  StepSequence query(plan.begin(), plan.end());
  query.push_back(goal);
  return pred(ts, prior, query, options);
}

std::vector<PlanCandidate> plan_search(const TransitionSystem& ts, const StepSequence& prior,
                                       const Observation& goal, size_t horizon,
                                       const Rational& threshold) {
  History h;
  append(h, prior, Modality::kPossibly);
  auto start = belief(ts, h);
  if (!start || start->probability == 0) return {};
  const Rational base = start->probability;
  const auto actions = ts.all_actions();
  const LabeledStep goal_step = certainly(goal);

  std::vector<PlanCandidate> found;
  std::vector<Action> plan;
  std::function<void(const BeliefState&)> explore = [&](const BeliefState& b) {
    auto reached = update(ts, b, goal_step);
    Rational goodness = reached ? reached->probability / base : Rational(0);
    if (goodness >= threshold) found.push_back({plan, goodness});
    if (plan.size() == horizon) return;
    for (const auto& a : actions) {
      auto next = update(ts, b, certainly(a));
      if (!next) continue;
      plan.push_back(a);
      explore(*next);
      plan.pop_back();
    }
  };
  explore(*start);

  std::stable_sort(found.begin(), found.end(), [](const PlanCandidate& x, const PlanCandidate& y) {
    if (x.goodness != y.goodness) return x.goodness > y.goodness;
    return x.plan < y.plan;
  });
  return found;
}

}  // namespace pcplus
