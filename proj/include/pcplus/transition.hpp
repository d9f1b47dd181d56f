// States, actions, observations and the probabilistic transitions between
// sets of states induced by an initial database and an action description.
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <tuple>
#include <variant>
#include <vector>

#include "pcplus/formula.hpp"
#include "pcplus/language.hpp"
#include "pcplus/rational.hpp"

namespace pcplus {

/// Interpretation of exactly the rigid and fluent variables.
using State = Interpretation;
/// Interpretation of exactly the action variables.
using Action = Interpretation;

/// Formula over fluent and rigid variables.
struct Observation {
  Formula formula;
  friend bool operator==(const Observation& a, const Observation& b) { return a.formula == b.formula; }
};

/// True iff f mentions no action or context variable.
bool is_observation_formula(const Signature& sig, const Formula& f);

enum class Modality {
  kPossibly,   // <>: some state of the set
  kCertainly,  // []: every state of the set
};

using StepPayload = std::variant<Action, Observation>;

struct LabeledStep {
  Modality modality = Modality::kPossibly;
  StepPayload payload;

  bool is_action() const { return std::holds_alternative<Action>(payload); }
  const Action& action() const { return std::get<Action>(payload); }
  const Observation& observation() const { return std::get<Observation>(payload); }
};

LabeledStep possibly(StepPayload p);
LabeledStep certainly(StepPayload p);

/// Assignment to a set of context variables with its product probability.
struct Context {
  Interpretation assignment;
  Rational probability;
};

/// Canonically sorted, duplicate-free set of states.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::vector<State> states);

  const std::vector<State>& states() const { return states_; }
  size_t size() const { return states_.size(); }
  bool empty() const { return states_.empty(); }
  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }
  bool contains(const State& s) const;

  StateSet united(const StateSet& other) const;
  /// States satisfying f.
  StateSet filtered(const Formula& f) const;
  bool subset_of(const StateSet& other) const;

  friend bool operator==(const StateSet&, const StateSet&) = default;
  friend auto operator<=>(const StateSet& a, const StateSet& b) { return a.states_ <=> b.states_; }

 private:
  std::vector<State> states_;
};

/// Range of the competing interpretations in the unique-model test for
/// successor states.
enum class Uniqueness {
  kRigidEqual,          // only interpretations agreeing with s on rigid variables
  kAllInterpretations,  // every interpretation of rigid and fluent variables
};

struct TransitionOptions {
  Uniqueness uniqueness = Uniqueness::kRigidEqual;
};

/// The transition semantics of one domain. Derived data (state space,
/// per-action context variables, successor sets) is computed on demand and
/// memoized; all public operations are logically const and safe to call
/// concurrently.
class TransitionSystem {
 public:
  explicit TransitionSystem(Domain domain, TransitionOptions options = {});

  const Domain& domain() const { return domain_; }
  const Signature& signature() const { return domain_.signature; }
  const TransitionOptions& options() const { return options_; }

  // -- initial database

  /// One context per interpretation of the initial context variables with
  /// the product of their law probabilities.
  std::vector<Context> initial_contexts() const;
  /// Models over rigid and fluent variables of the static laws of the
  /// initial database under the context, with self-support for simple
  /// fluents.
  StateSet initial_state_set(const Context& context) const;

  // -- states and actions

  const StateSet& state_space() const;
  std::vector<Action> all_actions() const;
  /// Action making exactly the given action variables true.
  Action make_action(std::span<const VarId> true_vars) const;

  /// s together with a violates no execution denial.
  bool executable(const State& s, const Action& a) const;
  /// Context variables of static laws and of dynamic laws triggered by s, a.
  std::vector<VarId> state_context_vars(const State& s, const Action& a) const;
  /// Union of state_context_vars over the states where a is executable.
  std::vector<VarId> action_context_vars(const Action& a) const;
  std::vector<Context> action_contexts(const Action& a) const;

  /// Causally explained successors of s under a and context. Empty when a
  /// is not executable in s.
  StateSet successors(const State& s, const Action& a, const Context& context) const;
  /// {s} if s satisfies the observation, otherwise empty.
  StateSet observe_state(const State& s, const Observation& o) const;

  // -- labeled steps over state sets

  bool step_precondition(const StateSet& states, const LabeledStep& step) const;
  std::vector<Context> step_contexts(const LabeledStep& step) const;
  /// Union of per-state targets. Throws PreconditionError.
  StateSet step_targets(const StateSet& states, const LabeledStep& step, const Context& context) const;
  /// Target sets grouped by set equality with summed context probability.
  /// Throws PreconditionError.
  std::map<StateSet, Rational> transition_distribution(const StateSet& states,
                                                       const LabeledStep& step) const;

  /// Empty initial state sets, empty successor sets for executable actions,
  /// and context laws whose trigger the action does not satisfy (warning).
  std::vector<Diagnostic> check_consistency() const;

  std::string describe(const State& s) const { return to_string(signature(), s); }
  std::string describe_action(const Action& a) const;

 private:
  StateSet compute_state_space() const;
  StateSet compute_successors(const State& s, const Action& a, const Interpretation& ctx) const;
  std::vector<Context> contexts_for(std::span<const VarId> vars, const Description& d) const;
  std::vector<VarId> compute_action_context_vars(const Action& a) const;

  Domain domain_;
  TransitionOptions options_;
  std::vector<VarId> state_vars_;
  std::vector<VarId> rigid_vars_;
  std::vector<VarId> fluent_vars_;
  std::vector<VarId> action_vars_;
  std::vector<const DynamicLaw*> denials_;

  mutable std::mutex mu_;
  mutable std::optional<StateSet> state_space_;
  mutable std::map<Action, std::vector<VarId>> action_ctx_vars_;
  mutable std::map<std::tuple<State, Action, Interpretation>, StateSet> successors_;
};

}  // namespace pcplus
