#include "pcplus/transition.hpp"

#include <algorithm>
#include <set>

#include "pcplus/causal.hpp"
#include "pcplus/error.hpp"

namespace pcplus {

bool is_observation_formula(const Signature& sig, const Formula& f) {
  return std::all_of(f.variables().begin(), f.variables().end(),
                     [&](VarId v) { return sig.is_state_var(v); });
}

LabeledStep possibly(StepPayload p) { return {Modality::kPossibly, std::move(p)}; }
LabeledStep certainly(StepPayload p) { return {Modality::kCertainly, std::move(p)}; }

// ----------------------------------------------------------------- StateSet

StateSet::StateSet(std::vector<State> states) : states_(std::move(states)) {
  std::sort(states_.begin(), states_.end());
  states_.erase(std::unique(states_.begin(), states_.end()), states_.end());
}

bool StateSet::contains(const State& s) const {
  return std::binary_search(states_.begin(), states_.end(), s);
}

StateSet StateSet::united(const StateSet& other) const {
  StateSet out;
  std::set_union(states_.begin(), states_.end(), other.states_.begin(), other.states_.end(),
                 std::back_inserter(out.states_));
  return out;
}

StateSet StateSet::filtered(const Formula& f) const {
  StateSet out;
  for (const auto& s : states_)
    if (satisfies(s, f)) out.states_.push_back(s);
  return out;
}

bool StateSet::subset_of(const StateSet& other) const {
  return std::includes(other.states_.begin(), other.states_.end(), states_.begin(), states_.end());
}

// --------------------------------------------------------- TransitionSystem

TransitionSystem::TransitionSystem(Domain domain, TransitionOptions options)
    : domain_(std::move(domain)), options_(options) {
  const auto& sig = domain_.signature;
  state_vars_ = sig.state_variables();
  rigid_vars_ = sig.of_class(VarClass::kRigid);
  for (VarId v : state_vars_)
    if (sig.is_fluent(v)) fluent_vars_.push_back(v);
  action_vars_ = sig.of_class(VarClass::kAction);
  for (const auto& l : domain_.dynamics.dynamic_laws)
    if (l.is_execution_denial()) denials_.push_back(&l);
}

namespace {

// Self-support X = x <= X = x for every simple fluent and value.
void add_self_support(const Signature& sig, std::vector<CausalRule>& rules) {
  for (VarId v : sig.of_class(VarClass::kSimpleFluent))
    for (ValueId x = 0; x < sig[v].domain.size(); ++x) {
      auto a = Formula::atom(v, x);
      rules.push_back({a, a});
    }
}

std::vector<VarId> sorted_union(std::vector<VarId> a, const std::vector<VarId>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

void collect_context_vars(const Signature& sig, const Formula& f, std::set<VarId>& out) {
  for (VarId v : f.variables())
    if (sig.cls(v) == VarClass::kContext) out.insert(v);
}

}  // namespace

std::vector<Context> TransitionSystem::contexts_for(std::span<const VarId> vars,
                                                    const Description& d) const {
  const auto& sig = signature();
  std::vector<Context> out;
  for (auto& gamma : enumerate_interpretations(sig, vars, Interpretation(sig.size()))) {
    Rational p = 1;
    for (VarId v : gamma.scope()) {
      const ContextLaw* law = d.context_law(v);
      if (!law) throw Error("context variable '" + sig.name(v) + "' has no context law");
      p *= law->probability(gamma.at(v));
    }
    out.push_back({std::move(gamma), p});
  }
  return out;
}

std::vector<Context> TransitionSystem::initial_contexts() const {
  auto vars = domain_.initial.context_variables(signature());
  return contexts_for(vars, domain_.initial);
}

StateSet TransitionSystem::initial_state_set(const Context& context) const {
  const auto& sig = signature();
  CausalTheory t;
  t.scope = state_vars_;
  for (const auto& l : domain_.initial.static_laws)
    t.rules.push_back({partial_eval(context.assignment, l.head),
                       partial_eval(context.assignment, l.condition)});
  add_self_support(sig, t.rules);
  return StateSet(models(sig, t, Interpretation(sig.size())));
}

StateSet TransitionSystem::compute_state_space() const {
  const auto& sig = signature();
  StateSet out;
  for (const auto& gamma : initial_contexts()) out = out.united(initial_state_set(gamma));

  std::set<VarId> ctx;
  for (const auto& l : domain_.dynamics.static_laws) {
    collect_context_vars(sig, l.head, ctx);
    collect_context_vars(sig, l.condition, ctx);
  }
  std::vector<VarId> ctx_vars(ctx.begin(), ctx.end());
  for_each_interpretation(sig, ctx_vars, Interpretation(sig.size()), [&](const Interpretation& gamma) {
    CausalTheory t;
    t.scope = state_vars_;
    for (const auto& l : domain_.dynamics.static_laws)
      t.rules.push_back({partial_eval(gamma, l.head), partial_eval(gamma, l.condition)});
    add_self_support(sig, t.rules);
    out = out.united(StateSet(models(sig, t, Interpretation(sig.size()))));
    return true;
  });
  return out;
}

const StateSet& TransitionSystem::state_space() const {
  {
    std::lock_guard lock(mu_);
    if (state_space_) return *state_space_;
  }
  StateSet computed = compute_state_space();
  std::lock_guard lock(mu_);
  if (!state_space_) state_space_ = std::move(computed);
  return *state_space_;
}

std::vector<Action> TransitionSystem::all_actions() const {
  const auto& sig = signature();
  return enumerate_interpretations(sig, action_vars_, Interpretation(sig.size()));
}

Action TransitionSystem::make_action(std::span<const VarId> true_vars) const {
  const auto& sig = signature();
  Action a(sig.size());
  for (VarId v : action_vars_) a = a.with(v, kFalse);
  for (VarId v : true_vars) {
    if (v >= sig.size() || sig.cls(v) != VarClass::kAction)
      throw Error("'" + (v < sig.size() ? sig.name(v) : std::to_string(v)) +
                  "' is not an action variable");
    a = a.with(v, kTrue);
  }
  return a;
}

std::string TransitionSystem::describe_action(const Action& a) const {
  const auto& sig = signature();
  std::string out = "{";
  bool first = true;
  for (VarId v : action_vars_) {
    if (a.get(v) != kTrue) continue;
    if (!first) out += ", ";
    first = false;
    out += sig.name(v);
  }
  return out + "}";
}

bool TransitionSystem::executable(const State& s, const Action& a) const {
  Interpretation sa = s.merged(a);
  return std::none_of(denials_.begin(), denials_.end(),
                      [&](const DynamicLaw* l) { return satisfies(sa, l->trigger); });
}

std::vector<VarId> TransitionSystem::state_context_vars(const State& s, const Action& a) const {
  const auto& sig = signature();
  std::set<VarId> out;
  for (const auto& l : domain_.dynamics.static_laws) {
    collect_context_vars(sig, l.head, out);
    collect_context_vars(sig, l.condition, out);
  }
  Interpretation sa = s.merged(a);
  for (const auto& l : domain_.dynamics.dynamic_laws) {
    if (!satisfies(sa, l.trigger)) continue;
    collect_context_vars(sig, l.head, out);
    collect_context_vars(sig, l.condition, out);
  }
  return {out.begin(), out.end()};
}

std::vector<VarId> TransitionSystem::compute_action_context_vars(const Action& a) const {
  std::vector<VarId> out;
  for (const auto& s : state_space())
    if (executable(s, a)) out = sorted_union(std::move(out), state_context_vars(s, a));
  return out;
}

std::vector<VarId> TransitionSystem::action_context_vars(const Action& a) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = action_ctx_vars_.find(a); it != action_ctx_vars_.end()) return it->second;
  }
  auto vars = compute_action_context_vars(a);
  std::lock_guard lock(mu_);
  action_ctx_vars_.emplace(a, vars);
  return vars;
}

std::vector<Context> TransitionSystem::action_contexts(const Action& a) const {
  return contexts_for(action_context_vars(a), domain_.dynamics);
}

StateSet TransitionSystem::compute_successors(const State& s, const Action& a,
                                              const Interpretation& ctx) const {
  const auto& sig = signature();
  if (!executable(s, a)) return {};

  bool rigid_equal = options_.uniqueness == Uniqueness::kRigidEqual;
  // Under the rigid-equal reading the rigid part of s is fixed, so it is
  // substituted into every rule and only fluents are searched.
  Interpretation fixed = rigid_equal ? ctx.merged(s.restricted(rigid_vars_)) : ctx;
  Interpretation sa = s.merged(a);

  CausalTheory t;
  t.scope = rigid_equal ? fluent_vars_ : state_vars_;
  auto add_rule = [&](const Formula& head, const Formula& body) {
    Formula h = partial_eval(fixed, head);
    Formula b = partial_eval(fixed, body);
    for (VarId v : b.variables())
      if (!sig.is_state_var(v))
        throw Error("context variable '" + sig.name(v) + "' is not assigned by the context");
    t.rules.push_back({std::move(h), std::move(b)});
  };
  for (const auto& l : domain_.dynamics.static_laws) add_rule(l.head, l.condition);
  for (const auto& l : domain_.dynamics.dynamic_laws)
    if (satisfies(sa, l.trigger)) add_rule(l.head, l.condition);

  Interpretation base = rigid_equal ? s.restricted(rigid_vars_) : Interpretation(sig.size());
  std::vector<State> out;
  for (auto& m : models(sig, t, base)) {
    State next = m.restricted(state_vars_);
    if (!rigid_equal && next.restricted(rigid_vars_) != s.restricted(rigid_vars_)) continue;
    out.push_back(std::move(next));
  }
  return StateSet(std::move(out));
}

StateSet TransitionSystem::successors(const State& s, const Action& a, const Context& context) const {
  auto key = std::make_tuple(s, a, context.assignment);
  {
    std::lock_guard lock(mu_);
    if (auto it = successors_.find(key); it != successors_.end()) return it->second;
  }
  StateSet out = compute_successors(s, a, context.assignment);
  std::lock_guard lock(mu_);
  successors_.emplace(std::move(key), out);
  return out;
}

StateSet TransitionSystem::observe_state(const State& s, const Observation& o) const {
  if (satisfies(s, o.formula)) return StateSet({s});
  return {};
}

bool TransitionSystem::step_precondition(const StateSet& states, const LabeledStep& step) const {
  auto holds = [&](const State& s) {
    return step.is_action() ? executable(s, step.action()) : satisfies(s, step.observation().formula);
  };
  if (step.modality == Modality::kPossibly) return std::any_of(states.begin(), states.end(), holds);
  return std::all_of(states.begin(), states.end(), holds);
}

std::vector<Context> TransitionSystem::step_contexts(const LabeledStep& step) const {
  if (step.is_action()) return action_contexts(step.action());
  return {Context{Interpretation(signature().size()), 1}};
}

StateSet TransitionSystem::step_targets(const StateSet& states, const LabeledStep& step,
                                        const Context& context) const {
  if (!step_precondition(states, step))
    throw PreconditionError("step precondition does not hold on the state set");
  std::vector<State> out;
  for (const auto& s : states) {
    StateSet part = step.is_action() ? successors(s, step.action(), context)
                                     : observe_state(s, step.observation());
    out.insert(out.end(), part.begin(), part.end());
  }
  return StateSet(std::move(out));
}

std::map<StateSet, Rational> TransitionSystem::transition_distribution(const StateSet& states,
                                                                       const LabeledStep& step) const {
  if (!step_precondition(states, step))
    throw PreconditionError("step precondition does not hold on the state set");
  std::map<StateSet, Rational> out;
  for (const auto& gamma : step_contexts(step))
    out[step_targets(states, step, gamma)] += gamma.probability;
  return out;
}

std::vector<Diagnostic> TransitionSystem::check_consistency() const {
  const auto& sig = signature();
  std::vector<Diagnostic> out;
  auto report = [&](Severity sev, std::string rule, std::string msg) {
    out.push_back({sev, DiagnosticStage::kSemantic, {}, std::move(rule), std::move(msg)});
  };

  for (const auto& gamma : initial_contexts())
    if (initial_state_set(gamma).empty())
      report(Severity::kError, "consistency.initial",
             "initial context " + to_string(sig, gamma.assignment) + " admits no state");

  const auto& space = state_space();
  for (const auto& a : all_actions()) {
    auto contexts = action_contexts(a);
    for (VarId v : action_context_vars(a)) {
      const ContextLaw* law = domain_.dynamics.context_law(v);
      if (law && !satisfies(a, law->trigger))
        report(Severity::kWarning, "context-law.trigger",
               "action " + describe_action(a) + " depends on '" + sig.name(v) +
                   "' but does not satisfy the 'after' part of its context law");
    }
    for (const auto& s : space) {
      if (!executable(s, a)) continue;
      for (const auto& gamma : contexts)
        if (successors(s, a, gamma).empty())
          report(Severity::kError, "consistency.transition",
                 "action " + describe_action(a) + " is executable in state " + describe(s) +
                     " but has no successor under context " + to_string(sig, gamma.assignment));
    }
  }
  return out;
}

}  // namespace pcplus
