#include <algorithm>
#include <map>
#include <set>

#include "pcplus/language.hpp"

namespace pcplus {

std::string to_string(const Diagnostic& d) {
  std::string out = std::to_string(d.loc.line) + ":" + std::to_string(d.loc.column) + ": ";
  out += d.severity == Severity::kError ? "error" : "warning";
  out += " [" + d.rule + "] " + d.message;
  return out;
}

bool has_errors(const std::vector<Diagnostic>& ds) {
  return std::any_of(ds.begin(), ds.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::kError; });
}

Rational ContextLaw::probability(ValueId x) const {
  for (const auto& [v, p] : distribution)
    if (v == x) return p;
  return 0;
}

std::vector<VarId> Description::context_variables(const Signature& sig) const {
  std::set<VarId> out;
  auto scan = [&](const Formula& f) {
    for (VarId v : f.variables())
      if (sig.cls(v) == VarClass::kContext) out.insert(v);
  };
  for (const auto& l : static_laws) { scan(l.head); scan(l.condition); }
  for (const auto& l : dynamic_laws) { scan(l.head); scan(l.condition); scan(l.trigger); }
  for (const auto& l : context_laws) {
    if (sig.cls(l.var) == VarClass::kContext) out.insert(l.var);
    scan(l.trigger);
  }
  return {out.begin(), out.end()};
}

const ContextLaw* Description::context_law(VarId v) const {
  for (const auto& l : context_laws)
    if (l.var == v) return &l;
  return nullptr;
}

bool operator==(const Domain& a, const Domain& b) {
  const auto& va = a.signature.variables();
  const auto& vb = b.signature.variables();
  if (va.size() != vb.size()) return false;
  for (size_t i = 0; i < va.size(); ++i)
    if (va[i].name != vb[i].name || va[i].cls != vb[i].cls || va[i].domain != vb[i].domain)
      return false;
  return a.initial == b.initial && a.dynamics == b.dynamics;
}

namespace {

class Checker {
 public:
  Checker(const Signature& sig, std::vector<Diagnostic>& out) : sig_(sig), out_(out) {}

  void error(SourceLocation loc, std::string rule, std::string msg) {
    out_.push_back({Severity::kError, DiagnosticStage::kSemantic, loc, std::move(rule), std::move(msg)});
  }
  void warning(SourceLocation loc, std::string rule, std::string msg) {
    out_.push_back({Severity::kWarning, DiagnosticStage::kSemantic, loc, std::move(rule), std::move(msg)});
  }

  // Name of the first variable in f failing pred, or empty.
  template <class Pred>
  std::string offender(const Formula& f, Pred pred) const {
    for (VarId v : f.variables())
      if (!pred(v)) return sig_.name(v);
    return {};
  }

  bool is_action(VarId v) const { return sig_.cls(v) == VarClass::kAction; }
  bool is_context(VarId v) const { return sig_.cls(v) == VarClass::kContext; }
  bool is_rigid(VarId v) const { return sig_.cls(v) == VarClass::kRigid; }

  void check_static(const StaticLaw& l) {
    auto fluent_head = offender(l.head, [&](VarId v) { return sig_.is_fluent(v); });
    auto action_cond = offender(l.condition, [&](VarId v) { return !is_action(v); });
    if (fluent_head.empty() && action_cond.empty()) return;
    auto rigid_head = offender(l.head, [&](VarId v) { return is_rigid(v); });
    auto rigid_cond = offender(l.condition, [&](VarId v) { return is_rigid(v); });
    if (rigid_head.empty() && rigid_cond.empty()) return;
    std::string why = !fluent_head.empty()
                          ? "head mentions '" + fluent_head + "', which is not a fluent"
                          : "condition mentions action variable '" + action_cond + "'";
    error(l.loc, "static-law.classes",
          "a static law needs a fluent-only head and an action-free condition, or only rigid "
          "variables; " + why);
  }

  void check_dynamic(const DynamicLaw& l) {
    if (auto v = offender(l.head, [&](VarId x) { return sig_.cls(x) == VarClass::kSimpleFluent; });
        !v.empty())
      error(l.loc, "dynamic-law.head",
            "every variable in the head of a dynamic law must be a simple fluent; '" + v +
                "' is a " + std::string(to_string(sig_.cls(*sig_.find(v)))) + " variable");
    if (auto v = offender(l.condition, [&](VarId x) { return !is_action(x); }); !v.empty())
      error(l.loc, "dynamic-law.condition",
            "the 'if' part of a dynamic law may not mention action variable '" + v + "'");
    if (auto v = offender(l.trigger, [&](VarId x) { return !is_context(x); }); !v.empty())
      error(l.loc, "dynamic-law.trigger",
            "the 'after' part of a dynamic law may not mention context variable '" + v + "'");
  }

  void check_context_law(const ContextLaw& l) {
    const auto& name = sig_.name(l.var);
    if (!is_context(l.var)) {
      error(l.loc, "context-law.variable", "'" + name + "' is not a context variable");
      return;
    }
    std::vector<int> seen(sig_[l.var].domain.size(), 0);
    Rational sum = 0;
    for (const auto& [x, p] : l.distribution) {
      ++seen[x];
      sum += p;
      if (p <= 0)
        error(l.loc, "context-law.positive",
              "probability of '" + name + " = " + sig_.value_name(l.var, x) + "' must be positive");
    }
    for (ValueId x = 0; x < seen.size(); ++x) {
      if (seen[x] == 0)
        error(l.loc, "context-law.values",
              "value '" + sig_.value_name(l.var, x) + "' of '" + name + "' has no probability");
      else if (seen[x] > 1)
        error(l.loc, "context-law.values",
              "value '" + sig_.value_name(l.var, x) + "' of '" + name + "' is listed twice");
    }
    if (sum != 1)
      error(l.loc, "context-law.sum",
            "probabilities of '" + name + "' sum to " + to_exact_literal(sum) + ", not 1");
    if (auto v = offender(l.trigger, [&](VarId x) { return is_action(x); }); !v.empty())
      error(l.loc, "context-law.trigger",
            "the 'after' part of a context law may only mention action variables; found '" + v + "'");
  }

  void check_description(const Description& d, bool initial) {
    const char* where = initial ? "initial database" : "action description";
    for (const auto& l : d.static_laws) check_static(l);
    for (const auto& l : d.dynamic_laws) {
      if (initial)
        error(l.loc, "initial-database.static-only",
              "the initial database may only contain static laws");
      else
        check_dynamic(l);
    }
    std::map<VarId, std::vector<const ContextLaw*>> by_var;
    for (const auto& l : d.context_laws) {
      check_context_law(l);
      if (initial && !l.trigger.is_true())
        error(l.loc, "initial-database.static-only",
              "context laws of the initial database may not have an 'after' part");
      by_var[l.var].push_back(&l);
    }

    std::set<VarId> mentioned;
    auto scan = [&](const Formula& f) {
      for (VarId v : f.variables())
        if (is_context(v)) mentioned.insert(v);
    };
    for (const auto& l : d.static_laws) { scan(l.head); scan(l.condition); }
    for (const auto& l : d.dynamic_laws) { scan(l.head); scan(l.condition); scan(l.trigger); }

    for (const auto& [v, laws] : by_var) {
      if (laws.size() > 1)
        error(laws[1]->loc, "context-law.unique",
              "the " + std::string(where) + " has " + std::to_string(laws.size()) +
                  " context laws for '" + sig_.name(v) + "'; exactly one is required");
      if (!mentioned.count(v) && is_context(v))
        warning(laws[0]->loc, "context-law.unused",
                "context variable '" + sig_.name(v) + "' is not mentioned by any causal law of the " +
                    where);
    }
    for (VarId v : mentioned) {
      if (!by_var.count(v)) {
        SourceLocation loc;
        for (const auto& l : d.static_laws)
          if (l.head.mentions(v) || l.condition.mentions(v)) { loc = l.loc; break; }
        if (loc.line == 0)
          for (const auto& l : d.dynamic_laws)
            if (l.head.mentions(v) || l.condition.mentions(v) || l.trigger.mentions(v)) { loc = l.loc; break; }
        error(loc, "context-law.missing",
              "context variable '" + sig_.name(v) + "' occurs in the " + where +
                  " but has no context law there");
      }
    }
  }

 private:
  const Signature& sig_;
  std::vector<Diagnostic>& out_;
};

bool over_rigid(const Signature& sig, const StaticLaw& l) {
  auto rigid = [&](const Formula& f) {
    return std::all_of(f.variables().begin(), f.variables().end(),
                       [&](VarId v) { return sig.cls(v) == VarClass::kRigid; });
  };
  bool any = !l.head.variables().empty() || !l.condition.variables().empty();
  return any && rigid(l.head) && rigid(l.condition);
}

}  // namespace

std::vector<Diagnostic> validate(const Domain& domain) {
  std::vector<Diagnostic> out;
  const auto& sig = domain.signature;
  Checker checker(sig, out);
  checker.check_description(domain.initial, true);
  checker.check_description(domain.dynamics, false);

  for (const auto& l : domain.dynamics.static_laws) {
    if (!over_rigid(sig, l)) continue;
    bool present = std::any_of(domain.initial.static_laws.begin(), domain.initial.static_laws.end(),
                               [&](const StaticLaw& k) { return k == l; });
    if (!present)
      checker.error(l.loc, "rigid-law.initial",
                    "static law over rigid variables '" + to_string(sig, l.head) +
                        "' must also appear in the initial database");
  }

  auto used0 = domain.initial.context_variables(sig);
  auto used1 = domain.dynamics.context_variables(sig);
  for (VarId v : sig.of_class(VarClass::kContext)) {
    if (!std::binary_search(used0.begin(), used0.end(), v) &&
        !std::binary_search(used1.begin(), used1.end(), v))
      checker.warning({}, "context-variable.unused",
                      "context variable '" + sig.name(v) + "' is declared but never used");
  }
  return out;
}

}  // namespace pcplus
