#include "pcplus/causal.hpp"

#include <algorithm>

namespace pcplus {

namespace {

bool satisfies_all(const Interpretation& i, const std::vector<Formula>& fs) {
  return std::all_of(fs.begin(), fs.end(), [&](const Formula& f) { return satisfies(i, f); });
}

// Collects atoms X = x asserted by the conjunctive skeleton of f. Returns
// false if the skeleton contains a literal false.
bool collect_pins(const Formula& f, std::vector<VarId>& pinned) {
  switch (f.kind()) {
    case Formula::Kind::kConstant: return f.constant_value();
    case Formula::Kind::kAtom: pinned.push_back(f.var()); return true;
    case Formula::Kind::kAnd: return collect_pins(f.lhs(), pinned) && collect_pins(f.rhs(), pinned);
    case Formula::Kind::kNot: return true;
  }
  return true;
}

// i satisfies `heads`; is it the only interpretation of `scope` that does?
bool unique_satisfier(const Signature& sig, const std::vector<VarId>& scope,
                      const std::vector<Formula>& heads, const Interpretation& i) {
  std::vector<VarId> pinned;
  for (const auto& h : heads) collect_pins(h, pinned);
  std::sort(pinned.begin(), pinned.end());
  std::vector<VarId> free;
  std::set_difference(scope.begin(), scope.end(), pinned.begin(), pinned.end(),
                      std::back_inserter(free));
  if (free.empty()) return true;

  // Competitors share i's values on pinned variables.
  Interpretation fixed = i.restricted(pinned);
  bool unique = true;
  for_each_interpretation(sig, free, fixed, [&](const Interpretation& j) {
    if (j != i && satisfies_all(j, heads)) {
      unique = false;
      return false;
    }
    return true;
  });
  return unique;
}

std::vector<VarId> sorted_scope(const CausalTheory& t) {
  std::vector<VarId> s = t.scope;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

std::vector<Formula> reduct(const CausalTheory& t, const Interpretation& i) {
  std::vector<Formula> out;
  for (const auto& r : t.rules)
    if (satisfies(i, r.body)) out.push_back(r.head);
  return out;
}

bool is_model(const Signature& sig, const CausalTheory& t, const Interpretation& i) {
  auto heads = reduct(t, i);
  if (!satisfies_all(i, heads)) return false;
  auto scope = sorted_scope(t);
  bool unique = true;
  for_each_interpretation(sig, scope, i, [&](const Interpretation& j) {
    if (j != i && satisfies_all(j, heads)) {
      unique = false;
      return false;
    }
    return true;
  });
  return unique;
}

std::vector<Interpretation> models(const Signature& sig, const CausalTheory& t,
                                   const Interpretation& base) {
  auto scope = sorted_scope(t);
  std::vector<Interpretation> out;
  for_each_interpretation(sig, scope, base, [&](const Interpretation& i) {
    auto heads = reduct(t, i);
    if (satisfies_all(i, heads) && unique_satisfier(sig, scope, heads, i)) out.push_back(i);
    return true;
  });
  return out;
}

bool is_consistent(const Signature& sig, const CausalTheory& t) {
  return !models(sig, t).empty();
}

}  // namespace pcplus
