// Nonmonotonic causal theories: reduct, unique-model test, model search.
#pragma once

#include <vector>

#include "pcplus/formula.hpp"

namespace pcplus {

/// head <= body: "if body holds, there is a cause for head".
struct CausalRule {
  Formula head;
  Formula body;
};

/// A finite set of rules together with the variables the unique-model test
/// quantifies over. Heads must only mention scope variables; bodies may
/// mention variables outside the scope only if the caller's interpretation
/// assigns them, which in practice means context variables are partially
/// evaluated away before model search.
struct CausalTheory {
  std::vector<CausalRule> rules;
  std::vector<VarId> scope;
};

/// Heads of the rules whose bodies i satisfies, in rule order.
std::vector<Formula> reduct(const CausalTheory& t, const Interpretation& i);

/// True iff i satisfies its reduct and no other interpretation of t.scope
/// does. Uses the plain quadratic check.
bool is_model(const Signature& sig, const CausalTheory& t, const Interpretation& i);

/// All models over t.scope in canonical order. `base` supplies values for
/// variables outside the scope that bodies may read.
///
/// Candidates are enumerated exhaustively; the uniqueness check restricts
/// the competing interpretations to those agreeing with every atom the
/// reduct asserts conjunctively, which is exact because any competitor must
/// satisfy those atoms too.
std::vector<Interpretation> models(const Signature& sig, const CausalTheory& t,
                                   const Interpretation& base = {});

bool is_consistent(const Signature& sig, const CausalTheory& t);

}  // namespace pcplus
