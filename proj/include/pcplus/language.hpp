// Probabilistic action descriptions and initial databases: core laws,
// parsing, validation and canonical printing.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcplus/formula.hpp"
#include "pcplus/rational.hpp"

namespace pcplus {

struct SourceLocation {
  int line = 0;
  int column = 0;
};

enum class Severity { kError, kWarning };

/// Parse diagnostics come from lexing, syntax and name resolution;
/// semantic diagnostics from validation and consistency checks.
enum class DiagnosticStage { kParse, kSemantic };

struct Diagnostic {
  Severity severity = Severity::kError;
  DiagnosticStage stage = DiagnosticStage::kSemantic;
  SourceLocation loc;
  std::string rule;  // stable identifier, e.g. "context-law.sum"
  std::string message;
};

std::string to_string(const Diagnostic& d);
bool has_errors(const std::vector<Diagnostic>& ds);

/// caused head if condition
struct StaticLaw {
  Formula head;
  Formula condition;
  SourceLocation loc;
  friend bool operator==(const StaticLaw& a, const StaticLaw& b) {
    return a.head == b.head && a.condition == b.condition;
  }
};

/// caused head if condition after trigger
struct DynamicLaw {
  Formula head;
  Formula condition;
  Formula trigger;
  SourceLocation loc;
  bool is_execution_denial() const { return head.is_false() && condition.is_true(); }
  friend bool operator==(const DynamicLaw& a, const DynamicLaw& b) {
    return a.head == b.head && a.condition == b.condition && a.trigger == b.trigger;
  }
};

/// var = (x1: p1, ..., xn: pn) after trigger. A true trigger makes the law
/// static.
struct ContextLaw {
  VarId var = 0;
  std::vector<std::pair<ValueId, Rational>> distribution;
  Formula trigger;
  SourceLocation loc;

  /// Probability of value x; zero if x is not listed.
  Rational probability(ValueId x) const;
  friend bool operator==(const ContextLaw& a, const ContextLaw& b) {
    return a.var == b.var && a.distribution == b.distribution && a.trigger == b.trigger;
  }
};

/// Common shape of action descriptions and initial databases.
struct Description {
  std::vector<StaticLaw> static_laws;
  std::vector<DynamicLaw> dynamic_laws;
  std::vector<ContextLaw> context_laws;

  /// Context variables occurring in any law, sorted.
  std::vector<VarId> context_variables(const Signature& sig) const;
  /// The first context law for v, or nullptr.
  const ContextLaw* context_law(VarId v) const;

  friend bool operator==(const Description&, const Description&) = default;
};

struct ActionDescription : Description {};
struct InitialDatabase : Description {};

/// One domain file: the shared signature, D0 and D.
struct Domain {
  Signature signature;
  InitialDatabase initial;
  ActionDescription dynamics;
};

bool operator==(const Domain& a, const Domain& b);

struct ParseResult {
  std::optional<Domain> domain;  // set iff no error diagnostics
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return domain.has_value(); }
  /// True when some error came from lexing, syntax or name resolution.
  bool has_parse_errors() const;
};

/// Parses, desugars, grounds and validates a domain file. Warnings are kept
/// on success.
ParseResult parse(std::string_view text);

/// All structural checks on a parsed domain. Empty iff every invariant
/// holds; warnings do not count as failures.
std::vector<Diagnostic> validate(const Domain& domain);

/// Canonical text that parses back to an equal domain.
std::string pretty_print(const Domain& domain);

/// Parses a single formula against an existing signature. Returns the
/// formula or diagnostics (stage kParse).
struct FormulaParse {
  std::optional<Formula> formula;
  std::vector<Diagnostic> diagnostics;
};
FormulaParse parse_formula(const Signature& sig, std::string_view text);

}  // namespace pcplus
