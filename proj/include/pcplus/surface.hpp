// Surface syntax of domain files before grounding and desugaring.
#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "pcplus/language.hpp"

namespace pcplus::surface {

struct Formula {
  enum class Kind { kTrue, kFalse, kAtom, kNotEqual, kBareName, kNot, kAnd, kOr };
  Kind kind = Kind::kTrue;
  std::string name;   // atoms and bare names
  std::string value;  // atoms
  SourceLocation loc;
  std::vector<Formula> children;
};

struct DistributionEntry {
  std::string value;
  Rational probability;
  SourceLocation loc;
};

struct Law {
  enum class Kind { kCaused, kNonexecutable, kInertial, kContextLaw };
  Kind kind = Kind::kCaused;
  SourceLocation loc;
  std::optional<Formula> head;       // caused
  std::optional<Formula> condition;  // caused ... if
  std::optional<Formula> trigger;    // caused ... after, nonexecutable, context-law ... after
  std::vector<std::string> names;    // inertial
  std::string context_var;           // context-law
  std::vector<DistributionEntry> distribution;
};

struct Declaration {
  VarClass cls = VarClass::kSimpleFluent;
  std::vector<std::string> names;
  std::vector<std::string> domain;
  std::optional<std::vector<DistributionEntry>> distribution;  // ctx c : {...} = (...)
  SourceLocation loc;
};

struct Binder {
  std::string meta;
  std::vector<std::string> values;
};

struct Guard {
  std::string lhs;
  bool equal = false;
  std::string rhs;
};

struct Statement;

struct Forall {
  std::vector<Binder> binders;
  std::vector<Guard> guards;
  std::vector<Statement> body;
  SourceLocation loc;
};

struct Statement {
  std::variant<Declaration, Law, Forall> node;
};

enum class Section { kTop, kInitially, kDynamics };

struct File {
  std::vector<std::pair<Section, Statement>> statements;
};

/// Syntax only; names are not resolved.
File parse_file(std::string_view text, std::vector<Diagnostic>& diagnostics);

/// Replaces metavariables in every identifier and value.
using Substitution = std::map<std::string, std::string>;
Law substitute(const Law& law, const Substitution& sub);
Declaration substitute(const Declaration& decl, const Substitution& sub);

/// Unfolds forall blocks into ground statements, in source order.
std::vector<std::variant<Declaration, Law>> expand(const Statement& stmt);

/// Lowers one ground surface law into core laws: `inertial X` into one
/// dynamic law per value, `nonexecutable H` into a denial, and omitted
/// `if`/`after` parts into true. Name errors are appended to diagnostics.
using CoreLaw = std::variant<StaticLaw, DynamicLaw, ContextLaw>;
std::vector<CoreLaw> desugar(const Signature& sig, const Law& law,
                             std::vector<Diagnostic>& diagnostics);

/// Resolves names against the signature. Bare names must be action
/// variables and stand for name = true.
std::optional<pcplus::Formula> resolve(const Signature& sig, const Formula& f,
                                       std::vector<Diagnostic>& diagnostics);

}  // namespace pcplus::surface
