// Variables, multi-valued propositional formulas and interpretations.
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pcplus {

using VarId = std::uint32_t;
using ValueId = std::uint32_t;

enum class VarClass { kRigid, kSimpleFluent, kStaticFluent, kAction, kContext };

std::string_view to_string(VarClass cls);

/// Values of every action variable: index 0 is false, index 1 is true.
inline constexpr ValueId kFalse = 0;
inline constexpr ValueId kTrue = 1;

struct VariableDecl {
  std::string name;
  VarClass cls;
  std::vector<std::string> domain;
};

/// Ordered set of declared variables. Declaration order is the canonical
/// variable order used by interpretation enumeration and comparison.
class Signature {
 public:
  /// Throws SignatureError on a duplicate name, an empty domain, duplicate
  /// values, or an action variable whose domain is not {false, true}.
  VarId add(std::string name, VarClass cls, std::vector<std::string> domain);
  VarId add_action(std::string name);

  size_t size() const { return vars_.size(); }
  const VariableDecl& operator[](VarId v) const { return vars_.at(v); }
  const std::vector<VariableDecl>& variables() const { return vars_; }

  std::optional<VarId> find(std::string_view name) const;
  std::optional<ValueId> find_value(VarId v, std::string_view value) const;

  VarClass cls(VarId v) const { return vars_.at(v).cls; }
  bool is_fluent(VarId v) const {
    auto c = cls(v);
    return c == VarClass::kSimpleFluent || c == VarClass::kStaticFluent;
  }
  /// Rigid and fluent variables: the scope of a state.
  bool is_state_var(VarId v) const { return cls(v) == VarClass::kRigid || is_fluent(v); }

  std::vector<VarId> of_class(VarClass cls) const;
  std::vector<VarId> state_variables() const;

  const std::string& name(VarId v) const { return vars_.at(v).name; }
  const std::string& value_name(VarId v, ValueId x) const {
    return vars_.at(v).domain.at(x);
  }

 private:
  std::vector<VariableDecl> vars_;
  std::unordered_map<std::string, VarId> index_;
};

/// Immutable formula over atoms X = x built from true, false, negation and
/// conjunction. Disjunction and inequality are expanded when constructed.
/// Copies share structure.
class Formula {
 public:
  enum class Kind { kConstant, kAtom, kNot, kAnd };

  Formula();  // true

  static Formula top();
  static Formula bottom();
  static Formula constant(bool value);
  static Formula atom(VarId var, ValueId value);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  /// not(not lhs and not rhs)
  static Formula disjunction(Formula lhs, Formula rhs);
  /// not(var = value)
  static Formula not_equal(VarId var, ValueId value);
  /// Left-nested conjunction; true for an empty list.
  static Formula conjoin(std::span<const Formula> parts);

  Kind kind() const;
  bool constant_value() const;
  VarId var() const;
  ValueId value() const;
  const Formula& operand() const;
  const Formula& lhs() const;
  const Formula& rhs() const;

  /// Variables occurring in the formula, sorted and unique.
  const std::vector<VarId>& variables() const;
  bool mentions(VarId v) const;

  bool is_true() const { return kind() == Kind::kConstant && constant_value(); }
  bool is_false() const { return kind() == Kind::kConstant && !constant_value(); }

  /// Structural equality.
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Finite partial map from variables to values of their domains. Stored
/// densely by variable id; comparison is lexicographic in declaration order
/// and then domain order, which is the canonical order of state sets.
class Interpretation {
 public:
  Interpretation() = default;
  explicit Interpretation(size_t num_vars) : values_(num_vars, kUnassigned) {}

  Interpretation with(VarId v, ValueId x) const;
  bool assigns(VarId v) const { return v < values_.size() && values_[v] != kUnassigned; }
  std::optional<ValueId> get(VarId v) const;
  /// Throws UnscopedVariableError when v is not assigned.
  ValueId at(VarId v) const;

  std::vector<VarId> scope() const;
  bool empty() const;

  /// Assignments of this interpretation restricted to vars.
  Interpretation restricted(std::span<const VarId> vars) const;
  /// Union of two interpretations; where both assign a variable, this one
  /// wins (callers combine disjoint scopes).
  Interpretation merged(const Interpretation& other) const;

  friend bool operator==(const Interpretation& a, const Interpretation& b);
  friend std::strong_ordering operator<=>(const Interpretation& a, const Interpretation& b);

 private:
  static constexpr std::int32_t kUnassigned = -1;
  std::int32_t raw(size_t i) const { return i < values_.size() ? values_[i] : kUnassigned; }
  std::vector<std::int32_t> values_;
};

/// Truth of f under i. Throws UnscopedVariableError if f mentions a
/// variable i does not assign.
bool satisfies(const Interpretation& i, const Formula& f);

/// Replaces every atom over a variable assigned by i with true or false.
Formula partial_eval(const Interpretation& i, const Formula& f);

/// All interpretations of vars extending base, last variable varying
/// fastest. vars are visited in declaration order regardless of their order
/// in the argument. Throws UndeclaredVariableError.
std::vector<Interpretation> enumerate_interpretations(const Signature& sig,
                                                      std::span<const VarId> vars,
                                                      const Interpretation& base = {});

/// Streaming form of enumerate_interpretations; stops early when fn returns
/// false.
void for_each_interpretation(const Signature& sig, std::span<const VarId> vars,
                             const Interpretation& base,
                             const std::function<bool(const Interpretation&)>& fn);

/// Number of interpretations of vars (saturates at SIZE_MAX).
size_t count_interpretations(const Signature& sig, std::span<const VarId> vars);

std::string to_string(const Signature& sig, const Formula& f);
std::string to_string(const Signature& sig, const Interpretation& i);

}  // namespace pcplus
