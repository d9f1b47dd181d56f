#include "pcplus/formula.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <set>

#include "pcplus/error.hpp"

namespace pcplus {

std::string_view to_string(VarClass cls) {
  switch (cls) {
    case VarClass::kRigid: return "rigid";
    case VarClass::kSimpleFluent: return "simple fluent";
    case VarClass::kStaticFluent: return "statically determined fluent";
    case VarClass::kAction: return "action";
    case VarClass::kContext: return "context";
  }
  return "?";
}

// ---------------------------------------------------------------- Signature

VarId Signature::add(std::string name, VarClass cls, std::vector<std::string> domain) {
  if (index_.count(name)) throw SignatureError("variable '" + name + "' declared twice");
  if (domain.empty()) throw SignatureError("variable '" + name + "' has an empty domain");
  std::set<std::string> seen;
  for (const auto& v : domain)
    if (!seen.insert(v).second)
      throw SignatureError("value '" + v + "' repeated in the domain of '" + name + "'");
  if (cls == VarClass::kAction &&
      (domain.size() != 2 || domain[kFalse] != "false" || domain[kTrue] != "true"))
    throw SignatureError("action variable '" + name + "' must have the domain {false, true}");

  VarId id = static_cast<VarId>(vars_.size());
  index_.emplace(name, id);
  vars_.push_back({std::move(name), cls, std::move(domain)});
  return id;
}

VarId Signature::add_action(std::string name) {
  return add(std::move(name), VarClass::kAction, {"false", "true"});
}

std::optional<VarId> Signature::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ValueId> Signature::find_value(VarId v, std::string_view value) const {
  const auto& dom = vars_.at(v).domain;
  auto it = std::find(dom.begin(), dom.end(), value);
  if (it == dom.end()) return std::nullopt;
  return static_cast<ValueId>(it - dom.begin());
}

std::vector<VarId> Signature::of_class(VarClass c) const {
  std::vector<VarId> out;
  for (VarId v = 0; v < vars_.size(); ++v)
    if (vars_[v].cls == c) out.push_back(v);
  return out;
}

std::vector<VarId> Signature::state_variables() const {
  std::vector<VarId> out;
  for (VarId v = 0; v < vars_.size(); ++v)
    if (is_state_var(v)) out.push_back(v);
  return out;
}

// ------------------------------------------------------------------ Formula

struct Formula::Node {
  Kind kind;
  bool constant = true;
  VarId var = 0;
  ValueId value = 0;
  std::vector<Formula> children;
  std::vector<VarId> vars;
};

namespace {

std::vector<VarId> union_vars(const std::vector<VarId>& a, const std::vector<VarId>& b) {
  std::vector<VarId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Formula::Formula() : Formula(top()) {}

Formula Formula::top() {
  static const Formula t(std::make_shared<const Node>(Node{Kind::kConstant, true}));
  return t;
}

Formula Formula::bottom() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::kConstant, false}));
  return f;
}

Formula Formula::constant(bool value) { return value ? top() : bottom(); }

Formula Formula::atom(VarId var, ValueId value) {
  return Formula(std::make_shared<const Node>(Node{Kind::kAtom, true, var, value, {}, {var}}));
}

Formula Formula::negation(Formula f) {
  auto vars = f.variables();
  return Formula(std::make_shared<const Node>(
      Node{Kind::kNot, true, 0, 0, {std::move(f)}, std::move(vars)}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  auto vars = union_vars(lhs.variables(), rhs.variables());
  return Formula(std::make_shared<const Node>(
      Node{Kind::kAnd, true, 0, 0, {std::move(lhs), std::move(rhs)}, std::move(vars)}));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return negation(conjunction(negation(std::move(lhs)), negation(std::move(rhs))));
}

Formula Formula::not_equal(VarId var, ValueId value) { return negation(atom(var, value)); }

Formula Formula::conjoin(std::span<const Formula> parts) {
  if (parts.empty()) return top();
  Formula acc = parts.front();
  for (size_t i = 1; i < parts.size(); ++i) acc = conjunction(acc, parts[i]);
  return acc;
}

Formula::Kind Formula::kind() const { return node_->kind; }
bool Formula::constant_value() const { return node_->constant; }
VarId Formula::var() const { return node_->var; }
ValueId Formula::value() const { return node_->value; }
const Formula& Formula::operand() const { return node_->children.at(0); }
const Formula& Formula::lhs() const { return node_->children.at(0); }
const Formula& Formula::rhs() const { return node_->children.at(1); }
const std::vector<VarId>& Formula::variables() const { return node_->vars; }

bool Formula::mentions(VarId v) const {
  return std::binary_search(node_->vars.begin(), node_->vars.end(), v);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::kConstant: return a.constant_value() == b.constant_value();
    case Formula::Kind::kAtom: return a.var() == b.var() && a.value() == b.value();
    case Formula::Kind::kNot: return a.operand() == b.operand();
    case Formula::Kind::kAnd: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

// ----------------------------------------------------------- Interpretation

Interpretation Interpretation::with(VarId v, ValueId x) const {
  Interpretation out = *this;
  if (out.values_.size() <= v) out.values_.resize(v + 1, kUnassigned);
  out.values_[v] = static_cast<std::int32_t>(x);
  return out;
}

std::optional<ValueId> Interpretation::get(VarId v) const {
  if (!assigns(v)) return std::nullopt;
  return static_cast<ValueId>(values_[v]);
}

ValueId Interpretation::at(VarId v) const {
  if (!assigns(v))
    throw UnscopedVariableError("variable #" + std::to_string(v) + " is not assigned");
  return static_cast<ValueId>(values_[v]);
}

std::vector<VarId> Interpretation::scope() const {
  std::vector<VarId> out;
  for (VarId v = 0; v < values_.size(); ++v)
    if (values_[v] != kUnassigned) out.push_back(v);
  return out;
}

bool Interpretation::empty() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](std::int32_t x) { return x == kUnassigned; });
}

Interpretation Interpretation::restricted(std::span<const VarId> vars) const {
  Interpretation out(values_.size());
  for (VarId v : vars)
    if (assigns(v)) out.values_[v] = values_[v];
  return out;
}

Interpretation Interpretation::merged(const Interpretation& other) const {
  Interpretation out = *this;
  if (out.values_.size() < other.values_.size())
    out.values_.resize(other.values_.size(), kUnassigned);
  for (size_t v = 0; v < other.values_.size(); ++v)
    if (out.values_[v] == kUnassigned) out.values_[v] = other.values_[v];
  return out;
}

bool operator==(const Interpretation& a, const Interpretation& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Interpretation& a, const Interpretation& b) {
  size_t n = std::max(a.values_.size(), b.values_.size());
  for (size_t i = 0; i < n; ++i) {
    auto x = a.raw(i), y = b.raw(i);
    if (x != y) return x <=> y;
  }
  return std::strong_ordering::equal;
}

// --------------------------------------------------------------- semantics

bool satisfies(const Interpretation& i, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kConstant: return f.constant_value();
    case Formula::Kind::kAtom: return i.at(f.var()) == f.value();
    case Formula::Kind::kNot: return !satisfies(i, f.operand());
    case Formula::Kind::kAnd: return satisfies(i, f.lhs()) && satisfies(i, f.rhs());
  }
  return false;
}

Formula partial_eval(const Interpretation& i, const Formula& f) {
  bool touched = std::any_of(f.variables().begin(), f.variables().end(),
                             [&](VarId v) { return i.assigns(v); });
  if (!touched) return f;
  switch (f.kind()) {
    case Formula::Kind::kConstant: return f;
    case Formula::Kind::kAtom: return Formula::constant(i.at(f.var()) == f.value());
    case Formula::Kind::kNot: return Formula::negation(partial_eval(i, f.operand()));
    case Formula::Kind::kAnd:
      return Formula::conjunction(partial_eval(i, f.lhs()), partial_eval(i, f.rhs()));
  }
  return f;
}

namespace {

std::vector<VarId> sorted_checked(const Signature& sig, std::span<const VarId> vars) {
  std::vector<VarId> out(vars.begin(), vars.end());
  for (VarId v : out)
    if (v >= sig.size())
      throw UndeclaredVariableError("variable #" + std::to_string(v) + " is not declared");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

void for_each_interpretation(const Signature& sig, std::span<const VarId> vars,
                             const Interpretation& base,
                             const std::function<bool(const Interpretation&)>& fn) {
  auto order = sorted_checked(sig, vars);
  Interpretation cur = base;
  for (VarId v : order) cur = cur.with(v, 0);
  std::vector<ValueId> digits(order.size(), 0);
  while (true) {
    if (!fn(cur)) return;
    // Odometer step, last variable fastest.
    size_t k = order.size();
    while (k > 0) {
      --k;
      VarId v = order[k];
      if (++digits[k] < sig[v].domain.size()) {
        cur = cur.with(v, digits[k]);
        break;
      }
      digits[k] = 0;
      cur = cur.with(v, 0);
      if (k == 0) return;
    }
    if (order.empty()) return;
  }
}

std::vector<Interpretation> enumerate_interpretations(const Signature& sig,
                                                      std::span<const VarId> vars,
                                                      const Interpretation& base) {
  std::vector<Interpretation> out;
  for_each_interpretation(sig, vars, base, [&](const Interpretation& i) {
    out.push_back(i);
    return true;
  });
  return out;
}

size_t count_interpretations(const Signature& sig, std::span<const VarId> vars) {
  size_t n = 1;
  for (VarId v : sorted_checked(sig, vars)) {
    size_t d = sig[v].domain.size();
    if (n > SIZE_MAX / d) return SIZE_MAX;
    n *= d;
  }
  return n;
}

// ---------------------------------------------------------------- printing

namespace {

// Precedence: 1 disjunction, 2 conjunction, 3 unary and atoms.
std::string print(const Signature& sig, const Formula& f, int min_prec) {
  auto wrap = [&](std::string s, int prec) {
    return prec < min_prec ? "(" + s + ")" : s;
  };
  switch (f.kind()) {
    case Formula::Kind::kConstant: return f.constant_value() ? "true" : "false";
    case Formula::Kind::kAtom: {
      if (sig.cls(f.var()) == VarClass::kAction && f.value() == kTrue) return sig.name(f.var());
      return sig.name(f.var()) + " = " + sig.value_name(f.var(), f.value());
    }
    case Formula::Kind::kNot: {
      const Formula& g = f.operand();
      if (g.kind() == Formula::Kind::kAtom) {
        if (sig.cls(g.var()) == VarClass::kAction && g.value() == kTrue)
          return "~" + sig.name(g.var());
        return sig.name(g.var()) + " != " + sig.value_name(g.var(), g.value());
      }
      // not(not a and not b) reads back as a | b.
      if (g.kind() == Formula::Kind::kAnd && g.lhs().kind() == Formula::Kind::kNot &&
          g.rhs().kind() == Formula::Kind::kNot) {
        return wrap(print(sig, g.lhs().operand(), 1) + " | " + print(sig, g.rhs().operand(), 2), 1);
      }
      return "~" + print(sig, g, 3);
    }
    case Formula::Kind::kAnd:
      return wrap(print(sig, f.lhs(), 2) + " & " + print(sig, f.rhs(), 3), 2);
  }
  return "?";
}

}  // namespace

std::string to_string(const Signature& sig, const Formula& f) { return print(sig, f, 0); }

std::string to_string(const Signature& sig, const Interpretation& i) {
  std::string out = "{";
  bool first = true;
  for (VarId v : i.scope()) {
    if (!first) out += ", ";
    first = false;
    out += sig.name(v) + "=" + sig.value_name(v, i.at(v));
  }
  return out + "}";
}

}  // namespace pcplus
