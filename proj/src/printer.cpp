#include <sstream>

#include "pcplus/language.hpp"

namespace pcplus {

namespace {

std::string declaration(const Signature& sig, VarId v) {
  const auto& d = sig[v];
  std::string out;
  switch (d.cls) {
    case VarClass::kRigid: out = "rigid "; break;
    case VarClass::kSimpleFluent: out = "fluent simple "; break;
    case VarClass::kStaticFluent: out = "fluent sdet "; break;
    case VarClass::kAction: return "action " + d.name + ".";
    case VarClass::kContext: out = "context "; break;
  }
  out += d.name + " : {";
  for (size_t i = 0; i < d.domain.size(); ++i) out += (i ? ", " : "") + d.domain[i];
  return out + "}.";
}

void print_description(std::ostream& os, const Signature& sig, const Description& d) {
  for (const auto& l : d.static_laws) {
    os << "  caused " << to_string(sig, l.head);
    if (!l.condition.is_true()) os << " if " << to_string(sig, l.condition);
    os << ".\n";
  }
  for (const auto& l : d.dynamic_laws) {
    if (l.is_execution_denial()) {
      os << "  nonexecutable " << to_string(sig, l.trigger) << ".\n";
      continue;
    }
    os << "  caused " << to_string(sig, l.head);
    if (!l.condition.is_true()) os << " if " << to_string(sig, l.condition);
    os << " after " << to_string(sig, l.trigger) << ".\n";
  }
  for (const auto& l : d.context_laws) {
    os << "  context-law " << sig.name(l.var) << " = (";
    for (size_t i = 0; i < l.distribution.size(); ++i) {
      const auto& [x, p] = l.distribution[i];
      os << (i ? ", " : "") << sig.value_name(l.var, x) << ": " << to_exact_literal(p);
    }
    os << ")";
    if (!l.trigger.is_true()) os << " after " << to_string(sig, l.trigger);
    os << ".\n";
  }
}

}  // namespace

std::string pretty_print(const Domain& domain) {
  std::ostringstream os;
  const auto& sig = domain.signature;
  for (VarId v = 0; v < sig.size(); ++v) os << declaration(sig, v) << "\n";
  os << "\ninitially {\n";
  print_description(os, sig, domain.initial);
  os << "}\n\ndynamics {\n";
  print_description(os, sig, domain.dynamics);
  os << "}\n";
  return os.str();
}

}  // namespace pcplus
