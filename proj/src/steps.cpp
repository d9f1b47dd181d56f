#include "pcplus/steps.hpp"

#include <vector>

namespace pcplus {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Splits on sep outside parentheses, brackets and braces.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '{') ++depth;
    else if (c == ')' || c == '}') --depth;
    else if (c == '[' && !(i + 1 < s.size() && s[i + 1] == ']')) ++depth;
    else if (c == '[') ++i;  // the [] label
    else if (c == ']') --depth;
    else if (c == sep && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

}  // namespace

Action parse_action(const Signature& sig, std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw StepSyntaxError("action step must be written as {a1, a2, ...}: '" + std::string(text) + "'");
  Action a(sig.size());
  for (VarId v : sig.of_class(VarClass::kAction)) a = a.with(v, kFalse);
  std::string_view inner = trim(text.substr(1, text.size() - 2));
  if (inner.empty()) return a;
  for (auto part : split_top(inner, ',')) {
    std::string name(trim(part));
    auto v = sig.find(name);
    if (!v) throw StepSyntaxError("unknown action '" + name + "'");
    if (sig.cls(*v) != VarClass::kAction) throw StepSyntaxError("'" + name + "' is not an action variable");
    a = a.with(*v, kTrue);
  }
  return a;
}

Observation parse_observation(const Signature& sig, std::string_view text) {
  auto r = parse_formula(sig, trim(text));
  if (!r.formula) {
    std::string msg = "invalid observation '" + std::string(trim(text)) + "'";
    for (const auto& d : r.diagnostics) msg += ": " + d.message;
    throw StepSyntaxError(msg);
  }
  if (!is_observation_formula(sig, *r.formula))
    throw StepSyntaxError("observation '" + std::string(trim(text)) +
                          "' mentions an action or context variable");
  return {*r.formula};
}

Step parse_step(const Signature& sig, std::string_view text) {
  text = trim(text);
  if (text.empty()) throw StepSyntaxError("empty step");
  if (text.front() == '{') return parse_action(sig, text);
  return parse_observation(sig, text);
}

StepSequence parse_steps(const Signature& sig, std::string_view text) {
  StepSequence out;
  if (trim(text).empty()) return out;
  for (auto part : split_top(text, ';')) out.push_back(parse_step(sig, part));
  return out;
}

History parse_history(const Signature& sig, std::string_view text) {
  History h;
  if (trim(text).empty()) return h;
  size_t index = 0;
  for (auto part : split_top(text, ';')) {
    ++index;
    part = trim(part);
    Modality m;
    if (starts_with(part, "<>")) {
      m = Modality::kPossibly;
      part.remove_prefix(2);
    } else if (starts_with(part, "[]")) {
      m = Modality::kCertainly;
      part.remove_prefix(2);
    } else if (starts_with(part, "◇")) {
      m = Modality::kPossibly;
      part.remove_prefix(3);
    } else if (starts_with(part, "□")) {
      m = Modality::kCertainly;
      part.remove_prefix(3);
    } else {
      throw StepSyntaxError("step " + std::to_string(index) + " has no '<>' or '[]' label");
    }
    h.steps.push_back({m, parse_step(sig, part)});
  }
  return h;
}

std::string to_string(const Signature& sig, const Step& step) {
  if (const auto* a = std::get_if<Action>(&step)) {
    std::string out = "{";
    bool first = true;
    for (VarId v : sig.of_class(VarClass::kAction)) {
      if (a->get(v) != kTrue) continue;
      if (!first) out += ", ";
      first = false;
      out += sig.name(v);
    }
    return out + "}";
  }
  return to_string(sig, std::get<Observation>(step).formula);
}

std::string to_string(const Signature& sig, const LabeledStep& step) {
  return (step.modality == Modality::kPossibly ? "<> " : "[] ") + to_string(sig, step.payload);
}

std::string to_string(const Signature& sig, const StepSequence& steps) {
  std::string out;
  for (size_t i = 0; i < steps.size(); ++i) out += (i ? "; " : "") + to_string(sig, steps[i]);
  return out;
}

std::string to_string(const Signature& sig, const History& h) {
  std::string out;
  for (size_t i = 0; i < h.steps.size(); ++i) out += (i ? "; " : "") + to_string(sig, h.steps[i]);
  return out;
}

}  // namespace pcplus
