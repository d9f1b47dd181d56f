// Text syntax for step sequences and labeled histories.
//
//   steps    := step (';' step)*
//   step     := '{' [name (',' name)*] '}'   action: listed variables true
//             | formula                       observation
//   labeled  := ('<>' | '[]') step
//
// The empty string is the empty sequence.
#pragma once

#include <string>
#include <string_view>

#include "pcplus/belief.hpp"
#include "pcplus/error.hpp"
#include "pcplus/query.hpp"

namespace pcplus {

class StepSyntaxError : public Error {
 public:
  using Error::Error;
};

/// Action making exactly the named action variables true.
Action parse_action(const Signature& sig, std::string_view text);
Observation parse_observation(const Signature& sig, std::string_view text);
Step parse_step(const Signature& sig, std::string_view text);
StepSequence parse_steps(const Signature& sig, std::string_view text);
/// Every step must carry a '<>' or '[]' label.
History parse_history(const Signature& sig, std::string_view text);

std::string to_string(const Signature& sig, const Step& step);
std::string to_string(const Signature& sig, const LabeledStep& step);
std::string to_string(const Signature& sig, const StepSequence& steps);
std::string to_string(const Signature& sig, const History& h);

}  // namespace pcplus
