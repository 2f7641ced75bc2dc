#pragma once

#include <string>
#include <string_view>

#include "ctrsnc/nonconfluence.hpp"

namespace ctrsnc {

struct CheckResult {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

/// Independently re-checks a witness against the original system:
/// every recorded rule removal is re-verified by its stated check (in
/// recorded order, each against the system as reduced so far), both
/// sequences are validated step by step against the original rules, the
/// endpoints must diverge and match the evidence, and the evidence itself
/// is re-established wrt the underlying TRS of the reduced system. No
/// search is performed and nothing from the prover is trusted.
CheckResult check_witness(const Ctrs& system, const Witness& witness);

enum class WitnessFormat {
  Text,        // human-readable proof narration
  Structured,  // versioned JSON document, parse_witness round-trips it
};

/// Serializes a witness. The structured document is self-contained: it
/// embeds the system (Cops text), the method, the removed rules with their
/// justifications, the peak, both sequences with full substitutions and
/// condition justifications, and the evidence. Terms are encoded as
/// ["var", name] for variables and [symbol, [args...]] otherwise.
std::string emit_witness(const Witness& witness, WitnessFormat format);

/// Parses a structured witness document; throws WitnessError on malformed
/// input or an unsupported schema version.
Witness parse_witness(std::string_view text);

}  // namespace ctrsnc
