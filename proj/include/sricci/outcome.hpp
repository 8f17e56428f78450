#pragma once

#include <string>
#include <string_view>

namespace sricci {

/// Result of a theorem or lemma check. An unmet hypothesis is not a failure.
enum class Outcome { Pass, Fail, HypothesisUnmet };

constexpr std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::HypothesisUnmet: return "hypothesis-unmet";
  }
  return "unknown";
}

inline Outcome pass_if(bool ok) { return ok ? Outcome::Pass : Outcome::Fail; }

/// Additive slack used by every bound check.
inline constexpr double kBoundTolerance = 1e-7;

}  // namespace sricci
