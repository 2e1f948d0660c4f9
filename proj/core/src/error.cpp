#include "thopf/error.hpp"

namespace thopf {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::invalid_argument: return "InvalidArgument";
  case ErrorKind::condition_violated: return "ConditionViolated";
  case ErrorKind::no_positive_turing: return "NoPositiveTuring";
  case ErrorKind::complex_aux: return "ComplexAux";
  case ErrorKind::no_root: return "NoRoot";
  case ErrorKind::no_convergence: return "NoConvergence";
  case ErrorKind::degenerate_case: return "DegenerateCase";
  case ErrorKind::degenerate_cubic: return "DegenerateCubic";
  case ErrorKind::resonant_matrix: return "ResonantMatrix";
  case ErrorKind::singular_mixed_system: return "SingularMixedSystem";
  case ErrorKind::window_too_short: return "WindowTooShort";
  case ErrorKind::blowup: return "Blowup";
  case ErrorKind::positivity_violation: return "PositivityViolation";
  }
  return "Unknown";
}

} // namespace thopf
