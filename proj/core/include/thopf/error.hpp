#pragma once

#include <stdexcept>
#include <string>

namespace thopf {

/// Failure categories. The CLI maps each category onto its exit code.
enum class ErrorKind {
  invalid_argument,   // bad parameters or configuration
  condition_violated, // Turing-Hopf existence condition fails
  no_positive_turing,
  complex_aux,
  no_root,
  no_convergence,
  degenerate_case,
  degenerate_cubic,
  resonant_matrix,
  singular_mixed_system,
  window_too_short,
  blowup,
  positivity_violation,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace thopf
