#pragma once

// Late-time pattern diagnostics of a simulated u-field, and region
// verification against the planar classifier.

#include <optional>
#include <string>
#include <vector>

#include "thopf/normal_form.hpp"
#include "thopf/pde_sim.hpp"
#include "thopf/unfolding.hpp"

namespace thopf {

enum class PatternLabel {
  constant_ss,
  nonconstant_ss,
  homogeneous_periodic,
  inhomogeneous_periodic,
};
const char* to_string(PatternLabel l) noexcept;

struct DiagnosticsOptions {
  double window_fraction = 0.2;
  int n_max = 10;
  /// Expected oscillation period (2 pi / omega*); the window must span five.
  std::optional<double> period_scale;
  double steady_rel = 1e-5;
  double mode_threshold = 1e-4;
};

struct PatternDiagnostics {
  /// max over the window of |2/(l pi) int (u - mean) cos(n x / l) dx|
  std::vector<double> mode_amps;
  /// Window average of the signed projection; its sign tells the two
  /// coexisting Turing states apart.
  std::vector<double> mode_means;
  int dominant_mode = 0; // argmax of mode_amps over n >= 1
  double temporal_freq = 0.0; // angular frequency, 0 for a steady field
  double steadiness = 0.0;    // max over x of the temporal range
  double field_range = 0.0;   // max - min of u over the window
  double field_mean = 0.0;
  double u_max = 0.0;
  double v_max = 0.0;
  double window_start = 0.0;
  double window_end = 0.0;
  PatternLabel label = PatternLabel::constant_ss;
};

/// Throws Error(window_too_short) when the window covers fewer than 10 delay
/// intervals, fewer than 5 periods, or fewer than 8 stored samples.
PatternDiagnostics diagnostics(const SimResult& res,
                               const DiagnosticsOptions& opts = {});

/// Whether a simulated label is one of the patterns the classifier predicts.
bool label_matches(PatternLabel label, const std::vector<Pattern>& predicted);

struct VerifyCase {
  double sign = 1.0;
  SimStatus status = SimStatus::completed;
  double failure_time = 0.0;
  PatternDiagnostics diag;
  bool match = false;
};

struct VerifyReport {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  RegionClass prediction;
  bool on_boundary = false; // "on-boundary, no prediction"
  std::vector<VerifyCase> cases;
  /// Turing component present in every case with opposite signs of the
  /// n_T projection across initial signs.
  bool both_signs_reached = false;

  bool all_match() const;
};

struct VerifyOptions {
  SimConfig sim;
  InitialCondition init; // sign is overridden per case
  DiagnosticsOptions diag;
  bool tracked_eps = true;
  double alpha_budget = 0.1;
};

/// Simulates (r* + alpha1, tau* + alpha2) for each initial sign and compares
/// the diagnostic label with classify(). Throws Error(invalid_argument) when
/// |alpha| exceeds the budget.
VerifyReport verify_region(const NormalFormResult& nf, const PlanarUnfolding& pu,
                           double alpha1, double alpha2,
                           const std::vector<double>& init_signs,
                           const VerifyOptions& opts = {});

} // namespace thopf
