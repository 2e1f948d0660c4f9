#pragma once

// Method-of-lines solver for the delayed reaction-diffusion system on
// (0, l pi) with Neumann walls. Cell-centred grid x_i = (i + 1/2) h with
// mirror ghost cells; classical RK4 in time, dt = tau / m so the delayed
// value is a stored step. The delayed ratio v/u at the half-step stages comes
// from a cubic through the four neighbouring stored steps.

#include <string>
#include <vector>

#include "thopf/model.hpp"

namespace thopf {

struct InitialCondition {
  enum class Kind { offset_sine, custom };
  Kind kind = Kind::offset_sine;
  // (u, v)(x, t) = (u0 + s A sin(q x), u0 + s A sin(q x)) for t in [-tau, 0]
  double amplitude = 0.01;
  double wavenumber = 2.0;
  double sign = 1.0;
  // custom: one value per cell
  std::vector<double> u;
  std::vector<double> v;
};

struct SimConfig {
  int nx = 200;
  /// Requested step; 0 picks the largest admissible one. Always snapped
  /// down to tau / m.
  double dt = 0.0;
  double t_end = 3000.0;
  /// Store every `stride`-th step; 0 picks a stride close to 0.5 time units.
  long stride = 0;
  /// Reaction terms on or off (off leaves pure diffusion, for testing).
  bool kinetics = true;
};

/// Stability bound 0.25 h^2 / max(d1, d2).
double max_stable_dt(const ModelParams& p, int nx);

struct StepPlan {
  double dt = 0.0;
  long delay_steps = 0; // m with dt = tau / m; 0 when tau == 0
  long steps = 0;
  long stride = 1;
};

/// Throws Error(invalid_argument) for a bad config or an explicitly
/// requested dt above the stability bound.
StepPlan plan_steps(const ModelParams& p, const SimConfig& cfg);

enum class SimStatus { completed, blowup, positivity_violation };
const char* to_string(SimStatus s) noexcept;

struct SimResult {
  ModelParams params;
  SimConfig config;
  InitialCondition init;
  StepPlan plan;
  double u0 = 0.0;

  std::vector<double> x;
  std::vector<double> t;
  std::vector<double> u; // t.size() rows of x.size() values
  std::vector<double> v;

  SimStatus status = SimStatus::completed;
  double failure_time = 0.0;
  std::string message;

  std::size_t nx() const { return x.size(); }
  const double* u_row(std::size_t k) const { return u.data() + k * x.size(); }
  const double* v_row(std::size_t k) const { return v.data() + k * x.size(); }

  /// Throws Error(blowup) or Error(positivity_violation) for a failed run.
  void throw_if_failed() const;
};

std::vector<double> cell_centres(const ModelParams& p, int nx);

SimResult simulate(const ModelParams& p, const InitialCondition& init,
                   const SimConfig& cfg);

} // namespace thopf
