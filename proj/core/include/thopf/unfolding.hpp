#pragma once

// Planar amplitude system obtained from the normal form in cylindrical
// coordinates, after rescaling R = sqrt|a11| rho, v = sqrt|a22| z:
//
//   R' = -R (eps1 + p0 R^2 + b0 v^2)
//   v' = -v (eps2 + c0 R^2 + d0 v^2)
//
// p0 = 1 in every case met so far; it is kept so that a positive Re(g210)
// does not silently flip the rescaling.

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "thopf/normal_form.hpp"

namespace thopf {

struct PlanarUnfolding {
  // eps_i = eps_i_r * alpha1 + eps_i_tau * alpha2
  double eps1_r = 0.0;
  double eps1_tau = 0.0;
  double eps2_r = 0.0;
  double eps2_tau = 0.0;

  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
  double b0 = 0.0, c0 = 0.0, d0 = 0.0, p0 = 0.0;
  std::string case_tag;

  // Spatial data used to label predicted patterns.
  int n_T = 0;
  int n_I = 0;
  bool mixed_mode = false;

  double det() const { return p0 * d0 - b0 * c0; }
};

/// Throws Error(degenerate_cubic) when Re(g210) or g003 vanishes.
PlanarUnfolding planar_reduce(const NormalFormCoeffs& nf);
/// Also records n_T, n_I and the mixed-mode flag (second Turing value within
/// `mixed_rel` of r*).
PlanarUnfolding planar_reduce(const NormalFormResult& nf,
                              double mixed_rel = 0.05);

struct EpsilonPair {
  double eps1 = 0.0;
  double eps2 = 0.0;
};

EpsilonPair linear_epsilons(const PlanarUnfolding& pu, double alpha1,
                            double alpha2);

/// eps taken from the critical roots of the rescaled characteristic
/// equations at (r* + alpha1, tau* + alpha2): eps1 = -Re(tau mu_H),
/// eps2 = -tau mu_T. Agrees with linear_epsilons to first order in alpha.
EpsilonPair tracked_epsilons(const TuringHopfPoint& th, double alpha1,
                             double alpha2);

enum class EquilibriumKind { origin, hopf_axis, turing_axis, mixed };
const char* to_string(EquilibriumKind k) noexcept;

struct PlanarEquilibrium {
  EquilibriumKind kind = EquilibriumKind::origin;
  double rho = 0.0; // >= 0
  double v = 0.0;
  std::array<std::complex<double>, 2> eigs{};
  double residual = 0.0;

  bool stable() const { return eigs[0].real() < 0.0 && eigs[1].real() < 0.0; }
};

/// Throws Error(singular_mixed_system) when p0 d0 - b0 c0 == 0.
std::vector<PlanarEquilibrium> planar_equilibria(const PlanarUnfolding& pu,
                                                 const EpsilonPair& eps);

using PlanarState = std::array<double, 2>; // (R, v)

PlanarState planar_rhs(const PlanarUnfolding& pu, const EpsilonPair& eps,
                       const PlanarState& s);
/// Unscaled amplitude equations in (rho, z) with growth rates c = -eps.
PlanarState raw_rhs(const PlanarUnfolding& pu, const EpsilonPair& eps,
                    const PlanarState& s);

struct PlanarTrajectory {
  std::vector<double> t;
  std::vector<PlanarState> states;
};

/// Fixed-step RK4. Throws Error(blowup) once |state| > 1e6.
PlanarTrajectory planar_integrate(const PlanarUnfolding& pu,
                                  const EpsilonPair& eps,
                                  const PlanarState& init, double t_end,
                                  double dt = 1e-2, bool raw = false);

enum class Pattern {
  constant_steady_state,
  two_nonconstant_steady_states,
  homogeneous_periodic,
  two_inhomogeneous_periodic,
};
const char* to_string(Pattern p) noexcept;

struct RegionClass {
  std::string region; // "D1".."D6", "boundary" or "unclassified"
  EpsilonPair eps;
  std::vector<PlanarEquilibrium> equilibria;
  /// One entry per stable equilibrium kind; more than one means coexistence.
  std::vector<Pattern> predicted;
  /// "cos(n_T x/l)" or "h1 cos(n_T x/l) + h2 cos(n_I x/l)" for patterns with
  /// a Turing component; empty otherwise.
  std::string spatial_profile;
  bool mixed_mode = false;

  bool on_boundary() const { return region == "boundary"; }
};

struct ClassifyOptions {
  double boundary_band = 1e-9;
};

RegionClass classify(const PlanarUnfolding& pu, const EpsilonPair& eps,
                     const ClassifyOptions& opts = {});
RegionClass classify(const PlanarUnfolding& pu, double alpha1, double alpha2,
                     const ClassifyOptions& opts = {});

/// Bisection on the region label along the segment from `from` to `to`,
/// whose endpoints must carry different labels. Returns the crossing to `tol`
/// in alpha.
std::array<double, 2> locate_boundary(const PlanarUnfolding& pu,
                                      std::array<double, 2> from,
                                      std::array<double, 2> to,
                                      double tol = 1e-6);

} // namespace thopf
