#pragma once

// Characteristic equations of the linearisation about the coexistence
// equilibrium, one per Neumann wave number n:
//
//   G_n(lambda, r, tau) = lambda^2 - T_n lambda + D_n
//   T_n = A0 - (d1+d2) n^2/l^2 - r e^{-lambda tau}
//   D_n = d2 n^2/l^2 (d1 n^2/l^2 - A0) + r e^{-lambda tau} (d1 n^2/l^2 - A0 - B0)

#include <complex>
#include <optional>
#include <vector>

#include "thopf/model.hpp"

namespace thopf {

using cplx = std::complex<double>;

class CharacteristicEval {
public:
  CharacteristicEval(const ModelParams& p, int n);

  int n() const { return n_; }
  /// n^2 / l^2
  double wave() const { return wave_; }
  const LinearCoeffs& linear() const { return lin_; }

  cplx trace(cplx lambda, double r, double tau) const;
  cplx det(cplx lambda, double r, double tau) const;
  cplx residual(cplx lambda, double r, double tau) const;
  cplx d_lambda(cplx lambda, double r, double tau) const;
  cplx d2_lambda(cplx lambda, double r, double tau) const;
  cplx d_r(cplx lambda, double r, double tau) const;
  cplx d_tau(cplx lambda, double r, double tau) const;

  // Real coefficients of the pure-imaginary-root problem
  //   omega^4 - P omega^2 + Q = 0,  cos(omega tau) = C,  sin(omega tau) = S.
  double P(double r) const;
  double Q(double r) const;
  double C(double omega, double r) const;
  double S(double omega, double r) const;

private:
  int n_;
  double d1_, d2_, wave_;
  LinearCoeffs lin_;
};

/// r_n^T: the value of r at which D_n(., r, 0) vanishes.
double turing_value(const ModelParams& p, int n);
/// r_n^H: the value of r at which T_n(., r, 0) vanishes.
double hopf_value(const ModelParams& p, int n);

/// Auxiliary quantities and inequalities of the Turing-Hopf existence condition
/// (d2 > d1, b < b*, a in (a-, a+), M1 <= M2).
struct A6Check {
  double b_star = 0.0;
  double a_minus = 0.0;
  double a_plus = 0.0;
  double x_minus = 0.0;
  double x_plus = 0.0;
  int M1 = 0;
  int M2 = -1;

  bool d2_gt_d1 = false;
  bool b_below_bstar = false;
  bool a_in_window = false;
  bool m1_le_m2 = false;

  bool holds() const {
    return d2_gt_d1 && b_below_bstar && a_in_window && m1_le_m2;
  }
};

/// Throws Error(complex_aux) when a+- are undefined
/// ((b+1)^2 (d1-d2)^4 < 4 b (d1+d2)^4), or when x+- are complex.
A6Check check_a6(const ModelParams& p);

struct TuringReport {
  double u0 = 0.0;
  double A0 = 0.0;
  double B0 = 0.0;
  std::vector<double> r_T; // index n = 0 .. cutoff
  std::vector<double> r_H;
  int cutoff = 0;          // r_n^T < 0 for every n > cutoff
  int n_T = 0;
  double r_star = 0.0;
  /// argmax of r_n^T over n != n_T; used to detect mode mixing.
  int n_I = 0;
  double r_second = 0.0;
  bool predation_hypothesis = false;
  /// Empty when the auxiliary a+- / x+- are complex (condition fails).
  std::optional<A6Check> a6;

  bool a6_holds() const { return a6.has_value() && a6->holds(); }
  /// Second Turing value within `rel` of r* (Turing-Turing-Hopf regime).
  bool mixed_mode(double rel = 0.05) const {
    return r_second > 0.0 && (r_star - r_second) <= rel * r_star;
  }
};

/// Throws Error(no_positive_turing) when r_n^T <= 0 for every n >= 1.
TuringReport turing_branch(const ModelParams& p);

enum class RootCase { c1, c2, c3, c4, none };
const char* to_string(RootCase c) noexcept;

struct HopfRoot {
  double omega = 0.0;
  double C = 0.0;
  double S = 0.0;
  std::vector<double> taus; // tau^(0), tau^(1), ...
};

struct HopfBranch {
  int n = 0;
  double r = 0.0;
  double P = 0.0;
  double Q = 0.0;
  RootCase root_case = RootCase::none;
  /// Positive roots, largest first; roots.front().omega is omega_n(r).
  std::vector<HopfRoot> roots;

  const HopfRoot& principal() const { return roots.front(); }
};

/// Pure imaginary roots i*omega of G_n and the delays at which they occur.
/// Throws Error(no_root) when none of (C1)-(C4) holds.
HopfBranch hopf_branch(const ModelParams& p, double r, int n, int k_max = 3);

struct HopfReport {
  double r = 0.0;
  int N1 = 0;
  int N_Q = 0;
  double x_P = 0.0;
  double x_Q = 0.0;
  double l_threshold = 0.0; // n_T sqrt(1/x_P(r))
  std::vector<int> S0;
  std::vector<HopfBranch> branches; // one per element of S0, same order
  int n_H = 0;
  double tau_star = 0.0;
  double omega_star = 0.0;

  const HopfBranch* branch(int n) const;
};

HopfReport s0_and_star(const ModelParams& p, double r_star, int n_T,
                       int k_max = 3);

struct BTPoint {
  double tau0 = 0.0;
  double dG_dlambda = 0.0;   // at (0, r*, tau0); vanishes at a double zero
  double d2G_dlambda2 = 0.0; // > 0
};

BTPoint bt_point(const ModelParams& p, double r_star, int n_T);

/// d gamma / d r at (r*, tau) for the real root gamma(r) of G_{n_T} through 0,
/// by implicit differentiation.
double turing_root_slope(const ModelParams& p, double r_star, int n_T,
                         double tau);

struct TrackOptions {
  int max_iter = 100;
  double tol = 1e-12;
};

/// Newton iteration on G_n(lambda, r, tau) in the complex plane.
/// Throws Error(no_convergence).
cplx track_root(const ModelParams& p, int n, double r, double tau, cplx seed,
                const TrackOptions& opts = {});

/// Follows a root from (r0, tau0) to (r1, tau1) in `steps` straight-line
/// continuation steps, each one a track_root call seeded by the previous one.
cplx continue_root(const ModelParams& p, int n, double r0, double tau0,
                   double r1, double tau1, cplx seed, int steps = 8,
                   const TrackOptions& opts = {});

/// Linear stability of the constant steady state at (r, tau).
struct LinearStability {
  bool turing_unstable = false; // some D_n(0, r, .) < 0
  bool hopf_unstable = false;   // tau beyond the first Hopf delay
  double first_hopf_tau = 0.0;  // +inf when no Hopf branch exists
};

LinearStability linear_stability(const ModelParams& p, double r, double tau);

} // namespace thopf
