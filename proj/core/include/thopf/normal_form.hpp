#pragma once

// Third-order normal form at a Turing-Hopf point (r*, tau*) with a Hopf mode
// at wave number n_H = 0 and a Turing mode at n_T != 0. Everything is written
// for the time-rescaled system t -> t/tau, whose delay is 1:
//
//   dU/dt = D(r,tau) U_xx + A(r,tau) U(t) + B(r,tau) U(t-1) + tau F(U^t)
//
//   z1'  =  i w0 z1 + f_a1z1 a1 z1/2 + f_a2z1 a2 z1/2 + g210 z1^2 conj(z1)/6
//           + g102 z1 z2^2/6
//   z2'  =  f_a1z2 a1 z2/2 + f_a2z2 a2 z2/2 + g111 |z1|^2 z2/6 + g003 z2^3/6
//
// with w0 = omega* tau* and (a1, a2) = (r - r*, tau - tau*).

#include <functional>
#include <string>
#include <vector>

#include "thopf/linalg2.hpp"
#include "thopf/model.hpp"

namespace thopf {

/// Location of the Turing-Hopf point and the model evaluated there.
struct TuringHopfPoint {
  ModelParams params; // r = r*, tau = tau*
  int n_T = 0;
  int n_H = 0;
  double r_star = 0.0;
  double tau_star = 0.0;
  double omega_star = 0.0;
  int n_I = 0;           // second Turing wave number
  double r_second = 0.0; // r_{n_I}^T
};

/// Runs the Turing and Hopf analyses. Throws Error(condition_violated) when the
/// existence condition fails.
TuringHopfPoint locate_turing_hopf(const ModelParams& p, int k_max = 3);

/// A function on [-1, 0] sampled where the nonlinearity looks: theta = 0 and
/// theta = -1.
struct DelayState {
  CVec2 now{};
  CVec2 lagged{};
};

class Eigenbasis {
public:
  cplx k1, k2, T1;
  double k3 = 0.0;
  double k4 = 0.0;
  double T2 = 0.0;
  double omega0 = 0.0; // omega* tau*
  double omega_star = 0.0;
  double r_star = 0.0;
  double tau_star = 0.0;
  int n_T = 0;
  double wave_T = 0.0; // n_T^2 / l^2
  ModelParams params;

  CVec2 phi1(double theta) const;
  CVec2 phi1_bar(double theta) const;
  CVec2 phi2(double theta) const;
  /// Row vectors of the adjoint eigenfunctions.
  CVec2 psi1(double s) const;
  CVec2 psi2(double s) const;

  DelayState phi1_state() const { return {phi1(0.0), phi1(-1.0)}; }
  DelayState phi1_bar_state() const { return {phi1_bar(0.0), phi1_bar(-1.0)}; }
  DelayState phi2_state() const { return {phi2(0.0), phi2(-1.0)}; }

  /// A(r*, tau*), B(r*, tau*), D(r*, tau*) of the rescaled system.
  Mat2c A() const;
  Mat2c B() const;
  Mat2c D() const;
  /// L0(e^{lambda .} I) = A + B e^{-lambda}.
  Mat2c L0(cplx lambda) const;
  /// Characteristic matrix lambda I + wave D - L0(e^{lambda .} I).
  Mat2c characteristic(cplx lambda, double wave) const;
};

/// Throws Error(degenerate_case) unless n_H == 0 and n_T != 0.
Eigenbasis eigenbasis(const ModelParams& p_at_th, int n_T, int n_H,
                      double omega_star);
Eigenbasis eigenbasis(const TuringHopfPoint& th);

using ColumnFn = std::function<CVec2(double)>;

/// <psi, phi> = psi(0) phi(0) + int_{-1}^{0} psi(s+1) B phi(s) ds, composite
/// Simpson with `panels` panels.
cplx bilinear_form(const Eigenbasis& basis, const ColumnFn& psi,
                   const ColumnFn& phi, int panels = 1024);

/// Symmetric multilinear forms of the derivative tensor.
CVec2 contract(const DerivativeTensor& t, const DelayState& x,
               const DelayState& y);
CVec2 contract(const DerivativeTensor& t, const DelayState& x,
               const DelayState& y, const DelayState& z);

/// Coefficients of z1^m conj(z1)^n z2^k in the nonlinearity after projection
/// onto the center modes (quadratic terms carry 1/2, cubic terms 1/6).
struct CoeffVectors {
  CVec2 F200, F110, F101, F002, F020, F011;
  CVec2 F210, F102, F111, F003;
};

CoeffVectors coeff_vectors(const DerivativeTensor& t, const Eigenbasis& basis);

/// Projected quadratic (f^11, f^12, f^13) and cubic scalars, including the
/// cosine-basis normalisation factors 1/sqrt(l pi), 1/(l pi), 3/(2 l pi).
struct Projections {
  cplx f200_11, f110_11, f020_11, f002_11;
  cplx f101_13, f011_13;
  cplx f200_12, f110_12, f020_12, f002_12;
  cplx f210_11, f102_11, f111_13, f003_13;
};

Projections project(const Eigenbasis& basis, const CoeffVectors& v);

/// h(theta) = sum_j e^{lambda_j theta} v_j + c1 phi1 + c1b conj(phi1) + c2 phi2.
struct HFunction {
  struct Term {
    cplx exponent;
    CVec2 vector;
  };
  std::vector<Term> terms;
  cplx c_phi1{};
  cplx c_phi1_bar{};
  cplx c_phi2{};

  CVec2 operator()(const Eigenbasis& basis, double theta) const;
  DelayState state(const Eigenbasis& basis) const {
    return {(*this)(basis, 0.0), (*this)(basis, -1.0)};
  }
};

struct SolveRecord {
  std::string label;
  double condition = 0.0;
  double residual = 0.0; // ||M x - F||_inf
};

struct HFunctions {
  HFunction h200_H;  // <h200 b_H, b_H>
  HFunction h110_H;  // <h110 b_H, b_H>
  HFunction h110_T;  // <h110 b_T, b_T>
  HFunction h101_TH; // <h101 b_T, b_H>
  HFunction h011_HT; // <h011 b_H, b_T>
  HFunction h002_H;  // <h002 b_H, b_H>
  HFunction h002_T;  // <h002 b_T, b_T>
  std::vector<SolveRecord> solves;
};

/// Throws Error(resonant_matrix) when any solve has condition number > 1e12.
HFunctions h_solve(const Eigenbasis& basis, const CoeffVectors& v,
                   const Projections& f);

struct NormalFormCoeffs {
  cplx f_a1z1, f_a2z1;
  double f_a1z2 = 0.0;
  double f_a2z2 = 0.0;
  cplx g210, g102;
  cplx g111, g003; // real up to roundoff
  Projections audit;
};

struct GOptions {
  /// Include the psi(0) S_yz(h) center-manifold corrections.
  bool center_manifold_terms = true;
};

/// Fills the g-coefficients of `out` (cubic part).
void g_coeffs(const Eigenbasis& basis, const DerivativeTensor& t,
              const Projections& f, const HFunctions& h,
              NormalFormCoeffs& out, const GOptions& opts = {});

/// Fills the four unfolding coefficients of `out` (linear part).
void unfolding_coeffs(const Eigenbasis& basis, NormalFormCoeffs& out);

struct NormalFormResult {
  TuringHopfPoint point;
  Eigenbasis basis;
  CoeffVectors vectors;
  HFunctions h;
  NormalFormCoeffs coeffs;
};

/// Full pipeline from model parameters; r and tau in `p` are ignored.
NormalFormResult compute_normal_form(const ModelParams& p,
                                     const GOptions& opts = {});
NormalFormResult compute_normal_form(const TuringHopfPoint& th,
                                     const GOptions& opts = {});

} // namespace thopf
