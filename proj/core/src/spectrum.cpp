#include "thopf/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "thopf/error.hpp"

namespace thopf {

namespace {

constexpr int kMaxWaveNumber = 512;
constexpr double kArccosSlack = 1e-9;

LinearCoeffs coeffs_of(const ModelParams& p) {
  return linear_coeffs(p, equilibrium(p));
}

double wave_of(const ModelParams& p, int n) {
  return static_cast<double>(n) * n / (p.l * p.l);
}

double clamped_acos(double c) {
  if (std::abs(c) > 1.0 + kArccosSlack) {
    throw Error(ErrorKind::no_root,
                "cos(omega tau) outside [-1, 1]: " + std::to_string(c));
  }
  return std::acos(std::clamp(c, -1.0, 1.0));
}

HopfRoot make_root(const CharacteristicEval& ch, double omega, double r,
                   int k_max) {
  HopfRoot root;
  root.omega = omega;
  root.C = ch.C(omega, r);
  root.S = ch.S(omega, r);
  const double base = clamped_acos(root.C);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int k = 0; k <= k_max; ++k) {
    const double t = root.S >= 0.0 ? (base + two_pi * k) / omega
                                   : (-base + two_pi * (k + 1)) / omega;
    root.taus.push_back(t);
  }
  return root;
}

} // namespace

CharacteristicEval::CharacteristicEval(const ModelParams& p, int n)
    : n_(n), d1_(p.d1), d2_(p.d2), wave_(wave_of(p, n)), lin_(coeffs_of(p)) {
  if (n < 0) {
    throw Error(ErrorKind::invalid_argument, "wave number must be >= 0");
  }
}

cplx CharacteristicEval::trace(cplx lambda, double r, double tau) const {
  return lin_.A0 - (d1_ + d2_) * wave_ - r * std::exp(-lambda * tau);
}

cplx CharacteristicEval::det(cplx lambda, double r, double tau) const {
  const double e_coef = d1_ * wave_ - lin_.A0 - lin_.B0;
  return d2_ * wave_ * (d1_ * wave_ - lin_.A0) +
         r * std::exp(-lambda * tau) * e_coef;
}

cplx CharacteristicEval::residual(cplx lambda, double r, double tau) const {
  return lambda * lambda - trace(lambda, r, tau) * lambda +
         det(lambda, r, tau);
}

cplx CharacteristicEval::d_lambda(cplx lambda, double r, double tau) const {
  const cplx e = std::exp(-lambda * tau);
  const double e_coef = d1_ * wave_ - lin_.A0 - lin_.B0;
  return 2.0 * lambda - trace(lambda, r, tau) - lambda * r * tau * e -
         r * tau * e * e_coef;
}

cplx CharacteristicEval::d2_lambda(cplx lambda, double r, double tau) const {
  const cplx e = std::exp(-lambda * tau);
  const double e_coef = d1_ * wave_ - lin_.A0 - lin_.B0;
  return 2.0 - 2.0 * r * tau * e + lambda * r * tau * tau * e +
         r * tau * tau * e * e_coef;
}

cplx CharacteristicEval::d_r(cplx lambda, double /*r*/, double tau) const {
  const double e_coef = d1_ * wave_ - lin_.A0 - lin_.B0;
  return std::exp(-lambda * tau) * (lambda + e_coef);
}

cplx CharacteristicEval::d_tau(cplx lambda, double r, double tau) const {
  const double e_coef = d1_ * wave_ - lin_.A0 - lin_.B0;
  return -r * lambda * std::exp(-lambda * tau) * (lambda + e_coef);
}

double CharacteristicEval::P(double r) const {
  const double x = wave_;
  return -(d1_ * d1_ + d2_ * d2_) * x * x + 2.0 * d1_ * lin_.A0 * x + r * r -
         lin_.A0 * lin_.A0;
}

double CharacteristicEval::Q(double r) const {
  // -(r - r_T)(r + r_T) E^2 with r_T E = -d2 x (d1 x - A0), free of 1/E.
  const double x = wave_;
  const double e_coef = d1_ * x - lin_.A0 - lin_.B0;
  const double num = d2_ * x * (d1_ * x - lin_.A0);
  return num * num - r * r * e_coef * e_coef;
}

double CharacteristicEval::C(double omega, double r) const {
  const double x = wave_;
  const double e_coef = d1_ * x - lin_.A0 - lin_.B0;
  const double w2 = omega * omega;
  return (-(lin_.B0 + d2_ * x) * w2 -
          d2_ * x * (d1_ * x - lin_.A0) * e_coef) /
         (r * (w2 + e_coef * e_coef));
}

double CharacteristicEval::S(double omega, double r) const {
  const double x = wave_;
  const double e_coef = d1_ * x - lin_.A0 - lin_.B0;
  const double w2 = omega * omega;
  const double g = d1_ * x - lin_.A0;
  return omega * (w2 + g * g + lin_.B0 * (lin_.A0 - (d1_ + d2_) * x)) /
         (r * (w2 + e_coef * e_coef));
}

double turing_value(const ModelParams& p, int n) {
  const LinearCoeffs lin = coeffs_of(p);
  const double x = wave_of(p, n);
  return -p.d2 * x * (p.d1 * x - lin.A0) / (p.d1 * x - lin.A0 - lin.B0);
}

double hopf_value(const ModelParams& p, int n) {
  const LinearCoeffs lin = coeffs_of(p);
  return lin.A0 - (p.d1 + p.d2) * wave_of(p, n);
}

A6Check check_a6(const ModelParams& p) {
  const LinearCoeffs lin = coeffs_of(p);
  const double s = p.d1 + p.d2;
  const double dlt = p.d1 - p.d2;
  const double s4 = std::pow(s, 4);
  const double d4 = std::pow(dlt, 4);

  A6Check c;
  if (d4 > 0.0) {
    const double t = s * s - std::sqrt(s4 - d4);
    c.b_star = t * t / d4;
  }

  const double disc_a = (p.b + 1.0) * (p.b + 1.0) * d4 - 4.0 * p.b * s4;
  if (disc_a < 0.0) {
    throw Error(ErrorKind::complex_aux,
                "a+- undefined: (b+1)^2 (d1-d2)^4 < 4 b (d1+d2)^4");
  }
  const double root_a = s * s * std::sqrt(disc_a);
  c.a_minus = ((1.0 - p.b) * s4 - root_a) / (s4 - d4);
  c.a_plus = ((1.0 - p.b) * s4 + root_a) / (s4 - d4);

  const double disc_x =
      s * s * lin.A0 * lin.A0 + 4.0 * p.d1 * p.d2 * lin.A0 * lin.B0;
  if (disc_x < 0.0) {
    throw Error(ErrorKind::complex_aux, "x+- undefined: negative discriminant");
  }
  const double root_x = std::sqrt(disc_x);
  c.x_minus = ((p.d2 - p.d1) * lin.A0 - root_x) / (2.0 * p.d1 * p.d2);
  c.x_plus = ((p.d2 - p.d1) * lin.A0 + root_x) / (2.0 * p.d1 * p.d2);

  // l^-_{M1-1} <= l < l^-_{M1}  and  l^+_{M2} < l <= l^+_{M2+1}, l^+-_n = n/sqrt(x+-).
  c.M1 = static_cast<int>(std::floor(p.l * std::sqrt(std::max(c.x_minus, 0.0)))) + 1;
  c.M2 = c.x_plus > 0.0
             ? static_cast<int>(std::ceil(p.l * std::sqrt(c.x_plus))) - 1
             : -1;

  c.d2_gt_d1 = p.d2 > p.d1;
  c.b_below_bstar = p.b > 0.0 && p.b < c.b_star;
  c.a_in_window = c.a_minus < p.a && p.a < c.a_plus;
  c.m1_le_m2 = c.M1 <= c.M2;
  return c;
}

TuringReport turing_branch(const ModelParams& p) {
  p.validate();
  const Equilibrium eq = equilibrium(p);
  const LinearCoeffs lin = linear_coeffs(p, eq);

  TuringReport rep;
  rep.u0 = eq.u0;
  rep.A0 = lin.A0;
  rep.B0 = lin.B0;
  rep.predation_hypothesis = predation_hypothesis(p);

  int n = 0;
  for (;; ++n) {
    rep.r_T.push_back(turing_value(p, n));
    rep.r_H.push_back(hopf_value(p, n));
    if (n >= 1 && p.d1 * wave_of(p, n) > lin.A0) break;
    if (n == kMaxWaveNumber) break;
  }
  rep.cutoff = n;

  const auto best = std::max_element(rep.r_T.begin(), rep.r_T.end());
  rep.n_T = static_cast<int>(best - rep.r_T.begin());
  rep.r_star = *best;
  if (rep.r_star <= 0.0) {
    throw Error(ErrorKind::no_positive_turing,
                "r_n^T <= 0 for every n >= 1; no Turing bifurcation");
  }

  rep.r_second = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= rep.cutoff; ++k) {
    if (k != rep.n_T && rep.r_T[k] > rep.r_second) {
      rep.r_second = rep.r_T[k];
      rep.n_I = k;
    }
  }

  try {
    rep.a6 = check_a6(p);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::complex_aux) throw;
    rep.a6.reset();
  }
  return rep;
}

const char* to_string(RootCase c) noexcept {
  switch (c) {
  case RootCase::c1: return "C1";
  case RootCase::c2: return "C2";
  case RootCase::c3: return "C3";
  case RootCase::c4: return "C4";
  case RootCase::none: return "none";
  }
  return "none";
}

HopfBranch hopf_branch(const ModelParams& p, double r, int n, int k_max) {
  if (!(r > 0.0)) throw Error(ErrorKind::invalid_argument, "r must be > 0");
  const CharacteristicEval ch(p, n);

  HopfBranch br;
  br.n = n;
  br.r = r;
  br.P = ch.P(r);
  br.Q = ch.Q(r);
  const double P = br.P;
  const double Q = br.Q;
  const double q_tol = 1e-12 * std::max(1.0, P * P);
  const double p_tol = 1e-9 * std::max(1.0, std::abs(P));

  if (Q < -q_tol) {
    br.root_case = RootCase::c1;
    const double w2 = 0.5 * (P + std::sqrt(P * P - 4.0 * Q));
    br.roots.push_back(make_root(ch, std::sqrt(w2), r, k_max));
  } else if (Q <= q_tol) {
    if (P > p_tol) {
      br.root_case = RootCase::c2;
      const double w2 = 0.5 * (P + std::sqrt(std::max(P * P - 4.0 * Q, 0.0)));
      br.roots.push_back(make_root(ch, std::sqrt(w2), r, k_max));
    }
  } else {
    const double twice_root_q = 2.0 * std::sqrt(Q);
    if (std::abs(P - twice_root_q) <= p_tol) {
      br.root_case = RootCase::c3;
      br.roots.push_back(make_root(ch, std::sqrt(0.5 * P), r, k_max));
    } else if (P > twice_root_q) {
      br.root_case = RootCase::c4;
      const double w2_plus = 0.5 * (P + std::sqrt(P * P - 4.0 * Q));
      const double w2_minus = Q / w2_plus;
      br.roots.push_back(make_root(ch, std::sqrt(w2_plus), r, k_max));
      br.roots.push_back(make_root(ch, std::sqrt(w2_minus), r, k_max));
    }
  }
  if (br.roots.empty()) {
    throw Error(ErrorKind::no_root, "no positive omega for wave number " +
                                        std::to_string(n));
  }
  return br;
}

const HopfBranch* HopfReport::branch(int n) const {
  for (const auto& b : branches) {
    if (b.n == n) return &b;
  }
  return nullptr;
}

HopfReport s0_and_star(const ModelParams& p, double r_star, int n_T,
                       int k_max) {
  const LinearCoeffs lin = coeffs_of(p);
  const double d1 = p.d1;
  const double d2 = p.d2;
  const double A0 = lin.A0;
  const double B0 = lin.B0;

  HopfReport rep;
  rep.r = r_star;
  if (!(A0 > 0.0)) {
    throw Error(ErrorKind::condition_violated, "A0 <= 0: no Hopf window");
  }
  rep.N1 = static_cast<int>(std::ceil(p.l * std::sqrt(A0 / d1))) - 1;

  const double dq = d1 * r_star - d2 * A0;
  rep.x_Q = (d1 * r_star + d2 * A0 +
             std::sqrt(dq * dq - 4.0 * d1 * d2 * r_star * B0)) /
            (2.0 * d1 * d2);
  rep.N_Q = static_cast<int>(std::ceil(p.l * std::sqrt(rep.x_Q))) - 1;

  const double dp = r_star * r_star * (d1 * d1 + d2 * d2) - d2 * d2 * A0 * A0;
  rep.x_P = (d1 * A0 + std::sqrt(std::max(dp, 0.0))) / (d1 * d1 + d2 * d2);
  rep.l_threshold = n_T * std::sqrt(1.0 / rep.x_P);
  const bool exclude_turing = p.l <= rep.l_threshold;

  for (int n = 0; n <= rep.N_Q; ++n) {
    if (exclude_turing && n == n_T) continue;
    rep.S0.push_back(n);
  }

  rep.tau_star = std::numeric_limits<double>::infinity();
  std::vector<int> admitted;
  for (int n : rep.S0) {
    try {
      HopfBranch br = hopf_branch(p, r_star, n, k_max);
      const HopfRoot& root = br.principal();
      if (root.taus.front() < rep.tau_star) {
        rep.tau_star = root.taus.front();
        rep.omega_star = root.omega;
        rep.n_H = n;
      }
      rep.branches.push_back(std::move(br));
      admitted.push_back(n);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::no_root) throw;
    }
  }
  rep.S0 = std::move(admitted);
  if (rep.branches.empty()) {
    throw Error(ErrorKind::no_root, "S0 is empty at r*");
  }
  return rep;
}

BTPoint bt_point(const ModelParams& p, double r_star, int n_T) {
  const CharacteristicEval ch(p, n_T);
  const double x = ch.wave();
  const LinearCoeffs& lin = ch.linear();
  const double e_coef = p.d1 * x - lin.A0 - lin.B0;

  BTPoint bt;
  bt.tau0 = (r_star + (p.d1 + p.d2) * x - lin.A0) / (r_star * e_coef);
  bt.dG_dlambda = ch.d_lambda(0.0, r_star, bt.tau0).real();
  bt.d2G_dlambda2 = ch.d2_lambda(0.0, r_star, bt.tau0).real();
  return bt;
}

double turing_root_slope(const ModelParams& p, double r_star, int n_T,
                         double tau) {
  const CharacteristicEval ch(p, n_T);
  const double x = ch.wave();
  const LinearCoeffs& lin = ch.linear();
  const double e_coef = p.d1 * x - lin.A0 - lin.B0;
  return e_coef / (lin.A0 - (p.d1 + p.d2) * x - r_star +
                   r_star * tau * e_coef);
}

cplx track_root(const ModelParams& p, int n, double r, double tau, cplx seed,
                const TrackOptions& opts) {
  const CharacteristicEval ch(p, n);
  cplx lambda = seed;
  for (int it = 0; it < opts.max_iter; ++it) {
    const cplx g = ch.residual(lambda, r, tau);
    if (std::abs(g) < opts.tol) return lambda;
    const cplx dg = ch.d_lambda(lambda, r, tau);
    if (std::abs(dg) == 0.0) break;
    lambda -= g / dg;
  }
  if (std::abs(ch.residual(lambda, r, tau)) < opts.tol) return lambda;
  throw Error(ErrorKind::no_convergence,
              "Newton on G_" + std::to_string(n) + " did not converge");
}

cplx continue_root(const ModelParams& p, int n, double r0, double tau0,
                   double r1, double tau1, cplx seed, int steps,
                   const TrackOptions& opts) {
  cplx lambda = seed;
  for (int s = 1; s <= steps; ++s) {
    const double f = static_cast<double>(s) / steps;
    lambda = track_root(p, n, r0 + f * (r1 - r0), tau0 + f * (tau1 - tau0),
                        lambda, opts);
  }
  return lambda;
}

LinearStability linear_stability(const ModelParams& p, double r, double tau) {
  LinearStability st;
  st.first_hopf_tau = std::numeric_limits<double>::infinity();
  const LinearCoeffs lin = coeffs_of(p);
  for (int n = 0; n <= kMaxWaveNumber; ++n) {
    const CharacteristicEval ch(p, n);
    if (ch.det(0.0, r, tau).real() < 0.0) st.turing_unstable = true;
    const double P = ch.P(r);
    const double Q = ch.Q(r);
    const bool past_window = p.d1 * ch.wave() > lin.A0 && P < 0.0 && Q > 0.0;
    if (past_window) break;
    try {
      const HopfBranch br = hopf_branch(p, r, n, 0);
      for (const auto& root : br.roots) {
        st.first_hopf_tau = std::min(st.first_hopf_tau, root.taus.front());
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::no_root) throw;
    }
  }
  st.hopf_unstable = tau > st.first_hopf_tau;
  return st;
}

} // namespace thopf
