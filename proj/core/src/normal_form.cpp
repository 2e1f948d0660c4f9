#include "thopf/normal_form.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "thopf/error.hpp"
#include "thopf/spectrum.hpp"

namespace thopf {

namespace {

constexpr double kResonanceThreshold = 1e12;
const cplx kI{0.0, 1.0};

cplx entry(const DelayState& s, int var) {
  switch (var) {
  case 0: return s.now[0];
  case 1: return s.now[1];
  case 2: return s.lagged[0];
  default: return s.lagged[1];
  }
}

/// Solves m x = rhs and records conditioning and residual.
CVec2 checked_solve(const Mat2c& m, const CVec2& rhs, const std::string& label,
                    std::vector<SolveRecord>& log) {
  const double cond = condition_1(m);
  if (!(cond <= kResonanceThreshold)) {
    throw Error(ErrorKind::resonant_matrix,
                label + " is near-resonant (condition number " +
                    std::to_string(cond) + ")");
  }
  const CVec2 x = solve(m, rhs);
  log.push_back({label, cond, norm_inf(m * x - rhs)});
  return x;
}

} // namespace

TuringHopfPoint locate_turing_hopf(const ModelParams& p, int k_max) {
  const TuringReport tr = turing_branch(p);
  if (!tr.a6_holds()) {
    throw Error(ErrorKind::condition_violated,
                "Turing-Hopf existence condition does not hold");
  }
  const HopfReport hr = s0_and_star(p, tr.r_star, tr.n_T, k_max);

  TuringHopfPoint th;
  th.n_T = tr.n_T;
  th.n_H = hr.n_H;
  th.r_star = tr.r_star;
  th.tau_star = hr.tau_star;
  th.omega_star = hr.omega_star;
  th.n_I = tr.n_I;
  th.r_second = tr.r_second;
  th.params = p.with_r_tau(tr.r_star, hr.tau_star);
  return th;
}

CVec2 Eigenbasis::phi1(double theta) const {
  const cplx e = std::exp(kI * (omega0 * theta));
  return {e, e * k1};
}

CVec2 Eigenbasis::phi1_bar(double theta) const { return conj(phi1(theta)); }

CVec2 Eigenbasis::phi2(double /*theta*/) const { return {1.0, k3}; }

CVec2 Eigenbasis::psi1(double s) const {
  const cplx e = std::exp(-kI * (omega0 * s)) * T1;
  return {e, e * k2};
}

CVec2 Eigenbasis::psi2(double /*s*/) const { return {T2, T2 * k4}; }

Mat2c Eigenbasis::A() const {
  const LinearCoeffs lin = linear_coeffs(params, equilibrium(params));
  Mat2c m;
  m(0, 0) = tau_star * lin.A0;
  m(0, 1) = tau_star * lin.B0;
  return m;
}

Mat2c Eigenbasis::B() const {
  Mat2c m;
  m(1, 0) = tau_star * r_star;
  m(1, 1) = -tau_star * r_star;
  return m;
}

Mat2c Eigenbasis::D() const {
  return Mat2c::diag(tau_star * params.d1, tau_star * params.d2);
}

Mat2c Eigenbasis::L0(cplx lambda) const {
  return A() + std::exp(-lambda) * B();
}

Mat2c Eigenbasis::characteristic(cplx lambda, double wave) const {
  return lambda * Mat2c::identity() + wave * D() - L0(lambda);
}

Eigenbasis eigenbasis(const ModelParams& p, int n_T, int n_H,
                      double omega_star) {
  if (n_H != 0 || n_T == 0) {
    throw Error(ErrorKind::degenerate_case,
                "normal form implemented for n_H = 0 and n_T != 0 only (n_H = " +
                    std::to_string(n_H) + ", n_T = " + std::to_string(n_T) + ")");
  }
  const LinearCoeffs lin = linear_coeffs(p, equilibrium(p));
  const double A0 = lin.A0;
  const double B0 = lin.B0;
  const double r = p.r;
  const double tau = p.tau;

  Eigenbasis e;
  e.params = p;
  e.r_star = r;
  e.tau_star = tau;
  e.omega_star = omega_star;
  e.omega0 = omega_star * tau;
  e.n_T = n_T;
  e.wave_T = static_cast<double>(n_T) * n_T / (p.l * p.l);

  const cplx rot = std::exp(-kI * e.omega0);
  e.k1 = -(A0 - kI * omega_star) / B0;
  e.k2 = -(A0 - kI * omega_star) * std::exp(kI * e.omega0) / r;
  e.k3 = -(A0 - p.d1 * e.wave_T) / B0;
  e.k4 = -(A0 - p.d1 * e.wave_T) / r;
  e.T1 = 1.0 / (e.k1 * e.k2 + rot * r * tau * e.k2 * (1.0 - e.k1) + 1.0);
  e.T2 = 1.0 / (e.k3 * e.k4 + r * tau * e.k4 * (1.0 - e.k3) + 1.0);
  return e;
}

Eigenbasis eigenbasis(const TuringHopfPoint& th) {
  return eigenbasis(th.params, th.n_T, th.n_H, th.omega_star);
}

cplx bilinear_form(const Eigenbasis& basis, const ColumnFn& psi,
                   const ColumnFn& phi, int panels) {
  if (panels % 2 != 0) ++panels;
  const Mat2c b = basis.B();
  const auto integrand = [&](double s) { return dot(psi(s + 1.0), b * phi(s)); };
  const double h = 1.0 / panels;
  cplx sum = integrand(-1.0) + integrand(0.0);
  for (int i = 1; i < panels; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(-1.0 + i * h);
  }
  return dot(psi(0.0), phi(0.0)) + sum * (h / 3.0);
}

CVec2 contract(const DerivativeTensor& t, const DelayState& x,
               const DelayState& y) {
  CVec2 out{};
  for (int i = 0; i < kVarCount; ++i) {
    const cplx xi = entry(x, i);
    if (xi == 0.0) continue;
    for (int j = 0; j < kVarCount; ++j) {
      const Vec2& c = t.second(i, j);
      if (c[0] == 0.0 && c[1] == 0.0) continue;
      const cplx w = xi * entry(y, j);
      out[0] += c[0] * w;
      out[1] += c[1] * w;
    }
  }
  return out;
}

CVec2 contract(const DerivativeTensor& t, const DelayState& x,
               const DelayState& y, const DelayState& z) {
  CVec2 out{};
  for (int i = 0; i < kVarCount; ++i) {
    const cplx xi = entry(x, i);
    if (xi == 0.0) continue;
    for (int j = 0; j < kVarCount; ++j) {
      const cplx xy = xi * entry(y, j);
      for (int k = 0; k < kVarCount; ++k) {
        const Vec2& c = t.third(i, j, k);
        if (c[0] == 0.0 && c[1] == 0.0) continue;
        const cplx w = xy * entry(z, k);
        out[0] += c[0] * w;
        out[1] += c[1] * w;
      }
    }
  }
  return out;
}

CoeffVectors coeff_vectors(const DerivativeTensor& t, const Eigenbasis& basis) {
  const DelayState p1 = basis.phi1_state();
  const DelayState p1b = basis.phi1_bar_state();
  const DelayState p2 = basis.phi2_state();

  // Multinomial weight (m+n+k)!/(m! n! k!) times the symmetric form.
  CoeffVectors v;
  v.F200 = contract(t, p1, p1);
  v.F110 = 2.0 * contract(t, p1, p1b);
  v.F101 = 2.0 * contract(t, p1, p2);
  v.F002 = contract(t, p2, p2);
  v.F020 = conj(v.F200);
  v.F011 = conj(v.F101);
  v.F210 = 3.0 * contract(t, p1, p1, p1b);
  v.F102 = 3.0 * contract(t, p1, p2, p2);
  v.F111 = 6.0 * contract(t, p1, p1b, p2);
  v.F003 = contract(t, p2, p2, p2);
  return v;
}

Projections project(const Eigenbasis& basis, const CoeffVectors& v) {
  const double lpi = basis.params.l * std::numbers::pi;
  const double root = std::sqrt(lpi);
  const CVec2 y1 = basis.psi1(0.0);
  const CVec2 y2 = basis.psi2(0.0);

  Projections f;
  f.f200_11 = dot(y1, v.F200) / root;
  f.f110_11 = dot(y1, v.F110) / root;
  f.f020_11 = dot(y1, v.F020) / root;
  f.f002_11 = dot(y1, v.F002) / root;
  f.f101_13 = dot(y2, v.F101) / root;
  f.f011_13 = dot(y2, v.F011) / root;
  f.f200_12 = std::conj(f.f020_11);
  f.f110_12 = std::conj(f.f110_11);
  f.f020_12 = std::conj(f.f200_11);
  f.f002_12 = std::conj(f.f002_11);
  f.f210_11 = dot(y1, v.F210) / lpi;
  f.f102_11 = dot(y1, v.F102) / lpi;
  f.f111_13 = dot(y2, v.F111) / lpi;
  f.f003_13 = 1.5 * dot(y2, v.F003) / lpi;
  return f;
}

CVec2 HFunction::operator()(const Eigenbasis& basis, double theta) const {
  CVec2 out = c_phi1 * basis.phi1(theta) + c_phi1_bar * basis.phi1_bar(theta) +
              c_phi2 * basis.phi2(theta);
  for (const auto& term : terms) {
    out = out + std::exp(term.exponent * theta) * term.vector;
  }
  return out;
}

HFunctions h_solve(const Eigenbasis& basis, const CoeffVectors& v,
                   const Projections& f) {
  const double lpi = basis.params.l * std::numbers::pi;
  const double root = std::sqrt(lpi);
  const double w0 = basis.omega0;
  const cplx iw = kI * w0;
  const cplx center = 1.0 / (iw * root);
  const Mat2c id = Mat2c::identity();
  const Mat2c D = basis.D();
  const double wave = basis.wave_T;

  HFunctions h;
  auto& log = h.solves;

  const Mat2c m200 = 2.0 * iw * id - basis.L0(2.0 * iw);
  const Mat2c m_static = basis.L0(0.0);
  const Mat2c m101 = iw * id + wave * D - basis.L0(iw);
  const Mat2c m011 = -iw * id + wave * D - basis.L0(-iw);
  const Mat2c m002 = (4.0 * wave) * D - basis.L0(0.0);

  const CVec2 x200 = checked_solve(m200, v.F200, "2iw0 - L0(e^{2iw0})", log);
  h.h200_H.terms.push_back({2.0 * iw, (1.0 / lpi) * x200});
  h.h200_H.c_phi1 = -center * f.f200_11;
  h.h200_H.c_phi1_bar = -center * f.f200_12 / 3.0;

  const CVec2 x110 = checked_solve(m_static, v.F110, "L0(I) [F110]", log);
  h.h110_H.terms.push_back({0.0, (-1.0 / lpi) * x110});
  h.h110_H.c_phi1 = center * f.f110_11;
  h.h110_H.c_phi1_bar = -center * f.f110_12;
  h.h110_T = h.h110_H;

  const CVec2 x101 =
      checked_solve(m101, v.F101, "iw0 + wave D0 - L0(e^{iw0})", log);
  h.h101_TH.terms.push_back({iw, (1.0 / lpi) * x101});
  h.h101_TH.c_phi2 = -center * f.f101_13;

  const CVec2 x011 =
      checked_solve(m011, v.F011, "-iw0 + wave D0 - L0(e^{-iw0})", log);
  h.h011_HT.terms.push_back({-iw, (1.0 / lpi) * x011});
  h.h011_HT.c_phi2 = center * f.f011_13;

  const CVec2 x002 = checked_solve(m_static, v.F002, "L0(I) [F002]", log);
  h.h002_H.terms.push_back({0.0, (-1.0 / lpi) * x002});
  h.h002_H.c_phi1 = center * f.f002_11;
  h.h002_H.c_phi1_bar = -center * f.f002_12;

  const CVec2 x002t = checked_solve(m002, v.F002, "4 wave D0 - L0(I)", log);
  h.h002_T = h.h002_H;
  h.h002_T.terms.push_back({0.0, (0.5 / lpi) * x002t});
  return h;
}

void g_coeffs(const Eigenbasis& basis, const DerivativeTensor& t,
              const Projections& f, const HFunctions& h,
              NormalFormCoeffs& out, const GOptions& opts) {
  const cplx k = 3.0 / (2.0 * kI * basis.omega0);
  const DelayState p1 = basis.phi1_state();
  const DelayState p1b = basis.phi1_bar_state();
  const DelayState p2 = basis.phi2_state();
  const auto S = [&](const HFunction& fn, const DelayState& mode) {
    return 2.0 * contract(t, fn.state(basis), mode);
  };
  const CVec2 y1 = basis.psi1(0.0);
  const CVec2 y2 = basis.psi2(0.0);

  out.g210 = f.f210_11 + k * (-f.f110_11 * f.f200_11 + f.f110_11 * f.f110_12 +
                              (2.0 / 3.0) * f.f020_11 * f.f200_12);
  out.g102 = f.f102_11 + k * (-2.0 * f.f002_11 * f.f200_11 +
                              f.f002_12 * f.f110_11 +
                              2.0 * f.f002_11 * f.f101_13);
  out.g111 = f.f111_13 + k * (-f.f101_13 * f.f110_11 + f.f011_13 * f.f110_12);
  out.g003 = f.f003_13 + k * (-f.f002_11 * f.f101_13 + f.f002_12 * f.f011_13);

  if (opts.center_manifold_terms) {
    out.g210 += 1.5 * dot(y1, S(h.h110_H, p1) + S(h.h200_H, p1b));
    out.g102 += 1.5 * dot(y1, S(h.h002_H, p1) + S(h.h101_TH, p2));
    out.g111 += 1.5 * dot(y2, S(h.h011_HT, p1) + S(h.h101_TH, p1b) +
                                  S(h.h110_T, p2));
    out.g003 += 1.5 * dot(y2, S(h.h002_T, p2));
  }
  out.audit = f;
}

void unfolding_coeffs(const Eigenbasis& basis, NormalFormCoeffs& out) {
  const LinearCoeffs lin = linear_coeffs(basis.params, equilibrium(basis.params));
  const double tau = basis.tau_star;
  const double r = basis.r_star;
  const double wave = basis.wave_T;

  Mat2c dB_dr;
  dB_dr(1, 0) = tau;
  dB_dr(1, 1) = -tau;
  Mat2c dA_dtau;
  dA_dtau(0, 0) = lin.A0;
  dA_dtau(0, 1) = lin.B0;
  Mat2c dB_dtau;
  dB_dtau(1, 0) = r;
  dB_dtau(1, 1) = -r;
  const Mat2c dD_dtau = Mat2c::diag(basis.params.d1, basis.params.d2);

  const CVec2 y1 = basis.psi1(0.0);
  const CVec2 y2 = basis.psi2(0.0);
  const CVec2 p1_now = basis.phi1(0.0);
  const CVec2 p1_lag = basis.phi1(-1.0);
  const CVec2 p2 = basis.phi2(0.0);

  // dA/dr = 0 and dD/dr = 0.
  out.f_a1z1 = 2.0 * dot(y1, dB_dr * p1_lag);
  out.f_a2z1 = 2.0 * dot(y1, dA_dtau * p1_now + dB_dtau * p1_lag);
  out.f_a1z2 = (2.0 * dot(y2, dB_dr * p2)).real();
  out.f_a2z2 =
      (2.0 * dot(y2, (-wave) * (dD_dtau * p2) + dA_dtau * p2 + dB_dtau * p2))
          .real();
}

NormalFormResult compute_normal_form(const TuringHopfPoint& th,
                                     const GOptions& opts) {
  NormalFormResult res;
  res.point = th;
  res.basis = eigenbasis(th);
  const DerivativeTensor t = derivative_tensor(
      th.params, equilibrium(th.params), th.tau_star);
  res.vectors = coeff_vectors(t, res.basis);
  const Projections f = project(res.basis, res.vectors);
  res.h = h_solve(res.basis, res.vectors, f);
  g_coeffs(res.basis, t, f, res.h, res.coeffs, opts);
  unfolding_coeffs(res.basis, res.coeffs);
  return res;
}

NormalFormResult compute_normal_form(const ModelParams& p,
                                     const GOptions& opts) {
  return compute_normal_form(locate_turing_hopf(p), opts);
}

} // namespace thopf
