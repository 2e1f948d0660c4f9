#include "thopf/unfolding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thopf/error.hpp"
#include "thopf/spectrum.hpp"

namespace thopf {

namespace {

constexpr double kBlowup = 1e6;

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

std::string case_tag_of(const PlanarUnfolding& pu) {
  if (pu.p0 != 1.0) return "p0=-1";
  const bool bp = pu.b0 > 0.0;
  const bool cp = pu.c0 > 0.0;
  if (pu.d0 == 1.0) {
    if (bp && cp) return pu.det() > 0.0 ? "Ia" : "Ib";
    if (bp && !cp) return "II";
    if (!bp && cp) return "III";
    return pu.det() > 0.0 ? "IVa" : "IVb";
  }
  if (bp && cp) return "V";
  if (bp && !cp) return "VI";
  if (!bp && cp) return pu.det() > 0.0 ? "VIIa" : "VIIb";
  return pu.det() > 0.0 ? "VIIIa" : "VIIIb";
}

std::array<std::complex<double>, 2> eig2(double a, double b, double c,
                                         double d) {
  const double tr = a + d;
  const double det = a * d - b * c;
  const std::complex<double> disc =
      std::sqrt(std::complex<double>(tr * tr / 4.0 - det));
  return {tr / 2.0 + disc, tr / 2.0 - disc};
}

PlanarEquilibrium make_equilibrium(const PlanarUnfolding& pu,
                                   const EpsilonPair& eps, EquilibriumKind kind,
                                   double rho, double v) {
  PlanarEquilibrium e;
  e.kind = kind;
  e.rho = rho;
  e.v = v;
  const double r2 = rho * rho;
  const double v2 = v * v;
  const double fr = -(eps.eps1 + 3.0 * pu.p0 * r2 + pu.b0 * v2);
  const double fv = -2.0 * pu.b0 * rho * v;
  const double gr = -2.0 * pu.c0 * rho * v;
  const double gv = -(eps.eps2 + pu.c0 * r2 + 3.0 * pu.d0 * v2);
  e.eigs = eig2(fr, fv, gr, gv);
  const PlanarState f = planar_rhs(pu, eps, {rho, v});
  e.residual = std::max(std::abs(f[0]), std::abs(f[1]));
  return e;
}

void check_finite(const PlanarState& s, double t) {
  if (!std::isfinite(s[0]) || !std::isfinite(s[1]) ||
      std::hypot(s[0], s[1]) > kBlowup) {
    throw Error(ErrorKind::blowup,
                "planar trajectory blew up at t = " + std::to_string(t));
  }
}

} // namespace

PlanarUnfolding planar_reduce(const NormalFormCoeffs& nf) {
  const double re210 = nf.g210.real();
  const double g003 = nf.g003.real();
  if (re210 == 0.0 || g003 == 0.0) {
    throw Error(ErrorKind::degenerate_cubic,
                "Re(g210) or g003 vanishes; planar rescaling undefined");
  }
  PlanarUnfolding pu;
  pu.a11 = re210 / 6.0;
  pu.a12 = nf.g102.real() / 6.0;
  pu.a21 = nf.g111.real() / 6.0;
  pu.a22 = g003 / 6.0;
  pu.p0 = -sign(pu.a11);
  pu.d0 = -sign(pu.a22);
  pu.b0 = -pu.a12 / std::abs(pu.a22);
  pu.c0 = -pu.a21 / std::abs(pu.a11);

  pu.eps1_r = -0.5 * nf.f_a1z1.real();
  pu.eps1_tau = -0.5 * nf.f_a2z1.real();
  pu.eps2_r = -0.5 * nf.f_a1z2;
  pu.eps2_tau = -0.5 * nf.f_a2z2;
  pu.case_tag = case_tag_of(pu);
  return pu;
}

PlanarUnfolding planar_reduce(const NormalFormResult& nf, double mixed_rel) {
  PlanarUnfolding pu = planar_reduce(nf.coeffs);
  const TuringHopfPoint& th = nf.point;
  pu.n_T = th.n_T;
  pu.n_I = th.n_I;
  pu.mixed_mode = th.r_second > 0.0 &&
                  (th.r_star - th.r_second) <= mixed_rel * th.r_star;
  return pu;
}

EpsilonPair linear_epsilons(const PlanarUnfolding& pu, double alpha1,
                            double alpha2) {
  return {pu.eps1_r * alpha1 + pu.eps1_tau * alpha2,
          pu.eps2_r * alpha1 + pu.eps2_tau * alpha2};
}

EpsilonPair tracked_epsilons(const TuringHopfPoint& th, double alpha1,
                             double alpha2) {
  const ModelParams& p = th.params;
  const double r1 = th.r_star + alpha1;
  const double tau1 = th.tau_star + alpha2;
  const cplx mu_h = continue_root(p, th.n_H, th.r_star, th.tau_star, r1, tau1,
                                  cplx(0.0, th.omega_star));
  const cplx mu_t = continue_root(p, th.n_T, th.r_star, th.tau_star, r1, tau1,
                                  cplx(0.0, 0.0));
  return {-tau1 * mu_h.real(), -tau1 * mu_t.real()};
}

const char* to_string(EquilibriumKind k) noexcept {
  switch (k) {
  case EquilibriumKind::origin: return "origin";
  case EquilibriumKind::hopf_axis: return "hopf-axis";
  case EquilibriumKind::turing_axis: return "turing-axis";
  case EquilibriumKind::mixed: return "mixed";
  }
  return "?";
}

const char* to_string(Pattern p) noexcept {
  switch (p) {
  case Pattern::constant_steady_state: return "constant-steady-state";
  case Pattern::two_nonconstant_steady_states:
    return "two-nonconstant-steady-states";
  case Pattern::homogeneous_periodic: return "homogeneous-periodic";
  case Pattern::two_inhomogeneous_periodic: return "two-inhomogeneous-periodic";
  }
  return "?";
}

std::vector<PlanarEquilibrium> planar_equilibria(const PlanarUnfolding& pu,
                                                 const EpsilonPair& eps) {
  const double det = pu.det();
  if (det == 0.0) {
    throw Error(ErrorKind::singular_mixed_system,
                "p0 d0 - b0 c0 = 0; mixed equilibria undefined");
  }
  std::vector<PlanarEquilibrium> out;
  out.push_back(make_equilibrium(pu, eps, EquilibriumKind::origin, 0.0, 0.0));

  const double r2_axis = -eps.eps1 / pu.p0;
  if (r2_axis > 0.0) {
    out.push_back(make_equilibrium(pu, eps, EquilibriumKind::hopf_axis,
                                   std::sqrt(r2_axis), 0.0));
  }
  const double v2_axis = -eps.eps2 / pu.d0;
  if (v2_axis > 0.0) {
    const double v = std::sqrt(v2_axis);
    out.push_back(make_equilibrium(pu, eps, EquilibriumKind::turing_axis, 0.0, v));
    out.push_back(make_equilibrium(pu, eps, EquilibriumKind::turing_axis, 0.0, -v));
  }
  // p0 R^2 + b0 v^2 = -eps1, c0 R^2 + d0 v^2 = -eps2
  const double r2 = (-eps.eps1 * pu.d0 + pu.b0 * eps.eps2) / det;
  const double v2 = (-eps.eps2 * pu.p0 + pu.c0 * eps.eps1) / det;
  if (r2 > 0.0 && v2 > 0.0) {
    const double rho = std::sqrt(r2);
    const double v = std::sqrt(v2);
    out.push_back(make_equilibrium(pu, eps, EquilibriumKind::mixed, rho, v));
    out.push_back(make_equilibrium(pu, eps, EquilibriumKind::mixed, rho, -v));
  }
  return out;
}

PlanarState planar_rhs(const PlanarUnfolding& pu, const EpsilonPair& eps,
                       const PlanarState& s) {
  const double r2 = s[0] * s[0];
  const double v2 = s[1] * s[1];
  return {-s[0] * (eps.eps1 + pu.p0 * r2 + pu.b0 * v2),
          -s[1] * (eps.eps2 + pu.c0 * r2 + pu.d0 * v2)};
}

PlanarState raw_rhs(const PlanarUnfolding& pu, const EpsilonPair& eps,
                    const PlanarState& s) {
  const double r2 = s[0] * s[0];
  const double z2 = s[1] * s[1];
  return {s[0] * (-eps.eps1 + pu.a11 * r2 + pu.a12 * z2),
          s[1] * (-eps.eps2 + pu.a21 * r2 + pu.a22 * z2)};
}

PlanarTrajectory planar_integrate(const PlanarUnfolding& pu,
                                  const EpsilonPair& eps,
                                  const PlanarState& init, double t_end,
                                  double dt, bool raw) {
  if (!(dt > 0.0) || !(t_end >= 0.0)) {
    throw Error(ErrorKind::invalid_argument, "planar_integrate needs dt > 0");
  }
  const auto f = [&](const PlanarState& s) {
    return raw ? raw_rhs(pu, eps, s) : planar_rhs(pu, eps, s);
  };
  const auto axpy = [](const PlanarState& x, double a, const PlanarState& k) {
    return PlanarState{x[0] + a * k[0], x[1] + a * k[1]};
  };
  const long steps = std::lround(std::ceil(t_end / dt));
  const double h = steps > 0 ? t_end / steps : dt;

  PlanarTrajectory tr;
  tr.t.reserve(steps + 1);
  tr.states.reserve(steps + 1);
  PlanarState s = init;
  check_finite(s, 0.0);
  tr.t.push_back(0.0);
  tr.states.push_back(s);
  for (long i = 0; i < steps; ++i) {
    const PlanarState k1 = f(s);
    const PlanarState k2 = f(axpy(s, 0.5 * h, k1));
    const PlanarState k3 = f(axpy(s, 0.5 * h, k2));
    const PlanarState k4 = f(axpy(s, h, k3));
    for (int j = 0; j < 2; ++j) {
      s[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    const double t = (i + 1) * h;
    check_finite(s, t);
    tr.t.push_back(t);
    tr.states.push_back(s);
  }
  return tr;
}

RegionClass classify(const PlanarUnfolding& pu, const EpsilonPair& eps,
                     const ClassifyOptions& opts) {
  RegionClass rc;
  rc.eps = eps;
  rc.mixed_mode = pu.mixed_mode;
  rc.equilibria = planar_equilibria(pu, eps);

  // Equilibria being born or exchanging stability sit on a boundary.
  const double band = opts.boundary_band;
  bool boundary = std::abs(eps.eps1) < band || std::abs(eps.eps2) < band;
  const double det = pu.det();
  const double r2 = (-eps.eps1 * pu.d0 + pu.b0 * eps.eps2) / det;
  const double v2 = (-eps.eps2 * pu.p0 + pu.c0 * eps.eps1) / det;
  if ((std::abs(r2) < band && v2 > -band) || (std::abs(v2) < band && r2 > -band)) {
    boundary = true;
  }

  bool has_h = false, has_t = false, has_m = false;
  for (const auto& e : rc.equilibria) {
    has_h |= e.kind == EquilibriumKind::hopf_axis;
    has_t |= e.kind == EquilibriumKind::turing_axis;
    has_m |= e.kind == EquilibriumKind::mixed;
  }
  if (boundary) {
    rc.region = "boundary";
  } else if (!has_h && !has_t && !has_m) {
    rc.region = "D1";
  } else if (has_t && !has_m && !has_h) {
    rc.region = "D2";
  } else if (has_t && has_m && !has_h) {
    rc.region = "D3";
  } else if (has_t && has_m && has_h) {
    rc.region = "D4";
  } else if (has_h && has_m && !has_t) {
    rc.region = "D5";
  } else if (has_h && !has_m && !has_t) {
    rc.region = "D6";
  } else {
    rc.region = "unclassified";
  }
  if (rc.on_boundary()) return rc;

  const auto add = [&](Pattern p) {
    if (std::find(rc.predicted.begin(), rc.predicted.end(), p) ==
        rc.predicted.end()) {
      rc.predicted.push_back(p);
    }
  };
  bool turing_component = false;
  for (const auto& e : rc.equilibria) {
    if (!e.stable()) continue;
    switch (e.kind) {
    case EquilibriumKind::origin: add(Pattern::constant_steady_state); break;
    case EquilibriumKind::hopf_axis: add(Pattern::homogeneous_periodic); break;
    case EquilibriumKind::turing_axis:
      add(Pattern::two_nonconstant_steady_states);
      turing_component = true;
      break;
    case EquilibriumKind::mixed:
      add(Pattern::two_inhomogeneous_periodic);
      turing_component = true;
      break;
    }
  }
  if (turing_component) {
    rc.spatial_profile =
        pu.mixed_mode ? "h1 cos(" + std::to_string(pu.n_T) + "x/l) + h2 cos(" +
                            std::to_string(pu.n_I) + "x/l)"
                      : "h cos(" + std::to_string(pu.n_T) + "x/l)";
  }
  return rc;
}

RegionClass classify(const PlanarUnfolding& pu, double alpha1, double alpha2,
                     const ClassifyOptions& opts) {
  return classify(pu, linear_epsilons(pu, alpha1, alpha2), opts);
}

std::array<double, 2> locate_boundary(const PlanarUnfolding& pu,
                                      std::array<double, 2> from,
                                      std::array<double, 2> to, double tol) {
  const std::string left = classify(pu, from[0], from[1]).region;
  if (classify(pu, to[0], to[1]).region == left) {
    throw Error(ErrorKind::invalid_argument,
                "segment endpoints lie in the same region " + left);
  }
  while (std::hypot(to[0] - from[0], to[1] - from[1]) > tol) {
    const std::array<double, 2> mid{0.5 * (from[0] + to[0]),
                                    0.5 * (from[1] + to[1])};
    if (classify(pu, mid[0], mid[1]).region == left) {
      from = mid;
    } else {
      to = mid;
    }
  }
  return {0.5 * (from[0] + to[0]), 0.5 * (from[1] + to[1])};
}

} // namespace thopf
