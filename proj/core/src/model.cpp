#include "thopf/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "thopf/error.hpp"

namespace thopf {

void ModelParams::validate() const {
  const auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(d1) || !positive(d2) || !positive(a) || !positive(b) ||
      !positive(l) || !positive(r)) {
    throw Error(ErrorKind::invalid_argument,
                "model parameters d1, d2, a, b, l, r must be finite and > 0");
  }
  if (!std::isfinite(tau) || tau < 0.0) {
    throw Error(ErrorKind::invalid_argument, "delay tau must be >= 0");
  }
}

bool predation_hypothesis(const ModelParams& p) {
  return p.b > 0.0 && p.b < 1.0 &&
         p.a > (p.b + 1.0) * (p.b + 1.0) / (2.0 * (1.0 - p.b));
}

Equilibrium equilibrium(const ModelParams& p) {
  const double s = p.a + p.b - 1.0;
  return {0.5 * ((1.0 - p.a - p.b) + std::sqrt(s * s + 4.0 * p.b))};
}

LinearCoeffs linear_coeffs(const ModelParams& p, const Equilibrium& eq) {
  const double u0 = eq.u0;
  return {u0 / (p.b + u0) * (1.0 - p.b - 2.0 * u0), u0 - 1.0};
}

Vec2 kinetics(const ModelParams& p, double u, double v, double u_tau,
              double v_tau) {
  return {u * (1.0 - u) - p.a * u * v / (u + p.b),
          p.r * v * (1.0 - v_tau / u_tau)};
}

DerivativeTensor DerivativeTensor::without_cubic() const {
  DerivativeTensor copy = *this;
  copy.third_ = {};
  return copy;
}

void DerivativeTensor::set_second(Var i, Var j, Vec2 value) {
  const int a = static_cast<int>(i);
  const int b = static_cast<int>(j);
  second_[a][b] = value;
  second_[b][a] = value;
}

void DerivativeTensor::set_third(Var i, Var j, Var k, Vec2 value) {
  std::array<int, 3> idx{static_cast<int>(i), static_cast<int>(j),
                         static_cast<int>(k)};
  std::sort(idx.begin(), idx.end());
  do {
    third_[idx[0]][idx[1]][idx[2]] = value;
  } while (std::next_permutation(idx.begin(), idx.end()));
}

DerivativeTensor derivative_tensor(const ModelParams& p, const Equilibrium& eq,
                                   std::optional<double> tau_scale) {
  const double s = tau_scale.value_or(1.0);
  const double u0 = eq.u0;
  const double a = p.a;
  const double b = p.b;
  const double r = p.r;
  const double w = b + u0;

  // f1 = u(1-u) - a u v/(u+b).  d^k/du^k [u/(u+b)] = b/w^2, -2b/w^3, 6b/w^4.
  const double f1_uu = -2.0 + 2.0 * a * b * u0 / (w * w * w);
  const double f1_uv = -a * b / (w * w);
  const double f1_uuu = -6.0 * a * b * u0 / (w * w * w * w);
  const double f1_uuv = 2.0 * a * b / (w * w * w);

  // f2 = r v (1 - v_tau/u_tau) at u = v = u_tau = v_tau = u0.
  const double f2_v_vt = -r / u0;
  const double f2_v_ut = r / u0;
  const double f2_ut_vt = r / u0;
  const double f2_ut_ut = -2.0 * r / u0;
  const double f2_v_ut_ut = -2.0 * r / (u0 * u0);
  const double f2_v_ut_vt = r / (u0 * u0);
  const double f2_ut_ut_ut = 6.0 * r / (u0 * u0);
  const double f2_ut_ut_vt = -2.0 * r / (u0 * u0);

  DerivativeTensor t;
  t.scale_ = tau_scale;
  t.set_second(Var::u, Var::u, {s * f1_uu, 0.0});
  t.set_second(Var::u, Var::v, {s * f1_uv, 0.0});
  t.set_second(Var::v, Var::v_tau, {0.0, s * f2_v_vt});
  t.set_second(Var::v, Var::u_tau, {0.0, s * f2_v_ut});
  t.set_second(Var::u_tau, Var::v_tau, {0.0, s * f2_ut_vt});
  t.set_second(Var::u_tau, Var::u_tau, {0.0, s * f2_ut_ut});

  t.set_third(Var::u, Var::u, Var::u, {s * f1_uuu, 0.0});
  t.set_third(Var::u, Var::u, Var::v, {s * f1_uuv, 0.0});
  t.set_third(Var::v, Var::u_tau, Var::u_tau, {0.0, s * f2_v_ut_ut});
  t.set_third(Var::v, Var::u_tau, Var::v_tau, {0.0, s * f2_v_ut_vt});
  t.set_third(Var::u_tau, Var::u_tau, Var::u_tau, {0.0, s * f2_ut_ut_ut});
  t.set_third(Var::u_tau, Var::u_tau, Var::v_tau, {0.0, s * f2_ut_ut_vt});
  return t;
}

} // namespace thopf
