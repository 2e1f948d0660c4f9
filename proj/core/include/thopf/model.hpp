#pragma once

// Delayed diffusive Holling-Tanner system on (0, l*pi) with Neumann walls:
//
//   u_t = d1 u_xx + u(1 - u) - a u v / (u + b)
//   v_t = d2 v_xx + r v (1 - v(t - tau) / u(t - tau))

#include <array>
#include <optional>

namespace thopf {

using Vec2 = std::array<double, 2>;

struct ModelParams {
  double d1 = 0.0;
  double d2 = 0.0;
  double a = 0.0;
  double b = 0.0;
  double l = 0.0;
  double r = 0.0;
  double tau = 0.0;

  /// Throws Error(invalid_argument) unless d1, d2, a, b, l, r > 0 and tau >= 0.
  void validate() const;

  ModelParams with_r(double value) const {
    ModelParams p = *this;
    p.r = value;
    return p;
  }
  ModelParams with_tau(double value) const {
    ModelParams p = *this;
    p.tau = value;
    return p;
  }
  ModelParams with_r_tau(double r_value, double tau_value) const {
    return with_r(r_value).with_tau(tau_value);
  }
};

/// 0 < b < 1 and a > (b+1)^2 / (2(1-b)); the standing hypothesis of the
/// Turing analysis.
bool predation_hypothesis(const ModelParams& p);

struct Equilibrium {
  double u0 = 0.0; // v0 == u0
};

struct LinearCoeffs {
  double A0 = 0.0; // df1/du at the equilibrium
  double B0 = 0.0; // df1/dv at the equilibrium, equals u0 - 1
};

Equilibrium equilibrium(const ModelParams& p);
LinearCoeffs linear_coeffs(const ModelParams& p, const Equilibrium& eq);

/// Reaction terms (f1, f2) at a point, with the delayed values given
/// separately.
Vec2 kinetics(const ModelParams& p, double u, double v, double u_tau,
              double v_tau);

/// Arguments of the reaction terms, in the order used by DerivativeTensor.
enum class Var : int { u = 0, v = 1, u_tau = 2, v_tau = 3 };
inline constexpr int kVarCount = 4;

/// Second and third partial derivatives of (f1, f2) at the equilibrium.
///
/// With `scale` set, every entry carries the factor tau* of the time-rescaled
/// system (t -> t / tau), matching the nonlinearity F0 = tau F(r, 1, .).
class DerivativeTensor {
public:
  const Vec2& second(int i, int j) const { return second_[i][j]; }
  const Vec2& third(int i, int j, int k) const { return third_[i][j][k]; }
  const Vec2& second(Var i, Var j) const {
    return second(static_cast<int>(i), static_cast<int>(j));
  }
  const Vec2& third(Var i, Var j, Var k) const {
    return third(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k));
  }

  std::optional<double> scale() const { return scale_; }

  /// Copy with all third-order entries set to zero (ablation studies).
  DerivativeTensor without_cubic() const;

private:
  friend DerivativeTensor derivative_tensor(const ModelParams&,
                                            const Equilibrium&,
                                            std::optional<double>);
  void set_second(Var i, Var j, Vec2 value);
  void set_third(Var i, Var j, Var k, Vec2 value);

  std::array<std::array<Vec2, kVarCount>, kVarCount> second_{};
  std::array<std::array<std::array<Vec2, kVarCount>, kVarCount>, kVarCount>
      third_{};
  std::optional<double> scale_;
};

/// Hand-derived closed forms, evaluated at (u, v, u_tau, v_tau) = (u0, u0, u0,
/// u0) with the predator rate p.r.
DerivativeTensor derivative_tensor(const ModelParams& p, const Equilibrium& eq,
                                   std::optional<double> tau_scale);

} // namespace thopf
