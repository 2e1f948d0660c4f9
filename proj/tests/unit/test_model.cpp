#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "param_sets.hpp"
#include "thopf/error.hpp"
#include "thopf/model.hpp"

using namespace thopf;
using thopf::testing::group_1;
using thopf::testing::group_2;

namespace {

ModelParams random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.05, 3.0);
  std::uniform_real_distribution<double> small(0.001, 0.9);
  return {u(rng), u(rng), u(rng), small(rng), u(rng), u(rng), u(rng)};
}

using Point = std::array<double, 4>;

Vec2 f_at(const ModelParams& p, const Point& x) {
  return kinetics(p, x[0], x[1], x[2], x[3]);
}

// Central differences on the kinetics; the oracle for the closed forms.
Vec2 fd_second_raw(const ModelParams& p, const Point& x0, int i, int j, double h) {
  Vec2 out{};
  for (int si : {-1, 1}) {
    for (int sj : {-1, 1}) {
      Point x = x0;
      x[i] += si * h;
      x[j] += sj * h;
      const Vec2 f = f_at(p, x);
      for (int c = 0; c < 2; ++c) out[c] += si * sj * f[c];
    }
  }
  for (int c = 0; c < 2; ++c) out[c] /= 4.0 * h * h;
  return out;
}

Vec2 fd_third_raw(const ModelParams& p, const Point& x0, int i, int j, int k,
                  double h) {
  Vec2 out{};
  for (int si : {-1, 1}) {
    for (int sj : {-1, 1}) {
      for (int sk : {-1, 1}) {
        Point x = x0;
        x[i] += si * h;
        x[j] += sj * h;
        x[k] += sk * h;
        const Vec2 f = f_at(p, x);
        for (int c = 0; c < 2; ++c) out[c] += si * sj * sk * f[c];
      }
    }
  }
  for (int c = 0; c < 2; ++c) out[c] /= 8.0 * h * h * h;
  return out;
}

// one Richardson step removes the h^2 term
Vec2 fd_second(const ModelParams& p, const Point& x0, int i, int j, double h) {
  const Vec2 a = fd_second_raw(p, x0, i, j, h);
  const Vec2 b = fd_second_raw(p, x0, i, j, 0.5 * h);
  return {(4.0 * b[0] - a[0]) / 3.0, (4.0 * b[1] - a[1]) / 3.0};
}

Vec2 fd_third(const ModelParams& p, const Point& x0, int i, int j, int k,
              double h) {
  const Vec2 a = fd_third_raw(p, x0, i, j, k, h);
  const Vec2 b = fd_third_raw(p, x0, i, j, k, 0.5 * h);
  return {(4.0 * b[0] - a[0]) / 3.0, (4.0 * b[1] - a[1]) / 3.0};
}

} // namespace

TEST(Equilibrium, PrintedValues) {
  EXPECT_NEAR(equilibrium(group_1()).u0, 0.1082, 5e-5);
  EXPECT_NEAR(equilibrium(group_2()).u0, 0.2016, 5e-5);
}

TEST(Equilibrium, NoPredationGivesCapacity) {
  ModelParams p = group_1();
  p.a = 0.0;
  EXPECT_DOUBLE_EQ(equilibrium(p).u0, 1.0);
}

TEST(Equilibrium, QuadraticResidualRandomised) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const ModelParams p = random_params(rng);
    const double u0 = equilibrium(p).u0;
    EXPECT_GT(u0, 0.0);
    EXPECT_LT(u0, 1.0);
    EXPECT_NEAR(u0 * u0 + (p.a + p.b - 1.0) * u0 - p.b, 0.0, 1e-12);
  }
}

TEST(LinearCoeffs, ExampleA0) {
  const ModelParams p = thopf::testing::example_21();
  EXPECT_NEAR(linear_coeffs(p, equilibrium(p)).A0, 0.2625, 5e-5);
}

TEST(LinearCoeffs, SignsRandomised) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const ModelParams p = random_params(rng);
    const Equilibrium eq = equilibrium(p);
    const LinearCoeffs lin = linear_coeffs(p, eq);
    EXPECT_DOUBLE_EQ(lin.B0, eq.u0 - 1.0);
    EXPECT_LT(lin.B0, 0.0);
    EXPECT_EQ(lin.A0 > 0.0, eq.u0 < (1.0 - p.b) / 2.0);
  }
}

TEST(ModelParams, ValidateRejectsBadValues) {
  ModelParams p = group_1();
  p.d1 = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p = group_1();
  p.tau = -1.0;
  EXPECT_THROW(p.validate(), Error);
  p.tau = 0.0;
  EXPECT_NO_THROW(p.validate());
}

TEST(DerivativeTensor, PrintedFuv) {
  ModelParams p = group_1();
  const Equilibrium eq = equilibrium(p);
  const double tau = 0.7937;
  const DerivativeTensor t = derivative_tensor(p, eq, tau);
  const double w = p.b + eq.u0;
  EXPECT_NEAR(t.second(Var::u, Var::v)[0], -tau * p.a * p.b / (w * w), 1e-15);
  EXPECT_EQ(t.second(Var::u, Var::v)[1], 0.0);
}

TEST(DerivativeTensor, PreyTermLinearInV) {
  const ModelParams p = group_2();
  const DerivativeTensor t = derivative_tensor(p, equilibrium(p), std::nullopt);
  EXPECT_EQ(t.second(Var::v, Var::v)[0], 0.0);
  EXPECT_EQ(t.third(Var::v, Var::v, Var::v)[0], 0.0);
  EXPECT_EQ(t.third(Var::u, Var::v, Var::v)[0], 0.0);
}

TEST(DerivativeTensor, ChainedDelayRelations) {
  const ModelParams p = group_1();
  const DerivativeTensor t = derivative_tensor(p, equilibrium(p), 0.8);
  const double f_vvt = t.second(Var::v, Var::v_tau)[1];
  EXPECT_DOUBLE_EQ(2.0 * f_vvt, -2.0 * t.second(Var::v, Var::u_tau)[1]);
  EXPECT_DOUBLE_EQ(2.0 * f_vvt, -2.0 * t.second(Var::u_tau, Var::v_tau)[1]);
  EXPECT_DOUBLE_EQ(2.0 * f_vvt, t.second(Var::u_tau, Var::u_tau)[1]);
}

TEST(DerivativeTensor, SymmetricUnderPermutation) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const ModelParams p = random_params(rng);
    const DerivativeTensor t = derivative_tensor(p, equilibrium(p), std::nullopt);
    for (int i = 0; i < kVarCount; ++i) {
      for (int j = 0; j < kVarCount; ++j) {
        EXPECT_EQ(t.second(i, j), t.second(j, i));
        for (int k = 0; k < kVarCount; ++k) {
          const Vec2& ref = t.third(i, j, k);
          EXPECT_EQ(ref, t.third(i, k, j));
          EXPECT_EQ(ref, t.third(j, i, k));
          EXPECT_EQ(ref, t.third(j, k, i));
          EXPECT_EQ(ref, t.third(k, i, j));
          EXPECT_EQ(ref, t.third(k, j, i));
        }
      }
    }
  }
}

TEST(DerivativeTensor, FiniteDifferenceOracle) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ModelParams p = random_params(rng);
    const Equilibrium eq = equilibrium(p);
    const DerivativeTensor t = derivative_tensor(p, eq, std::nullopt);
    const Point x0{eq.u0, eq.u0, eq.u0, eq.u0};
    for (int i = 0; i < kVarCount; ++i) {
      for (int j = 0; j < kVarCount; ++j) {
        const Vec2 fd = fd_second(p, x0, i, j, 1e-3 * eq.u0);
        for (int c = 0; c < 2; ++c) {
          const double want = t.second(i, j)[c];
          EXPECT_NEAR(fd[c], want, 1e-5 * std::max(1.0, std::abs(want)))
              << "second(" << i << "," << j << ")[" << c << "]";
        }
        for (int k = 0; k < kVarCount; ++k) {
          const Vec2 fd3 = fd_third(p, x0, i, j, k, 1e-2 * eq.u0);
          for (int c = 0; c < 2; ++c) {
            const double want = t.third(i, j, k)[c];
            EXPECT_NEAR(fd3[c], want, 1e-5 * std::max(1.0, std::abs(want)))
                << "third(" << i << "," << j << "," << k << ")[" << c << "]";
          }
        }
      }
    }
  }
}

TEST(DerivativeTensor, ScaledEqualsTauTimesUnscaled) {
  const ModelParams p = group_2();
  const Equilibrium eq = equilibrium(p);
  const double tau = 0.7423;
  const DerivativeTensor plain = derivative_tensor(p, eq, std::nullopt);
  const DerivativeTensor scaled = derivative_tensor(p, eq, tau);
  ASSERT_TRUE(scaled.scale().has_value());
  EXPECT_FALSE(plain.scale().has_value());
  for (int i = 0; i < kVarCount; ++i) {
    for (int j = 0; j < kVarCount; ++j) {
      for (int c = 0; c < 2; ++c) {
        EXPECT_DOUBLE_EQ(scaled.second(i, j)[c], tau * plain.second(i, j)[c]);
        for (int k = 0; k < kVarCount; ++k) {
          EXPECT_DOUBLE_EQ(scaled.third(i, j, k)[c], tau * plain.third(i, j, k)[c]);
        }
      }
    }
  }
}

TEST(DerivativeTensor, WithoutCubicKeepsQuadratic) {
  const ModelParams p = group_1();
  const DerivativeTensor t = derivative_tensor(p, equilibrium(p), 0.8);
  const DerivativeTensor q = t.without_cubic();
  for (int i = 0; i < kVarCount; ++i) {
    for (int j = 0; j < kVarCount; ++j) {
      EXPECT_EQ(q.second(i, j), t.second(i, j));
      for (int k = 0; k < kVarCount; ++k) {
        EXPECT_EQ(q.third(i, j, k), (Vec2{0.0, 0.0}));
      }
    }
  }
}
