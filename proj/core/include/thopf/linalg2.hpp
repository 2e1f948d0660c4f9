#pragma once

// 2x2 complex matrices and vectors.

#include <algorithm>
#include <array>
#include <complex>

namespace thopf {

using cplx = std::complex<double>;
using CVec2 = std::array<cplx, 2>;

struct Mat2c {
  std::array<std::array<cplx, 2>, 2> m{};

  static Mat2c identity() { return {{{{1.0, 0.0}, {0.0, 1.0}}}}; }
  static Mat2c diag(cplx a, cplx b) { return {{{{a, 0.0}, {0.0, b}}}}; }

  cplx& operator()(int i, int j) { return m[i][j]; }
  const cplx& operator()(int i, int j) const { return m[i][j]; }
};

inline CVec2 operator+(const CVec2& x, const CVec2& y) {
  return {x[0] + y[0], x[1] + y[1]};
}
inline CVec2 operator-(const CVec2& x, const CVec2& y) {
  return {x[0] - y[0], x[1] - y[1]};
}
inline CVec2 operator*(cplx s, const CVec2& x) { return {s * x[0], s * x[1]}; }
inline CVec2 conj(const CVec2& x) { return {std::conj(x[0]), std::conj(x[1])}; }

/// Row vector times column vector, no conjugation.
inline cplx dot(const CVec2& row, const CVec2& col) {
  return row[0] * col[0] + row[1] * col[1];
}

inline double norm_inf(const CVec2& x) {
  return std::max(std::abs(x[0]), std::abs(x[1]));
}

inline Mat2c operator+(const Mat2c& a, const Mat2c& b) {
  Mat2c c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}
inline Mat2c operator-(const Mat2c& a, const Mat2c& b) {
  Mat2c c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}
inline Mat2c operator*(cplx s, const Mat2c& a) {
  Mat2c c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c(i, j) = s * a(i, j);
  return c;
}
inline CVec2 operator*(const Mat2c& a, const CVec2& x) {
  return {a(0, 0) * x[0] + a(0, 1) * x[1], a(1, 0) * x[0] + a(1, 1) * x[1]};
}
/// Row vector times matrix.
inline CVec2 operator*(const CVec2& row, const Mat2c& a) {
  return {row[0] * a(0, 0) + row[1] * a(1, 0), row[0] * a(0, 1) + row[1] * a(1, 1)};
}

/// 1-norm condition number; +inf for a singular matrix.
double condition_1(const Mat2c& a);

/// Gaussian elimination with partial pivoting.
CVec2 solve(const Mat2c& a, const CVec2& rhs);

} // namespace thopf
