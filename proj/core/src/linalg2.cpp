#include "thopf/linalg2.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "thopf/error.hpp"

namespace thopf {

namespace {

double norm_1(const Mat2c& a) {
  return std::max(std::abs(a(0, 0)) + std::abs(a(1, 0)),
                  std::abs(a(0, 1)) + std::abs(a(1, 1)));
}

} // namespace

double condition_1(const Mat2c& a) {
  const cplx det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  if (std::abs(det) == 0.0) return std::numeric_limits<double>::infinity();
  Mat2c inv;
  inv(0, 0) = a(1, 1) / det;
  inv(0, 1) = -a(0, 1) / det;
  inv(1, 0) = -a(1, 0) / det;
  inv(1, 1) = a(0, 0) / det;
  return norm_1(a) * norm_1(inv);
}

CVec2 solve(const Mat2c& a, const CVec2& rhs) {
  Mat2c m = a;
  CVec2 b = rhs;
  if (std::abs(m(1, 0)) > std::abs(m(0, 0))) {
    std::swap(m.m[0], m.m[1]);
    std::swap(b[0], b[1]);
  }
  if (std::abs(m(0, 0)) == 0.0) {
    throw Error(ErrorKind::resonant_matrix, "singular 2x2 system");
  }
  const cplx factor = m(1, 0) / m(0, 0);
  const cplx pivot2 = m(1, 1) - factor * m(0, 1);
  if (std::abs(pivot2) == 0.0) {
    throw Error(ErrorKind::resonant_matrix, "singular 2x2 system");
  }
  CVec2 x;
  x[1] = (b[1] - factor * b[0]) / pivot2;
  x[0] = (b[0] - m(0, 1) * x[1]) / m(0, 0);
  return x;
}

} // namespace thopf
