#include "primform/linalg.hpp"

#include "primform/error.hpp"

namespace primform {

LaurentPoly determinant(Matrix<LaurentPoly> m) {
  const std::size_t n = m.size();
  if (n == 0) return LaurentPoly(1);
  LaurentPoly prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return LaurentPoly();
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        auto q = divide_exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
        if (!q) throw Error(ErrorKind::InconsistentSystem, "Bareiss step is not exact");
        m[i][j] = std::move(*q);
      }
    }
    prev = m[k][k];
  }
  return m[n - 1][n - 1].scaled(sign);
}

std::optional<std::vector<LaurentPoly>> solve_unimodular(const Matrix<LaurentPoly>& a,
                                                         const std::vector<LaurentPoly>& b) {
  auto inv = determinant(a).unit_inverse();
  if (!inv) return std::nullopt;
  std::vector<LaurentPoly> x;
  for (std::size_t j = 0; j < a.size(); ++j) {
    Matrix<LaurentPoly> aj = a;
    for (std::size_t i = 0; i < a.size(); ++i) aj[i][j] = b[i];
    x.push_back(determinant(std::move(aj)) * *inv);
  }
  return x;
}

std::optional<std::vector<Rational>> solve_rational(Matrix<Rational> a, std::vector<Rational> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rational inv = 1 / a[r][c];
    for (auto& v : a[r]) v *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != 0) return std::nullopt;
  }
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = b[i];
  return x;
}

Matrix<Rational> inverse(Matrix<Rational> a) {
  const std::size_t n = a.size();
  Matrix<Rational> out(n, std::vector<Rational>(n));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> e(n);
    e[j] = 1;
    Matrix<Rational> copy = a;
    auto col = solve_rational(copy, e);
    if (!col) throw Error(ErrorKind::DegenerateMetric, "singular matrix");
    for (std::size_t i = 0; i < n; ++i) out[i][j] = (*col)[i];
  }
  // A consistent system could still be underdetermined; check A * out = I.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational s;
      for (std::size_t k = 0; k < n; ++k) s += a[i][k] * out[k][j];
      if (s != (i == j ? 1 : 0)) throw Error(ErrorKind::DegenerateMetric, "singular matrix");
    }
  }
  return out;
}

}  // namespace primform
