#include "nok/linalg.hpp"

#include <algorithm>

namespace nok::linalg {

Echelon rref(Mat m, std::size_t ncols) {
  Echelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = col; c < ncols; ++c) m[r][c] -= f * m[row][c];
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  out.rows = std::move(m);
  return out;
}

std::size_t rank(const Mat& m, std::size_t ncols) { return rref(m, ncols).pivots.size(); }

Mat nullspace(const Mat& m, std::size_t ncols) {
  Echelon e = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Mat basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Vec v = zeros(ncols);
    v[free] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(primitive(v));
  }
  return basis;
}

std::optional<Vec> solve(const Mat& m, const Vec& b, std::size_t ncols) {
  Mat aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Echelon e = rref(aug, ncols + 1);
  Vec x = zeros(ncols);
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivots[r] == ncols) return std::nullopt;
    x[e.pivots[r]] = e.rows[r][ncols];
  }
  return x;
}

Rational determinant(Mat m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

namespace {

void column_axpy(Mat& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (auto& row : m) row[dst] -= Rational(q) * row[src];
}

void column_swap(Mat& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

void column_negate(Mat& m, std::size_t a) {
  for (auto& row : m) row[a] = -row[a];
}

}  // namespace

ColumnHermite column_hermite(const Mat& a, std::size_t ncols) {
  ColumnHermite out;
  out.h = a;
  out.u = identity(ncols);
  for (const auto& row : a)
    if (!is_integral(row)) throw ValidationError("column_hermite needs an integral matrix");
  std::size_t c = 0;
  for (std::size_t i = 0; i < out.h.size() && c < ncols; ++i) {
    while (true) {
      std::size_t best = ncols;
      for (std::size_t j = c; j < ncols; ++j) {
        if (out.h[i][j] == 0) continue;
        if (best == ncols || abs(out.h[i][j]) < abs(out.h[i][best])) best = j;
      }
      if (best == ncols) break;
      if (best != c) {
        column_swap(out.h, best, c);
        column_swap(out.u, best, c);
      }
      bool done = true;
      for (std::size_t j = c + 1; j < ncols; ++j) {
        if (out.h[i][j] == 0) continue;
        Integer q = out.h[i][j].get_num() / out.h[i][c].get_num();  // truncating
        column_axpy(out.h, j, c, q);
        column_axpy(out.u, j, c, q);
        if (out.h[i][j] != 0) done = false;
      }
      if (done) break;
    }
    if (out.h[i][c] == 0) continue;
    if (out.h[i][c] < 0) {
      column_negate(out.h, c);
      column_negate(out.u, c);
    }
    out.pivot_rows.push_back(i);
    ++c;
  }
  out.rank = c;
  return out;
}

Mat integer_kernel(const Mat& a, std::size_t ncols) {
  if (a.empty()) return identity(ncols);
  ColumnHermite ch = column_hermite(a, ncols);
  Mat basis;
  for (std::size_t j = ch.rank; j < ncols; ++j) {
    Vec col(ncols);
    for (std::size_t r = 0; r < ncols; ++r) col[r] = ch.u[r][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

std::optional<Vec> integer_solution(const Mat& a, const Vec& b, std::size_t ncols) {
  if (a.empty()) return zeros(ncols);
  if (!is_integral(b)) return std::nullopt;
  ColumnHermite ch = column_hermite(a, ncols);
  Vec y = zeros(ncols);
  for (std::size_t j = 0; j < ch.rank; ++j) {
    std::size_t p = ch.pivot_rows[j];
    Rational rest = b[p];
    for (std::size_t l = 0; l < j; ++l) rest -= ch.h[p][l] * y[l];
    Rational yj = rest / ch.h[p][j];
    if (yj.get_den() != 1) return std::nullopt;
    y[j] = yj;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    if (dot(ch.h[i], y) != b[i]) return std::nullopt;
  return nok::apply(ch.u, y);
}

Mat saturated_lattice(const Mat& vectors, std::size_t n) {
  Mat nonzero;
  for (const auto& v : vectors)
    if (!is_zero(v)) nonzero.push_back(v);
  if (nonzero.empty()) return {};
  Mat perp = nullspace(nonzero, n);
  return integer_kernel(perp, n);
}

bool is_surjective_over_z(const Mat& a, std::size_t ncols) {
  for (const auto& row : a)
    if (!is_integral(row)) return false;
  if (a.empty()) return true;
  ColumnHermite ch = column_hermite(a, ncols);
  if (ch.rank != a.size()) return false;
  for (std::size_t j = 0; j < ch.rank; ++j)
    if (abs(ch.h[ch.pivot_rows[j]][j]) != 1) return false;
  return true;
}

std::optional<Vec> coordinates_in(const Mat& basis, const Vec& v) {
  if (basis.empty()) {
    if (is_zero(v)) return Vec{};
    return std::nullopt;
  }
  return solve(transpose(basis), v, basis.size());
}

Mat canonical_span(const Mat& vectors, std::size_t n) {
  Echelon e = rref(vectors, n);
  Mat out;
  for (auto& r : e.rows) out.push_back(primitive(r));
  return out;
}

}  // namespace nok::linalg
