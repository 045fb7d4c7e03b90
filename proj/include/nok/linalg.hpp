#pragma once

#include "nok/rational.hpp"

#include <optional>

// Exact linear algebra over Q and Z used by the polyhedral engine.

namespace nok::linalg {

struct Echelon {
  Mat rows;                          // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column of each row
};

Echelon rref(Mat m, std::size_t ncols);
std::size_t rank(const Mat& m, std::size_t ncols);

/// Basis of {x : m x = 0} over Q. Vectors are primitive integer vectors.
Mat nullspace(const Mat& m, std::size_t ncols);

/// Some rational solution of m x = b, or nullopt when inconsistent.
std::optional<Vec> solve(const Mat& m, const Vec& b, std::size_t ncols);

Rational determinant(Mat m);

/// Column Hermite reduction of an integral matrix: a unimodular U with
/// A U = [H | 0], H in column echelon form of rank r.
struct ColumnHermite {
  Mat h;                  // A U
  Mat u;                  // unimodular, n x n
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};
ColumnHermite column_hermite(const Mat& a, std::size_t ncols);

/// Lattice basis of {y in Z^n : a y = 0} for integral a.
Mat integer_kernel(const Mat& a, std::size_t ncols);

/// An integral solution of a x = b, or nullopt.
std::optional<Vec> integer_solution(const Mat& a, const Vec& b, std::size_t ncols);

/// Lattice basis of span_Q(vectors) ∩ Z^n (the saturation).
Mat saturated_lattice(const Mat& vectors, std::size_t n);

/// True when the integral k x n matrix maps Z^n onto Z^k.
bool is_surjective_over_z(const Mat& a, std::size_t ncols);

/// Coordinates w with basis^T w = v, where basis rows are independent.
std::optional<Vec> coordinates_in(const Mat& basis, const Vec& v);

/// Canonical basis of span_Q(vectors): rref rows scaled to primitive integers.
Mat canonical_span(const Mat& vectors, std::size_t n);

}  // namespace nok::linalg
