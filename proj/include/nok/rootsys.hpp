#pragma once

#include "nok/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

// Finite root systems of types A_n, B2, C2, G2.
//
// Weights are vectors in fundamental-weight coordinates. The Cartan matrix
// follows A[i][j] = <alpha_i^vee, alpha_j>, so the simple root alpha_j has
// fundamental-weight coordinates given by column j of A. Simple-root indices
// are 1-based wherever they leave this module (words, faces).

namespace nok {

struct PositiveRoot {
  Vec simple;   // coefficients in the simple roots
  Vec weight;   // fundamental-weight coordinates
  Vec coroot;   // coefficients of the coroot in the simple coroots
  Integer height() const;
};

class RootSystem {
 public:
  RootSystem(char family, std::size_t rank);

  const std::string& label() const { return label_; }
  char family() const { return family_; }
  std::size_t rank() const { return rank_; }
  const Mat& cartan() const { return cartan_; }
  /// Simple root alpha_i (0-based i) in fundamental-weight coordinates.
  Vec simple_root(std::size_t i) const;
  Mat simple_roots() const;
  Mat fundamental_weights() const { return identity(rank_); }
  /// Ordered by height, then by simple-root coefficients.
  const std::vector<PositiveRoot>& positive_roots() const { return positive_; }
  /// Number of positive roots.
  std::size_t num_positive() const { return positive_.size(); }
  /// rho = sum of fundamental weights.
  Vec rho() const { return Vec(rank_, Rational(1)); }
  /// Coefficients r with <lambda, rho^vee> = dot(r, lambda).
  const Vec& rho_coweight() const { return rho_coweight_; }

 private:
  std::string label_;
  char family_;
  std::size_t rank_;
  Mat cartan_;
  std::vector<PositiveRoot> positive_;
  Vec rho_coweight_;
};

/// Parses labels such as "A1", "A4", "B2", "C2", "G2".
RootSystem build_root_system(std::string_view label);

/// <lambda, alpha^vee>.
Rational pairing(const RootSystem& rs, const Vec& lambda, const PositiveRoot& alpha);

bool is_dominant(const Vec& lambda);
bool is_integral_weight(const Vec& lambda);

/// Dimension of the irreducible representation of highest weight lambda.
Integer weyl_dim(const RootSystem& rs, const Vec& lambda);

/// s_i(xi), 0-based i.
Vec reflect(const RootSystem& rs, std::size_t i, const Vec& xi);

/// All reduced words of the longest element for rank <= 2 (lexicographic);
/// for A_n with n >= 3, the single canonical word 1, 2 1, 3 2 1, ...
std::vector<std::vector<int>> reduced_words(const RootSystem& rs);
bool validate_word(const RootSystem& rs, const std::vector<int>& letters);
/// Throws ValidationError unless validate_word holds.
void require_word(const RootSystem& rs, const std::vector<int>& letters);

/// Number of positive roots sent to negative roots by s_{i_1} ... s_{i_k}.
std::size_t inversion_count(const RootSystem& rs, const std::vector<int>& letters);

Vec dominant_representative(const RootSystem& rs, const Vec& xi);

/// 1-based indices i with <lambda, alpha_i^vee> = 0.
std::vector<int> face_of(const RootSystem& rs, const Vec& lambda);

}  // namespace nok
