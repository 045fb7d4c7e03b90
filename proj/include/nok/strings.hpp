#pragma once

#include "nok/polyhedra.hpp"
#include "nok/rootsys.hpp"

#include <optional>
#include <string>
#include <vector>

// String cones, string polytopes, the grading maps a', a, c on Z^m x Lambda,
// and valuation data with its testable axioms.

namespace nok {

/// Lattice names used throughout: Z^m (strings), L = Z^m x Lambda, Lambda.
Lattice string_lattice(std::size_t m);
Lattice value_lattice(std::size_t m, std::size_t rank);
Lattice weight_lattice(std::size_t rank);

/// Inequalities of the string cone in R^m (rows, <u, a> >= 0).
Mat string_cone_inequalities(const RootSystem& rs, const std::vector<int>& word);

/// Inequalities a_k <= <lambda, alpha_{i_k}^vee> - sum_{j>k} a_j <alpha_{i_j}, alpha_{i_k}^vee>
/// as rows over Z^m x Lambda.
Mat lambda_inequalities(const RootSystem& rs, const std::vector<int>& word);

struct StringCone {
  std::vector<int> word;
  RationalCone cone;      // in R^m
  RationalCone extended;  // in R^m x Lambda_R
};

RationalCone string_cone(const RootSystem& rs, const std::vector<int>& word);
StringCone extended_string_cone(const RootSystem& rs, const std::vector<int>& word);

struct GradingMaps {
  LinearMap a_prime;
  LinearMap a;
  LinearMap c;
};
GradingMaps grading_maps(const RootSystem& rs, const std::vector<int>& word);

RationalPolytope string_polytope(const RootSystem& rs, const std::vector<int>& word,
                                 const Vec& lambda);

/// c^{-1}(face) ∩ cone, after checking that `face` is a face of c(cone).
RationalCone subcone_for_face(const RationalCone& cone, const LinearMap& c,
                              const RationalCone& face);

// --- valuation data ----------------------------------------------------------

struct ValuationGenerator {
  std::string name;
  Vec value;      // v(f) in L = Z^m x Lambda
  Vec a_weight;   // in Lambda
  Vec c_weight;   // in Lambda
};

/// Total order on L: compare the functionals in `rows` lexicographically,
/// then the coordinates of L.
struct OrderSpec {
  std::string name = "lex-refinement";
  Mat rows;
  /// -1, 0, 1.
  int compare(const Vec& x, const Vec& y) const;
};

/// The lexicographic refinement on Z^m x Lambda: height <c(x), rho^vee>,
/// then the Lambda coordinates, then the Z^m coordinates. Without a root
/// system the height is the coordinate sum on Lambda.
OrderSpec lex_refinement(std::size_t m, std::size_t rank, const RootSystem* rs = nullptr);

struct ValuationData {
  std::size_t m = 0;
  std::size_t rank = 0;
  std::vector<ValuationGenerator> generators;
  OrderSpec order;
  std::optional<LinearMap> a_map;
  LinearMap c_map;
  std::string root_type;  // empty when not attached to a root system

  Lattice lattice() const { return value_lattice(m, rank); }
  Lattice weights() const { return weight_lattice(rank); }
  Mat values() const;
  /// cone(S), generated by the generator values.
  RationalCone value_cone() const;
};

/// Builds data with c = projection to Lambda and the lex refinement order.
ValuationData make_valuation_data(std::size_t m, std::size_t rank,
                                  std::vector<ValuationGenerator> generators,
                                  const std::string& root_type = "",
                                  std::optional<Mat> a_matrix = std::nullopt);

enum class CheckStatus { pass, fail, inconclusive };
const char* to_string(CheckStatus s);

struct CheckEntry {
  std::string name;
  CheckStatus status;
  std::string detail;
};

struct ValuationReport {
  std::vector<CheckEntry> entries;
  bool all_pass() const;
  const CheckEntry& at(const std::string& name) const;
};

/// Testable axioms: weight compatibility, strong convexity of cone(S) and of
/// c(cone(S)), bounded c-fibers, minimal c-image element, order descent,
/// properness of the c-grading, saturation up to `saturation_degree`.
ValuationReport good_valuation_check(const ValuationData& vd, int saturation_degree = 4);

}  // namespace nok
