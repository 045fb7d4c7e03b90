#pragma once

#include "nok/strings.hpp"

#include <complex>
#include <string>
#include <vector>

// Rees-algebra families built from valuation data: the functional e, the
// family polynomials g_j + sum t^{m_jl} M_jl, fibers, the t = 0 summary,
// per-face subfamilies and the moment map Psi.

namespace nok {

struct Term {
  Rational coeff;
  std::vector<long long> exponents;  // one entry per generator
  bool operator==(const Term&) const = default;
};
using Polynomial = std::vector<Term>;

struct Relation {
  Polynomial leading;  // terms of the L-homogeneous part
  Polynomial lower;    // monomials M_jl of strictly smaller value
  Vec s;               // L-degree of the leading part
};

/// v(monomial) = sum_i exponents_i v(f_i).
Vec monomial_value(const ValuationData& vd, const std::vector<long long>& exponents);

/// Checks that every leading term has value s, that every lower term has a
/// strictly smaller value and the same c-degree. Throws ValidationError.
void validate_relation(const ValuationData& vd, const Relation& rel);

/// Integer e with e(v_i) >= 0 for all `values` and e(a_k) >= e(b_k) + 1 for
/// every pair, minimizing sum_i e(v_i) and taking the lexicographically
/// smallest optimal vertex, scaled to a primitive integer vector if needed.
/// Throws ValidationError("not refinable ...") when infeasible.
Vec solve_refinement(const Mat& values, const std::vector<std::pair<Vec, Vec>>& pairs);

/// The functional e : L -> Z for the given relations.
LinearMap choose_e(const ValuationData& vd, const std::vector<Relation>& relations);

struct FamilyIdeal {
  ValuationData valuation;
  std::vector<Relation> relations;
  Vec e;                                         // functional on L
  std::vector<std::vector<long long>> t_exponents;  // m_jl per relation, per lower term
  bool raw = false;  // exponents given directly, no valuation constraints

  std::size_t num_coordinates() const { return valuation.generators.size(); }
};

/// Assembles the family; throws ValidationError when e violates the constraints.
FamilyIdeal rees_family(const ValuationData& vd, const std::vector<Relation>& relations,
                        const Vec& e);

/// g_hat_j with t = t0 substituted.
std::vector<Polynomial> fiber(const FamilyIdeal& family, const Rational& t0);
struct FloatTerm {
  double coeff;
  std::vector<long long> exponents;
};
std::vector<std::vector<FloatTerm>> fiber(const FamilyIdeal& family, double t0);

struct InitialSummaryEntry {
  std::size_t relation;
  std::size_t terms;
  std::string shape;  // "monomial", "binomial", "multinomial"
  Vec value;
};
/// Every t = 0 generator must be L-homogeneous; throws IntegrityError otherwise.
std::vector<InitialSummaryEntry> initial_ideal_summary(const FamilyIdeal& family);

struct SubfamilySplit {
  std::vector<std::size_t> generators;  // relations j with c(s_j) in the face
  std::vector<std::size_t> vanishing;   // coordinates i with c(v_i) outside the face
};
/// Throws ValidationError when `face` is not a face of c(cone(S)).
SubfamilySplit subfamily_ideal(const FamilyIdeal& family, const RationalCone& face);
/// Faces of the c-image cone of cone(S).
FaceLattice c_image_faces(const ValuationData& vd);

/// Substitutes zero for the listed coordinates.
Polynomial restrict_to_zero(const Polynomial& p, const std::vector<std::size_t>& vanishing);
/// The family polynomial g_hat_j with t kept symbolic: terms paired with t-exponents.
std::vector<std::pair<Term, long long>> family_polynomial(const FamilyIdeal& family, std::size_t j);

struct MomentValue {
  std::vector<double> psi;
  std::vector<double> a_component;  // empty without an a-map
  std::vector<double> c_component;
};
MomentValue moment_map_psi(const ValuationData& vd, const std::vector<std::complex<double>>& z);

struct BuiltinExample {
  std::string name;
  FamilyIdeal family;
  std::string commentary;
};
std::vector<std::string> builtin_names();
/// "sl2", "sl3-string-121", "hyperbola".
BuiltinExample builtin_example(const std::string& name);

}  // namespace nok
