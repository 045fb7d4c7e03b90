#pragma once

#include "nok/strings.hpp"

#include <optional>
#include <string>
#include <vector>

// Gromov-width lower bounds for coadjoint orbits: the bound ell_lambda, the
// orbit polytope, the Duistermaat-Heckman volume identity and a certified
// search for lattice simplices inside a polytope.

namespace nok {

/// Minimum positive pairing <lambda, alpha^vee> over positive roots.
/// Throws ValidationError for non-dominant lambda and "orbit is a point" for 0.
Rational ell_lambda(const RootSystem& rs, const Vec& lambda);

RationalPolytope orbit_polytope(const RootSystem& rs, const std::vector<int>& word, const Vec& lambda);

/// Product over positive roots with <lambda, alpha^vee> > 0 of
/// <lambda, alpha^vee> / <rho, alpha^vee>.
Rational orbit_volume(const RootSystem& rs, const Vec& lambda);

/// Volume of the orbit polytope in its affine hull.
Rational dh_fiber_volume(const RootSystem& rs, const std::vector<int>& word, const Vec& lambda);

struct SimplexCertificate {
  Rational size;
  Mat matrix;            // unimodular, columns in hull-lattice coordinates
  Vec translation;       // ambient lattice point, image of the simplex origin
  Mat directions;        // ambient images of the hull-lattice basis
  Mat vertices;          // ambient images of the simplex vertices
};

enum class EmbeddingStatus { found, none, inconclusive };
const char* to_string(EmbeddingStatus s);

struct EmbeddingOptions {
  int max_elementary = 3;    // elementary factors per candidate matrix
  Rational delta = 0;        // search for size ell - delta
  std::size_t max_dim = 4;
  long long max_box = 20;    // bounding-box side in hull coordinates
  std::size_t max_checks = 20000000;
  unsigned jobs = 1;
};

struct EmbeddingResult {
  EmbeddingStatus status = EmbeddingStatus::none;
  std::optional<SimplexCertificate> certificate;
  std::vector<std::string> notes;
  std::size_t candidates = 0;  // unimodular candidates in the search class
};

/// Looks for T + (ell - delta) * conv(0, A e_1, ..., A e_d) inside p with A in
/// the class {E S : E a product of at most max_elementary elementary
/// matrices, S a signed permutation} and T a lattice point of p. Results are
/// the first hit in (translation, column tuple) lexicographic order.
EmbeddingResult simplex_embedding(const RationalPolytope& p, const Rational& ell,
                                  const EmbeddingOptions& opts = {});

/// Exact check that every certificate vertex lies in p.
bool verify_certificate(const RationalPolytope& p, const SimplexCertificate& cert);

struct WidthReport {
  std::string type;
  std::vector<int> word;
  Vec lambda;
  Rational ell;
  RationalPolytope polytope;
  Rational orbit_volume;
  Rational dh_volume;
  EmbeddingResult embedding;
  std::string upper_bound_note;
  std::vector<std::string> warnings;
};

/// Full report. lambda = 0 gives ell = 0 with a warning instead of an error.
WidthReport width_report(const RootSystem& rs, const std::vector<int>& word, const Vec& lambda,
                         const EmbeddingOptions& opts = {});

}  // namespace nok
