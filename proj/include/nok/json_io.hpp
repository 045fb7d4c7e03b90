#pragma once

#include "nok/ghflow.hpp"
#include "nok/width.hpp"

#include <json.hpp>

#include <string>

// JSON encodings. Rationals are "p/q" strings (integers as "n"), floats use
// the shortest round-trip decimal, object keys are sorted.

namespace nok::io {

using json = nlohmann::json;

json encode(const Rational& q);
json encode(const Integer& z);  // number when it fits in 64 bits
json encode(const Vec& v);
json encode(const Mat& m);
json encode(const cplx& z);     // [re, im]
json encode(const CVec& z);

Rational decode_rational(const json& j);
Vec decode_vec(const json& j);
Mat decode_mat(const json& j);
/// Accepts numbers or [re, im] pairs.
CVec decode_complex_vector(const json& j);

json encode(const Lattice& l);
json encode(const RationalCone& c);
json encode(const RationalPolytope& p, bool with_points = false);
json encode(const FaceLattice& fl);
json encode(const ValuationData& vd);
json encode(const ValuationReport& r);
json encode(const FamilyIdeal& f);
json encode(const Trajectory& t, const InvariantReport& inv);
json encode(const LimitResult& r);
json encode(const EmbeddingResult& r);
json encode(const WidthReport& r);

ValuationData decode_valuation(const json& j);
/// Rebuilds the family, re-running the degeneration checks for non-raw data.
FamilyIdeal decode_family(const json& j);

/// Throws ValidationError naming the first key outside `allowed`.
void require_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where);

std::string dump(const json& j);
json parse(const std::string& text);
json read_file(const std::string& path);

}  // namespace nok::io
