#include "nok/degen.hpp"

#include "nok/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace nok {

Vec monomial_value(const ValuationData& vd, const std::vector<long long>& exponents) {
  if (exponents.size() != vd.generators.size())
    throw ValidationError("exponent vector length does not match the number of generators");
  Vec out = zeros(vd.m + vd.rank);
  for (std::size_t i = 0; i < exponents.size(); ++i)
    if (exponents[i] != 0) out = out + Rational(static_cast<long>(exponents[i])) * vd.generators[i].value;
  return out;
}

void validate_relation(const ValuationData& vd, const Relation& rel) {
  if (rel.leading.empty()) throw ValidationError("relation without leading terms");
  if (rel.s.size() != vd.m + vd.rank) throw ValidationError("relation degree s has the wrong length");
  for (const auto& t : rel.leading)
    if (monomial_value(vd, t.exponents) != rel.s)
      throw ValidationError("a leading term does not have valuation value s");
  Vec cs = vd.c_map(rel.s);
  for (const auto& t : rel.lower) {
    Vec val = monomial_value(vd, t.exponents);
    if (vd.order.compare(val, rel.s) >= 0)
      throw ValidationError("a lower term is not strictly below the leading value");
    if (vd.c_map(val) != cs) throw ValidationError("a lower term has a different c-degree");
  }
}

Vec solve_refinement(const Mat& values, const std::vector<std::pair<Vec, Vec>>& pairs) {
  if (values.empty() && pairs.empty()) throw ValidationError("empty refinement problem");
  const std::size_t n = values.empty() ? pairs.front().first.size() : values.front().size();
  Mat a;
  Vec b;
  for (const auto& v : values) {
    a.push_back(v);
    b.push_back(0);
  }
  for (const auto& [hi, lo] : pairs) {
    a.push_back(hi - lo);
    b.push_back(1);
  }
  // Quotient by the lineality space of the feasible set.
  for (const auto& d : linalg::nullspace(a, n)) {
    a.push_back(d);
    b.push_back(0);
    a.push_back(Rational(-1) * d);
    b.push_back(0);
  }
  Mat hom;
  for (std::size_t k = 0; k < a.size(); ++k) {
    Vec row = a[k];
    row.push_back(-b[k]);
    hom.push_back(std::move(row));
  }
  Vec s_row = zeros(n + 1);
  s_row[n] = 1;
  hom.push_back(s_row);
  RationalCone c = cone_from_inequalities(Lattice{"e", n + 1}, hom);

  Vec objective = zeros(n);
  for (const auto& v : values) objective = objective + v;
  std::optional<Vec> best;
  Rational best_value;
  for (const auto& r : c.rays()) {
    if (r[n] <= 0) continue;
    Vec e(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n));
    e = Rational(1) / r[n] * e;
    Rational val = dot(objective, e);
    if (!best || val < best_value || (val == best_value && e < *best)) {
      best = e;
      best_value = val;
    }
  }
  if (!best) throw ValidationError("not refinable: no functional e satisfies the strict inequalities");
  return Rational(denominator_lcm(*best)) * *best;
}

LinearMap choose_e(const ValuationData& vd, const std::vector<Relation>& relations) {
  std::vector<std::pair<Vec, Vec>> pairs;
  for (const auto& rel : relations) {
    validate_relation(vd, rel);
    for (const auto& t : rel.lower) pairs.emplace_back(rel.s, monomial_value(vd, t.exponents));
  }
  Vec e = solve_refinement(vd.values(), pairs);
  return LinearMap(Mat{e}, vd.lattice(), Lattice{"Z", 1});
}

FamilyIdeal rees_family(const ValuationData& vd, const std::vector<Relation>& relations,
                        const Vec& e) {
  if (e.size() != vd.m + vd.rank) throw ValidationError("functional e has the wrong length");
  if (!is_integral(e)) throw ValidationError("functional e must be integral");
  for (const auto& g : vd.generators)
    if (dot(e, g.value) < 0)
      throw ValidationError("e is negative on the value of generator " + g.name);
  FamilyIdeal fam;
  fam.valuation = vd;
  fam.relations = relations;
  fam.e = e;
  for (const auto& rel : relations) {
    validate_relation(vd, rel);
    std::vector<long long> ms;
    for (const auto& t : rel.lower) {
      Rational diff = dot(e, rel.s) - dot(e, monomial_value(vd, t.exponents));
      if (diff < 1) throw ValidationError("e does not separate a lower term from its leading value");
      ms.push_back(diff.get_num().get_si());
    }
    fam.t_exponents.push_back(std::move(ms));
  }
  return fam;
}

std::vector<std::pair<Term, long long>> family_polynomial(const FamilyIdeal& family, std::size_t j) {
  const Relation& rel = family.relations.at(j);
  std::vector<std::pair<Term, long long>> out;
  for (const auto& t : rel.leading) out.emplace_back(t, 0);
  for (std::size_t l = 0; l < rel.lower.size(); ++l)
    out.emplace_back(rel.lower[l], family.t_exponents.at(j).at(l));
  return out;
}

std::vector<Polynomial> fiber(const FamilyIdeal& family, const Rational& t0) {
  std::vector<Polynomial> out;
  for (std::size_t j = 0; j < family.relations.size(); ++j) {
    Polynomial p;
    for (const auto& [term, k] : family_polynomial(family, j)) {
      Rational c = term.coeff;
      for (long long i = 0; i < k; ++i) c *= t0;
      if (c != 0) p.push_back(Term{c, term.exponents});
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::vector<FloatTerm>> fiber(const FamilyIdeal& family, double t0) {
  std::vector<std::vector<FloatTerm>> out;
  for (std::size_t j = 0; j < family.relations.size(); ++j) {
    std::vector<FloatTerm> p;
    for (const auto& [term, k] : family_polynomial(family, j)) {
      double c = term.coeff.get_d() * std::pow(t0, static_cast<double>(k));
      if (c != 0.0) p.push_back(FloatTerm{c, term.exponents});
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<InitialSummaryEntry> initial_ideal_summary(const FamilyIdeal& family) {
  std::vector<InitialSummaryEntry> out;
  auto zero_fiber = fiber(family, Rational(0));
  for (std::size_t j = 0; j < zero_fiber.size(); ++j) {
    const Polynomial& p = zero_fiber[j];
    if (p.empty()) throw IntegrityError("t = 0 generator " + std::to_string(j) + " vanishes");
    Vec value = monomial_value(family.valuation, p.front().exponents);
    for (const auto& t : p)
      if (monomial_value(family.valuation, t.exponents) != value)
        throw IntegrityError("t = 0 generator " + std::to_string(j) +
                             " mixes valuation values; it is not L-homogeneous");
    std::string shape = p.size() == 1 ? "monomial" : p.size() == 2 ? "binomial" : "multinomial";
    out.push_back(InitialSummaryEntry{j, p.size(), shape, value});
  }
  return out;
}

FaceLattice c_image_faces(const ValuationData& vd) {
  return faces(image(vd.value_cone(), vd.c_map));
}

SubfamilySplit subfamily_ideal(const FamilyIdeal& family, const RationalCone& face) {
  const ValuationData& vd = family.valuation;
  RationalCone img = image(vd.value_cone(), vd.c_map);
  if (!(face.lattice() == img.lattice())) throw ValidationError("face lives in the wrong lattice");
  if (!is_strongly_convex(img) || !faces(img).find(face))
    throw ValidationError("not a face of the c-image cone");
  SubfamilySplit out;
  for (std::size_t j = 0; j < family.relations.size(); ++j)
    if (face.contains(vd.c_map(family.relations[j].s))) out.generators.push_back(j);
  for (std::size_t i = 0; i < vd.generators.size(); ++i)
    if (!face.contains(vd.c_map(vd.generators[i].value))) out.vanishing.push_back(i);
  return out;
}

Polynomial restrict_to_zero(const Polynomial& p, const std::vector<std::size_t>& vanishing) {
  Polynomial out;
  for (const auto& t : p) {
    bool killed = false;
    for (auto i : vanishing)
      if (t.exponents.at(i) > 0) killed = true;
    if (!killed) out.push_back(t);
  }
  return out;
}

MomentValue moment_map_psi(const ValuationData& vd, const std::vector<std::complex<double>>& z) {
  if (z.size() != vd.generators.size())
    throw ValidationError("point length does not match the number of generators");
  const std::size_t n = vd.m + vd.rank;
  MomentValue out;
  out.psi.assign(n, 0.0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    double w = 0.5 * std::norm(z[i]);
    for (std::size_t k = 0; k < n; ++k) out.psi[k] += w * vd.generators[i].value[k].get_d();
  }
  auto push = [&](const LinearMap& map, std::vector<double>& dst) {
    for (const auto& row : map.matrix()) {
      double s = 0;
      for (std::size_t k = 0; k < n; ++k) s += row[k].get_d() * out.psi[k];
      dst.push_back(s);
    }
  };
  if (vd.a_map) push(*vd.a_map, out.a_component);
  push(vd.c_map, out.c_component);
  return out;
}

// --- builtins ----------------------------------------------------------------

std::vector<std::string> builtin_names() { return {"sl2", "sl3-string-121", "hyperbola"}; }

namespace {

ValuationData string_data(const std::string& type, const std::vector<int>& word,
                          const std::vector<std::pair<std::string, std::vector<long long>>>& gens) {
  RootSystem rs = build_root_system(type);
  GradingMaps maps = grading_maps(rs, word);
  std::vector<ValuationGenerator> out;
  for (const auto& [name, value] : gens) {
    Vec v = to_vec(value);
    out.push_back(ValuationGenerator{name, v, maps.a(v), maps.c(v)});
  }
  return make_valuation_data(word.size(), rs.rank(), out, type, maps.a.matrix());
}

Term term(long long coeff, std::vector<long long> exps) {
  return Term{Rational(static_cast<long>(coeff)), std::move(exps)};
}

}  // namespace

BuiltinExample builtin_example(const std::string& name) {
  if (name == "sl2") {
    ValuationData vd = string_data("A1", {1}, {{"x1", {0, 1}}, {"x2", {1, 1}}});
    BuiltinExample ex{name, rees_family(vd, {}, choose_e(vd, {}).matrix().front()),
                      "SL2 // N = C^2 with the string valuation for the word (1); no relations"};
    return ex;
  }
  if (name == "sl3-string-121") {
    ValuationData vd = string_data("A2", {1, 2, 1},
                                   {{"x1", {0, 0, 0, 1, 0}},
                                    {"x2", {1, 0, 0, 1, 0}},
                                    {"x3", {0, 1, 1, 1, 0}},
                                    {"y1", {0, 0, 0, 0, 1}},
                                    {"y2", {0, 1, 0, 0, 1}},
                                    {"y3", {1, 1, 0, 0, 1}}});
    Relation plucker;
    plucker.leading = {term(1, {1, 0, 0, 0, 0, 1}), term(-1, {0, 1, 0, 0, 1, 0})};
    plucker.lower = {term(1, {0, 0, 1, 1, 0, 0})};
    plucker.s = to_vec({1, 1, 0, 1, 1});
    Vec e = choose_e(vd, {plucker}).matrix().front();
    return BuiltinExample{name, rees_family(vd, {plucker}, e),
                          "SL3 // N in V(w1) + V(w2) with the string valuation for the word "
                          "(1,2,1); one Plucker quadric x1 y3 - x2 y2 + x3 y1"};
  }
  if (name == "hyperbola") {
    ValuationData vd =
        make_valuation_data(0, 1, {{"z1", to_vec({1}), to_vec({1}), to_vec({1})},
                                   {"z2", to_vec({-1}), to_vec({-1}), to_vec({-1})}});
    FamilyIdeal fam;
    fam.valuation = vd;
    fam.raw = true;
    Relation g;
    g.leading = {term(1, {1, 1})};
    g.lower = {term(-1, {0, 0})};
    g.s = to_vec({0});
    fam.relations = {g};
    fam.e = to_vec({0});
    fam.t_exponents = {{1}};
    return BuiltinExample{name, fam,
                          "raw family z1 z2 - t on C^2 x C with circle weights (1, -1)"};
  }
  throw ValidationError("unknown builtin example '" + name + "'");
}

}  // namespace nok
