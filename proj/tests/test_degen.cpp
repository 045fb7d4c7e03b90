#include <doctest.h>

#include "nok/degen.hpp"

#include <cmath>
#include <map>
#include <random>

using namespace nok;

namespace {

Vec v(std::initializer_list<long long> xs) { return to_vec(std::vector<long long>(xs)); }

// Polynomials in t1, t2, t3 for the Bott-Samelson recomputation.
using TPoly = std::map<std::vector<int>, long long>;

TPoly mul(const TPoly& a, const TPoly& b) {
  TPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(3);
      for (int k = 0; k < 3; ++k) e[k] = ea[k] + eb[k];
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

TPoly add(const TPoly& a, const TPoly& b, long long sign = 1) {
  TPoly out = a;
  for (const auto& [e, c] : b) out[e] += sign * c;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

using TMat = std::vector<std::vector<TPoly>>;

TMat elementary(int row, int col, int var) {
  TMat m(3, std::vector<TPoly>(3));
  for (int i = 0; i < 3; ++i) m[i][i][{0, 0, 0}] = 1;
  std::vector<int> e(3, 0);
  e[var] = 1;
  m[row][col][e] = 1;
  return m;
}

TMat mul(const TMat& a, const TMat& b) {
  TMat out(3, std::vector<TPoly>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j] = add(out[i][j], mul(a[i][k], b[k][j]));
  return out;
}

// Highest exponent in lexicographic order.
std::vector<long long> highest(const TPoly& p) {
  const auto& e = p.rbegin()->first;
  return {e[0], e[1], e[2]};
}

}  // namespace

TEST_CASE("sl3 valuation values from the Bott-Samelson parametrization") {
  // u = (1 + t1 E21)(1 + t2 E32)(1 + t3 E21) for the word (1,2,1).
  TMat u = mul(mul(elementary(1, 0, 0), elementary(2, 1, 1)), elementary(1, 0, 2));
  auto minor = [&](int r1, int r2) {
    return add(mul(u[r1][0], u[r2][1]), mul(u[r2][0], u[r1][1]), -1);
  };
  std::vector<TPoly> coords{u[0][0], u[1][0], u[2][0], minor(0, 1), minor(0, 2), minor(1, 2)};
  auto ex = builtin_example("sl3-string-121");
  const auto& gens = ex.family.valuation.generators;
  REQUIRE(gens.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    Vec expected = to_vec(highest(coords[i]));
    CHECK(Vec(gens[i].value.begin(), gens[i].value.begin() + 3) == expected);
    CHECK(Vec(gens[i].value.begin() + 3, gens[i].value.end()) == (i < 3 ? v({1, 0}) : v({0, 1})));
  }
  // The Plucker relation holds on the parametrization.
  TPoly rel = add(add(mul(coords[0], coords[5]), mul(coords[1], coords[4]), -1), mul(coords[2], coords[3]));
  CHECK(rel.empty());
}

TEST_CASE("choose_e") {
  auto sl2 = builtin_example("sl2");
  CHECK(is_zero(sl2.family.e));
  CHECK(sl2.family.relations.empty());

  auto sl3 = builtin_example("sl3-string-121");
  const auto& fam = sl3.family;
  REQUIRE(fam.t_exponents.size() == 1);
  for (auto m : fam.t_exponents[0]) CHECK(m >= 1);
  CHECK(fam.e == v({-1, 1, -2, 1, 0}));
  CHECK(fam.t_exponents[0] == std::vector<long long>{1});
  for (const auto& g : fam.valuation.generators) CHECK(dot(fam.e, g.value) >= 0);

  // e(u) > e(w) and e(w) > e(u) at once.
  Vec u = v({1, 0}), w = v({0, 1});
  CHECK_THROWS_WITH_AS(solve_refinement({}, {{u, w}, {w, u}}), doctest::Contains("not refinable"),
                       ValidationError);
  // Feasible pair: margin is at least 1 after clearing denominators.
  Vec e = solve_refinement({v({1, 0}), v({0, 1})}, {{v({2, 0}), v({0, 1})}});
  CHECK(dot(e, v({2, -1})) >= 1);
  CHECK(is_integral(e));
}

TEST_CASE("fibers") {
  auto fam = builtin_example("sl3-string-121").family;
  auto one = fiber(fam, Rational(1));
  REQUIRE(one.size() == 1);
  Polynomial quadric{fam.relations[0].leading[0], fam.relations[0].leading[1], fam.relations[0].lower[0]};
  CHECK(one[0] == quadric);
  auto zero = fiber(fam, Rational(0));
  CHECK(zero[0] == fam.relations[0].leading);
  auto half = fiber(fam, Rational(1, 2));
  CHECK(half[0].back().coeff == Rational(1, 2));
  auto f = fiber(fam, 0.25);
  CHECK(f[0].back().coeff == doctest::Approx(0.25));
}

TEST_CASE("initial ideal summary") {
  CHECK(initial_ideal_summary(builtin_example("sl2").family).empty());
  auto fam = builtin_example("sl3-string-121").family;
  auto summary = initial_ideal_summary(fam);
  REQUIRE(summary.size() == 1);
  CHECK(summary[0].shape == "binomial");
  CHECK(summary[0].value == fam.relations[0].s);
  auto corrupted = fam;
  corrupted.t_exponents[0][0] = 0;
  CHECK_THROWS_AS(initial_ideal_summary(corrupted), IntegrityError);
}

TEST_CASE("rees family rejects a bad e") {
  auto fam = builtin_example("sl3-string-121").family;
  CHECK_THROWS_AS(rees_family(fam.valuation, fam.relations, v({0, 0, 0, 0, 0})), ValidationError);
  CHECK_THROWS_AS(rees_family(fam.valuation, fam.relations, v({-5, 0, 0, 1, 1})), ValidationError);
  Relation wrong = fam.relations[0];
  std::swap(wrong.leading[0], wrong.lower[0]);
  CHECK_THROWS_AS(validate_relation(fam.valuation, wrong), ValidationError);
}

TEST_CASE("subfamilies over faces") {
  for (auto name : {"sl2", "sl3-string-121"}) {
    auto fam = builtin_example(name).family;
    auto fl = c_image_faces(fam.valuation);
    for (const auto& face : fl.faces()) {
      auto split = subfamily_ideal(fam, face.cone);
      for (std::size_t j = 0; j < fam.relations.size(); ++j) {
        bool kept = std::find(split.generators.begin(), split.generators.end(), j) != split.generators.end();
        if (kept) continue;
        for (auto t0 : {Rational(0), Rational(1, 3), Rational(1)})
          CHECK(restrict_to_zero(fiber(fam, t0)[j], split.vanishing).empty());
      }
    }
    for (const auto& f1 : fl.faces())
      for (const auto& f2 : fl.faces()) {
        auto meet = intersect(f1.cone, f2.cone);
        auto s1 = subfamily_ideal(fam, f1.cone), s2 = subfamily_ideal(fam, f2.cone);
        auto s = subfamily_ideal(fam, meet);
        std::vector<std::size_t> gens, van;
        std::set_intersection(s1.generators.begin(), s1.generators.end(), s2.generators.begin(),
                              s2.generators.end(), std::back_inserter(gens));
        std::set_union(s1.vanishing.begin(), s1.vanishing.end(), s2.vanishing.begin(),
                       s2.vanishing.end(), std::back_inserter(van));
        CHECK(s.generators == gens);
        CHECK(s.vanishing == van);
      }
  }
  auto fam = builtin_example("sl3-string-121").family;
  auto lam = weight_lattice(2);
  auto chamber = cone_from_generators(lam, {v({1, 0}), v({0, 1})});
  auto all = subfamily_ideal(fam, chamber);
  CHECK(all.generators == std::vector<std::size_t>{0});
  CHECK(all.vanishing.empty());
  auto origin = subfamily_ideal(fam, cone_from_generators(lam, Mat{}));
  CHECK(origin.generators.empty());
  CHECK(origin.vanishing.size() == 6);
  auto wall = subfamily_ideal(fam, cone_from_generators(lam, {v({0, 1})}));
  CHECK(wall.generators.empty());
  CHECK(wall.vanishing == std::vector<std::size_t>{0, 1, 2});
  CHECK_THROWS_AS(subfamily_ideal(fam, cone_from_generators(lam, {v({1, 1})})), ValidationError);
}

TEST_CASE("good valuation checks on builtins") {
  for (auto name : {"sl2", "sl3-string-121"}) {
    auto rep = good_valuation_check(builtin_example(name).family.valuation);
    for (const auto& e : rep.entries) {
      CAPTURE(name);
      CAPTURE(e.name);
      CAPTURE(e.detail);
      CHECK(e.status == CheckStatus::pass);
    }
  }
}

TEST_CASE("moment map") {
  auto vd = make_valuation_data(1, 1, {{"p", v({0, 1}), v({0}), v({1})}, {"q", v({1, 1}), v({0}), v({1})}});
  auto zero = moment_map_psi(vd, {0.0, 0.0});
  CHECK(zero.psi == std::vector<double>{0.0, 0.0});
  auto psi = moment_map_psi(vd, {1.0, 1.0});
  CHECK(psi.psi[0] == doctest::Approx(0.5));
  CHECK(psi.psi[1] == doctest::Approx(1.0));

  auto fam = builtin_example("sl3-string-121").family;
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> phase(0, 2 * M_PI);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::complex<double>> z(6), rotated(6);
    for (std::size_t i = 0; i < 6; ++i) {
      z[i] = {g(rng), g(rng)};
      rotated[i] = z[i] * std::polar(1.0, phase(rng));
    }
    auto a = moment_map_psi(fam.valuation, z), b = moment_map_psi(fam.valuation, rotated);
    for (std::size_t k = 0; k < a.psi.size(); ++k) CHECK(std::abs(a.psi[k] - b.psi[k]) < 1e-12);
    for (std::size_t k = 0; k < 2; ++k) {
      double expected = 0;
      for (std::size_t i = 0; i < 6; ++i)
        expected += 0.5 * std::norm(z[i]) * fam.valuation.generators[i].c_weight[k].get_d();
      CHECK(a.c_component[k] == doctest::Approx(expected));
    }
    CHECK(a.a_component.size() == 2);
  }
}
