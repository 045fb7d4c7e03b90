#include <doctest.h>

#include "nok/width.hpp"

#include <functional>

using namespace nok;

namespace {

Vec v(std::initializer_list<long long> xs) { return to_vec(std::vector<long long>(xs)); }

}  // namespace

TEST_CASE("ell_lambda") {
  auto a2 = build_root_system("A2");
  CHECK(ell_lambda(a2, v({2, 3})) == 2);
  CHECK(ell_lambda(a2, v({0, 3})) == 3);
  CHECK_THROWS_WITH_AS(ell_lambda(a2, v({0, 0})), doctest::Contains("orbit is a point"), ValidationError);
  CHECK_THROWS_AS(ell_lambda(a2, v({-1, 2})), ValidationError);
  for (auto lam : {v({1, 0}), v({2, 5}), v({3, 3})})
    for (long k = 1; k <= 4; ++k) CHECK(ell_lambda(a2, Rational(k) * lam) == Rational(k) * ell_lambda(a2, lam));
  // B2 and G2 pairings with the long/short roots.
  CHECK(ell_lambda(build_root_system("B2"), v({1, 0})) == 1);
  CHECK(ell_lambda(build_root_system("G2"), v({0, 1})) == 1);
}

TEST_CASE("orbit polytope and volumes") {
  auto a1 = build_root_system("A1");
  auto seg = orbit_polytope(a1, {1}, v({5}));
  CHECK(seg.dim() == 1);
  CHECK(orbit_volume(a1, v({5})) == 5);
  CHECK(dh_fiber_volume(a1, {1}, v({5})) == 5);
  auto a2 = build_root_system("A2");
  CHECK(orbit_volume(a2, v({1, 1})) == 1);
  CHECK(orbit_volume(a2, v({2, 3})) == 15);
  CHECK(dh_fiber_volume(a2, {1, 2, 1}, v({2, 3})) == 15);
  auto wall = orbit_polytope(a2, {1, 2, 1}, v({0, 3}));
  CHECK(wall.dim() == 2);
  CHECK(count_lattice_points(wall) == 10);
}

TEST_CASE("f = g for A1 and A2") {
  for (auto type : {"A1", "A2"}) {
    auto rs = build_root_system(type);
    for (const auto& word : reduced_words(rs)) {
      std::vector<long long> lam(rs.rank(), 0);
      std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long left) {
        if (i == rs.rank()) {
          CHECK(orbit_volume(rs, to_vec(lam)) == dh_fiber_volume(rs, word, to_vec(lam)));
          return;
        }
        for (long long x = 0; x <= left; ++x) {
          lam[i] = x;
          rec(i + 1, left - x);
        }
        lam[i] = 0;
      };
      rec(0, 6);
    }
  }
}

TEST_CASE("simplex embedding") {
  auto a1 = build_root_system("A1");
  auto seg = orbit_polytope(a1, {1}, v({5}));
  auto r = simplex_embedding(seg, 5);
  REQUIRE(r.status == EmbeddingStatus::found);
  CHECK(r.certificate->matrix == Mat{v({1})});
  CHECK(r.certificate->translation == v({0, 5}));
  CHECK(verify_certificate(seg, *r.certificate));
  CHECK(simplex_embedding(seg, 6).status == EmbeddingStatus::none);

  auto a2 = build_root_system("A2");
  auto wall = orbit_polytope(a2, {1, 2, 1}, v({0, 3}));
  auto w3 = simplex_embedding(wall, 3);
  REQUIRE(w3.status == EmbeddingStatus::found);
  CHECK(verify_certificate(wall, *w3.certificate));
  CHECK(w3.certificate->vertices.size() == 3);
  auto w4 = simplex_embedding(wall, 4);
  CHECK(w4.status == EmbeddingStatus::none);
  REQUIRE_FALSE(w4.notes.empty());
  CHECK(w4.notes.front().find("volume obstruction") != std::string::npos);

  auto big = orbit_polytope(a2, {1, 2, 1}, v({2, 3}));
  auto b2 = simplex_embedding(big, 2);
  REQUIRE(b2.status == EmbeddingStatus::found);
  CHECK(verify_certificate(big, *b2.certificate));
  // Volume obstruction is a necessary condition for every certificate.
  CHECK(Rational(8, 6) <= volume(big));

  EmbeddingOptions tight;
  tight.max_box = 2;
  CHECK(simplex_embedding(big, 2, tight).status == EmbeddingStatus::inconclusive);
  EmbeddingOptions threads;
  threads.jobs = 4;
  auto b2t = simplex_embedding(big, 2, threads);
  REQUIRE(b2t.status == EmbeddingStatus::found);
  CHECK(b2t.certificate->vertices == b2.certificate->vertices);

  EmbeddingOptions shrink;
  shrink.delta = Rational(1, 2);
  auto half = simplex_embedding(wall, 4, shrink);
  CHECK(half.status == EmbeddingStatus::none);
}

TEST_CASE("width report") {
  auto a2 = build_root_system("A2");
  auto rep = width_report(a2, {1, 2, 1}, v({0, 3}));
  CHECK(rep.ell == 3);
  CHECK(rep.embedding.status == EmbeddingStatus::found);
  CHECK(rep.orbit_volume == rep.dh_volume);
  auto zero = width_report(a2, {1, 2, 1}, v({0, 0}));
  CHECK(zero.ell == 0);
  CHECK(zero.warnings.size() == 1);
}
