#include <doctest.h>

#include "nok/rootsys.hpp"
#include "support/gt_patterns.hpp"

#include <random>

using namespace nok;

namespace {

Vec w(std::initializer_list<long long> xs) { return to_vec(std::vector<long long>(xs)); }

const PositiveRoot& root_with(const RootSystem& rs, const Vec& simple) {
  for (const auto& a : rs.positive_roots())
    if (a.simple == simple) return a;
  throw std::runtime_error("no such root");
}

}  // namespace

TEST_CASE("positive root counts") {
  CHECK(build_root_system("A1").num_positive() == 1);
  CHECK(build_root_system("A2").num_positive() == 3);
  CHECK(build_root_system("A4").num_positive() == 10);
  CHECK(build_root_system("B2").num_positive() == 4);
  CHECK(build_root_system("C2").num_positive() == 4);
  CHECK(build_root_system("G2").num_positive() == 6);
  CHECK_THROWS_AS(build_root_system("B3"), ValidationError);
  CHECK_THROWS_AS(build_root_system("E8"), ValidationError);
  CHECK_THROWS_AS(build_root_system("A0"), ValidationError);
  CHECK_THROWS_AS(build_root_system("x"), ValidationError);
}

TEST_CASE("cartan data") {
  for (auto label : {"A1", "A3", "B2", "C2", "G2"}) {
    auto rs = build_root_system(label);
    for (std::size_t i = 0; i < rs.rank(); ++i) CHECK(rs.cartan()[i][i] == 2);
    for (const auto& a : rs.positive_roots()) {
      for (const auto& c : a.simple) CHECK((c >= 0 && c.get_den() == 1));
      // alpha^vee pairs with alpha to 2.
      CHECK(dot(a.weight, a.coroot) == 2);
      for (const auto& c : a.coroot) CHECK((c >= 0 && c.get_den() == 1));
    }
  }
  auto g2 = build_root_system("G2");
  CHECK(g2.positive_roots().back().simple == w({3, 2}));
}

TEST_CASE("pairings") {
  auto a2 = build_root_system("A2");
  CHECK(pairing(a2, w({2, 3}), root_with(a2, w({1, 0}))) == 2);
  CHECK(pairing(a2, w({2, 3}), root_with(a2, w({1, 1}))) == 5);
  auto a1 = build_root_system("A1");
  CHECK(pairing(a1, w({7}), a1.positive_roots()[0]) == 7);
  // B2: highest short root alpha1+alpha2 has coroot 2 alpha1^vee + alpha2^vee.
  auto b2 = build_root_system("B2");
  CHECK(root_with(b2, w({1, 1})).coroot == w({2, 1}));
  CHECK(root_with(b2, w({1, 2})).coroot == w({1, 1}));
}

TEST_CASE("weyl dimension") {
  auto a2 = build_root_system("A2");
  CHECK(weyl_dim(a2, w({1, 1})) == 8);
  CHECK(weyl_dim(a2, w({1, 0})) == 3);
  CHECK(weyl_dim(a2, w({2, 3})) == 42);
  CHECK(weyl_dim(a2, w({0, 3})) == 10);
  CHECK(weyl_dim(build_root_system("B2"), w({0, 1})) == 4);
  CHECK(weyl_dim(build_root_system("B2"), w({1, 0})) == 5);
  CHECK(weyl_dim(build_root_system("C2"), w({1, 0})) == 4);
  CHECK(weyl_dim(build_root_system("G2"), w({1, 0})) == 7);
  CHECK(weyl_dim(build_root_system("G2"), w({0, 1})) == 14);
  for (auto label : {"A1", "A2", "A3", "B2", "C2", "G2"}) {
    auto rs = build_root_system(label);
    CHECK(weyl_dim(rs, zeros(rs.rank())) == 1);
  }
  CHECK_THROWS_AS(weyl_dim(a2, w({-1, 2})), ValidationError);
}

TEST_CASE("weyl dimension agrees with Gelfand-Tsetlin counts") {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto rs = RootSystem('A', n);
    std::vector<long long> lam(n, 0);
    std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long left) {
      if (i == n) {
        CHECK(weyl_dim(rs, to_vec(lam)) == Integer(static_cast<unsigned long>(oracle::gt_count(lam))));
        return;
      }
      for (long long x = 0; x <= left; ++x) {
        lam[i] = x;
        rec(i + 1, left - x);
      }
    };
    rec(0, 6);
  }
}

TEST_CASE("reduced words") {
  auto a2 = build_root_system("A2");
  CHECK(reduced_words(a2) == std::vector<std::vector<int>>{{1, 2, 1}, {2, 1, 2}});
  auto a1 = build_root_system("A1");
  CHECK(reduced_words(a1) == std::vector<std::vector<int>>{{1}});
  CHECK_FALSE(validate_word(a1, {1, 1}));
  CHECK_FALSE(validate_word(a2, {1, 1, 2}));
  CHECK_FALSE(validate_word(a2, {1, 2}));
  CHECK_FALSE(validate_word(a2, {1, 3, 1}));
  CHECK(reduced_words(build_root_system("B2")).size() == 2);
  CHECK(reduced_words(build_root_system("G2")).size() == 2);
  CHECK(reduced_words(build_root_system("A3")) == std::vector<std::vector<int>>{{1, 2, 1, 3, 2, 1}});
  CHECK(validate_word(build_root_system("A3"), {2, 1, 3, 2, 1, 3}));
  for (auto label : {"A1", "A2", "A3", "A4", "B2", "C2", "G2"}) {
    auto rs = build_root_system(label);
    for (const auto& word : reduced_words(rs)) {
      CHECK(validate_word(rs, word));
      CHECK(inversion_count(rs, word) == rs.num_positive());
    }
  }
}

TEST_CASE("dominant representative") {
  auto a1 = build_root_system("A1");
  CHECK(dominant_representative(a1, w({-5})) == w({5}));
  auto a2 = build_root_system("A2");
  CHECK(dominant_representative(a2, w({-1, 2})) == w({1, 1}));
  CHECK(dominant_representative(a2, w({2, 3})) == w({2, 3}));
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coord(-6, 6);
  for (auto label : {"A2", "A3", "B2", "C2", "G2"}) {
    auto rs = build_root_system(label);
    for (int trial = 0; trial < 40; ++trial) {
      Vec xi(rs.rank());
      for (auto& x : xi) x = coord(rng);
      Vec d = dominant_representative(rs, xi);
      CHECK(is_dominant(d));
      CHECK(dominant_representative(rs, d) == d);
      for (std::size_t i = 0; i < rs.rank(); ++i)
        CHECK(dominant_representative(rs, reflect(rs, i, xi)) == d);
    }
  }
}

TEST_CASE("faces of the dominant chamber") {
  auto a2 = build_root_system("A2");
  CHECK(face_of(a2, w({0, 3})) == std::vector<int>{1});
  CHECK(face_of(a2, w({2, 3})).empty());
  CHECK(face_of(a2, w({0, 0})) == std::vector<int>{1, 2});
  CHECK_THROWS_AS(face_of(a2, w({-1, 0})), ValidationError);
}
