#include <doctest.h>

#include "nok/ghflow.hpp"

#include <cmath>

using namespace nok;

namespace {

NumericFamily hyperbola() { return numeric_family(builtin_example("hyperbola").family); }

FlowState at(std::initializer_list<cplx> z, double t) {
  FlowState s;
  s.z = CVec(static_cast<Eigen::Index>(z.size()));
  Eigen::Index i = 0;
  for (auto x : z) s.z[i++] = x;
  s.t = t;
  return s;
}

}  // namespace

TEST_CASE("hyperbola Jacobian, tangent space and vector field") {
  auto fam = hyperbola();
  REQUIRE(fam.n == 2);
  auto s = at({1.0, 1.0}, 1.0);
  CMat jac = jacobian(fam, s.z, s.t);
  CHECK(std::abs(jac(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(jac(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(jac(0, 2) + 1.0) < 1e-15);
  CMat k = tangent_projection(fam, s);
  CHECK(k.cols() == 2);
  CHECK((jac * k).norm() < 1e-14);
  CHECK((k.adjoint() * k - CMat::Identity(2, 2)).norm() < 1e-14);

  CVec v = gh_vector_field(fam, s);
  CHECK(std::abs(v[0] + 0.5) < 1e-12);
  CHECK(std::abs(v[1] + 0.5) < 1e-12);
  CHECK(std::abs(v[2] + 1.0) < 1e-12);
}

TEST_CASE("d pi (V) = -1 at random states") {
  auto fam = numeric_family(builtin_example("sl3-string-121").family);
  std::srand(5);
  for (int trial = 0; trial < 20; ++trial) {
    FlowState s;
    s.z = CVec::Random(6);
    s.t = 0.3 + 0.05 * trial;
    // Solve for z6 so that the state lies on the fiber.
    CVec g = residuals(fam, s.z, s.t);
    s.z[5] -= g[0] / s.z[0];
    CHECK(std::abs(residuals(fam, s.z, s.t)[0]) < 1e-12);
    CVec v = gh_vector_field(fam, s);
    CHECK(std::abs(v[6] + 1.0) < 1e-12);
    CHECK((jacobian(fam, s.z, s.t) * v).norm() < 1e-12);
  }
}

TEST_CASE("free family") {
  auto fam = free_family(3);
  auto s = at({1.0, cplx(0, 2), -0.5}, 1.0);
  CHECK(tangent_projection(fam, s).cols() == 4);
  CVec v = gh_vector_field(fam, s);
  CHECK(v.head(3).norm() == 0);
  CHECK(v[3] == cplx(-1.0));
  auto lim = limit_point(fam, s);
  CHECK((lim.z - s.z).norm() == 0);
  CHECK(lim.error == 0);
}

TEST_CASE("singular point from a duplicated generator") {
  auto fam = hyperbola();
  fam.generators.push_back(fam.generators[0]);
  CHECK_THROWS_WITH_AS(tangent_projection(fam, at({1.0, 1.0}, 1.0)), doctest::Contains("singular point"),
                       NumericalError);
}

TEST_CASE("blow-up is reported") {
  auto fam = hyperbola();
  FlowOptions opts;
  opts.blowup = 0.9;
  CHECK_THROWS_WITH_AS(gh_vector_field(fam, at({1.0, 1.0}, 1.0), opts), doctest::Contains("blow-up"),
                       NumericalError);
}

TEST_CASE("hyperbola run conserves psi") {
  auto fam = hyperbola();
  auto s = at({2.0, 0.5}, 1.0);
  auto traj = integrate(fam, s, 0.01);
  const auto& last = traj.states.back();
  CHECK(last.t.real() == doctest::Approx(0.01).epsilon(1e-12));
  double psi = 0.5 * (std::norm(last.z[0]) - std::norm(last.z[1]));
  CHECK(std::abs(psi - 15.0 / 8) < 1e-8);
  CHECK(std::abs(last.z[0] * last.z[1] - last.t) < 1e-8);
  for (const auto& d : traj.diagnostics) {
    CHECK(d.residual < 1e-8);
    CHECK(d.psi_drift < 1e-8);
  }
  CHECK_THROWS_AS(integrate(fam, s, 1.0), ValidationError);
  CHECK_THROWS_AS(integrate(fam, s, 0.0), ValidationError);
  CHECK_THROWS_AS(integrate(fam, at({2.0, 2.0}, 1.0), 0.5), ValidationError);
}

TEST_CASE("symmetric start keeps z1 = z2") {
  auto fam = hyperbola();
  auto traj = integrate(fam, at({1.0, 1.0}, 1.0), 0.01);
  for (const auto& s : traj.states) CHECK(std::abs(s.z[0] - s.z[1]) < 1e-10);
  // z1 = z2 = sqrt(t) along the real locus.
  const auto& last = traj.states.back();
  CHECK(std::abs(last.z[0] - std::sqrt(0.01)) < 1e-8);
}

TEST_CASE("invariants with a transported frame") {
  auto fam = hyperbola();
  auto s = at({std::polar(1.3, 0.4), std::polar(1 / 1.3, -0.4)}, 1.0);
  s.frame = fiber_frame(fam, s);
  REQUIRE(s.frame.size() == 2);
  CHECK(symplectic_pairing(s.frame[0], s.frame[1]) == doctest::Approx(1.0));
  auto traj = integrate(fam, s, 0.05);
  auto rep = check_invariants(traj, fam);
  CHECK(rep.omega_drift < 1e-4);
  CHECK(rep.pi_drift < 1e-9);
  CHECK(rep.psi_drift < 1e-6);
  CHECK(rep.residual < 1e-8);

  Trajectory single;
  single.states.push_back(s);
  single.elapsed.push_back(0);
  auto zero = check_invariants(single, fam);
  CHECK(zero.pi_drift == 0);
  CHECK(zero.psi_drift == 0);
  CHECK(zero.omega_drift == 0);
}

TEST_CASE("sl3 family flow") {
  auto fam = numeric_family(builtin_example("sl3-string-121").family);
  // Torus (a, c) has rank 4 inside L of rank 5.
  CHECK(fam.weights.rows() == 4);
  FlowState s;
  s.z = CVec(6);
  s.z << 1.0, cplx(0.5, 0.2), 0.7, cplx(0.3, -0.4), 1.1, 0.0;
  s.t = 1.0;
  s.z[5] = -residuals(fam, s.z, s.t)[0] / s.z[0];
  s.frame = fiber_frame(fam, s);
  auto traj = integrate(fam, s, 0.1);
  auto rep = check_invariants(traj, fam);
  CHECK(rep.omega_drift < 1e-4);
  CHECK(rep.psi_drift < 1e-6);
  CHECK(rep.residual < 1e-8);
  auto lim = limit_point(fam, s);
  CHECK(lim.residual < 1e-5);
  CHECK(lim.residual <= lim.error);
  auto a = conserved(fam, s.z), b = conserved(fam, lim.z);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) < 1e-5);
}

TEST_CASE("limit points on the hyperbola") {
  auto fam = hyperbola();
  auto lim = limit_point(fam, at({2.0, 0.5}, 1.0));
  CHECK(std::abs(lim.z[1]) < 1e-6);
  CHECK(std::abs(std::norm(lim.z[0]) - 15.0 / 4) < 1e-6);
  CHECK(lim.residual < 1e-5);

  auto sym = limit_point(fam, at({1.0, 1.0}, 1.0));
  CHECK(std::abs(sym.z[0]) < 1e-5);
  CHECK(std::abs(sym.z[1]) < 1e-5);
}
