#include "nok/acceptance.hpp"

#include "nok/ghflow.hpp"
#include "nok/width.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace nok {

namespace {

Vec v(std::initializer_list<long long> xs) { return to_vec(std::vector<long long>(xs)); }

// Dominant weights with coordinate sum <= bound.
std::vector<Vec> weights_with_sum(std::size_t rank, long long bound) {
  std::vector<Vec> out;
  std::vector<long long> lam(rank, 0);
  std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long left) {
    if (i == rank) {
      out.push_back(to_vec(lam));
      return;
    }
    for (long long x = 0; x <= left; ++x) {
      lam[i] = x;
      rec(i + 1, left - x);
    }
    lam[i] = 0;
  };
  rec(0, bound);
  return out;
}

Rational power(const Rational& x, int e) {
  Rational out = 1;
  for (int k = 0; k < e; ++k) out *= x;
  return out;
}

struct Tally {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  std::string note;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
  bool ok() const { return failures.empty(); }
  std::string summary() const {
    std::ostringstream s;
    s << checks << " checks";
    if (!note.empty()) s << "; " << note;
    if (!failures.empty()) {
      s << "; failed:";
      for (const auto& f : failures) s << " " << f << ";";
    }
    return s.str();
  }
};

std::string wstr(const Vec& lam) {
  std::string s = "(";
  for (std::size_t i = 0; i < lam.size(); ++i) s += (i ? "," : "") + to_string(lam[i]);
  return s + ")";
}

void littelmann_counts(Tally& t, const AcceptanceOptions& opts) {
  auto a2 = build_root_system("A2");
  std::size_t weights = 0;
  for (const auto& word : reduced_words(a2))
    for (const auto& lam : weights_with_sum(2, 6)) {
      ++weights;
      Integer count(static_cast<unsigned long>(count_lattice_points(string_polytope(a2, word, lam))));
      t.expect(count == weyl_dim(a2, lam), "count at " + wstr(lam));
      if (opts.dimension_oracle) t.expect(count == opts.dimension_oracle(a2, lam), "oracle at " + wstr(lam));
    }
  t.expect(weights == 56, "expected 28 weights per word");
  struct Spot {
    Vec lam;
    std::size_t count;
  };
  for (const auto& s : {Spot{v({1, 1}), 8}, Spot{v({1, 0}), 3}, Spot{v({2, 3}), 42}, Spot{v({0, 3}), 10}})
    for (const auto& word : reduced_words(a2))
      t.expect(count_lattice_points(string_polytope(a2, word, s.lam)) == s.count, "spot " + wstr(s.lam));
}

void dh_identity(Tally& t) {
  for (auto type : {"A1", "A2"}) {
    auto rs = build_root_system(type);
    for (const auto& word : reduced_words(rs))
      for (const auto& lam : weights_with_sum(rs.rank(), 6)) {
        Rational f = orbit_volume(rs, lam), g = dh_fiber_volume(rs, word, lam);
        t.expect(f == g, std::string(type) + " f != g at " + wstr(lam));
        int dim = string_polytope(rs, word, lam).dim();
        for (long k = 1; k <= 4; ++k) {
          Vec scaled = Rational(k) * lam;
          t.expect(orbit_volume(rs, scaled) == power(k, dim) * f, "f scaling at " + wstr(lam));
          if (k == 2 || k == 4)
            t.expect(dh_fiber_volume(rs, word, scaled) == power(k, dim) * g, "g scaling at " + wstr(lam));
        }
      }
  }
  auto a2 = build_root_system("A2");
  t.expect(orbit_volume(a2, v({1, 1})) == 1, "f(1,1) = 1");
  t.expect(orbit_volume(a2, v({2, 3})) == 15, "f(2,3) = 15");
  t.expect(dh_fiber_volume(a2, {1, 2, 1}, v({2, 3})) == 15, "g(2,3) = 15");
}

void rees_integrity(Tally& t) {
  auto fam = builtin_example("sl3-string-121").family;
  const auto& vd = fam.valuation;
  auto e = choose_e(vd, fam.relations).matrix().front();
  t.expect(e == fam.e, "choose_e reproduces the family functional");
  for (const auto& row : fam.t_exponents)
    for (auto m : row) t.expect(m >= 1, "t-exponent below 1");
  for (const auto& g : vd.generators) t.expect(dot(fam.e, g.value) >= 0, "e negative on a generator");

  auto one = fiber(fam, Rational(1));
  Polynomial quadric = fam.relations[0].leading;
  for (const auto& term : fam.relations[0].lower) quadric.push_back(term);
  t.expect(one.size() == 1 && one[0] == quadric, "fiber(1) is the quadric");

  auto zero = fiber(fam, Rational(0));
  for (std::size_t j = 0; j < zero.size(); ++j)
    for (const auto& term : zero[j])
      t.expect(monomial_value(vd, term.exponents) == fam.relations[j].s, "fiber(0) not homogeneous");
  bool summary_ok = true;
  try {
    initial_ideal_summary(fam);
  } catch (const IntegrityError&) {
    summary_ok = false;
  }
  t.expect(summary_ok, "initial ideal summary");

  auto fl = c_image_faces(vd);
  for (const auto& face : fl.faces()) {
    auto split = subfamily_ideal(fam, face.cone);
    for (std::size_t i = 0; i < vd.generators.size(); ++i) {
      bool in_face = face.cone.contains(vd.c_map(vd.generators[i].value));
      bool listed = std::find(split.vanishing.begin(), split.vanishing.end(), i) != split.vanishing.end();
      t.expect(in_face != listed, "vanishing coordinate split");
    }
    for (std::size_t j = 0; j < fam.relations.size(); ++j) {
      bool kept = std::find(split.generators.begin(), split.generators.end(), j) != split.generators.end();
      t.expect(kept == face.cone.contains(vd.c_map(fam.relations[j].s)), "generator split");
      for (auto t0 : {Rational(0), Rational(1, 3), Rational(1)}) {
        auto p = fiber(fam, t0)[j];
        auto r = restrict_to_zero(p, split.vanishing);
        // Kept generators survive untouched; dropped ones vanish identically.
        t.expect(kept ? r == p : r.empty(), "restriction to the coordinate subspace");
      }
    }
  }
}

void flow_invariants(Tally& t) {
  auto fam = numeric_family(builtin_example("hyperbola").family);
  const double radii[10] = {0.5, 0.6, 0.75, 0.9, 1.0, 1.0, 1.2, 1.5, 1.8, 2.0};
  double worst[6] = {0, 0, 0, 0, 0, 0};
  for (int k = 0; k < 10; ++k) {
    const double r = radii[k], theta = 0.37 * k;
    FlowState s;
    s.z = CVec(2);
    s.z << std::polar(r, theta), std::polar(1 / r, -theta);
    s.t = 1.0;
    s.frame = fiber_frame(fam, s);
    auto traj = integrate(fam, s, 0.05);
    auto inv = check_invariants(traj, fam);
    t.expect(std::abs(traj.elapsed.back() - 0.95) < 1e-15, "elapsed 0.95");
    t.expect(inv.pi_drift < 1e-9, "pi drift");
    t.expect(inv.psi_drift < 1e-6, "psi drift");
    t.expect(inv.residual < 1e-8, "residual");
    t.expect(inv.omega_drift < 1e-4, "omega drift");
    auto lim = limit_point(fam, s);
    t.expect(lim.residual < 1e-5, "limit residual");
    t.expect(lim.residual <= lim.error, "limit within its error bound");
    auto a = conserved(fam, s.z), b = conserved(fam, lim.z);
    double dpsi = 0;
    for (std::size_t c = 0; c < a.size(); ++c) dpsi = std::max(dpsi, std::abs(a[c] - b[c]));
    t.expect(dpsi < 1e-5, "limit Psi");
    double vals[6] = {inv.pi_drift, inv.psi_drift, inv.residual, inv.omega_drift, lim.residual, dpsi};
    for (int q = 0; q < 6; ++q) worst[q] = std::max(worst[q], vals[q]);
  }
  std::ostringstream s;
  s.precision(2);
  s << "max pi " << worst[0] << ", psi " << worst[1] << ", residual " << worst[2] << ", omega " << worst[3]
    << ", limit residual " << worst[4] << ", limit Psi " << worst[5];
  t.note = s.str();
}

void worked_field(Tally& t) {
  auto fam = numeric_family(builtin_example("hyperbola").family);
  FlowState s;
  s.z = CVec(2);
  s.z << 1.0, 1.0;
  s.t = 1.0;
  CVec vf = gh_vector_field(fam, s);
  CVec expected(3);
  expected << -0.5, -0.5, -1.0;
  t.expect((vf - expected).cwiseAbs().maxCoeff() < 1e-12, "V(1,1,1)");
}

void gromov_width(Tally& t, unsigned jobs) {
  auto a2 = build_root_system("A2");
  EmbeddingOptions opts;
  opts.jobs = jobs;
  auto wall = orbit_polytope(a2, {1, 2, 1}, v({0, 3}));
  t.expect(ell_lambda(a2, v({0, 3})) == 3, "ell(0,3) = 3");
  auto w = simplex_embedding(wall, 3, opts);
  t.expect(w.status == EmbeddingStatus::found && verify_certificate(wall, *w.certificate), "certificate at (0,3)");
  auto big = orbit_polytope(a2, {1, 2, 1}, v({2, 3}));
  t.expect(ell_lambda(a2, v({2, 3})) == 2, "ell(2,3) = 2");
  auto b = simplex_embedding(big, 2, opts);
  t.expect(b.status == EmbeddingStatus::found && verify_certificate(big, *b.certificate), "certificate at (2,3)");
  auto none = simplex_embedding(wall, 4, opts);
  t.expect(none.status == EmbeddingStatus::none, "size 4 at (0,3) is none");
  bool logged = false;
  for (const auto& n : none.notes) logged = logged || n.find("volume obstruction") != std::string::npos;
  t.expect(logged, "volume obstruction logged");
}

void polyhedra_suite(Tally& t, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3), count(0, 7), dimd(1, 4);
  std::size_t coherent = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = static_cast<std::size_t>(dimd(rng));
    Lattice lat{"R", d};
    Mat ineqs;
    for (int i = count(rng); i > 0; --i) {
      Vec row(d);
      for (auto& x : row) x = coef(rng);
      ineqs.push_back(row);
    }
    auto c = cone_from_inequalities(lat, ineqs);
    for (const auto& r : c.rays())
      for (const auto& u : ineqs) t.expect(dot(u, r) >= 0, "ray violates an inequality");
    auto back = cone_from_generators(lat, c.rays(), c.lineality());
    t.expect(back == c, "V to H round trip");
    Mat with_eq = back.facets();
    for (const auto& e : back.equations()) {
      with_eq.push_back(e);
      with_eq.push_back(Rational(-1) * e);
    }
    t.expect(cone_from_inequalities(lat, with_eq) == c, "H to V to H round trip");
    if (!is_strongly_convex(c)) continue;
    ++coherent;
    auto fl = faces(c);
    for (std::size_t a = 0; a < fl.size(); ++a)
      for (std::size_t b = 0; b < fl.size(); ++b) {
        if (!fl.precedes(a, b)) continue;
        const auto& small = fl.faces()[a].cone;
        const auto& large = fl.faces()[b].cone;
        t.expect(small.dim() < large.dim(), "face dimension");
        t.expect(intersect(small, large) == small, "face containment");
        t.expect(faces(large).find(small).has_value(), "face of a face");
      }
  }
  t.expect(coherent > 0, "some strongly convex samples");

  // Ehrhart polynomiality of dilates.
  struct Case {
    const char* type;
    std::vector<int> word;
    Vec lam;
  };
  for (const auto& cs : {Case{"A1", {1}, v({3})}, Case{"A2", {1, 2, 1}, v({1, 1})},
                         Case{"A2", {2, 1, 2}, v({1, 2})}, Case{"A2", {1, 2, 1}, v({0, 2})},
                         Case{"B2", {1, 2, 1, 2}, v({1, 0})}}) {
    auto rs = build_root_system(cs.type);
    auto p = string_polytope(rs, cs.word, cs.lam);
    const int d = p.dim();
    std::vector<Rational> counts{1};
    for (long k = 1; k <= 5; ++k)
      counts.push_back(Rational(static_cast<unsigned long>(count_lattice_points(p.dilate(k)))));
    // Newton forward differences: degree d means the (d+1)-th differences vanish.
    std::vector<Rational> diff = counts;
    std::vector<Rational> leading;
    for (int order = 0; order <= 5; ++order) {
      leading.push_back(diff.front());
      std::vector<Rational> next;
      for (std::size_t i = 0; i + 1 < diff.size(); ++i) next.push_back(diff[i + 1] - diff[i]);
      diff = next;
      if (diff.empty()) break;
    }
    for (int order = d + 1; order < static_cast<int>(leading.size()); ++order)
      t.expect(leading[static_cast<std::size_t>(order)] == 0, std::string("Ehrhart degree for ") + cs.type);
    Rational fact = 1;
    for (int k = 2; k <= d; ++k) fact *= k;
    t.expect(leading[static_cast<std::size_t>(d)] / fact == volume(p), std::string("Ehrhart leading coefficient for ") + cs.type);
  }
}

void valuation_axioms(Tally& t) {
  for (auto name : {"sl2", "sl3-string-121"}) {
    auto rep = good_valuation_check(builtin_example(name).family.valuation);
    for (const auto& e : rep.entries) t.expect(e.status == CheckStatus::pass, std::string(name) + " " + e.name);
  }
  auto sl2 = builtin_example("sl2").family.valuation;
  auto gens = sl2.generators;
  // A generator of c-degree zero breaks bounded fibers and properness.
  auto zero_weight = gens;
  zero_weight.push_back({"y", v({1, 0}), v({2}), v({0})});
  auto bad = good_valuation_check(make_valuation_data(1, 1, zero_weight, "A1"));
  t.expect(bad.at("v3_bounded_fibers").status == CheckStatus::fail, "bounded fibers violation");
  t.expect(bad.at("c_properness").status == CheckStatus::fail, "properness violation");
  // Opposite values make cone(S) contain a line.
  auto line = gens;
  line.push_back({"n", v({0, -1}), v({1}), v({-1})});
  auto bad2 = good_valuation_check(make_valuation_data(1, 1, line, "A1"));
  t.expect(bad2.at("cone_strongly_convex").status == CheckStatus::fail, "strong convexity violation");
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  CriterionResult r;
  r.id = id;
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1:
        r.name = "Littelmann count identity";
        r.limit_seconds = 5;
        littelmann_counts(t, opts);
        break;
      case 2:
        r.name = "Duistermaat-Heckman identity";
        r.limit_seconds = 10;
        dh_identity(t);
        break;
      case 3:
        r.name = "Rees-family integrity";
        r.limit_seconds = 1;
        rees_integrity(t);
        break;
      case 4:
        r.name = "flow invariants";
        r.limit_seconds = 30;
        flow_invariants(t);
        break;
      case 5:
        r.name = "worked vector-field value";
        r.limit_seconds = 1;
        worked_field(t);
        break;
      case 6:
        r.name = "Gromov-width bound";
        r.limit_seconds = 60;
        gromov_width(t, opts.jobs);
        break;
      case 7:
        r.name = "polyhedra property suite";
        r.limit_seconds = 60;
        polyhedra_suite(t, opts.seed);
        break;
      case 8:
        r.name = "good-valuation axioms";
        r.limit_seconds = 1;
        valuation_axioms(t);
        break;
      default:
        throw ValidationError("no acceptance criterion " + std::to_string(id));
    }
    r.correct = t.ok();
    r.detail = t.summary();
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    r.correct = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 8; ++id) out.push_back(run_criterion(id, opts));
  return out;
}

std::string format(const CriterionResult& r) {
  std::ostringstream s;
  s.precision(3);
  s << (r.pass() ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << " (" << r.seconds << " s, limit "
    << r.limit_seconds << " s): " << r.detail;
  return s.str();
}

}  // namespace nok
