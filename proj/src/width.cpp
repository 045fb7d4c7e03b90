#include "nok/width.hpp"

#include "nok/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace nok {

namespace {

void require_dominant(const RootSystem& rs, const Vec& lambda) {
  if (lambda.size() != rs.rank()) throw ValidationError("weight has the wrong length for " + rs.label());
  if (!is_dominant(lambda) || !is_integral(lambda)) throw ValidationError("weight is not dominant integral");
}

}  // namespace

Rational ell_lambda(const RootSystem& rs, const Vec& lambda) {
  require_dominant(rs, lambda);
  if (is_zero(lambda)) throw ValidationError("orbit is a point: width is 0");
  std::optional<Rational> best;
  for (const auto& a : rs.positive_roots()) {
    Rational p = pairing(rs, lambda, a);
    if (p > 0 && (!best || p < *best)) best = p;
  }
  return *best;
}

RationalPolytope orbit_polytope(const RootSystem& rs, const std::vector<int>& word, const Vec& lambda) {
  return string_polytope(rs, word, lambda);
}

Rational orbit_volume(const RootSystem& rs, const Vec& lambda) {
  require_dominant(rs, lambda);
  Rational out = 1;
  for (const auto& a : rs.positive_roots()) {
    Rational p = pairing(rs, lambda, a);
    if (p != 0) out *= p / pairing(rs, rs.rho(), a);
  }
  return out;
}

Rational dh_fiber_volume(const RootSystem& rs, const std::vector<int>& word, const Vec& lambda) {
  return volume(orbit_polytope(rs, word, lambda));
}

const char* to_string(EmbeddingStatus s) {
  switch (s) {
    case EmbeddingStatus::found: return "found";
    case EmbeddingStatus::none: return "none";
    case EmbeddingStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

using IVec = std::vector<long long>;
using IMat = std::vector<long long>;  // row-major d x d

long long det(std::vector<IVec> cols) {
  // Bareiss elimination on the column matrix.
  const std::size_t d = cols.size();
  if (d == 0) return 1;
  long long sign = 1, prev = 1;
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t piv = k;
    while (piv < d && cols[piv][k] == 0) ++piv;
    if (piv == d) return 0;
    if (piv != k) {
      std::swap(cols[piv], cols[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < d; ++i) {
      for (std::size_t j = k + 1; j < d; ++j)
        cols[i][j] = (cols[i][j] * cols[k][k] - cols[i][k] * cols[k][j]) / prev;
      cols[i][k] = 0;
    }
    prev = cols[k][k];
  }
  return sign * cols[d - 1][d - 1];
}

// Products of at most `depth` elementary matrices I +- E_ij.
std::set<IMat> elementary_class(std::size_t d, int depth) {
  IMat id(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) id[i * d + i] = 1;
  std::set<IMat> all{id};
  std::vector<IMat> frontier{id};
  for (int level = 0; level < depth; ++level) {
    std::vector<IMat> next;
    for (const auto& m : frontier)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          if (i == j) continue;
          for (int s : {1, -1}) {
            // m * (I + s E_ij): column j gains s * column i.
            IMat p = m;
            for (std::size_t r = 0; r < d; ++r) p[r * d + j] += s * m[r * d + i];
            if (all.insert(p).second) next.push_back(p);
          }
        }
    frontier = std::move(next);
  }
  return all;
}

struct SignedPerm {
  std::vector<std::size_t> perm;
  std::vector<int> signs;
};

std::vector<SignedPerm> signed_perms(std::size_t d) {
  std::vector<SignedPerm> out;
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      SignedPerm sp{perm, std::vector<int>(d)};
      for (std::size_t k = 0; k < d; ++k) sp.signs[k] = (mask >> k) & 1 ? -1 : 1;
      out.push_back(sp);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

struct Frame {
  std::size_t d = 0;
  Mat facets;                    // rows (u, u0): u.w + u0 >= 0
  std::vector<IVec> points;      // lattice points in w coordinates, lex order
  Mat vertices;                  // w coordinates
  Vec base_local;                // local coordinates of w = 0
  Mat basis_local;               // hull lattice basis, local coordinates
};

bool inside(const Frame& f, const Vec& w) {
  for (const auto& row : f.facets) {
    Rational s = row[f.d];
    for (std::size_t k = 0; k < f.d; ++k) s += row[k] * w[k];
    if (s < 0) return false;
  }
  return true;
}

Vec ambient_of(const RationalPolytope& p, const Frame& f, const Vec& w) {
  Vec local = f.base_local;
  for (std::size_t j = 0; j < f.d; ++j) local = local + w[j] * f.basis_local[j];
  return p.to_ambient(local);
}

}  // namespace

bool verify_certificate(const RationalPolytope& p, const SimplexCertificate& cert) {
  for (const auto& v : cert.vertices)
    if (!p.contains(v)) return false;
  return true;
}

EmbeddingResult simplex_embedding(const RationalPolytope& p, const Rational& ell, const EmbeddingOptions& opts) {
  if (p.is_empty()) throw ValidationError("simplex search needs a nonempty polytope");
  const Rational size = ell - opts.delta;
  if (size < 0) throw ValidationError("simplex size must be nonnegative");
  EmbeddingResult res;
  const std::size_t d = static_cast<std::size_t>(p.dim());
  const Rational vol = volume(p);
  Rational simplex_vol = 1;
  for (std::size_t k = 1; k <= d; ++k) simplex_vol *= size / Rational(static_cast<long>(k));
  const bool obstructed = d > 0 && simplex_vol > vol;
  if (obstructed)
    res.notes.push_back("volume obstruction: size^d/d! = " + to_string(simplex_vol) + " exceeds volume " +
                        to_string(vol));

  if (d > opts.max_dim) {
    res.status = EmbeddingStatus::inconclusive;
    res.notes.push_back("dimension " + std::to_string(d) + " exceeds the search cap " +
                        std::to_string(opts.max_dim));
    return res;
  }

  auto pts = lattice_points(p);
  if (pts.empty()) {
    res.notes.push_back("polytope has no lattice points");
    return res;
  }

  if (d == 0) {
    SimplexCertificate cert;
    cert.size = size;
    cert.translation = pts.front().coords;
    cert.vertices.push_back(cert.translation);
    res.status = EmbeddingStatus::found;
    res.certificate = cert;
    res.candidates = 1;
    return res;
  }

  // Hull-lattice frame with origin at the first lattice point.
  Frame f;
  f.d = d;
  auto hull = hull_coordinates(p);
  f.basis_local = hull.basis;
  const auto& space = p.space();
  f.base_local = *linalg::coordinates_in(space.basis, pts.front().coords - space.base_point);
  for (const auto& v : p.local_vertices())
    f.vertices.push_back(*linalg::coordinates_in(f.basis_local, v - f.base_local));
  for (const auto& x : pts) {
    Vec local = *linalg::coordinates_in(space.basis, x.coords - space.base_point);
    f.points.push_back(to_int64(*linalg::coordinates_in(f.basis_local, local - f.base_local)));
  }
  std::sort(f.points.begin(), f.points.end());

  std::vector<Rational> lo(d), hi(d);
  for (std::size_t k = 0; k < d; ++k) {
    lo[k] = hi[k] = f.vertices.front()[k];
    for (const auto& v : f.vertices) {
      lo[k] = std::min(lo[k], v[k]);
      hi[k] = std::max(hi[k], v[k]);
    }
    if (hi[k] - lo[k] > Rational(static_cast<long>(opts.max_box))) {
      res.status = EmbeddingStatus::inconclusive;
      res.notes.push_back("bounding box exceeds the search cap " + std::to_string(opts.max_box));
      return res;
    }
  }
  {
    Mat gens;
    for (const auto& v : f.vertices) {
      Vec h = v;
      h.push_back(1);
      gens.push_back(h);
    }
    f.facets = cone_from_generators(Lattice{"W", d + 1}, gens).facets();
  }

  auto build = [&](const IVec& t, const std::vector<IVec>& cols) {
    SimplexCertificate cert;
    cert.size = size;
    Vec tw = to_vec(t);
    cert.translation = ambient_of(p, f, tw);
    for (std::size_t r = 0; r < d; ++r) {
      Vec row;
      for (std::size_t c = 0; c < d; ++c) row.push_back(Rational(static_cast<long>(cols[c][r])));
      cert.matrix.push_back(row);
    }
    Vec zero_local = zeros(f.basis_local.empty() ? 0 : f.basis_local.front().size());
    Vec origin = p.to_ambient(zero_local);
    for (std::size_t j = 0; j < d; ++j) cert.directions.push_back(p.to_ambient(f.basis_local[j]) - origin);
    cert.vertices.push_back(cert.translation);
    for (const auto& c : cols) cert.vertices.push_back(ambient_of(p, f, tw + size * to_vec(c)));
    return cert;
  };

  if (size == 0) {
    // The degenerate simplex sits at any lattice point.
    std::vector<IVec> cols;
    for (std::size_t k = 0; k < d; ++k) {
      IVec e(d, 0);
      e[k] = 1;
      cols.push_back(e);
    }
    res.status = EmbeddingStatus::found;
    res.certificate = build(f.points.front(), cols);
    res.candidates = 1;
    return res;
  }

  const auto eclass = elementary_class(d, opts.max_elementary);
  const auto sperms = signed_perms(d);
  res.candidates = eclass.size() * sperms.size();
  auto in_class = [&](const std::vector<IVec>& cols) {
    IMat m(d * d);
    for (const auto& sp : sperms) {
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) m[r * d + c] = sp.signs[c] * cols[sp.perm[c]][r];
      if (eclass.count(m)) return true;
    }
    return false;
  };

  std::atomic<std::size_t> checks{0};
  std::atomic<bool> capped{false};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::mutex mu;
  std::optional<std::vector<IVec>> best_cols;

  auto search_translation = [&](std::size_t ti) -> std::optional<std::vector<IVec>> {
    const IVec& t = f.points[ti];
    Vec tw = to_vec(t);
    // Admissible columns: a with t + size * a inside.
    std::vector<IVec> dirs;
    std::vector<long long> alo(d), ahi(d);
    std::size_t box = 1;
    for (std::size_t k = 0; k < d; ++k) {
      Rational a = (lo[k] - tw[k]) / size, b = (hi[k] - tw[k]) / size;
      mpz_class fl, ce;
      mpz_cdiv_q(ce.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
      mpz_fdiv_q(fl.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
      alo[k] = ce.get_si();
      ahi[k] = fl.get_si();
      if (ahi[k] < alo[k]) return std::nullopt;
      box *= static_cast<std::size_t>(ahi[k] - alo[k] + 1);
    }
    if ((checks += box) > opts.max_checks) {
      capped = true;
      return std::nullopt;
    }
    IVec a(alo);
    while (true) {
      bool nonzero = std::any_of(a.begin(), a.end(), [](long long x) { return x != 0; });
      if (nonzero && inside(f, tw + size * to_vec(a))) dirs.push_back(a);
      std::size_t k = 0;
      while (k < d && a[k] == ahi[k]) a[k] = alo[k], ++k;
      if (k == d) break;
      ++a[k];
    }
    std::sort(dirs.begin(), dirs.end());
    std::vector<std::size_t> idx;
    std::vector<IVec> cols;
    std::optional<std::vector<IVec>> hit;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (hit || capped) return;
      if (cols.size() == d) {
        if (++checks > opts.max_checks) {
          capped = true;
          return;
        }
        long long det_value = det(cols);
        if ((det_value == 1 || det_value == -1) && in_class(cols)) hit = cols;
        return;
      }
      for (std::size_t i = from; i < dirs.size() && !hit; ++i) {
        cols.push_back(dirs[i]);
        rec(i + 1);
        cols.pop_back();
      }
    };
    rec(0);
    return hit;
  };

  const unsigned jobs = std::max(1u, opts.jobs);
  auto worker = [&](unsigned id) {
    for (std::size_t ti = id; ti < f.points.size(); ti += jobs) {
      if (ti > best.load() || capped) return;
      auto hit = search_translation(ti);
      if (hit) {
        std::lock_guard<std::mutex> lock(mu);
        if (ti < best.load()) {
          best = ti;
          best_cols = hit;
        }
        return;
      }
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned id = 0; id < jobs; ++id) threads.emplace_back(worker, id);
    for (auto& th : threads) th.join();
  }

  if (best_cols) {
    res.status = EmbeddingStatus::found;
    res.certificate = build(f.points[best.load()], *best_cols);
    if (!verify_certificate(p, *res.certificate))
      throw IntegrityError("simplex certificate fails the polytope inequalities");
    if (obstructed) throw IntegrityError("certificate found despite the volume obstruction");
  } else if (capped) {
    res.status = EmbeddingStatus::inconclusive;
    res.notes.push_back("search stopped at " + std::to_string(opts.max_checks) + " checks");
  } else {
    res.status = EmbeddingStatus::none;
    res.notes.push_back("exhaustive search over the candidate class found no simplex");
  }
  return res;
}

WidthReport width_report(const RootSystem& rs, const std::vector<int>& word, const Vec& lambda,
                         const EmbeddingOptions& opts) {
  WidthReport rep;
  rep.type = rs.label();
  rep.word = word;
  rep.lambda = lambda;
  rep.polytope = orbit_polytope(rs, word, lambda);
  if (is_zero(lambda)) {
    rep.ell = 0;
    rep.warnings.push_back("orbit is a point: width 0");
  } else {
    rep.ell = ell_lambda(rs, lambda);
  }
  rep.orbit_volume = orbit_volume(rs, lambda);
  rep.dh_volume = volume(rep.polytope);
  rep.embedding = simplex_embedding(rep.polytope, rep.ell, opts);
  rep.upper_bound_note =
      "Only the lower bound is computed. Matching upper bounds for coadjoint orbits come from "
      "earlier work and are not checked here.";
  return rep;
}

}  // namespace nok
