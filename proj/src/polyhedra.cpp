#include "nok/polyhedra.hpp"

#include "nok/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>

namespace nok {

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64 + 1, 0) {}
  void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct DDResult {
  Mat rays;
  Mat lineality;
};

Vec negate(const Vec& v) { return Rational(-1) * v; }

// Orthogonal projection of v onto the complement of span(rows of basis).
Vec project_off(const Vec& v, const Mat& basis) {
  if (basis.empty()) return v;
  Mat gram(basis.size(), Vec(basis.size()));
  Vec rhs(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    rhs[i] = dot(basis[i], v);
    for (std::size_t j = 0; j < basis.size(); ++j) gram[i][j] = dot(basis[i], basis[j]);
  }
  Vec c = *linalg::solve(gram, rhs, basis.size());
  Vec out = v;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] -= c[i] * basis[i][k];
  return out;
}

Mat canonical_rays(const Mat& rays, const Mat& lineality) {
  std::set<Vec> unique;
  for (const auto& r : rays) {
    Vec p = primitive(project_off(r, lineality));
    if (!is_zero(p)) unique.insert(std::move(p));
  }
  return Mat(unique.begin(), unique.end());
}

// Double description: rays and lineality of {x : <a, x> >= 0 for a in ineqs}.
// Inequalities are inserted in input order.
DDResult double_description(const Mat& ineqs, std::size_t n) {
  struct Ray {
    Vec v;
    Bits zero;
  };
  const std::size_t nbits = ineqs.size();
  Mat lin = identity(n);
  std::vector<Ray> rays;

  for (std::size_t k = 0; k < ineqs.size(); ++k) {
    const Vec& a = ineqs[k];
    if (a.size() != n) throw ValidationError("inequality length does not match lattice rank");
    if (is_zero(a)) {
      for (auto& r : rays) r.zero.set(k);
      continue;
    }
    std::size_t pick = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) {
        pick = i;
        break;
      }
    if (pick < lin.size()) {
      Vec l = lin[pick];
      Rational al = dot(a, l);
      if (al < 0) {
        l = negate(l);
        al = -al;
      }
      for (std::size_t j = 0; j < lin.size(); ++j) {
        if (j == pick) continue;
        Rational aj = dot(a, lin[j]);
        if (aj != 0) lin[j] = primitive(lin[j] - (aj / al) * l);
      }
      for (auto& r : rays) {
        Rational ar = dot(a, r.v);
        if (ar != 0) r.v = primitive(r.v - (ar / al) * l);
        r.zero.set(k);
      }
      Ray fresh{primitive(l), Bits(nbits)};
      for (std::size_t j = 0; j < k; ++j) fresh.zero.set(j);
      rays.push_back(std::move(fresh));
      lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(pick));
      continue;
    }

    std::vector<Rational> s(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) s[i] = dot(a, rays[i].v);
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (s[i] > 0) next.push_back(rays[i]);
      if (s[i] == 0) {
        next.push_back(rays[i]);
        next.back().zero.set(k);
      }
    }
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (s[p] <= 0) continue;
      for (std::size_t q = 0; q < rays.size(); ++q) {
        if (s[q] >= 0) continue;
        Bits common = rays[p].zero & rays[q].zero;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Vec v = primitive(s[p] * rays[q].v - s[q] * rays[p].v);
        common.set(k);
        next.push_back(Ray{std::move(v), common});
      }
    }
    rays = std::move(next);
  }

  DDResult out;
  out.lineality = linalg::canonical_span(lin, n);
  Mat raw;
  for (auto& r : rays) raw.push_back(r.v);
  out.rays = canonical_rays(raw, out.lineality);
  return out;
}

Mat with_negations(const Mat& rays, const Mat& lineality) {
  Mat out = rays;
  for (const auto& l : lineality) {
    out.push_back(l);
    out.push_back(negate(l));
  }
  return out;
}

void check_lengths(const Mat& vs, std::size_t n, const char* what) {
  for (const auto& v : vs)
    if (v.size() != n)
      throw ValidationError(std::string(what) + " length does not match lattice rank");
}

}  // namespace

LinearMap::LinearMap(Mat matrix, Lattice domain, Lattice codomain)
    : matrix_(std::move(matrix)), domain_(std::move(domain)), codomain_(std::move(codomain)) {
  if (matrix_.size() != codomain_.rank)
    throw ValidationError("linear map row count must equal codomain rank");
  for (const auto& row : matrix_) {
    if (row.size() != domain_.rank)
      throw ValidationError("linear map column count must equal domain rank");
    if (!nok::is_integral(row)) integral_ = false;
  }
}

bool LinearMap::is_surjective() const {
  return integral_ && linalg::is_surjective_over_z(matrix_, domain_.rank);
}

Vec LinearMap::operator()(const Vec& x) const {
  if (x.size() != domain_.rank) throw ValidationError("vector length does not match map domain");
  return nok::apply(matrix_, x);
}

RationalCone cone_from_inequalities(const Lattice& lattice, const Mat& inequalities) {
  check_lengths(inequalities, lattice.rank, "inequality");
  RationalCone c;
  c.lattice_ = lattice;
  c.inequalities_ = inequalities;
  DDResult primal = double_description(inequalities, lattice.rank);
  c.rays_ = std::move(primal.rays);
  c.lineality_ = std::move(primal.lineality);
  DDResult dual = double_description(with_negations(c.rays_, c.lineality_), lattice.rank);
  c.facets_ = std::move(dual.rays);
  c.equations_ = std::move(dual.lineality);
  return c;
}

RationalCone cone_from_inequalities(const Lattice& lattice,
                                    const std::vector<LatticeVector>& inequalities) {
  Mat rows;
  for (const auto& v : inequalities) {
    if (v.lattice != lattice.name)
      throw ValidationError("inequalities from mixed lattices: '" + v.lattice + "' vs '" +
                            lattice.name + "'");
    rows.push_back(v.coords);
  }
  return cone_from_inequalities(lattice, rows);
}

RationalCone cone_from_generators(const Lattice& lattice, const Mat& rays, const Mat& lineality) {
  check_lengths(rays, lattice.rank, "ray");
  check_lengths(lineality, lattice.rank, "lineality vector");
  DDResult dual = double_description(with_negations(rays, lineality), lattice.rank);
  Mat h = with_negations(dual.rays, dual.lineality);
  return cone_from_inequalities(lattice, h);
}

std::size_t RationalCone::dim() const { return lattice_.rank - equations_.size(); }

bool RationalCone::contains(const Vec& x) const {
  if (x.size() != lattice_.rank) return false;
  for (const auto& f : facets_)
    if (dot(f, x) < 0) return false;
  for (const auto& e : equations_)
    if (dot(e, x) != 0) return false;
  return true;
}

bool RationalCone::operator==(const RationalCone& other) const {
  return lattice_ == other.lattice_ && rays_ == other.rays_ && lineality_ == other.lineality_;
}

RationalCone intersect(const RationalCone& a, const RationalCone& b) {
  if (!(a.lattice() == b.lattice())) throw ValidationError("intersecting cones over different lattices");
  Mat h = with_negations(a.facets(), a.equations());
  for (const auto& row : with_negations(b.facets(), b.equations())) h.push_back(row);
  return cone_from_inequalities(a.lattice(), h);
}

RationalCone image(const RationalCone& cone, const LinearMap& map) {
  if (!(cone.lattice() == map.domain())) throw ValidationError("map domain differs from cone lattice");
  Mat rays, lin;
  for (const auto& r : cone.rays()) rays.push_back(map(r));
  for (const auto& l : cone.lineality()) lin.push_back(map(l));
  return cone_from_generators(map.codomain(), rays, lin);
}

RationalCone restrict_to_preimage(const RationalCone& cone, const LinearMap& map,
                                  const RationalCone& target) {
  if (!(cone.lattice() == map.domain()) || !(target.lattice() == map.codomain()))
    throw ValidationError("lattice mismatch in preimage restriction");
  Mat h = with_negations(cone.facets(), cone.equations());
  Mat mt = transpose(map.matrix());
  auto pull = [&](const Vec& u) {
    Vec out = zeros(map.domain().rank);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = dot(mt[j], u);
    return out;
  };
  for (const auto& row : with_negations(target.facets(), target.equations())) h.push_back(pull(row));
  return cone_from_inequalities(cone.lattice(), h);
}

bool is_strongly_convex(const RationalCone& cone) { return cone.lineality().empty(); }

bool FaceLattice::precedes(std::size_t a, std::size_t b) const {
  const auto& ra = faces_.at(a).ray_indices;
  const auto& rb = faces_.at(b).ray_indices;
  return ra.size() < rb.size() && std::includes(rb.begin(), rb.end(), ra.begin(), ra.end());
}

std::optional<std::size_t> FaceLattice::find(const RationalCone& cone) const {
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (faces_[i].cone == cone) return i;
  return std::nullopt;
}

FaceLattice faces(const RationalCone& cone) {
  if (!is_strongly_convex(cone)) throw ValidationError("face lattice requires a strongly convex cone");
  const Mat& rays = cone.rays();
  std::vector<std::vector<std::size_t>> facet_sets;
  for (const auto& f : cone.facets()) {
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (dot(f, rays[i]) == 0) tight.push_back(i);
    facet_sets.push_back(std::move(tight));
  }
  std::vector<std::size_t> all(rays.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::set<std::vector<std::size_t>> seen{all};
  std::vector<std::vector<std::size_t>> queue{all};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& fs : facet_sets) {
      std::vector<std::size_t> meet;
      std::set_intersection(queue[head].begin(), queue[head].end(), fs.begin(), fs.end(),
                            std::back_inserter(meet));
      if (seen.insert(meet).second) queue.push_back(meet);
    }
  }
  const std::size_t full_dim = cone.dim();
  std::vector<Face> out;
  for (const auto& idx : seen) {
    Mat sub;
    for (auto i : idx) sub.push_back(rays[i]);
    RationalCone fc = cone_from_generators(cone.lattice(), sub);
    std::size_t d = fc.dim();
    out.push_back(Face{std::move(fc), full_dim - d, idx});
  }
  std::stable_sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.codim != b.codim) return a.codim > b.codim;
    return a.ray_indices < b.ray_indices;
  });
  return FaceLattice(std::move(out));
}

// --- polytopes ---------------------------------------------------------------

RationalPolytope::RationalPolytope(Lattice ambient, std::vector<HalfSpace> inequalities,
                                   AffineLattice space)
    : ambient_(std::move(ambient)), inequalities_(std::move(inequalities)), space_(std::move(space)) {
  const std::size_t n = ambient_.rank;
  if (space_.base_point.size() != n) throw ValidationError("base point length mismatch");
  check_lengths(space_.basis, n, "direction vector");
  if (linalg::rank(space_.basis, n) != space_.basis.size())
    throw ValidationError("direction lattice basis is not independent");
  const std::size_t d = space_.basis.size();
  for (const auto& h : inequalities_) {
    if (h.normal.size() != n) throw ValidationError("inequality length mismatch");
    Vec local(d);
    for (std::size_t i = 0; i < d; ++i) local[i] = dot(h.normal, space_.basis[i]);
    local_normals_.push_back(std::move(local));
    local_offsets_.push_back(h.offset - dot(h.normal, space_.base_point));
  }
  // Homogenize: (y, s) with <u, y> - b s >= 0 and s >= 0.
  Mat hom;
  for (std::size_t k = 0; k < local_normals_.size(); ++k) {
    Vec row = local_normals_[k];
    row.push_back(-local_offsets_[k]);
    hom.push_back(std::move(row));
  }
  Vec s_row = zeros(d + 1);
  s_row[d] = 1;
  hom.push_back(s_row);
  DDResult dd = double_description(hom, d + 1);
  bool recession = !dd.lineality.empty();
  for (const auto& r : dd.rays) {
    if (r[d] == 0) {
      recession = true;
      continue;
    }
    Vec v(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(d));
    local_vertices_.push_back(Rational(1) / r[d] * v);
  }
  std::sort(local_vertices_.begin(), local_vertices_.end());
  if (local_vertices_.empty()) {
    dim_ = -1;
    return;
  }
  if (recession) throw ValidationError("polyhedron is unbounded");
  Mat diffs;
  for (const auto& v : local_vertices_) diffs.push_back(v - local_vertices_.front());
  dim_ = static_cast<int>(linalg::rank(diffs, d));
}

RationalPolytope RationalPolytope::full(Lattice ambient, std::vector<HalfSpace> inequalities) {
  AffineLattice space{zeros(ambient.rank), identity(ambient.rank)};
  return RationalPolytope(std::move(ambient), std::move(inequalities), std::move(space));
}

Vec RationalPolytope::to_ambient(const Vec& local) const {
  Vec x = space_.base_point;
  for (std::size_t i = 0; i < space_.basis.size(); ++i)
    if (local[i] != 0)
      for (std::size_t k = 0; k < x.size(); ++k) x[k] += local[i] * space_.basis[i][k];
  return x;
}

Mat RationalPolytope::vertices() const {
  Mat out;
  for (const auto& v : local_vertices_) out.push_back(to_ambient(v));
  std::sort(out.begin(), out.end());
  return out;
}

bool RationalPolytope::contains(const Vec& x) const {
  if (x.size() != ambient_.rank) return false;
  auto local = linalg::coordinates_in(space_.basis, x - space_.base_point);
  if (!local) return false;
  for (std::size_t k = 0; k < local_normals_.size(); ++k)
    if (dot(local_normals_[k], *local) < local_offsets_[k]) return false;
  return true;
}

RationalPolytope RationalPolytope::dilate(const Integer& k) const {
  if (k < 1) throw ValidationError("dilation factor must be a positive integer");
  std::vector<HalfSpace> ineqs;
  for (const auto& h : inequalities_) ineqs.push_back(HalfSpace{h.normal, Rational(k) * h.offset});
  AffineLattice space{Rational(k) * space_.base_point, space_.basis};
  return RationalPolytope(ambient_, std::move(ineqs), std::move(space));
}

RationalPolytope slice(const RationalCone& cone, const LinearMap& map, const Vec& value) {
  if (!(cone.lattice() == map.domain())) throw ValidationError("map domain differs from cone lattice");
  if (value.size() != map.codomain().rank) throw ValidationError("slice value has wrong length");
  if (!map.is_integral()) throw ValidationError("slice map must be integral");
  if (!map.is_surjective()) throw ValidationError("slice map must be surjective onto its lattice");
  const std::size_t n = cone.lattice().rank;
  Vec base;
  if (auto z = linalg::integer_solution(map.matrix(), value, n)) {
    base = *z;
  } else {
    base = *linalg::solve(map.matrix(), value, n);
  }
  Mat kernel = linalg::integer_kernel(map.matrix(), n);
  std::vector<HalfSpace> ineqs;
  for (const auto& f : cone.facets()) ineqs.push_back(HalfSpace{f, 0});
  for (const auto& e : cone.equations()) {
    ineqs.push_back(HalfSpace{e, 0});
    ineqs.push_back(HalfSpace{negate(e), 0});
  }
  try {
    return RationalPolytope(cone.lattice(), std::move(ineqs), AffineLattice{base, kernel});
  } catch (const ValidationError&) {
    throw ValidationError("unbounded fiber: the slice of the cone is not a polytope");
  }
}

namespace {

// a.y >= b over integers, with integral a.
struct IntConstraint {
  std::vector<long long> a;
  long long b;
  std::size_t last = 0;  // last index with nonzero coefficient
};

long long floor_div(long long p, long long q) {
  long long d = p / q;
  if ((p % q != 0) && ((p < 0) != (q < 0))) --d;
  return d;
}
long long ceil_div(long long p, long long q) { return -floor_div(-p, q); }

long long to_ll(const Integer& z) {
  if (!z.fits_slong_p()) throw ValidationError("lattice point enumeration: coefficient too large");
  return z.get_si();
}

template <class Visit>
void enumerate_local(const RationalPolytope& p, Visit&& visit) {
  if (p.is_empty()) return;
  const std::size_t d = p.space().basis.size();
  if (d == 0) {
    visit(std::vector<long long>{});
    return;
  }
  std::vector<long long> lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    Rational mn = p.local_vertices()[0][i], mx = mn;
    for (const auto& v : p.local_vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    Integer f, c;
    mpz_fdiv_q(f.get_mpz_t(), mn.get_num_mpz_t(), mn.get_den_mpz_t());
    mpz_cdiv_q(c.get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
    // The vertex box bounds the polytope; ceil/floor shrink to lattice range.
    mpz_cdiv_q(f.get_mpz_t(), mn.get_num_mpz_t(), mn.get_den_mpz_t());
    mpz_fdiv_q(c.get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
    lo[i] = to_ll(f);
    hi[i] = to_ll(c);
    if (lo[i] > hi[i]) return;
  }
  std::vector<std::vector<IntConstraint>> by_last(d);
  for (std::size_t k = 0; k < p.local_normals().size(); ++k) {
    Vec row = p.local_normals()[k];
    if (is_zero(row)) {
      if (p.local_offsets()[k] > 0) return;
      continue;
    }
    Integer l = denominator_lcm(row);
    IntConstraint c;
    for (const auto& x : row) c.a.push_back(to_ll(Rational(x * l).get_num()));
    Rational off = p.local_offsets()[k] * l;
    Integer ob;
    mpz_cdiv_q(ob.get_mpz_t(), off.get_num_mpz_t(), off.get_den_mpz_t());
    c.b = to_ll(ob);
    for (std::size_t i = 0; i < d; ++i)
      if (c.a[i] != 0) c.last = i;
    by_last[c.last].push_back(std::move(c));
  }
  std::vector<long long> y(d, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    long long a = lo[j], b = hi[j];
    for (const auto& c : by_last[j]) {
      long long rest = c.b;
      for (std::size_t i = 0; i < j; ++i) rest -= c.a[i] * y[i];
      if (c.a[j] > 0)
        a = std::max(a, ceil_div(rest, c.a[j]));
      else
        b = std::min(b, floor_div(rest, c.a[j]));
    }
    for (long long v = a; v <= b; ++v) {
      y[j] = v;
      if (j + 1 == d)
        visit(y);
      else
        rec(j + 1);
    }
  };
  rec(0);
}

}  // namespace

std::vector<LatticeVector> lattice_points(const RationalPolytope& p) {
  std::vector<LatticeVector> out;
  enumerate_local(p, [&](const std::vector<long long>& y) {
    out.push_back(LatticeVector{p.ambient_lattice().name, p.to_ambient(to_vec(y))});
  });
  std::sort(out.begin(), out.end(),
            [](const LatticeVector& a, const LatticeVector& b) { return a.coords < b.coords; });
  return out;
}

std::size_t count_lattice_points(const RationalPolytope& p) {
  std::size_t n = 0;
  enumerate_local(p, [&](const std::vector<long long>&) { ++n; });
  return n;
}

HullCoordinates hull_coordinates(const RationalPolytope& p) {
  HullCoordinates h;
  if (p.is_empty()) return h;
  const std::size_t d = p.space().basis.size();
  const Mat& verts = p.local_vertices();
  h.origin = verts.front();
  Mat diffs;
  for (const auto& v : verts) diffs.push_back(v - h.origin);
  h.basis = linalg::saturated_lattice(diffs, d);
  for (const auto& v : diffs) h.vertices.push_back(*linalg::coordinates_in(h.basis, v));
  return h;
}

namespace {

std::size_t affine_rank(const Mat& pts, const std::vector<std::size_t>& idx, std::size_t dim) {
  Mat diffs;
  for (std::size_t k = 1; k < idx.size(); ++k) diffs.push_back(pts[idx[k]] - pts[idx[0]]);
  return linalg::rank(diffs, dim);
}

// Pulling triangulation of the face with vertex set `face` (affine dim k).
void pull(const Mat& pts, const std::vector<std::vector<std::size_t>>& facet_sets,
          const std::vector<std::size_t>& face, std::size_t k, std::vector<std::size_t>& prefix,
          std::vector<std::vector<std::size_t>>& out) {
  if (k == 0) {
    prefix.push_back(face.front());
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  const std::size_t apex = face.front();
  std::set<std::vector<std::size_t>> seen;
  for (const auto& fs : facet_sets) {
    std::vector<std::size_t> sub;
    std::set_intersection(face.begin(), face.end(), fs.begin(), fs.end(), std::back_inserter(sub));
    if (sub.empty() || std::binary_search(sub.begin(), sub.end(), apex)) continue;
    if (!seen.insert(sub).second) continue;
    if (affine_rank(pts, sub, pts[0].size()) != k - 1) continue;
    prefix.push_back(apex);
    pull(pts, facet_sets, sub, k - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

Rational volume(const RationalPolytope& p) {
  if (p.is_empty()) return 0;
  if (p.dim() == 0) return 1;
  HullCoordinates h = hull_coordinates(p);
  const std::size_t r = h.basis.size();
  Mat hom;
  for (const auto& w : h.vertices) {
    Vec row = w;
    row.push_back(1);
    hom.push_back(std::move(row));
  }
  RationalCone c = cone_from_generators(Lattice{"hull", r + 1}, hom);
  std::vector<std::vector<std::size_t>> facet_sets;
  for (const auto& f : c.facets()) {
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < hom.size(); ++i)
      if (dot(f, hom[i]) == 0) tight.push_back(i);
    facet_sets.push_back(std::move(tight));
  }
  std::vector<std::size_t> all(h.vertices.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<std::vector<std::size_t>> simplices;
  std::vector<std::size_t> prefix;
  pull(h.vertices, facet_sets, all, r, prefix, simplices);
  Rational total = 0;
  Integer fact = 1;
  for (std::size_t i = 2; i <= r; ++i) fact *= static_cast<unsigned long>(i);
  for (const auto& s : simplices) {
    Mat m;
    for (std::size_t k = 1; k < s.size(); ++k) m.push_back(h.vertices[s[k]] - h.vertices[s[0]]);
    total += abs(linalg::determinant(m));
  }
  return total / Rational(fact);
}

}  // namespace nok
