#include "nok/strings.hpp"

#include "nok/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace nok {

Lattice string_lattice(std::size_t m) { return Lattice{"Z^" + std::to_string(m), m}; }
Lattice value_lattice(std::size_t m, std::size_t rank) {
  return Lattice{"Z^" + std::to_string(m) + "xLambda", m + rank};
}
Lattice weight_lattice(std::size_t rank) { return Lattice{"Lambda", rank}; }

namespace {

Mat rows(std::vector<std::vector<long long>> rs) {
  Mat out;
  for (auto& r : rs) out.push_back(to_vec(r));
  return out;
}

// Rank-2 cones keyed by type and first letter.
const std::map<std::pair<char, int>, std::vector<std::vector<long long>>>& rank2_tables() {
  static const std::map<std::pair<char, int>, std::vector<std::vector<long long>>> tables{
      {{'B', 1}, {{1, 0, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, -1}, {0, 0, 0, 1}}},
      {{'B', 2}, {{1, 0, 0, 0}, {0, 2, -1, 0}, {0, 0, 1, -2}, {0, 0, 0, 1}}},
      {{'C', 1}, {{1, 0, 0, 0}, {0, 2, -1, 0}, {0, 0, 1, -2}, {0, 0, 0, 1}}},
      {{'C', 2}, {{1, 0, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, -1}, {0, 0, 0, 1}}},
      {{'G', 1},
       {{1, 0, 0, 0, 0, 0},
        {0, 3, -1, 0, 0, 0},
        {0, 0, 2, -3, 0, 0},
        {0, 0, 0, 3, -2, 0},
        {0, 0, 0, 0, 1, -3},
        {0, 0, 0, 0, 0, 1}}},
      {{'G', 2},
       {{1, 0, 0, 0, 0, 0},
        {0, 1, -1, 0, 0, 0},
        {0, 0, 2, -1, 0, 0},
        {0, 0, 0, 1, -2, 0},
        {0, 0, 0, 0, 1, -1},
        {0, 0, 0, 0, 0, 1}}},
  };
  return tables;
}

// Type A: for 1, 2 1, 3 2 1, ... (or its image under the diagram
// automorphism) each block k, ..., 1 carries a chain a_first >= ... >= a_last >= 0.
std::optional<Mat> type_a_inequalities(std::size_t n, const std::vector<int>& word) {
  std::vector<int> canonical;
  for (int k = 1; k <= static_cast<int>(n); ++k)
    for (int j = k; j >= 1; --j) canonical.push_back(j);
  std::vector<int> mirrored;
  for (int l : canonical) mirrored.push_back(static_cast<int>(n) + 1 - l);
  if (word != canonical && word != mirrored) return std::nullopt;
  const std::size_t m = word.size();
  Mat out;
  std::size_t pos = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      Vec row = zeros(m);
      row[pos + j] = 1;
      if (j + 1 < k) row[pos + j + 1] = -1;
      out.push_back(std::move(row));
    }
    pos += k;
  }
  return out;
}

}  // namespace

Mat string_cone_inequalities(const RootSystem& rs, const std::vector<int>& word) {
  require_word(rs, word);
  if (rs.family() == 'A') {
    if (auto t = type_a_inequalities(rs.rank(), word)) return *t;
    throw ValidationError("no string cone table for this reduced word of " + rs.label() +
                          "; only the standard word 1,2,1,3,2,1,... and its mirror are supported");
  }
  auto it = rank2_tables().find({rs.family(), word.front()});
  if (it == rank2_tables().end()) throw ValidationError("no string cone table for " + rs.label());
  return rows(it->second);
}

Mat lambda_inequalities(const RootSystem& rs, const std::vector<int>& word) {
  require_word(rs, word);
  const std::size_t m = word.size(), r = rs.rank();
  Mat out;
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t ik = static_cast<std::size_t>(word[k] - 1);
    Vec row = zeros(m + r);
    row[m + ik] = 1;
    row[k] = -1;
    for (std::size_t j = k + 1; j < m; ++j)
      row[j] -= rs.cartan()[ik][static_cast<std::size_t>(word[j] - 1)];
    out.push_back(std::move(row));
  }
  return out;
}

RationalCone string_cone(const RootSystem& rs, const std::vector<int>& word) {
  return cone_from_inequalities(string_lattice(word.size()), string_cone_inequalities(rs, word));
}

StringCone extended_string_cone(const RootSystem& rs, const std::vector<int>& word) {
  const std::size_t m = word.size(), r = rs.rank();
  StringCone sc;
  sc.word = word;
  Mat base = string_cone_inequalities(rs, word);
  sc.cone = cone_from_inequalities(string_lattice(m), base);
  Mat ext;
  for (const auto& row : base) {
    Vec padded = row;
    padded.resize(m + r, Rational(0));
    ext.push_back(std::move(padded));
  }
  for (auto& row : lambda_inequalities(rs, word)) ext.push_back(std::move(row));
  sc.extended = cone_from_inequalities(value_lattice(m, r), ext);
  return sc;
}

GradingMaps grading_maps(const RootSystem& rs, const std::vector<int>& word) {
  require_word(rs, word);
  const std::size_t m = word.size(), r = rs.rank();
  Mat ap(r, zeros(m + r)), c(r, zeros(m + r));
  for (std::size_t j = 0; j < m; ++j) {
    Vec alpha = rs.simple_root(static_cast<std::size_t>(word[j] - 1));
    for (std::size_t i = 0; i < r; ++i) ap[i][j] = alpha[i];
  }
  for (std::size_t i = 0; i < r; ++i) c[i][m + i] = 1;
  Mat a = ap;
  for (std::size_t i = 0; i < r; ++i) a[i][m + i] -= 1;
  Lattice l = value_lattice(m, r), lam = weight_lattice(r);
  return GradingMaps{LinearMap(ap, l, lam), LinearMap(a, l, lam), LinearMap(c, l, lam)};
}

RationalPolytope string_polytope(const RootSystem& rs, const std::vector<int>& word,
                                 const Vec& lambda) {
  if (lambda.size() != rs.rank()) throw ValidationError("weight length does not match rank");
  if (!is_dominant(lambda)) throw ValidationError("string polytope needs a dominant weight");
  StringCone sc = extended_string_cone(rs, word);
  return slice(sc.extended, grading_maps(rs, word).c, lambda);
}

RationalCone subcone_for_face(const RationalCone& cone, const LinearMap& c,
                              const RationalCone& face) {
  RationalCone img = image(cone, c);
  if (!(face.lattice() == c.codomain())) throw ValidationError("face lives in the wrong lattice");
  if (!is_strongly_convex(img) || !faces(img).find(face))
    throw ValidationError("not a face of the image cone");
  return restrict_to_preimage(cone, c, face);
}

// --- valuation data ----------------------------------------------------------

int OrderSpec::compare(const Vec& x, const Vec& y) const {
  Vec d = x - y;
  for (const auto& row : rows) {
    Rational s = dot(row, d);
    if (s != 0) return s > 0 ? 1 : -1;
  }
  for (const auto& v : d)
    if (v != 0) return v > 0 ? 1 : -1;
  return 0;
}

OrderSpec lex_refinement(std::size_t m, std::size_t rank, const RootSystem* rs) {
  OrderSpec o;
  Vec height = zeros(m + rank);
  for (std::size_t i = 0; i < rank; ++i) height[m + i] = rs ? rs->rho_coweight()[i] : Rational(1);
  o.rows.push_back(height);
  for (std::size_t i = 0; i < rank; ++i) {
    Vec e = zeros(m + rank);
    e[m + i] = 1;
    o.rows.push_back(std::move(e));
  }
  for (std::size_t j = 0; j < m; ++j) {
    Vec e = zeros(m + rank);
    e[j] = 1;
    o.rows.push_back(std::move(e));
  }
  return o;
}

Mat ValuationData::values() const {
  Mat out;
  for (const auto& g : generators) out.push_back(g.value);
  return out;
}

RationalCone ValuationData::value_cone() const { return cone_from_generators(lattice(), values()); }

ValuationData make_valuation_data(std::size_t m, std::size_t rank,
                                  std::vector<ValuationGenerator> generators,
                                  const std::string& root_type, std::optional<Mat> a_matrix) {
  ValuationData vd;
  vd.m = m;
  vd.rank = rank;
  vd.root_type = root_type;
  for (const auto& g : generators) {
    if (g.value.size() != m + rank)
      throw ValidationError("generator '" + g.name + "' has a value of the wrong length");
    if (g.c_weight.size() != rank || g.a_weight.size() != rank)
      throw ValidationError("generator '" + g.name + "' has a weight of the wrong length");
    if (!is_integral(g.value)) throw ValidationError("generator values must be integral");
  }
  vd.generators = std::move(generators);
  Mat c(rank, zeros(m + rank));
  for (std::size_t i = 0; i < rank; ++i) c[i][m + i] = 1;
  vd.c_map = LinearMap(c, vd.lattice(), vd.weights());
  if (a_matrix) vd.a_map = LinearMap(*a_matrix, vd.lattice(), vd.weights());
  if (root_type.empty()) {
    vd.order = lex_refinement(m, rank);
  } else {
    RootSystem rs = build_root_system(root_type);
    if (rs.rank() != rank) throw ValidationError("root type rank does not match valuation data");
    vd.order = lex_refinement(m, rank, &rs);
  }
  return vd;
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::inconclusive:
      return "inconclusive";
  }
  return "?";
}

bool ValuationReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const CheckEntry& e) { return e.status == CheckStatus::pass; });
}

const CheckEntry& ValuationReport::at(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw ValidationError("no check named '" + name + "'");
}

namespace {

CheckStatus verdict(bool ok) { return ok ? CheckStatus::pass : CheckStatus::fail; }

// Rows of the order that only see Lambda, restricted to Lambda.
Mat lambda_rows(const ValuationData& vd) {
  Mat out;
  for (const auto& row : vd.order.rows) {
    bool pulled_back = true;
    for (std::size_t j = 0; j < vd.m; ++j)
      if (row[j] != 0) pulled_back = false;
    if (!pulled_back) continue;
    out.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(vd.m), row.end());
  }
  return out;
}

int compare_lambda(const Mat& rows, const Vec& x, const Vec& y) {
  Vec d = x - y;
  for (const auto& row : rows) {
    Rational s = dot(row, d);
    if (s != 0) return s > 0 ? 1 : -1;
  }
  return 0;
}

CheckEntry saturation_entry(const ValuationData& vd, const RationalCone& cone, int degree) {
  const std::string name = "saturation";
  if (vd.order.rows.empty())
    return {name, CheckStatus::inconclusive, "order has no grading row"};
  const Vec& h = vd.order.rows.front();
  const Mat vals = vd.values();
  for (const auto& v : vals)
    if (dot(h, v) <= 0)
      return {name, CheckStatus::inconclusive, "a generator has non-positive degree"};
  std::vector<HalfSpace> ineqs;
  for (const auto& f : cone.facets()) ineqs.push_back(HalfSpace{f, 0});
  for (const auto& e : cone.equations()) {
    ineqs.push_back(HalfSpace{e, 0});
    ineqs.push_back(HalfSpace{Rational(-1) * e, 0});
  }
  ineqs.push_back(HalfSpace{Rational(-1) * h, -degree});
  RationalPolytope box;
  try {
    box = RationalPolytope::full(vd.lattice(), ineqs);
  } catch (const ValidationError&) {
    return {name, CheckStatus::inconclusive, "degree slices of cone(S) are unbounded"};
  }
  std::map<Vec, bool> memo;
  std::function<bool(const Vec&)> in_semigroup = [&](const Vec& p) -> bool {
    if (is_zero(p)) return true;
    if (auto it = memo.find(p); it != memo.end()) return it->second;
    bool ok = false;
    for (const auto& v : vals) {
      Vec q = p - v;
      if (cone.contains(q) && in_semigroup(q)) {
        ok = true;
        break;
      }
    }
    memo[p] = ok;
    return ok;
  };
  std::size_t checked = 0;
  for (const auto& pt : lattice_points(box)) {
    ++checked;
    if (!in_semigroup(pt.coords)) {
      std::string s;
      for (const auto& x : pt.coords) s += (s.empty() ? "" : ",") + to_string(x);
      return {name, CheckStatus::fail, "lattice point (" + s + ") of cone(S) is not generated"};
    }
  }
  return {name, CheckStatus::pass,
          std::to_string(checked) + " lattice points up to degree " + std::to_string(degree) +
              " are generated; not decided beyond that degree"};
}

}  // namespace

ValuationReport good_valuation_check(const ValuationData& vd, int saturation_degree) {
  ValuationReport rep;
  const Mat vals = vd.values();

  {
    bool ok = true;
    std::string detail = "c(v(f)) = c_weight(f) for every generator";
    for (const auto& g : vd.generators)
      if (vd.c_map(g.value) != g.c_weight) {
        ok = false;
        detail = "c(v(" + g.name + ")) differs from its c_weight";
        break;
      }
    rep.entries.push_back({"v4_c_compatibility", verdict(ok), detail});
  }
  if (vd.a_map) {
    bool ok = true;
    std::string detail = "a(v(f)) = a_weight(f) for every generator";
    for (const auto& g : vd.generators)
      if ((*vd.a_map)(g.value) != g.a_weight) {
        ok = false;
        detail = "a(v(" + g.name + ")) differs from its a_weight";
        break;
      }
    rep.entries.push_back({"v4_a_compatibility", verdict(ok), detail});
  }

  RationalCone cone = vd.value_cone();
  rep.entries.push_back({"cone_strongly_convex", verdict(is_strongly_convex(cone)),
                         std::to_string(cone.rays().size()) + " rays, lineality dimension " +
                             std::to_string(cone.lineality().size())});
  RationalCone img = image(cone, vd.c_map);
  rep.entries.push_back({"c_image_strongly_convex", verdict(is_strongly_convex(img)),
                         "lineality dimension " + std::to_string(img.lineality().size())});

  RationalCone zero = cone_from_generators(vd.weights(), Mat{});
  RationalCone kernel_part = restrict_to_preimage(cone, vd.c_map, zero);
  bool finite = kernel_part.rays().empty() && kernel_part.lineality().empty();
  rep.entries.push_back({"v3_bounded_fibers", verdict(finite),
                         finite ? "cone(S) meets ker c only at 0" : "cone(S) contains a ray in ker c"});

  Mat lrows = lambda_rows(vd);
  {
    bool ok = true;
    std::string detail = "every c-weight is >= 0, so 0 is the minimum of c(S)";
    for (const auto& g : vd.generators)
      if (compare_lambda(lrows, vd.c_map(g.value), zeros(vd.rank)) < 0) {
        ok = false;
        detail = "c(v(" + g.name + ")) < 0: c(S) has no minimal element";
        break;
      }
    rep.entries.push_back({"v2_minimal_element", verdict(ok), detail});
  }
  {
    bool ok = true;
    std::string detail = "order on L descends along c on generator pairs";
    for (std::size_t i = 0; i < vals.size() && ok; ++i)
      for (std::size_t j = 0; j < vals.size() && ok; ++j) {
        int full = vd.order.compare(vals[i], vals[j]);
        int down = compare_lambda(lrows, vd.c_map(vals[i]), vd.c_map(vals[j]));
        if (full > 0 && down < 0) {
          ok = false;
          detail = vd.generators[i].name + " > " + vd.generators[j].name +
                   " but their c-images are ordered the other way";
        }
      }
    rep.entries.push_back({"v1_order_descent", verdict(ok), detail});
  }
  {
    bool ok = true;
    std::string detail = "no nontrivial nonnegative combination of c-weights vanishes";
    Mat cw;
    for (const auto& g : vd.generators) {
      Vec w = vd.c_map(g.value);
      if (is_zero(w)) {
        ok = false;
        detail = "generator " + g.name + " has c-weight 0";
      }
      cw.push_back(w);
    }
    if (ok && !is_strongly_convex(cone_from_generators(vd.weights(), cw))) {
      ok = false;
      detail = "the c-weights positively span a line";
    }
    rep.entries.push_back({"c_properness", verdict(ok), detail});
  }
  rep.entries.push_back(saturation_entry(vd, cone, saturation_degree));
  return rep;
}

}  // namespace nok
