#include "nok/json_io.hpp"

#include <fstream>
#include <sstream>

namespace nok::io {

json encode(const Rational& q) { return to_string(q); }

json encode(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<long long>(z.get_si());
  return to_string(z);
}

json encode(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(encode(x));
  return out;
}

json encode(const Mat& m) {
  json out = json::array();
  for (const auto& r : m) out.push_back(encode(r));
  return out;
}

json encode(const cplx& z) { return json::array({z.real(), z.imag()}); }

json encode(const CVec& z) {
  json out = json::array();
  for (Eigen::Index i = 0; i < z.size(); ++i) out.push_back(encode(z[i]));
  return out;
}

Rational decode_rational(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  throw ValidationError("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

Vec decode_vec(const json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of rationals, got " + j.dump());
  Vec out;
  for (const auto& x : j) out.push_back(decode_rational(x));
  return out;
}

Mat decode_mat(const json& j) {
  if (!j.is_array()) throw ValidationError("expected a matrix, got " + j.dump());
  Mat out;
  for (const auto& r : j) out.push_back(decode_vec(r));
  return out;
}

CVec decode_complex_vector(const json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of complex numbers");
  CVec out(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& x : j) {
    if (x.is_number()) {
      out[i++] = x.get<double>();
    } else if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number()) {
      out[i++] = cplx(x[0].get<double>(), x[1].get<double>());
    } else {
      throw ValidationError("complex entries must be numbers or [re, im] pairs, got " + x.dump());
    }
  }
  return out;
}

json encode(const Lattice& l) { return {{"name", l.name}, {"rank", l.rank}}; }

json encode(const RationalCone& c) {
  return {{"lattice", encode(c.lattice())},  {"inequalities", encode(c.inequalities())},
          {"facets", encode(c.facets())},     {"equations", encode(c.equations())},
          {"rays", encode(c.rays())},         {"lineality", encode(c.lineality())},
          {"dim", c.dim()}};
}

json encode(const RationalPolytope& p, bool with_points) {
  json ineqs = json::array();
  for (const auto& h : p.inequalities()) ineqs.push_back({{"normal", encode(h.normal)}, {"offset", encode(h.offset)}});
  json out = {{"lattice", encode(p.ambient_lattice())},
              {"dim", p.dim()},
              {"inequalities", ineqs},
              {"vertices", encode(p.vertices())},
              {"lattice_points", count_lattice_points(p)},
              {"volume", encode(volume(p))}};
  if (with_points) {
    json pts = json::array();
    for (const auto& x : lattice_points(p)) pts.push_back(encode(x.coords));
    out["points"] = pts;
  }
  return out;
}

json encode(const FaceLattice& fl) {
  json out = json::array();
  for (std::size_t a = 0; a < fl.size(); ++a) {
    const auto& f = fl.faces()[a];
    json below = json::array();
    for (std::size_t b = 0; b < fl.size(); ++b)
      if (fl.precedes(b, a)) below.push_back(b);
    out.push_back({{"codim", f.codim}, {"rays", encode(f.cone.rays())}, {"ray_indices", f.ray_indices},
                   {"faces_below", below}});
  }
  return out;
}

json encode(const ValuationData& vd) {
  json gens = json::array();
  for (const auto& g : vd.generators)
    gens.push_back({{"name", g.name},
                    {"value", encode(g.value)},
                    {"a_weight", encode(g.a_weight)},
                    {"c_weight", encode(g.c_weight)}});
  json out = {{"m", vd.m}, {"rank", vd.rank}, {"root_type", vd.root_type}, {"generators", gens},
              {"order", vd.order.name}};
  if (vd.a_map) out["a_matrix"] = encode(vd.a_map->matrix());
  return out;
}

json encode(const ValuationReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"name", e.name}, {"status", to_string(e.status)}, {"detail", e.detail}});
  return {{"entries", entries}, {"all_pass", r.all_pass()}};
}

namespace {

json encode_poly(const Polynomial& p) {
  json out = json::array();
  for (const auto& t : p) out.push_back({{"coeff", encode(t.coeff)}, {"exponents", t.exponents}});
  return out;
}

Polynomial decode_poly(const json& j, std::size_t n) {
  if (!j.is_array()) throw ValidationError("polynomial must be an array of terms");
  Polynomial out;
  for (const auto& t : j) {
    require_keys(t, {"coeff", "exponents"}, "term");
    Term term{decode_rational(t.at("coeff")), t.at("exponents").get<std::vector<long long>>()};
    if (term.exponents.size() != n)
      throw ValidationError("term exponent vector has length " + std::to_string(term.exponents.size()) +
                            ", expected " + std::to_string(n));
    for (auto e : term.exponents)
      if (e < 0) throw ValidationError("negative exponent in a term");
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace

json encode(const FamilyIdeal& f) {
  json rels = json::array();
  for (const auto& r : f.relations)
    rels.push_back({{"leading", encode_poly(r.leading)}, {"lower", encode_poly(r.lower)}, {"s", encode(r.s)}});
  return {{"valuation", encode(f.valuation)},
          {"relations", rels},
          {"e", encode(f.e)},
          {"t_exponents", f.t_exponents},
          {"raw", f.raw}};
}

json encode(const Trajectory& t, const InvariantReport& inv) {
  json elapsed = json::array(), tt = json::array(), res = json::array(), psi = json::array(),
       pi = json::array(), omega = json::array(), zeros = json::array();
  for (const auto& d : t.diagnostics) {
    elapsed.push_back(d.elapsed);
    tt.push_back(d.t);
    res.push_back(d.residual);
    psi.push_back(d.psi_drift);
    pi.push_back(d.pi_error);
    omega.push_back(d.omega_drift);
    zeros.push_back(d.zero_coordinates);
  }
  json states = json::array();
  for (const auto& s : t.states) states.push_back(encode(s.z));
  return {{"diagnostics",
           {{"elapsed", elapsed},
            {"t", tt},
            {"residual", res},
            {"psi_drift", psi},
            {"pi_error", pi},
            {"omega_drift", omega},
            {"zero_coordinates", zeros}}},
          {"states", states},
          {"invariants",
           {{"pi_drift", inv.pi_drift},
            {"psi_drift", inv.psi_drift},
            {"psi_component_drift", inv.psi_component_drift},
            {"omega_drift", inv.omega_drift},
            {"residual", inv.residual}}}};
}

json encode(const LimitResult& r) {
  json samples = json::array();
  for (const auto& s : r.samples) samples.push_back(encode(s));
  return {{"z", encode(r.z)}, {"error", r.error}, {"order", std::isfinite(r.order) ? json(r.order) : json(nullptr)},
          {"residual", r.residual}, {"samples", samples}};
}

json encode(const EmbeddingResult& r) {
  json out = {{"status", to_string(r.status)}, {"notes", r.notes}, {"candidates", r.candidates}};
  if (r.certificate) {
    const auto& c = *r.certificate;
    out["certificate"] = {{"size", encode(c.size)},
                          {"matrix", encode(c.matrix)},
                          {"translation", encode(c.translation)},
                          {"directions", encode(c.directions)},
                          {"vertices", encode(c.vertices)}};
  }
  return out;
}

json encode(const WidthReport& r) {
  return {{"type", r.type},
          {"word", r.word},
          {"lambda", encode(r.lambda)},
          {"ell", encode(r.ell)},
          {"polytope", encode(r.polytope)},
          {"orbit_volume", encode(r.orbit_volume)},
          {"dh_fiber_volume", encode(r.dh_volume)},
          {"volumes_agree", r.orbit_volume == r.dh_volume},
          {"embedding", encode(r.embedding)},
          {"upper_bound_note", r.upper_bound_note},
          {"warnings", r.warnings}};
}

void require_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ValidationError("unknown key '" + key + "' in " + where);
  }
}

ValuationData decode_valuation(const json& j) {
  require_keys(j, {"m", "rank", "root_type", "generators", "a_matrix", "order"}, "valuation");
  const auto m = j.at("m").get<std::size_t>();
  const auto rank = j.at("rank").get<std::size_t>();
  std::vector<ValuationGenerator> gens;
  for (const auto& g : j.at("generators")) {
    require_keys(g, {"name", "value", "a_weight", "c_weight"}, "generator");
    ValuationGenerator vg{g.at("name").get<std::string>(), decode_vec(g.at("value")),
                          g.contains("a_weight") ? decode_vec(g.at("a_weight")) : Vec{},
                          g.contains("c_weight") ? decode_vec(g.at("c_weight")) : Vec{}};
    if (vg.value.size() != m + rank)
      throw ValidationError("generator " + vg.name + " value has the wrong length");
    gens.push_back(std::move(vg));
  }
  std::optional<Mat> a;
  if (j.contains("a_matrix")) a = decode_mat(j.at("a_matrix"));
  std::string root = j.value("root_type", std::string());
  auto vd = make_valuation_data(m, rank, std::move(gens), root, a);
  if (j.contains("order") && j.at("order").get<std::string>() != vd.order.name)
    throw ValidationError("unsupported order '" + j.at("order").get<std::string>() + "'");
  return vd;
}

FamilyIdeal decode_family(const json& j) {
  require_keys(j, {"valuation", "relations", "e", "t_exponents", "raw"}, "family");
  ValuationData vd = decode_valuation(j.at("valuation"));
  const std::size_t n = vd.generators.size();
  std::vector<Relation> rels;
  for (const auto& r : j.value("relations", json::array())) {
    require_keys(r, {"leading", "lower", "s"}, "relation");
    Relation rel{decode_poly(r.at("leading"), n), decode_poly(r.value("lower", json::array()), n),
                 decode_vec(r.at("s"))};
    rels.push_back(std::move(rel));
  }
  const bool raw = j.value("raw", false);
  std::optional<std::vector<std::vector<long long>>> texp;
  if (j.contains("t_exponents")) texp = j.at("t_exponents").get<std::vector<std::vector<long long>>>();
  if (raw) {
    if (!texp) throw ValidationError("a raw family needs explicit t_exponents");
    if (texp->size() != rels.size()) throw ValidationError("t_exponents must have one row per relation");
    for (std::size_t k = 0; k < rels.size(); ++k) {
      if ((*texp)[k].size() != rels[k].lower.size())
        throw ValidationError("t_exponents row " + std::to_string(k) + " does not match the lower terms");
      for (auto m : (*texp)[k])
        if (m < 1) throw ValidationError("t-exponents of lower terms must be at least 1");
    }
    FamilyIdeal fam;
    fam.valuation = vd;
    fam.relations = std::move(rels);
    fam.e = j.contains("e") ? decode_vec(j.at("e")) : zeros(vd.m + vd.rank);
    fam.t_exponents = *texp;
    fam.raw = true;
    return fam;
  }
  Vec e = j.contains("e") ? decode_vec(j.at("e")) : choose_e(vd, rels).matrix().front();
  FamilyIdeal fam = rees_family(vd, rels, e);
  if (texp && *texp != fam.t_exponents)
    throw ValidationError("t_exponents disagree with the functional e");
  return fam;
}

std::string dump(const json& j) { return j.dump(2); }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace nok::io
