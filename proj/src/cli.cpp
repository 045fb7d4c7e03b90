#include "nok/cli.hpp"

#include "nok/acceptance.hpp"
#include "nok/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace nok {

using io::json;

void RunConfig::apply_file(const std::string& path) {
  json j = io::read_file(path);
  io::require_keys(j, {"rtol", "atol", "newton_tol", "blowup", "epsilon", "seed", "jobs"}, "config");
  auto num = [&](const char* key, double& dst) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number()) throw ValidationError(std::string("config key ") + key + " must be a number");
    dst = j.at(key).get<double>();
  };
  num("rtol", flow.rtol);
  num("atol", flow.atol);
  num("newton_tol", flow.newton_tol);
  num("blowup", flow.blowup);
  num("epsilon", flow.epsilon);
  if (j.contains("seed")) seed = j.at("seed").get<unsigned>();
  if (j.contains("jobs")) jobs = j.at("jobs").get<unsigned>();
  validate();
}

void RunConfig::validate() const {
  for (double x : {flow.rtol, flow.atol, flow.newton_tol, flow.blowup, flow.epsilon})
    if (!(x > 0)) throw ValidationError("tolerances must be positive");
  if (jobs == 0) throw ValidationError("jobs must be at least 1");
}

namespace {

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (text.empty() || text.back() == ',') throw ValidationError("malformed list '" + text + "'");
  return out;
}

std::vector<int> parse_word(const std::string& text) {
  std::vector<int> out;
  for (const auto& s : split(text)) {
    Rational q = parse_rational(s);
    if (q.get_den() != 1 || !q.get_num().fits_sint_p()) throw ValidationError("word letters must be integers");
    out.push_back(static_cast<int>(q.get_num().get_si()));
  }
  return out;
}

Vec parse_weight(const std::string& text) {
  Vec out;
  for (const auto& s : split(text)) out.push_back(parse_rational(s));
  return out;
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << io::dump(j) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << io::dump(j) << "\n";
}

FamilyIdeal load_family(const std::string& path, const std::string& example) {
  if (!example.empty()) return builtin_example(example).family;
  if (path.empty()) throw ValidationError("give --family FILE or --example NAME");
  json j = io::read_file(path);
  // Accept the output of `degen build` as well as a bare family.
  if (j.is_object() && j.contains("family") && !j.contains("valuation")) return io::decode_family(j.at("family"));
  return io::decode_family(j);
}

FlowState parse_start(const std::string& text, std::size_t n, double t_start) {
  CVec v = io::decode_complex_vector(io::parse(text));
  FlowState s;
  if (static_cast<std::size_t>(v.size()) == n + 1) {
    s.z = v.head(static_cast<Eigen::Index>(n));
    s.t = v[static_cast<Eigen::Index>(n)];
  } else if (static_cast<std::size_t>(v.size()) == n) {
    s.z = v;
    s.t = t_start;
  } else {
    throw ValidationError("start must have " + std::to_string(n) + " or " + std::to_string(n + 1) + " entries");
  }
  return s;
}

json summary_json(const FamilyIdeal& fam) {
  json out = json::array();
  for (const auto& e : initial_ideal_summary(fam))
    out.push_back({{"relation", e.relation}, {"terms", e.terms}, {"shape", e.shape}, {"value", io::encode(e.value)}});
  return out;
}

json face_report(const FamilyIdeal& fam) {
  json faces_json = json::array();
  FaceLattice fl = c_image_faces(fam.valuation);
  for (const auto& face : fl.faces()) {
    auto split = subfamily_ideal(fam, face.cone);
    bool vanish = true;
    for (std::size_t j = 0; j < fam.relations.size(); ++j) {
      if (std::find(split.generators.begin(), split.generators.end(), j) != split.generators.end()) continue;
      for (auto t0 : {Rational(0), Rational(1)})
        vanish = vanish && restrict_to_zero(fiber(fam, t0)[j], split.vanishing).empty();
    }
    faces_json.push_back({{"codim", face.codim},
                          {"rays", io::encode(face.cone.rays())},
                          {"generators", split.generators},
                          {"vanishing", split.vanishing},
                          {"dropped_generators_vanish", vanish}});
  }
  return faces_json;
}

int exit_code(const Error& e) {
  if (dynamic_cast<const NumericalError*>(&e)) return 3;
  return 2;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  json j = {{"error", {{"kind", kind}, {"message", message}}}};
  err << j.dump() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Newton-Okounkov and toric degeneration workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with tolerances, seed and jobs");
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);

  std::string type, word_text, lambda_text, family_path, example, start_text, out_path;
  bool extended = false, full = false, no_frame = false, no_project = false;
  double t_end = 0, t_start = 1;
  std::string delta_text = "0";
  long long max_box = 20;
  unsigned seed = 0;

  auto* string_cmd = app.add_subcommand("string", "string cones and polytopes");
  string_cmd->require_subcommand(1);
  auto* s_cone = string_cmd->add_subcommand("cone", "string cone of a reduced word");
  auto* s_poly = string_cmd->add_subcommand("polytope", "string polytope for a dominant weight");
  for (auto* c : {s_cone, s_poly}) {
    c->add_option("--type", type, "root system, e.g. A2")->required();
    c->add_option("--word", word_text, "reduced word, e.g. 1,2,1")->required();
    c->add_option("--out", out_path);
  }
  s_cone->add_flag("--extended", extended, "also print the extended cone");
  s_poly->add_option("--lambda", lambda_text, "dominant weight, e.g. 1,1")->required();
  s_poly->add_flag("--full", full, "include vertices, inequalities and points");

  auto* degen_cmd = app.add_subcommand("degen", "Rees-algebra families");
  degen_cmd->require_subcommand(1);
  auto* d_build = degen_cmd->add_subcommand("build", "build a builtin family");
  d_build->add_option("--example", example, "sl2, sl3-string-121 or hyperbola")->required();
  d_build->add_option("--out", out_path);
  auto* d_check = degen_cmd->add_subcommand("check", "integrity and face report for a family file");
  d_check->add_option("family", family_path)->required();
  d_check->add_option("--out", out_path);

  auto* flow_cmd = app.add_subcommand("ghflow", "gradient-Hamiltonian flow");
  flow_cmd->require_subcommand(1);
  auto* f_run = flow_cmd->add_subcommand("run", "integrate to t-end");
  auto* f_limit = flow_cmd->add_subcommand("limit", "extrapolate to the zero fiber");
  for (auto* c : {f_run, f_limit}) {
    c->add_option("--family", family_path, "family JSON file");
    c->add_option("--example", example, "builtin family instead of a file");
    c->add_option("--start", start_text, "JSON array: z (and optionally t), entries number or [re, im]")->required();
    c->add_option("--t-start", t_start, "start time when --start omits t");
    c->add_option("--report,--out", out_path);
    c->add_flag("--no-project", no_project, "skip the Newton projection");
  }
  f_run->add_option("--t-end", t_end)->required();
  f_run->add_flag("--no-frame", no_frame, "skip frame transport");

  auto* width_cmd = app.add_subcommand("width", "Gromov-width bounds");
  width_cmd->require_subcommand(1);
  auto* w_report = width_cmd->add_subcommand("report", "width report for a coadjoint orbit");
  w_report->add_option("--type", type)->required();
  w_report->add_option("--word", word_text)->required();
  w_report->add_option("--lambda", lambda_text)->required();
  w_report->add_option("--delta", delta_text, "search for size ell - delta");
  w_report->add_option("--max-box", max_box, "bounding-box cap");
  w_report->add_option("--out", out_path);

  auto* check_cmd = app.add_subcommand("check", "acceptance suite");
  check_cmd->require_subcommand(1);
  auto* c_all = check_cmd->add_subcommand("all", "run every acceptance criterion");
  c_all->add_option("--seed", seed, "seed for randomized checks");
  c_all->add_option("--out", out_path);

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      report_error(err, "validation", e.what());
      return 2;
    }

    cfg.flow = FlowOptions::from_environment();
    const unsigned cli_jobs = cfg.jobs;
    if (!config_path.empty()) cfg.apply_file(config_path);
    if (app.count("--jobs")) cfg.jobs = cli_jobs;
    if (seed) cfg.seed = seed;
    cfg.validate();
    cfg.output = out_path;

    if (s_cone->parsed()) {
      cfg.subcommand = "string cone";
      auto rs = build_root_system(type);
      auto word = parse_word(word_text);
      auto sc = extended_string_cone(rs, word);
      json j = {{"type", rs.label()}, {"word", word}, {"cone", io::encode(sc.cone)},
                {"rays", sc.cone.rays().size()}};
      if (extended) j["extended"] = io::encode(sc.extended);
      emit(j, cfg.output, out);
      return 0;
    }
    if (s_poly->parsed()) {
      cfg.subcommand = "string polytope";
      auto rs = build_root_system(type);
      auto word = parse_word(word_text);
      Vec lam = parse_weight(lambda_text);
      auto p = string_polytope(rs, word, lam);
      json j = {{"lattice_points", count_lattice_points(p)},
                {"volume", io::encode(volume(p))},
                {"weyl_dim", io::encode(weyl_dim(rs, lam))}};
      if (full) j["polytope"] = io::encode(p, true);
      emit(j, cfg.output, out);
      return 0;
    }
    if (d_build->parsed()) {
      cfg.subcommand = "degen build";
      auto ex = builtin_example(example);
      json integrity = {{"initial_summary", summary_json(ex.family)},
                        {"valuation_check", io::encode(good_valuation_check(ex.family.valuation))}};
      emit({{"name", ex.name}, {"commentary", ex.commentary}, {"family", io::encode(ex.family)},
            {"integrity", integrity}},
           cfg.output, out);
      return 0;
    }
    if (d_check->parsed()) {
      cfg.subcommand = "degen check";
      auto fam = load_family(family_path, "");
      json j = {{"family", io::encode(fam)}, {"initial_summary", summary_json(fam)},
                {"valuation_check", io::encode(good_valuation_check(fam.valuation))}};
      try {
        j["faces"] = face_report(fam);
      } catch (const ValidationError& e) {
        j["faces"] = nullptr;
        j["faces_note"] = e.what();
      }
      emit(j, cfg.output, out);
      return 0;
    }
    if (f_run->parsed() || f_limit->parsed()) {
      auto fam_ideal = load_family(family_path, example);
      auto fam = numeric_family(fam_ideal);
      auto start = parse_start(start_text, fam.n, t_start);
      FlowOptions opts = cfg.flow;
      opts.project = !no_project;
      if (f_run->parsed()) {
        cfg.subcommand = "ghflow run";
        if (!no_frame) start.frame = fiber_frame(fam, start);
        auto traj = integrate(fam, start, t_end, opts);
        auto inv = check_invariants(traj, fam);
        json j = io::encode(traj, inv);
        j["start"] = io::encode(start.z);
        j["t_start"] = start.t.real();
        j["t_end"] = t_end;
        emit(j, cfg.output, out);
      } else {
        cfg.subcommand = "ghflow limit";
        auto lim = limit_point(fam, start, opts);
        json j = io::encode(lim);
        j["start"] = io::encode(start.z);
        j["conserved_start"] = conserved(fam, start.z);
        j["conserved_limit"] = conserved(fam, lim.z);
        emit(j, cfg.output, out);
      }
      return 0;
    }
    if (w_report->parsed()) {
      cfg.subcommand = "width report";
      auto rs = build_root_system(type);
      auto word = parse_word(word_text);
      Vec lam = parse_weight(lambda_text);
      EmbeddingOptions eo;
      eo.delta = parse_rational(delta_text);
      eo.max_box = max_box;
      eo.jobs = cfg.jobs;
      auto rep = width_report(rs, word, lam, eo);
      emit(io::encode(rep), cfg.output, out);
      return rep.embedding.status == EmbeddingStatus::inconclusive ? 4 : 0;
    }
    if (c_all->parsed()) {
      cfg.subcommand = "check all";
      AcceptanceOptions ao;
      ao.seed = cfg.seed;
      ao.jobs = cfg.jobs;
      json rows = json::array();
      bool all = true;
      for (const auto& r : run_acceptance(ao)) {
        rows.push_back({{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass()},
                        {"seconds", r.seconds},
                        {"limit_seconds", r.limit_seconds},
                        {"detail", r.detail}});
        all = all && r.pass();
        err << format(r) << "\n";
      }
      emit({{"criteria", rows}, {"all_pass", all}}, cfg.output, out);
      return all ? 0 : 1;
    }
    report_error(err, "validation", "no subcommand");
    return 2;
  } catch (const Error& e) {
    report_error(err, e.kind(), e.what());
    return exit_code(e);
  } catch (const json::exception& e) {
    report_error(err, "validation", std::string("bad JSON input: ") + e.what());
    return 2;
  }
}

}  // namespace nok
