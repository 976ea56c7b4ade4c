#include "twogrp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "twogrp/correspondence.hpp"
#include "twogrp/twogroup.hpp"

namespace twogrp::cli {

namespace {

struct Options {
  std::string format = "text";
  std::size_t max_group = 8;
  std::int64_t max_coeffs = 8;
  std::uint64_t seed = 0;
  std::string output;

  std::string group, coeffs, cocycle, file, from, to, coherence, kind = "nerve";
  std::size_t degree = 3, trunc = 3, up_to = 3;
  std::int64_t element = 0;
  bool all_classes = false;

  SizeBounds bounds() const { return {.max_group = max_group, .max_coeffs = max_coeffs}; }
};

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    default: return "error";
  }
}

bool is_mathematical(ErrorCode c) {
  return c == ErrorCode::NotAGroup || c == ErrorCode::NotACocycle || c == ErrorCode::NotNormalized;
}

Status verdict_status(bool holds) { return holds ? Status::Pass : Status::Fail; }

// Inputs ------------------------------------------------------------------

bool names_file(const std::string& s) {
  return s.ends_with(".json") || std::filesystem::is_regular_file(s);
}

FiniteGroup load_group(const Options& o, const std::string& s) {
  FiniteGroup g = names_file(s) ? group_from_json(read_json_file(s)) : group_construct(s);
  if (g.order() > o.max_group) {
    throw Error(ErrorCode::SizeBound, "group of order " + std::to_string(g.order()) +
                                          " exceeds --max-group " + std::to_string(o.max_group));
  }
  return g;
}

AbelianGroup load_coeffs(const Options& o, const std::string& s) {
  AbelianGroup a = names_file(s) ? coeffs_from_json(read_json_file(s)) : coeffs_from_spec(s);
  if (a.order() > o.max_coeffs) {
    throw Error(ErrorCode::SizeBound, "coefficients of order " + std::to_string(a.order()) +
                                          " exceed --max-coeffs " + std::to_string(o.max_coeffs));
  }
  return a;
}

Cochain load_cochain(const Options& o, const std::string& path) {
  Cochain c = cochain_from_json(read_json_file(path));
  if (c.group().order() > o.max_group || c.coeffs().order() > o.max_coeffs) {
    throw Error(ErrorCode::SizeBound, path + " exceeds the --max-group/--max-coeffs bounds");
  }
  return c;
}

Json values_of(const Cochain& c) { return to_json(c)["values"]; }

// Sets or embeds a produced object depending on --output.
void deliver(const Options& o, Report& r, const char* key, const Json& object) {
  if (o.output.empty()) {
    r.payload[key] = object;
  } else {
    write_json_file(o.output, object);
    r.payload["output"] = o.output;
  }
}

// Commands ----------------------------------------------------------------

Report group_info(const Options& o) {
  const FiniteGroup g = load_group(o, o.group);
  Report r;
  r.payload["group"] = to_json(g);
  std::vector<std::size_t> orders;
  bool abelian = true;
  for (Elem x = 0; x < g.order(); ++x) {
    orders.push_back(g.element_order(x));
    for (Elem y = 0; y < g.order(); ++y) abelian = abelian && g.mul(x, y) == g.mul(y, x);
  }
  r.payload["element_orders"] = orders;
  r.payload["abelian"] = abelian;
  return r;
}

Report group_automorphisms_cmd(const Options& o) {
  const FiniteGroup g = load_group(o, o.group);
  const auto auts = group_automorphisms(g, std::max<std::size_t>(o.max_group, 12));
  Report r;
  r.payload["group"] = g.name();
  r.payload["count"] = auts.size();
  Json list = Json::array();
  for (const auto& a : auts) list.push_back(a.image);
  r.payload["automorphisms"] = std::move(list);
  return r;
}

Report cohomology_cmd(const Options& o) {
  const FiniteGroup g = load_group(o, o.group);
  const AbelianGroup a = load_coeffs(o, o.coeffs);
  const auto h = cohomology(g, a, o.degree, o.bounds());
  Report r;
  r.payload["group"] = g.name();
  r.payload["coeffs"] = a.invariant_factors();
  r.payload["degree"] = o.degree;
  r.payload["invariant_factors"] = h.invariant_factors;
  r.payload["class_count"] = h.class_count;
  Json reps = Json::array();
  for (const auto& c : h.representatives) reps.push_back(values_of(c));
  r.payload["representatives"] = std::move(reps);
  return r;
}

Report cocycle_verify(const Options& o) {
  const Cochain c = load_cochain(o, o.file);
  const Verdict cocycle = is_cocycle(c);
  const Verdict normalized = is_normalized(c);
  Report r;
  r.payload["degree"] = c.degree();
  r.payload["group"] = c.group().name();
  r.payload["coeffs"] = c.coeffs().invariant_factors();
  r.payload["cocycle"] = cocycle.holds;
  r.payload["normalized"] = normalized.holds;
  const Verdict& first = cocycle ? normalized : cocycle;
  if (!first) {
    r.payload["witness"] = first.witness;
    r.payload["detail"] = first.detail;
  }
  r.status = verdict_status(cocycle.holds && normalized.holds);
  return r;
}

Report cocycle_solve_cmd(const Options& o) {
  const FiniteGroup g = load_group(o, o.group);
  const AbelianGroup a = load_coeffs(o, o.coeffs);
  const auto basis = cocycle_solve(g, a, o.degree, o.bounds());
  Report r;
  r.payload["group"] = g.name();
  r.payload["coeffs"] = a.invariant_factors();
  r.payload["degree"] = o.degree;
  r.payload["orders"] = basis.orders;
  r.payload["cocycle_count"] = basis.order();
  Json gens = Json::array();
  for (const auto& c : basis.generators) gens.push_back(values_of(c));
  r.payload["generators"] = std::move(gens);
  return r;
}

Report cocycle_classes_mod_aut(const Options& o) {
  const FiniteGroup g = load_group(o, o.group);
  const AbelianGroup a = load_coeffs(o, o.coeffs);
  const auto orbits = cohomology_classes_mod_aut(g, a, o.bounds(), o.degree);
  Report r;
  r.payload["group"] = g.name();
  r.payload["coeffs"] = a.invariant_factors();
  r.payload["degree"] = o.degree;
  std::size_t classes = 0;
  Json list = Json::array();
  for (const auto& orbit : orbits) {
    classes += orbit.size;
    list.push_back(Json{{"size", orbit.size}, {"representative", values_of(orbit.representative)}});
  }
  r.payload["class_count"] = classes;
  r.payload["orbit_count"] = orbits.size();
  r.payload["orbits"] = std::move(list);
  return r;
}

Report cocycle_sample(const Options& o) {
  const FiniteGroup g = load_group(o, o.group);
  const AbelianGroup a = load_coeffs(o, o.coeffs);
  const auto basis = cocycle_solve(g, a, o.degree, o.bounds());
  std::mt19937_64 rng(o.seed);
  Cochain c(g, a, o.degree);
  std::vector<std::int64_t> coefficients;
  for (std::size_t k = 0; k < basis.generators.size(); ++k) {
    std::uniform_int_distribution<std::int64_t> pick(0, basis.orders[k] - 1);
    coefficients.push_back(pick(rng));
    c = c + basis.generators[k].scaled(coefficients.back());
  }
  Report r;
  r.payload["seed"] = o.seed;
  r.payload["coefficients"] = coefficients;
  deliver(o, r, "cocycle", to_json(c));
  return r;
}

TwoGroupSkeleton load_skeleton(const Options& o, const std::string& path) {
  const Cochain c = load_cochain(o, path);
  return two_group(c.group(), c.coeffs(), c);
}

Report twogroup_check(const Options& o) {
  const auto t = load_skeleton(o, o.cocycle);
  const Verdict pentagon = check_pentagon(t.assoc);
  const Verdict triangle = check_triangle(t.assoc);
  Report r;
  r.payload["objects"] = t.group.order();
  r.payload["automorphisms_per_object"] = t.coeffs.order();
  r.payload["pentagon"] = pentagon.holds;
  r.payload["triangle"] = triangle.holds;
  std::vector<Elem> inverses;
  for (Elem x = 0; x < t.group.order(); ++x) inverses.push_back(t.weak_inverse(x));
  r.payload["weak_inverses"] = inverses;
  if (!pentagon) r.payload["witness"] = pentagon.witness;
  else if (!triangle) r.payload["witness"] = triangle.witness;
  r.status = verdict_status(pentagon.holds && triangle.holds);
  return r;
}

Report twogroup_duality(const Options& o) {
  const auto t = load_skeleton(o, o.cocycle);
  if (o.element < 0 || static_cast<std::size_t>(o.element) >= t.group.order()) {
    throw Error(ErrorCode::IndexOutOfRange, "--element must lie in 0.." +
                                                std::to_string(t.group.order() - 1));
  }
  const auto g = static_cast<Elem>(o.element);
  const auto pairs = duality_data(t, g);
  Report r;
  r.payload["element"] = g;
  r.payload["dual"] = t.weak_inverse(g);
  r.payload["count"] = pairs.size();
  Json list = Json::array();
  for (const auto& [e, c] : pairs) list.push_back(Json{{"evaluation", e.residues}, {"coevaluation", c.residues}});
  r.payload["pairs"] = std::move(list);
  if (pairs.empty()) r.payload["witness"] = Json::array({g});
  r.status = verdict_status(!pairs.empty());
  return r;
}

Report twogroup_functor(const Options& o) {
  const auto t1 = load_skeleton(o, o.from);
  const auto t2 = load_skeleton(o, o.to);
  const Cochain j = load_cochain(o, o.coherence);
  const Verdict v = monoidal_functor_check(t1, t2, j);
  Report r;
  r.payload["coherent"] = v.holds;
  if (!v) {
    r.payload["witness"] = v.witness;
    r.payload["detail"] = v.detail;
  }
  r.status = verdict_status(v.holds);
  return r;
}

Report sset_validate(const Options& o) {
  const TruncatedSSet s = sset_from_json(read_json_file(o.file));
  const Verdict v = validate_simplicial(s);
  Report r;
  r.payload["levels"] = s.level_sizes();
  r.payload["valid"] = v.holds;
  if (!v) {
    r.payload["witness"] = v.witness;
    r.payload["detail"] = v.detail;
  }
  r.status = verdict_status(v.holds);
  return r;
}

Report sset_kan(const Options& o) {
  const TruncatedSSet s = sset_from_json(read_json_file(o.file));
  if (o.up_to > s.truncation()) {
    throw Error(ErrorCode::TruncationMismatch, "--up-to exceeds the truncation " +
                                                   std::to_string(s.truncation()));
  }
  const Verdict v = is_kan(s, o.up_to);
  Report r;
  r.payload["levels"] = s.level_sizes();
  r.payload["up_to"] = o.up_to;
  r.payload["kan"] = v.holds;
  if (!v) r.payload["witness"] = v.witness;
  r.status = verdict_status(v.holds);
  return r;
}

Report sset_emit(const Options& o, const TruncatedSSet& s) {
  const Verdict v = validate_simplicial(s);
  Report r;
  r.payload["kind"] = o.kind;
  r.payload["levels"] = s.level_sizes();
  r.payload["valid"] = v.holds;
  if (!v) r.payload["witness"] = v.witness;
  deliver(o, r, "sset", to_json(s));
  r.status = verdict_status(v.holds);
  return r;
}

Report sset_nerve(const Options& o) {
  return sset_emit(o, nerve_bg(load_group(o, o.group), o.trunc));
}

Report sset_build(const Options& o) {
  if (o.kind == "nerve") return sset_emit(o, nerve_bg(load_group(o, o.group), o.trunc));
  if (o.kind == "gamma") return sset_emit(o, gamma_a2(load_coeffs(o, o.coeffs), o.trunc).set);
  if (o.kind == "wbar") return sset_emit(o, wbar_b2a(load_coeffs(o, o.coeffs), o.trunc));
  if (o.kind == "w") return sset_emit(o, w_b2a(load_coeffs(o, o.coeffs), o.trunc));
  const auto t = load_skeleton(o, o.cocycle);
  if (o.kind == "duskin") return sset_emit(o, duskin_nerve(t, o.trunc));
  return sset_emit(o, pullback_model(t.assoc, o.trunc));
}

std::string rstrip(std::string s) {
  s.erase(s.find_last_not_of(' ') + 1);
  return s;
}

Json stage_json(const StageResult& s) {
  return Json{{"name", s.name},
              {"ran", s.ran},
              {"passed", s.passed},
              {"detail", s.detail},
              {"witness", s.witness}};
}

Report theorem_verify(const Options& o) {
  std::vector<Cochain> inputs;
  FiniteGroup g;
  AbelianGroup a;
  if (!o.cocycle.empty()) {
    Cochain c = load_cochain(o, o.cocycle);
    if ((!o.group.empty() && !(load_group(o, o.group) == c.group())) ||
        (!o.coeffs.empty() && !(load_coeffs(o, o.coeffs) == c.coeffs()))) {
      throw Error(ErrorCode::ShapeMismatch, "--group/--coeffs disagree with the cocycle file");
    }
    g = c.group();
    a = c.coeffs();
    inputs.push_back(std::move(c));
  } else {
    if (!o.all_classes) throw Error(ErrorCode::ParseError, "give --cocycle FILE or --all-classes");
    if (o.group.empty() || o.coeffs.empty()) {
      throw Error(ErrorCode::ParseError, "--all-classes needs --group and --coeffs");
    }
    g = load_group(o, o.group);
    a = load_coeffs(o, o.coeffs);
    inputs = all_class_representatives(cohomology(g, a, 3, o.bounds()));
  }

  Report r;
  r.payload["group"] = g.name();
  r.payload["coeffs"] = a.invariant_factors();
  Json classes = Json::array();
  bool all = true;
  std::vector<std::string> names;
  std::ostringstream head;
  head << std::left << std::setw(7) << "class";
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const auto report = verify_theorem(g, a, inputs[k]);
    Json stages = Json::array();
    for (const auto& s : report.stages) stages.push_back(stage_json(s));
    classes.push_back(Json{{"index", k},
                           {"cocycle", values_of(inputs[k])},
                           {"passed", report.passed()},
                           {"duskin_sizes", report.duskin_sizes},
                           {"pullback_sizes", report.pullback_sizes},
                           {"stages", std::move(stages)}});
    if (k == 0) {
      for (const auto& s : report.stages) head << std::setw(15) << s.name;
      r.table.push_back(rstrip(head.str()));
    }
    std::ostringstream row;
    row << std::left << std::setw(7) << k;
    for (const auto& s : report.stages) row << std::setw(15) << (!s.ran ? "-" : s.passed ? "PASS" : "FAIL");
    r.table.push_back(rstrip(row.str()));
    if (!report.passed() && all) {
      const auto* f = report.first_failure();
      r.payload["witness"] = Json{{"class", k}, {"stage", f->name}, {"cells", f->witness}};
      r.table.push_back("first failure: class " + std::to_string(k) + ", stage " + f->name +
                        ": " + f->detail);
    }
    all = all && report.passed();
  }
  r.payload["class_count"] = inputs.size();
  r.payload["classes"] = std::move(classes);
  r.status = verdict_status(all);
  return r;
}

// Text rendering ------------------------------------------------------------

void flatten(const Json& j, const std::string& key, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, key.empty() ? k : key + "." + k, rows);
    return;
  }
  if (j.is_array() && !j.empty() && j.front().is_object()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], key + "[" + std::to_string(i) + "]", rows);
    return;
  }
  std::string value = j.is_string() ? j.get<std::string>() : j.dump();
  if (value.size() > 96) {
    value = value.substr(0, 80) + " ... (" + std::to_string(j.size()) + " entries)";
  }
  rows.emplace_back(key, value);
}

}  // namespace

int exit_code(Status s) {
  switch (s) {
    case Status::Pass: return 0;
    case Status::Fail: return 1;
    default: return 2;
  }
}

std::string emit_report(const Report& r, const std::string& format) {
  if (format == "json") {
    Json j{{"command", r.command}, {"status", status_name(r.status)}, {"payload", r.payload}};
    if (!r.error.is_null()) j["error"] = r.error;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "command: " << r.command << "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& [k, v] : r.payload.items()) {
    // A table already summarises the per-item records.
    if (!r.table.empty() && v.is_array() && !v.empty() && v.front().is_object()) continue;
    flatten(v, k, rows);
  }
  if (!r.error.is_null()) flatten(r.error, "error", rows);
  for (const auto& [k, v] : rows) os << "  " << std::left << std::setw(32) << k << " " << v << "\n";
  for (const auto& line : r.table) os << "  " << line << "\n";
  const char* result = r.status == Status::Pass ? "PASS" : r.status == Status::Fail ? "FAIL" : "ERROR";
  os << "RESULT: " << result << "\n";
  return os.str();
}

int parse_and_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite 2-groups, 3-cocycles and their simplicial models", "twogrp"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--max-group", o.max_group, "Largest accepted group order")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  app.add_option("--max-coeffs", o.max_coeffs, "Largest accepted coefficient group order")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for randomized subcommands")->capture_default_str();
  app.add_option("-o,--output", o.output, "Write the produced object to this file");

  auto sub = [](CLI::App* parent, const char* name, const char* help) {
    CLI::App* s = parent->add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto group_opt = [&](CLI::App* s, bool required = true) {
    auto* opt = s->add_option("--group", o.group, "Group spec or JSON file");
    if (required) opt->required();
  };
  auto coeffs_opt = [&](CLI::App* s, bool required = true) {
    auto* opt = s->add_option("--coeffs", o.coeffs, "Coefficient spec or JSON file");
    if (required) opt->required();
  };
  auto degree_opt = [&](CLI::App* s) {
    s->add_option("--degree", o.degree, "Cochain degree")->check(CLI::Range(0, 6))->capture_default_str();
  };

  std::vector<std::pair<CLI::App*, std::function<Report(const Options&)>>> handlers;

  CLI::App* group = sub(&app, "group", "Inspect a finite group");
  group->require_subcommand(1);
  CLI::App* g_info = sub(group, "info", "Multiplication table and element orders");
  group_opt(g_info);
  handlers.emplace_back(g_info, group_info);
  CLI::App* g_aut = sub(group, "automorphisms", "List all automorphisms");
  group_opt(g_aut);
  handlers.emplace_back(g_aut, group_automorphisms_cmd);

  CLI::App* coh = sub(&app, "cohomology", "Cohomology with trivial coefficients");
  group_opt(coh);
  coeffs_opt(coh);
  degree_opt(coh);
  handlers.emplace_back(coh, cohomology_cmd);

  CLI::App* cocycle = sub(&app, "cocycle", "Cocycle utilities");
  cocycle->require_subcommand(1);
  CLI::App* c_verify = sub(cocycle, "verify", "Check that a cochain file is a normalized cocycle");
  c_verify->add_option("file", o.file, "Cochain JSON file")->required();
  handlers.emplace_back(c_verify, cocycle_verify);
  CLI::App* c_solve = sub(cocycle, "solve", "Generators of the normalized cocycles");
  group_opt(c_solve);
  coeffs_opt(c_solve);
  degree_opt(c_solve);
  handlers.emplace_back(c_solve, cocycle_solve_cmd);
  CLI::App* c_aut = sub(cocycle, "classes-mod-aut", "Cohomology classes modulo automorphisms");
  group_opt(c_aut);
  coeffs_opt(c_aut);
  degree_opt(c_aut);
  handlers.emplace_back(c_aut, cocycle_classes_mod_aut);
  CLI::App* c_sample = sub(cocycle, "sample", "Seeded random normalized cocycle");
  group_opt(c_sample);
  coeffs_opt(c_sample);
  degree_opt(c_sample);
  handlers.emplace_back(c_sample, cocycle_sample);

  CLI::App* tg = sub(&app, "twogroup", "Skeletal 2-group checks");
  tg->require_subcommand(1);
  CLI::App* t_check = sub(tg, "check", "Pentagon and triangle");
  t_check->add_option("--cocycle", o.cocycle, "Associator JSON file")->required();
  handlers.emplace_back(t_check, twogroup_check);
  CLI::App* t_dual = sub(tg, "duality", "Evaluation/coevaluation pairs of one object");
  t_dual->add_option("--cocycle", o.cocycle, "Associator JSON file")->required();
  t_dual->add_option("--element", o.element, "Object index")->required();
  handlers.emplace_back(t_dual, twogroup_duality);
  CLI::App* t_fun = sub(tg, "functor", "Identity-on-objects monoidal functor coherence");
  t_fun->add_option("--from", o.from, "Source associator file")->required();
  t_fun->add_option("--to", o.to, "Target associator file")->required();
  t_fun->add_option("--coherence", o.coherence, "Degree-2 cochain file")->required();
  handlers.emplace_back(t_fun, twogroup_functor);

  CLI::App* ss = sub(&app, "sset", "Truncated simplicial sets");
  ss->require_subcommand(1);
  CLI::App* s_val = sub(ss, "validate", "Check every simplicial identity");
  s_val->add_option("file", o.file, "Simplicial set JSON file")->required();
  handlers.emplace_back(s_val, sset_validate);
  CLI::App* s_kan = sub(ss, "kan", "Exhaustive horn filling");
  s_kan->add_option("file", o.file, "Simplicial set JSON file")->required();
  s_kan->add_option("--up-to", o.up_to, "Largest horn dimension")->check(CLI::Range(1, 8))->capture_default_str();
  handlers.emplace_back(s_kan, sset_kan);
  CLI::App* s_nerve = sub(ss, "nerve", "Nerve of a group");
  group_opt(s_nerve);
  s_nerve->add_option("--trunc", o.trunc, "Truncation")->check(CLI::Range(0, 5))->capture_default_str();
  handlers.emplace_back(s_nerve, sset_nerve);
  CLI::App* s_build = sub(ss, "build", "Build one of the library's simplicial sets");
  s_build->add_option("--kind", o.kind, "nerve, gamma, wbar, w, duskin or pullback")
      ->check(CLI::IsMember({"nerve", "gamma", "wbar", "w", "duskin", "pullback"}))
      ->capture_default_str();
  group_opt(s_build, false);
  coeffs_opt(s_build, false);
  s_build->add_option("--cocycle", o.cocycle, "Associator JSON file (duskin, pullback)");
  s_build->add_option("--trunc", o.trunc, "Truncation")->check(CLI::Range(0, 5))->capture_default_str();
  handlers.emplace_back(s_build, sset_build);

  CLI::App* th = sub(&app, "theorem", "End-to-end comparison of the two models");
  th->require_subcommand(1);
  CLI::App* t_verify = sub(th, "verify", "Run every stage for one cocycle or every class");
  group_opt(t_verify, false);
  coeffs_opt(t_verify, false);
  auto* from_file = t_verify->add_option("--cocycle", o.cocycle, "Associator JSON file");
  auto* all = t_verify->add_flag("--all-classes", o.all_classes, "One representative per class");
  from_file->excludes(all);
  handlers.emplace_back(t_verify, theorem_verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    // Show the synopsis of the deepest subcommand that was recognised.
    const CLI::App* deepest = &app;
    for (bool descended = true; descended;) {
      descended = false;
      for (const CLI::App* s : deepest->get_subcommands()) {
        deepest = s;
        descended = true;
        break;
      }
    }
    err << deepest->help();
    return 2;
  }

  std::ostringstream echo;
  for (std::size_t k = 0; k < args.size(); ++k) echo << (k ? " " : "") << args[k];

  Report report;
  const auto start = std::chrono::steady_clock::now();
  try {
    auto it = std::find_if(handlers.begin(), handlers.end(),
                           [](const auto& h) { return h.first->parsed(); });
    if (it == handlers.end()) throw Error(ErrorCode::ParseError, "no command given");
    if (s_build->parsed() && (o.kind == "duskin" || o.kind == "pullback") && o.cocycle.empty()) {
      throw Error(ErrorCode::ParseError, "--kind " + o.kind + " needs --cocycle");
    }
    report = it->second(o);
  } catch (const Error& e) {
    report = Report{};
    report.status = is_mathematical(e.code()) ? Status::Fail : Status::Error;
    report.error = Json{{"code", std::string(to_string(e.code()))},
                        {"message", e.what()},
                        {"witness", e.witness()},
                        {"reason", e.reason()}};
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    report = Report{};
    report.status = Status::Error;
    report.error = Json{{"code", "Internal"}, {"message", e.what()}, {"witness", Json::array()}, {"reason", ""}};
    err << "internal error: " << e.what() << "\n";
  }
  report.command = echo.str();
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  out << emit_report(report, o.format);
  err << "elapsed_ms: " << elapsed.count() << "\n";
  return exit_code(report.status);
}

}  // namespace twogrp::cli
