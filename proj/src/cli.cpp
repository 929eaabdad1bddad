#include "snc/cli.hpp"

#include <sstream>

#include <CLI11.hpp>

#include "check/check.hpp"
#include "snc/error.hpp"
#include "snc/io.hpp"

namespace snc::cli {

namespace {

using io::Json;

struct Report {
  std::string command;
  std::string summary;
  Json certificate;
  int code = ExitCode::ok;
};

struct Options {
  std::string format = "text";
};

io::Context context_of(const std::string& path) { return {std::filesystem::path(path).parent_path()}; }

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string id;
  while (std::getline(in, id, ',')) {
    if (!id.empty()) out.push_back(id);
  }
  return out;
}

std::string join(const std::vector<std::string>& v, const char* sep = ",") {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

std::string scalar_text(const ExactScalar& s) { return s.str(); }

// ---------------------------------------------------------------- commands

Report validate(const std::string& path) {
  Json j = io::read_file(path);
  io::require_version(j, "input");
  Report r{"validate", "", {}, ExitCode::ok};
  auto ctx = context_of(path);
  if (j.contains("curveQ")) {
    io::surface_from_json(j);
    r.summary = "surface model ok";
  } else if (io::is_curve_cover(j)) {
    ValidationReport v = validate_curve_cover(io::curve_cover_from_json(j, ctx));
    r.certificate = io::to_json(v);
    r.code = v.ok ? ExitCode::ok : ExitCode::input_error;
    r.summary = v.ok ? "curve cover ok" : v.describe();
  } else if (j.contains("component_map")) {
    ValidationReport v = validate_cover(io::cover_from_json(j, ctx));
    r.certificate = io::to_json(v);
    r.code = v.ok ? ExitCode::ok : ExitCode::input_error;
    r.summary = v.ok ? "cover ok" : v.describe();
  } else if (j.contains("transitions") || j.contains("configuration")) {
    io::bundle_from_json(j, ctx);
    r.summary = "bundle ok";
  } else if (j.contains("shared_points")) {
    io::family_from_json(j);
    r.summary = "family ok";
  } else if (j.contains("generators") || io::is_point_relation(j)) {
    if (io::is_point_relation(j)) {
      io::point_relation_from_json(j);
    } else {
      io::dim_relation_from_json(j);
    }
    r.summary = "relation ok";
  } else {
    ValidationReport v = validate_configuration(io::configuration_from_json(j, ctx));
    r.certificate = io::to_json(v);
    r.code = v.ok ? ExitCode::ok : ExitCode::input_error;
    r.summary = v.ok ? "configuration ok" : v.describe();
  }
  return r;
}

LineBundleModel load_bundle(const std::string& path) { return io::bundle_from_json(io::read_file(path), context_of(path)); }

std::string first_component(const LineBundleModel& b) {
  SncConfiguration cfg = b.base();
  cfg.canonicalize();
  if (cfg.components.empty()) throw InputError("configuration has no components");
  return cfg.components.front().id;
}

Report monodromy(const std::string& path, std::string base) {
  LineBundleModel b = load_bundle(path);
  if (base.empty()) base = first_component(b);
  MonodromyCertificate c = monodromy_certificate(b, base);
  std::string s = "monodromy at " + c.base + ": " + to_string(c.verdict);
  if (c.verdict == Verdict::torsion) s += ", order " + c.order.get_str();
  for (const auto& v : c.basis) s += "\n  [" + join(path_ids(b.graph(), v.circuit)) + "] -> " + scalar_text(v.value);
  return {"monodromy", s, io::to_json(c, b.graph()), c.verdict == Verdict::non_torsion ? ExitCode::negative : ExitCode::ok};
}

Report torsion(const std::string& path) {
  LineBundleModel b = load_bundle(path);
  MonodromyCertificate c = monodromy_certificate(b, first_component(b));
  std::string s;
  switch (c.verdict) {
    case Verdict::trivial: s = "trivial"; break;
    case Verdict::torsion: s = "torsion, order " + c.order.get_str(); break;
    case Verdict::non_torsion: s = "non-torsion, witness [" + join(path_ids(b.graph(), *c.witness)) + "]"; break;
  }
  return {"torsion", s, io::to_json(c, b.graph()), c.verdict == Verdict::non_torsion ? ExitCode::negative : ExitCode::ok};
}

Report section(const std::string& path) {
  LineBundleModel b = load_bundle(path);
  SectionResult r = synthesize_section(b);
  Report out{"section", "", io::to_json(r, b.graph()), ExitCode::ok};
  if (const auto* s = std::get_if<SectionAssignment>(&r)) {
    out.summary = "nowhere vanishing section";
    for (std::size_t i = 0; i < s->components.size(); ++i) out.summary += "\n  " + s->components[i] + " = " + scalar_text(*s->values[i]);
  } else {
    const auto& ob = std::get<Obstruction>(r);
    out.summary = "obstruction: circuit [" + join(path_ids(b.graph(), ob.circuit)) + "] has monodromy " + scalar_text(ob.value);
    out.code = ExitCode::negative;
  }
  return out;
}

Report descend_torsion_cmd(const std::string& cover_path, const std::string& bundle_path) {
  CoverMap c = io::cover_from_json(io::read_file(cover_path), context_of(cover_path));
  LineBundleModel b = load_bundle(bundle_path);
  TorsionDescent t = descend_torsion(c, b);
  std::string s = "order " + t.verified_order.get_str() + " divides " + std::to_string(c.degree) + "! = " + t.order_bound.get_str();
  s += "\nimage index at " + t.base + ": " + (t.index ? std::to_string(*t.index) : std::string("infinite or above the cap")) +
       " (fibre " + std::to_string(t.index_bound) + ")";
  return {"descend-torsion", s, io::to_json(t), ExitCode::ok};
}

Report lift(const std::string& path, const std::string& circuit) {
  Json j = io::read_file(path);
  auto ctx = context_of(path);
  StallingsGraph target, source;
  CircuitLift l;
  if (io::is_curve_cover(j)) {
    CurveCoverMap c = io::curve_cover_from_json(j, ctx);
    target = incidence_graph(c.target);
    source = curve_tau_graph(c);
    l = lift_circuit_power(c, path_from_ids(target, split_ids(circuit)));
  } else {
    CoverMap c = io::cover_from_json(j, ctx);
    target = incidence_graph(c.target);
    source = tau_graph(c);
    l = lift_circuit_power(c, path_from_ids(target, split_ids(circuit)));
  }
  std::string s = "lifted circuit [" + join(path_ids(source, l.lifted)) + "] maps to the circuit repeated " +
                  std::to_string(l.multiplier) + " times (fibre count " + std::to_string(l.fibre_count) + ")";
  return {"lift", s, io::to_json(l, source), ExitCode::ok};
}

Report closure(const std::string& path) {
  Json j = io::read_file(path);
  if (io::is_point_relation(j)) {
    PointClosure c = equivalence_closure(io::point_relation_from_json(j));
    std::string s = std::to_string(c.classes.size()) + " classes";
    for (const auto& cls : c.classes) s += "\n  {" + join(cls, ", ") + "}";
    return {"closure", s, io::to_json(c), ExitCode::ok};
  }
  DimClosure c = dim_closure(io::dim_relation_from_json(j));
  std::string s = std::to_string(c.keys.size()) + " correspondences, top dim " + std::to_string(c.top_dim);
  for (const auto& k : c.slice(c.top_dim)) s += "\n  " + describe(k);
  return {"closure", s, io::to_json(c), ExitCode::ok};
}

Report profinite(const std::string& path) {
  ProfiniteResult r = profinite_analysis(io::dim_relation_from_json(io::read_file(path)));
  std::string s;
  if (r.infinite) {
    s = "infinite at depth " + std::to_string(r.depth) + ", dim " + std::to_string(r.dim) + " on {" +
        join({r.strata.begin(), r.strata.end()}, ", ") + "}";
    for (const auto& k : r.restricted) s += "\n  " + describe(k);
  } else {
    s = "finite, " + std::to_string(r.classes.size()) + " classes of strata";
  }
  return {"profinite", s, io::to_json(r), ExitCode::ok};
}

Report pseudofibres_cmd(const std::string& path) {
  FibrationFamily fam = io::family_from_json(io::read_file(path));
  Json list = Json::array();
  std::string s;
  bool all = true;
  for (const auto& p : pseudofibres(fam)) {
    list.push_back(io::to_json(p));
    all = all && p.connected;
    s += (s.empty() ? "" : "\n") + std::string("[") + p.representative + "] = {" + join(p.members, ", ") + "}" +
         (p.connected ? "" : " (disconnected)");
  }
  return {"pseudofibres", s, list, all ? ExitCode::ok : ExitCode::negative};
}

Report descend(const std::string& path, const std::string& divisor) {
  SurfaceModel sm = io::surface_from_json(io::read_file(path));
  DivisorResult r = descend_divisor(sm, sm.divisor(divisor));
  Report out{"descend", "", io::to_json(r), ExitCode::ok};
  if (const auto* d = std::get_if<DivisorDescent>(&r)) {
    out.summary = "m = " + d->m.get_str() + ", m D is the pullback of";
    for (const auto& [p, c] : d->delta) out.summary += " " + c.get_str() + " " + p;
  } else {
    const auto& ob = std::get<DivisorObstruction>(r);
    out.summary = "obstruction over " + ob.point + " at " + ob.shared_point + ": scale " + to_string(ob.from_scale) + " on " +
                  ob.from.component + ":" + ob.from.fibre + " but " + to_string(ob.to_scale) + " on " + ob.to.component +
                  ":" + ob.to.fibre;
    out.code = ExitCode::negative;
  }
  return out;
}

Report glue_section(const std::string& path, const std::string& at) {
  SurfaceModel sm = io::surface_from_json(io::read_file(path));
  auto [c, f] = split_qualified(at);
  GlobalSectionResult r = synthesize_global_section(sm, {c, f});
  Report out{"glue-section", "", io::to_json(r), ExitCode::ok};
  if (const auto* s = std::get_if<GlobalSection>(&r)) {
    out.summary = "section with value " + scalar_text(s->values.at({c, f})) + " at " + at;
  } else {
    const auto& ob = std::get<SectionObstruction>(r);
    out.summary = "obstruction: circuit [" + join(ob.circuit) + "] has monodromy " + scalar_text(ob.monodromy);
    out.code = ExitCode::negative;
  }
  return out;
}

Report fuzz(std::uint64_t seed, std::size_t cases) {
  auto results = check::run_cases_parallel(seed, cases);
  Json list = Json::array();
  std::size_t failures = 0;
  std::string s;
  for (const auto& r : results) {
    list.push_back({{"case", r.index}, {"kind", r.kind}, {"ok", r.ok}, {"detail", r.detail}});
    if (!r.ok) {
      ++failures;
      s += "\n  case " + std::to_string(r.index) + " (" + r.kind + "): " + r.detail;
    }
  }
  s = std::to_string(cases) + " cases, " + std::to_string(failures) + " failures" + s;
  Json cert = {{"seed", seed}, {"cases", cases}, {"failures", failures}, {"results", list}};
  return {"fuzz", s, cert, failures == 0 ? ExitCode::ok : ExitCode::negative};
}

void emit(const Report& r, const Options& opt, std::ostream& out) {
  if (opt.format == "json") {
    Json j = {{"command", r.command}, {"exit", r.code}, {"summary", r.summary}, {"certificate", r.certificate}};
    out << io::dump(j);
    return;
  }
  out << r.summary << "\n";
  if (!r.certificate.is_null()) out << "certificate:\n" << io::dump(r.certificate);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinatorial tools for simple normal crossings configurations"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::string file, second, base, circuit, at, divisor;
  std::uint64_t seed = 0;
  std::size_t cases = 100;
  std::function<Report()> action;

  auto* v = app.add_subcommand("validate", "Validate an input file");
  v->add_option("file", file)->required();
  v->callback([&] { action = [&] { return validate(file); }; });

  auto* m = app.add_subcommand("monodromy", "Monodromy certificate of a bundle");
  m->add_option("file", file)->required();
  m->add_option("--base", base, "Base component");
  m->callback([&] { action = [&] { return monodromy(file, base); }; });

  auto* t = app.add_subcommand("torsion", "Torsion verdict of a bundle");
  t->add_option("file", file)->required();
  t->callback([&] { action = [&] { return torsion(file); }; });

  auto* s = app.add_subcommand("section", "Nowhere vanishing section or obstruction");
  s->add_option("file", file)->required();
  s->callback([&] { action = [&] { return section(file); }; });

  auto* dt = app.add_subcommand("descend-torsion", "Torsion order of a bundle with trivial pullback");
  dt->add_option("cover", file)->required();
  dt->add_option("bundle", second)->required();
  dt->callback([&] { action = [&] { return descend_torsion_cmd(file, second); }; });

  auto* l = app.add_subcommand("lift", "Lift a power of a target circuit");
  l->add_option("cover", file)->required();
  l->add_option("--circuit", circuit, "Comma separated edge ids")->required();
  l->callback([&] { action = [&] { return lift(file, circuit); }; });

  auto* c = app.add_subcommand("closure", "Equivalence closure of a relation");
  c->add_option("file", file)->required();
  c->callback([&] { action = [&] { return closure(file); }; });

  auto* p = app.add_subcommand("profinite", "Finite or infinite classes");
  p->add_option("file", file)->required();
  p->callback([&] { action = [&] { return profinite(file); }; });

  auto* pf = app.add_subcommand("pseudofibres", "Pseudofibres of a fibration family");
  pf->add_option("file", file)->required();
  pf->callback([&] { action = [&] { return pseudofibres_cmd(file); }; });

  auto* d = app.add_subcommand("descend", "Descend a divisor to the base curve");
  d->add_option("file", file)->required();
  d->add_option("--divisor", divisor, "Divisor id")->required();
  d->callback([&] { action = [&] { return descend(file, divisor); }; });

  auto* g = app.add_subcommand("glue-section", "Glue a global section");
  g->add_option("file", file)->required();
  g->add_option("--at", at, "component:fibre")->required();
  g->callback([&] { action = [&] { return glue_section(file, at); }; });

  auto* f = app.add_subcommand("fuzz", "Randomized property checks");
  f->add_option("--seed", seed, "Seed");
  f->add_option("--cases", cases, "Number of cases");
  f->callback([&] { action = [&] { return fuzz(seed, cases); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ExitCode::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::input_error;
  }
  try {
    Report r = action();
    emit(r, opt, out);
    return r.code;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return ExitCode::input_error;
  } catch (const HypothesisError& e) {
    if (opt.format == "json") {
      out << io::dump({{"exit", int(ExitCode::negative)}, {"hypothesis_failure", e.what()}});
    } else {
      out << "hypothesis failure: " << e.what() << "\n";
    }
    return ExitCode::negative;
  }
}

}  // namespace snc::cli
