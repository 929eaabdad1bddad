#include "snc/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "snc/error.hpp"

namespace snc::io {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing \"") + key + "\"");
  return *it;
}

template <class T>
T get(const Json& j, const char* key) {
  const Json& m = member(j, key);
  try {
    return m.get<T>();
  } catch (const Json::exception&) {
    throw InputError(std::string("\"") + key + "\" has the wrong type");
  }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get<T>(j, key);
}

const Json& array_of(const Json& j, const char* key) {
  const Json& m = member(j, key);
  if (!m.is_array()) throw InputError(std::string("\"") + key + "\" must be an array");
  return m;
}

const Json& optional_array(const Json& j, const char* key) {
  static const Json empty = Json::array();
  if (!j.is_object() || !j.contains(key)) return empty;
  return array_of(j, key);
}

std::map<std::string, std::string> string_map(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) return {};
  return get<std::map<std::string, std::string>>(j, key);
}

// Inline object, or a path relative to the context directory.
Json nested(const Json& j, const char* key, const Context& ctx) {
  const Json& m = member(j, key);
  if (m.is_string()) {
    std::filesystem::path p = m.get<std::string>();
    if (p.is_relative()) p = ctx.dir / p;
    return read_file(p);
  }
  if (!m.is_object()) throw InputError(std::string("\"") + key + "\" must be an object or a file path");
  if (m.contains("v")) return m;
  Json copy = m;
  copy["v"] = schema_version;
  return copy;
}

template <class T, class F>
void sort_by(std::vector<T>& v, F key) {
  std::sort(v.begin(), v.end(), [&](const T& a, const T& b) { return key(a) < key(b); });
}

Json ids_json(const StallingsGraph& g, const Path& p) { return path_ids(g, p); }

}  // namespace

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read \"" + path.string() + "\"");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw InputError("\"" + path.string() + "\" is not valid JSON: " + e.what());
  }
}

void require_version(const Json& j, const std::string& what) {
  if (!j.is_object()) throw InputError(what + " must be a JSON object");
  if (!j.contains("v")) throw InputError(what + " lacks the schema version field \"v\"");
  if (j["v"] != schema_version) throw InputError(what + " has unsupported schema version " + j["v"].dump());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- scalars

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.get<long>()));
  throw InputError("rationals are written as \"p/q\" strings, got " + j.dump());
}

Json to_json(const ExactScalar& s) { return {{"modulus", to_json(s.modulus())}, {"phase", to_json(s.phase())}}; }

ExactScalar scalar_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("scalar must be an object with \"modulus\" and \"phase\"");
  Rational m = j.contains("modulus") ? rational_from_json(j["modulus"]) : Rational(1);
  Rational p = j.contains("phase") ? rational_from_json(j["phase"]) : Rational(0);
  return ExactScalar(m, p);
}

// ---------------------------------------------------------------- configurations

Json to_json(const SncConfiguration& cfg) {
  SncConfiguration c = cfg;
  c.canonicalize();
  Json out = {{"v", schema_version}, {"components", Json::array()}, {"intersections", Json::array()}};
  for (const auto& z : c.components) out["components"].push_back({{"id", z.id}, {"dim", z.dim}, {"label", z.label}});
  for (const auto& p : c.intersections) {
    out["intersections"].push_back({{"id", p.id}, {"endpoints", {p.a, p.b}}, {"label", p.label}});
  }
  if (!c.strata.empty()) {
    out["strata"] = Json::array();
    for (const auto& s : c.strata) {
      std::vector<std::string> carriers = s.carriers;
      std::sort(carriers.begin(), carriers.end());
      out["strata"].push_back({{"id", s.id}, {"carriers", carriers}, {"dim", s.dim}});
    }
  }
  return out;
}

SncConfiguration configuration_from_json(const Json& j, const Context&) {
  require_version(j, "configuration");
  SncConfiguration cfg;
  for (const auto& z : array_of(j, "components")) {
    cfg.components.push_back({get<std::string>(z, "id"), get<int>(z, "dim"), get_or<std::string>(z, "label", "")});
  }
  for (const auto& p : array_of(j, "intersections")) {
    auto ends = get<std::vector<std::string>>(p, "endpoints");
    if (ends.size() != 2) throw InputError("intersection \"" + get<std::string>(p, "id") + "\" needs two endpoints");
    cfg.intersections.push_back({get<std::string>(p, "id"), ends[0], ends[1], get_or<std::string>(p, "label", "")});
  }
  for (const auto& s : optional_array(j, "strata")) {
    cfg.strata.push_back({get<std::string>(s, "id"), get<std::vector<std::string>>(s, "carriers"), get<int>(s, "dim")});
  }
  return cfg;
}

Json to_json(const StallingsGraph& g) {
  Json out = {{"vertices", Json::array()}, {"edges", Json::array()}};
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) out["vertices"].push_back(g.vertex_id(v));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    out["edges"].push_back({{"id", g.edge_id(e)}, {"bar", g.edge_id(g.bar(e))}, {"from", g.vertex_id(g.initial(e))}});
  }
  return out;
}

StallingsGraph graph_from_json(const Json& j) {
  std::vector<EdgeRecord> edges;
  for (const auto& e : array_of(j, "edges")) {
    edges.push_back({get<std::string>(e, "id"), get<std::string>(e, "bar"), get<std::string>(e, "from")});
  }
  return graph_from_records(get<std::vector<std::string>>(j, "vertices"), edges);
}

Json to_json(const StallingsGraph& g, const Path& p) {
  return {{"start", g.vertex_id(p.start)}, {"edges", ids_json(g, p)}};
}

Json to_json(const ValidationReport& r) {
  Json out = {{"ok", r.ok}, {"findings", Json::array()}};
  for (const auto& f : r.findings) {
    out["findings"].push_back({{"severity", f.severity == Severity::error ? "error" : "warning"},
                               {"location", f.location},
                               {"message", f.message}});
  }
  return out;
}

// ---------------------------------------------------------------- bundles

Json to_json(const LineBundleModel& b) {
  Json out = {{"v", schema_version}, {"configuration", to_json(b.base())}, {"transitions", Json::array()}};
  for (const auto& [piece, s] : b.transitions()) {
    out["transitions"].push_back({{"edge", piece}, {"modulus", to_json(s.modulus())}, {"phase", to_json(s.phase())}});
  }
  return out;
}

LineBundleModel bundle_from_json(const Json& j, const Context& ctx) {
  require_version(j, "bundle");
  SncConfiguration cfg = configuration_from_json(nested(j, "configuration", ctx), ctx);
  std::map<std::string, ExactScalar> transitions;
  for (const auto& t : optional_array(j, "transitions")) {
    std::string edge = get<std::string>(t, "edge");
    ExactScalar s = scalar_from_json(t);
    if (!edge.empty() && edge[0] == '~') {
      edge = edge.substr(1);
      s = s.inverse();
    }
    if (!transitions.emplace(edge, s).second) throw InputError("transition for \"" + edge + "\" given twice");
  }
  return LineBundleModel(cfg, transitions);
}

Json to_json(const MonodromyCertificate& c, const StallingsGraph& g) {
  Json out = {{"base", c.base}, {"verdict", to_string(c.verdict)}, {"order", c.order.get_str()}, {"basis", Json::array()}};
  for (const auto& b : c.basis) out["basis"].push_back({{"circuit", ids_json(g, b.circuit)}, {"value", to_json(b.value)}});
  out["witness"] = c.witness ? ids_json(g, *c.witness) : Json(nullptr);
  return out;
}

Json to_json(const SectionResult& r, const StallingsGraph& g) {
  if (const auto* s = std::get_if<SectionAssignment>(&r)) {
    Json out = {{"status", "section"}, {"values", Json::array()}};
    for (std::size_t i = 0; i < s->components.size(); ++i) {
      out["values"].push_back({{"component", s->components[i]},
                               {"value", s->values[i] ? to_json(*s->values[i]) : Json(nullptr)}});
    }
    return out;
  }
  const auto& ob = std::get<Obstruction>(r);
  return {{"status", "obstruction"}, {"circuit", ids_json(g, ob.circuit)}, {"value", to_json(ob.value)}};
}

// ---------------------------------------------------------------- covers

bool is_curve_cover(const Json& j) { return j.is_object() && j.value("kind", "") == "curve"; }

Json to_json(const CoverMap& c) {
  Json out = {{"v", schema_version},
              {"source", to_json(c.source)},
              {"target", to_json(c.target)},
              {"component_map", c.component_map},
              {"intersection_map", c.intersection_map},
              {"degree", c.degree}};
  return out;
}

CoverMap cover_from_json(const Json& j, const Context& ctx) {
  require_version(j, "cover");
  CoverMap c;
  c.source = configuration_from_json(nested(j, "source", ctx), ctx);
  c.target = configuration_from_json(nested(j, "target", ctx), ctx);
  c.component_map = get<std::map<std::string, std::string>>(j, "component_map");
  c.intersection_map = string_map(j, "intersection_map");
  long degree = get<long>(j, "degree");
  if (degree <= 0) throw InputError("degree must be positive");
  c.degree = static_cast<unsigned>(degree);
  return c;
}

Json to_json(const CurveCoverMap& c) {
  Json image = Json::object();
  for (const auto& [z, im] : c.image) {
    if (const auto* k = std::get_if<CurveImage>(&im)) {
      image[z] = {{"curve", k->component}};
    } else {
      image[z] = {{"point", std::get<PointImage>(im).location}};
    }
  }
  Json points = Json::object();
  for (const auto& [p, curves] : c.points) {
    std::vector<std::string> sorted = curves;
    std::sort(sorted.begin(), sorted.end());
    points[p] = sorted;
  }
  return {{"v", schema_version},
          {"kind", "curve"},
          {"source", to_json(c.source)},
          {"target", to_json(c.target)},
          {"image", image},
          {"intersection_map", c.intersection_map},
          {"points", points}};
}

CurveCoverMap curve_cover_from_json(const Json& j, const Context& ctx) {
  require_version(j, "curve cover");
  CurveCoverMap c;
  c.source = configuration_from_json(nested(j, "source", ctx), ctx);
  c.target = configuration_from_json(nested(j, "target", ctx), ctx);
  const Json& image = member(j, "image");
  if (!image.is_object()) throw InputError("\"image\" must be an object");
  for (const auto& [z, im] : image.items()) {
    if (im.is_object() && im.contains("curve") && !im.contains("point")) {
      c.image.emplace(z, CurveImage{get<std::string>(im, "curve")});
    } else if (im.is_object() && im.contains("point") && !im.contains("curve")) {
      c.image.emplace(z, PointImage{get<std::string>(im, "point")});
    } else {
      throw InputError("image of \"" + z + "\" must be {\"curve\": id} or {\"point\": id}");
    }
  }
  c.intersection_map = string_map(j, "intersection_map");
  if (j.contains("points")) c.points = get<std::map<std::string, std::vector<std::string>>>(j, "points");
  return c;
}

Json to_json(const TorsionDescent& t) {
  return {{"base", t.base},
          {"order_bound", t.order_bound.get_str()},
          {"verified_order", t.verified_order.get_str()},
          {"divides", mpz_divisible_p(t.order_bound.get_mpz_t(), t.verified_order.get_mpz_t()) != 0},
          {"index", t.index ? Json(*t.index) : Json(nullptr)},
          {"index_bound", t.index_bound}};
}

Json to_json(const CircuitLift& l, const StallingsGraph& source) {
  return {{"lifted", to_json(source, l.lifted)}, {"multiplier", l.multiplier}, {"fibre_count", l.fibre_count}};
}

// ---------------------------------------------------------------- relations

namespace {

Json strata_json(const std::map<std::string, int>& strata) {
  Json out = Json::array();
  for (const auto& [id, dim] : strata) out.push_back({{"id", id}, {"dim", dim}});
  return out;
}

std::map<std::string, int> strata_from_json(const Json& j) {
  std::map<std::string, int> out;
  for (const auto& s : array_of(j, "strata")) {
    std::string id = get<std::string>(s, "id");
    if (!out.emplace(id, get<int>(s, "dim")).second) throw InputError("duplicate stratum \"" + id + "\"");
  }
  return out;
}

}  // namespace

bool is_point_relation(const Json& j) { return j.is_object() && j.contains("points"); }

Json to_json(const PointRelation& r) {
  auto points = r.points;
  sort_by(points, [](const RelPoint& p) { return p.id; });
  auto pairs = r.pairs;
  sort_by(pairs, [](const RelPair& p) { return std::tie(p.generator, p.a, p.b); });
  Json out = {{"v", schema_version}, {"strata", strata_json(r.strata)}, {"points", Json::array()}, {"pairs", Json::array()}};
  for (const auto& p : points) out["points"].push_back({{"id", p.id}, {"stratum", p.stratum}});
  for (const auto& p : pairs) out["pairs"].push_back({{"a", p.a}, {"b", p.b}, {"generator", p.generator}});
  return out;
}

PointRelation point_relation_from_json(const Json& j) {
  require_version(j, "relation");
  PointRelation r;
  r.strata = strata_from_json(j);
  for (const auto& p : array_of(j, "points")) r.points.push_back({get<std::string>(p, "id"), get<std::string>(p, "stratum")});
  for (const auto& p : optional_array(j, "pairs")) {
    r.pairs.push_back({get<std::string>(p, "a"), get<std::string>(p, "b"), get<std::string>(p, "generator")});
  }
  check_relation(r);
  return r;
}

Json to_json(const DimRelation& r) {
  auto gens = r.generators;
  sort_by(gens, [](const DimCorrespondence& c) { return c.id; });
  Json out = {{"v", schema_version}, {"strata", strata_json(r.strata)}, {"generators", Json::array()}};
  for (const auto& c : gens) {
    out["generators"].push_back({{"id", c.id},
                                 {"src", c.src},
                                 {"dst", c.dst},
                                 {"dim", c.dim},
                                 {"family", c.family},
                                 {"dominant_src", c.dominant_src},
                                 {"dominant_dst", c.dominant_dst}});
  }
  if (!r.intersections.empty()) {
    auto inter = r.intersections;
    sort_by(inter, [](const StratumOverlap& o) { return std::tie(o.a, o.b); });
    out["intersections"] = Json::array();
    for (const auto& o : inter) out["intersections"].push_back({{"a", o.a}, {"b", o.b}, {"dim", o.dim}});
  }
  return out;
}

DimRelation dim_relation_from_json(const Json& j) {
  require_version(j, "relation");
  DimRelation r;
  r.strata = strata_from_json(j);
  for (const auto& c : optional_array(j, "generators")) {
    r.generators.push_back({get<std::string>(c, "id"), get<std::string>(c, "src"), get<std::string>(c, "dst"),
                            get<int>(c, "dim"), get_or<bool>(c, "family", false), get_or<bool>(c, "dominant_src", false),
                            get_or<bool>(c, "dominant_dst", false)});
  }
  for (const auto& o : optional_array(j, "intersections")) {
    r.intersections.push_back({get<std::string>(o, "a"), get<std::string>(o, "b"), get<int>(o, "dim")});
  }
  check_relation(r);
  return r;
}

Json to_json(const PointClosure& c) {
  Json out = {{"classes", c.classes}, {"trace", Json::array()}};
  for (const auto& [point, step] : c.trace) {
    out["trace"].push_back({{"point", point}, {"parent", step.parent}, {"generator", step.generator}});
  }
  return out;
}

Json to_json(const CorrKey& k) {
  return {{"src", k.src},
          {"dst", k.dst},
          {"dim", k.dim},
          {"family", k.family},
          {"dominant_src", k.dominant_src},
          {"dominant_dst", k.dominant_dst}};
}

Json to_json(const DimClosure& c) {
  Json out = {{"top_dim", c.top_dim}, {"correspondences", Json::array()}};
  for (const auto& k : c.keys) {
    Json e = to_json(k);
    e["depth"] = c.trace.at(k).depth;
    e["support"] = c.support(k);
    out["correspondences"].push_back(e);
  }
  Json slice = Json::array();
  for (const auto& k : c.slice(c.top_dim)) slice.push_back(to_json(k));
  out["top_slice"] = slice;
  return out;
}

Json to_json(const ProfiniteResult& r) {
  if (!r.infinite) return {{"verdict", "finite"}, {"depth", r.depth}, {"classes", r.classes}};
  Json out = {{"verdict", "infinite"},
              {"depth", r.depth},
              {"dim", r.dim},
              {"strata", r.strata},
              {"dims", r.dims},
              {"restricted", Json::array()}};
  for (const auto& k : r.restricted) out["restricted"].push_back(to_json(k));
  return out;
}

// ---------------------------------------------------------------- families

Json to_json(const FibrationFamily& fam) {
  auto comps = fam.components;
  sort_by(comps, [](const FamilyComponent& c) { return c.id; });
  auto shared = fam.shared_points;
  sort_by(shared, [](const SharedPoint& s) { return s.id; });
  Json out = {{"v", schema_version}, {"components", Json::array()}, {"shared_points", Json::array()}};
  for (auto c : comps) {
    std::sort(c.points.begin(), c.points.end());
    Json e = {{"id", c.id}, {"points", c.points}, {"phi", c.phi}};
    if (!c.base.empty()) {
      std::sort(c.base.begin(), c.base.end());
      e["base"] = c.base;
    }
    out["components"].push_back(e);
  }
  for (auto s : shared) {
    std::sort(s.aliases.begin(), s.aliases.end());
    out["shared_points"].push_back({{"id", s.id}, {"aliases", s.aliases}});
  }
  return out;
}

FibrationFamily family_from_json(const Json& j) {
  require_version(j, "family");
  FibrationFamily fam;
  for (const auto& c : array_of(j, "components")) {
    fam.components.push_back({get<std::string>(c, "id"), get<std::vector<std::string>>(c, "points"),
                              get<std::map<std::string, std::string>>(c, "phi"),
                              get_or<std::vector<std::string>>(c, "base", {})});
  }
  for (const auto& s : optional_array(j, "shared_points")) {
    fam.shared_points.push_back({get<std::string>(s, "id"), get<std::vector<std::string>>(s, "aliases")});
  }
  check_family(fam);
  return fam;
}

Json to_json(const PseudoFibre& p) {
  return {{"representative", p.representative}, {"members", p.members}, {"points", p.points}, {"connected", p.connected}};
}

// ---------------------------------------------------------------- surfaces

namespace {

Json coefficient_json(const Coefficient& c, const char* value_key) {
  return {{"component", c.at.component}, {"member", c.at.member}, {value_key, to_json(c.value)}};
}

Coefficient coefficient_from_json(const Json& j, const char* value_key) {
  return {{get<std::string>(j, "component"), get<std::string>(j, "member")}, rational_from_json(member(j, value_key))};
}

Json link_json(const FibreLink& l) { return {{"component", l.component}, {"fibre", l.fibre}, {"member", l.member}}; }

FibreLink link_from_json(const Json& j) {
  return {get<std::string>(j, "component"), get<std::string>(j, "fibre"), get<std::string>(j, "member")};
}

std::vector<Coefficient> sorted(std::vector<Coefficient> v) {
  sort_by(v, [](const Coefficient& c) { return c.at; });
  return v;
}

}  // namespace

Json to_json(const SurfaceModel& sm) {
  Json q = {{"components", sm.curve.components}, {"points", Json::array()}};
  std::sort(q["components"].begin(), q["components"].end());
  auto qpoints = sm.curve.points;
  sort_by(qpoints, [](const QPoint& p) { return p.id; });
  for (const auto& p : qpoints) {
    q["points"].push_back({{"id", p.id}, {"component", p.component}, {"kind", p.node ? "node" : "smooth"}});
  }
  Json out = {{"v", schema_version}, {"curveQ", q}, {"fibrations", Json::array()}, {"pullback_weights", Json::array()},
              {"shared_points", Json::array()}, {"divisors", Json::array()}};
  auto fibrations = sm.fibrations;
  sort_by(fibrations, [](const SurfaceFibration& f) { return f.component; });
  for (auto f : fibrations) {
    sort_by(f.fibres, [](const FibreClass& c) { return c.id; });
    Json fibres = Json::array();
    for (auto c : f.fibres) {
      std::sort(c.members.begin(), c.members.end());
      fibres.push_back({{"id", c.id}, {"over", c.over}, {"members", c.members}});
    }
    out["fibrations"].push_back({{"component", f.component}, {"kappa", f.kappa}, {"q_component", f.q_component}, {"fibres", fibres}});
  }
  for (const auto& w : sorted(sm.pullback_weights)) out["pullback_weights"].push_back(coefficient_json(w, "weight"));
  auto shared = sm.shared_points;
  sort_by(shared, [](const SurfaceSharedPoint& s) { return s.id; });
  for (const auto& s : shared) {
    out["shared_points"].push_back({{"id", s.id},
                                    {"over", s.over},
                                    {"links", {link_json(s.links[0]), link_json(s.links[1])}},
                                    {"transition", to_json(s.transition)}});
  }
  auto divisors = sm.divisors;
  sort_by(divisors, [](const SurfaceDivisor& d) { return d.id; });
  for (const auto& d : divisors) {
    Json coeffs = Json::array();
    for (const auto& c : sorted(d.coefficients)) coeffs.push_back(coefficient_json(c, "value"));
    out["divisors"].push_back({{"id", d.id}, {"coefficients", coeffs}});
  }
  return out;
}

SurfaceModel surface_from_json(const Json& j) {
  require_version(j, "surface");
  SurfaceModel sm;
  const Json& q = member(j, "curveQ");
  sm.curve.components = get<std::vector<std::string>>(q, "components");
  for (const auto& p : array_of(q, "points")) {
    std::string kind = get_or<std::string>(p, "kind", "smooth");
    if (kind != "smooth" && kind != "node") throw InputError("point kind must be \"smooth\" or \"node\"");
    sm.curve.points.push_back({get<std::string>(p, "id"), get<std::string>(p, "component"), kind == "node"});
  }
  for (const auto& f : array_of(j, "fibrations")) {
    SurfaceFibration sf{get<std::string>(f, "component"), get_or<int>(f, "kappa", 1), get<std::string>(f, "q_component"), {}};
    for (const auto& c : array_of(f, "fibres")) {
      sf.fibres.push_back({get<std::string>(c, "id"), get<std::string>(c, "over"), get<std::vector<std::string>>(c, "members")});
    }
    sm.fibrations.push_back(std::move(sf));
  }
  for (const auto& w : array_of(j, "pullback_weights")) sm.pullback_weights.push_back(coefficient_from_json(w, "weight"));
  for (const auto& s : optional_array(j, "shared_points")) {
    const Json& links = array_of(s, "links");
    if (links.size() != 2) throw InputError("shared point \"" + get<std::string>(s, "id") + "\" needs two links");
    ExactScalar t = s.contains("transition") ? scalar_from_json(s["transition"]) : ExactScalar::identity();
    sm.shared_points.push_back({get<std::string>(s, "id"), get<std::string>(s, "over"),
                                {link_from_json(links[0]), link_from_json(links[1])}, t});
  }
  for (const auto& d : optional_array(j, "divisors")) {
    SurfaceDivisor sd{get<std::string>(d, "id"), {}};
    for (const auto& c : array_of(d, "coefficients")) sd.coefficients.push_back(coefficient_from_json(c, "value"));
    sm.divisors.push_back(std::move(sd));
  }
  check_surface(sm);
  return sm;
}

Json to_json(const DivisorResult& r) {
  if (const auto* d = std::get_if<DivisorDescent>(&r)) {
    Json delta = Json::object();
    for (const auto& [p, c] : d->delta) delta[p] = c.get_str();
    Json alpha = Json::object();
    for (const auto& [p, a] : d->alpha) alpha[p] = to_json(a);
    return {{"status", "descended"}, {"m", d->m.get_str()}, {"delta", delta}, {"alpha", alpha}};
  }
  const auto& ob = std::get<DivisorObstruction>(r);
  return {{"status", "obstruction"},
          {"point", ob.point},
          {"shared_point", ob.shared_point},
          {"chain", {link_json(ob.from), link_json(ob.to)}},
          {"scales", {to_json(ob.from_scale), to_json(ob.to_scale)}}};
}

Json to_json(const GlobalSectionResult& r) {
  if (const auto* s = std::get_if<GlobalSection>(&r)) {
    Json values = Json::array();
    for (const auto& [u, v] : s->values) values.push_back({{"unit", unit_name(u)}, {"value", to_json(v)}});
    return {{"status", "section"}, {"values", values}};
  }
  const auto& ob = std::get<SectionObstruction>(r);
  return {{"status", "obstruction"}, {"circuit", ob.circuit}, {"monodromy", to_json(ob.monodromy)}};
}

}  // namespace snc::io
