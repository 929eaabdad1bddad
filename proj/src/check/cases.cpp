#include <sstream>

#include "check/check.hpp"
#include "snc/error.hpp"
#include "snc/parallel.hpp"

namespace snc::check {

namespace {

const char* const kinds[] = {"monodromy", "torsion", "cover", "circuit", "relation", "family", "surface"};

std::string fail(const std::string& what) { return what; }

std::string monodromy_case(Rng& rng) {
  SncConfiguration cfg = random_configuration(rng, {1, 6, 2, coin(rng, 0.8)});
  LineBundleModel b = random_bundle(rng, cfg);
  bool trivial = is_trivial(b);
  if (trivial != brute_force_trivial(b)) return fail("verdict disagrees with circuit scan");
  if (component_count(b.graph()) == 1) {
    SectionResult s = synthesize_section(b);
    if (std::holds_alternative<SectionAssignment>(s) != trivial) return fail("section exists iff trivial fails");
    if (auto* a = std::get_if<SectionAssignment>(&s); a && !section_satisfies(b, *a)) return fail("section breaks a constraint");
    if (auto* o = std::get_if<Obstruction>(&s); o && multiply_along(b, o->circuit) != o->value) return fail("bad obstruction");
  }
  return "";
}

std::string torsion_case(Rng& rng) {
  SncConfiguration cfg = random_configuration(rng, {2, 6, 3, true});
  LineBundleModel b = random_bundle(rng, cfg, CocycleKind::torsion);
  MonodromyCertificate c = monodromy_certificate(b, cfg.components.front().id);
  if (c.verdict == Verdict::non_torsion) return fail("torsion cocycle judged non-torsion");
  long n = c.order.get_si();
  for (long k = 1; k <= n; ++k) {
    if (is_trivial(tensor_power(b, k)) != (k == n)) return fail("power " + std::to_string(k) + " of order " + std::to_string(n));
  }
  return "";
}

std::string cover_case(Rng& rng) {
  CoverCase cc = random_cover_case(rng, 4, 5);
  TorsionDescent t = descend_torsion(cc.cover, cc.bundle);
  if (!mpz_divisible_p(t.order_bound.get_mpz_t(), t.verified_order.get_mpz_t())) return fail("order does not divide d!");
  GraphMap f = induced_graph_map(cc.cover);
  for (VertexIndex v = 0; v < f.source.vertex_count(); ++v) {
    VertexIndex local = 0;
    GraphMap part = restrict_to_component(f, v, &local);
    if (!is_surjective(part)) continue;
    ImageIndex ix = image_index(part, local);
    if (ix.bound > cc.cover.degree) return fail("fibre exceeds degree");
    if (!ix.index || *ix.index > cc.cover.degree) return fail("index exceeds degree");
  }
  if (f.target.edge_count() > 0) {
    Path c = surjective_circuit(f.target);
    CircuitLift l = lift_circuit_power(cc.cover, c);
    Path expect = reduce_path(f.target, power(f.target, c, l.multiplier));
    if (reduce_path(f.target, f.image(l.lifted)) != expect) return fail("lift image is not the power");
    if (l.multiplier > l.fibre_count) return fail("multiplier exceeds fibre count");
  }
  return "";
}

std::string circuit_case(Rng& rng) {
  SncConfiguration cfg = random_configuration(rng, {2, 15, 6, true});
  StallingsGraph g = incidence_graph(cfg);
  if (!covers_every_edge(g, surjective_circuit(g))) return fail("circuit misses an edge or is not closed");
  return "";
}

std::string relation_case(Rng& rng) {
  PointRelation r = random_point_relation(rng, 60, 60);
  if (equivalence_closure(r).classes != naive_classes(r)) return fail("point closure differs from saturation");
  DimRelation d = random_dim_relation(rng, 5, 8);
  DimClosure c = dim_closure(d);
  if (c.keys != naive_dim_closure(d)) return fail("dim closure differs from saturation");
  auto locus = invariant_low_locus(d, c);
  for (const auto& k : c.keys) {
    if (locus.count(k.src) && !locus.count(k.dst)) return fail("correspondence leaves the low locus");
  }
  return "";
}

std::string family_case(Rng& rng) {
  FibrationFamily fam = random_family(rng);
  GluingRelation g = build_gluing_relation(fam);
  if (g.closure.classes != naive_gluing_classes(fam)) return fail("gluing classes differ from saturation");
  for (const auto& p : pseudofibres(fam)) {
    if (!p.connected) return fail("pseudofibre of " + p.representative + " is disconnected");
  }
  CompatibilityReport rep = cover_compatibility(fam, random_family_cover(rng, fam));
  if (!rep.preimage_is_union || !rep.image_is_class) return fail("cover does not respect the classes");
  return "";
}

std::string surface_case(Rng& rng) {
  SurfaceCase sc = random_surface_case(rng);
  const SurfaceModel& sm = sc.model;
  DivisorResult good = descend_divisor(sm, sm.divisor("D"));
  auto* d = std::get_if<DivisorDescent>(&good);
  if (!d || !divisor_round_trip(sm, sm.divisor("D"), *d)) return fail("consistent divisor does not descend");
  if (!std::holds_alternative<DivisorObstruction>(descend_divisor(sm, sm.divisor("D-bad")))) {
    return fail("perturbed divisor descended");
  }
  GlobalSectionResult s = synthesize_global_section(sm, sc.at);
  auto* sec = std::get_if<GlobalSection>(&s);
  if (!sec || !global_section_ok(sm, *sec, sc.at)) return fail("global section fails verification");
  if (sc.obstructed && !std::holds_alternative<SectionObstruction>(synthesize_global_section(*sc.obstructed, sc.at))) {
    return fail("twisted model has a section");
  }
  return "";
}

}  // namespace

CaseResult run_case(std::uint64_t seed, std::size_t index) {
  CaseResult out;
  out.index = index;
  const std::size_t kind = index % std::size(kinds);
  out.kind = kinds[kind];
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  Rng rng(seq);
  try {
    switch (kind) {
      case 0: out.detail = monodromy_case(rng); break;
      case 1: out.detail = torsion_case(rng); break;
      case 2: out.detail = cover_case(rng); break;
      case 3: out.detail = circuit_case(rng); break;
      case 4: out.detail = relation_case(rng); break;
      case 5: out.detail = family_case(rng); break;
      default: out.detail = surface_case(rng); break;
    }
  } catch (const std::exception& e) {
    out.detail = std::string("exception: ") + e.what();
  }
  out.ok = out.detail.empty();
  return out;
}

std::vector<CaseResult> run_cases_serial(std::uint64_t seed, std::size_t count) {
  return parallel::map_serial<CaseResult>(count, [&](std::size_t i) { return run_case(seed, i); });
}

std::vector<CaseResult> run_cases_parallel(std::uint64_t seed, std::size_t count) {
  return parallel::map_parallel<CaseResult>(count, [&](std::size_t i) { return run_case(seed, i); });
}

}  // namespace snc::check
