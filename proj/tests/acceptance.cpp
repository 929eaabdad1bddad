// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "check/check.hpp"
#include "snc/error.hpp"

using namespace snc;
using check::Rng;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Tally {
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first;

  void fail(const std::string& what) {
    if (failures++ == 0) first = what;
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

int failed_criteria = 0;

void report(int n, const std::string& name, const Tally& t, const std::string& extra = "") {
  bool ok = t.failures == 0;
  failed_criteria += !ok;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << " " << name << ": " << t.instances << " instances, "
            << t.failures << " failures" << extra;
  if (!ok) std::cout << " (first: " << t.first << ")";
  std::cout << "\n" << std::flush;
}

// Runs body once per instance, counting exceptions as failures.
void each(Tally& t, std::size_t count, const std::function<void(std::size_t)>& body) {
  for (std::size_t i = 0; i < count; ++i) {
    ++t.instances;
    try {
      body(i);
    } catch (const std::exception& e) {
      t.fail("instance " + std::to_string(i) + ": " + e.what());
    }
  }
}

std::string at(std::size_t i) { return "instance " + std::to_string(i); }

// ---------------------------------------------------------------- bundles

void criteria_1_2() {
  Rng rng(1001);
  std::vector<LineBundleModel> bundles;
  for (int i = 0; i < 300; ++i) {
    SncConfiguration cfg = check::random_configuration(rng, {1, 8, 3, true});
    bundles.push_back(check::random_bundle(rng, cfg));
  }

  Tally oracle;
  auto t0 = Clock::now();
  each(oracle, bundles.size(), [&](std::size_t i) {
    oracle.expect(is_trivial(bundles[i]) == check::brute_force_trivial(bundles[i]), at(i) + " verdict differs from the scan");
  });
  double elapsed = seconds_since(t0);
  if (elapsed > 30) oracle.fail("runtime " + std::to_string(elapsed) + " s exceeds 30 s");
  std::ostringstream extra;
  extra.precision(2);
  extra << std::fixed << ", " << elapsed << " s";
  report(1, "monodromy verdict equals reduced-circuit brute force", oracle, extra.str());

  Tally sections;
  std::size_t trivial = 0;
  each(sections, bundles.size(), [&](std::size_t i) {
    const auto& b = bundles[i];
    bool verdict = is_trivial(b);
    trivial += verdict;
    SectionResult r = synthesize_section(b);
    if (auto* s = std::get_if<SectionAssignment>(&r)) {
      sections.expect(verdict, at(i) + " section for a non-trivial bundle");
      sections.expect(s->nowhere_vanishing() && check::section_satisfies(b, *s), at(i) + " section breaks a constraint");
    } else {
      const auto& o = std::get<Obstruction>(r);
      sections.expect(!verdict, at(i) + " obstruction for a trivial bundle");
      sections.expect(check::multiply_along(b, o.circuit) == o.value && !o.value.is_identity(), at(i) + " bad witness");
    }
  });
  report(2, "section exists iff trivial, sections satisfy every edge", sections,
         " (" + std::to_string(trivial) + " trivial)");
}

void criterion_3() {
  Rng rng(1003);
  Tally t;
  each(t, 200, [&](std::size_t i) {
    SncConfiguration cfg = check::random_configuration(rng, {1, 8, 3, true});
    LineBundleModel b = check::random_bundle(rng, cfg, check::CocycleKind::torsion);
    MonodromyCertificate c = monodromy_certificate(b, cfg.components.front().id);
    if (c.verdict == Verdict::non_torsion) return t.fail(at(i) + " torsion cocycle judged non-torsion");
    long n = c.order.get_si();
    for (long k = 1; k < n; ++k) t.expect(!check::brute_force_trivial(tensor_power(b, k)), at(i) + " power below order is trivial");
    t.expect(check::brute_force_trivial(tensor_power(b, n)), at(i) + " power at order is not trivial");
  });
  report(3, "torsion order n: L^n trivial and L^k not for k < n", t);
}

// ---------------------------------------------------------------- covers

void criteria_4_5() {
  Rng rng(1004);
  std::vector<check::CoverCase> cases;
  for (int i = 0; i < 200; ++i) cases.push_back(check::random_cover_case(rng, 4, 6));

  Tally divides;
  each(divides, cases.size(), [&](std::size_t i) {
    const auto& cc = cases[i];
    TorsionDescent t = descend_torsion(cc.cover, cc.bundle);
    divides.expect(t.order_bound == factorial(cc.cover.degree), at(i) + " bound is not degree!");
    divides.expect(mpz_divisible_p(t.order_bound.get_mpz_t(), t.verified_order.get_mpz_t()) != 0,
                   at(i) + " order " + t.verified_order.get_str() + " does not divide " + t.order_bound.get_str());
  });
  report(4, "base torsion order divides degree!", divides);

  Tally index;
  std::size_t vertices = 0;
  each(index, cases.size(), [&](std::size_t i) {
    const auto& cc = cases[i];
    GraphMap f = induced_graph_map(cc.cover);
    for (VertexIndex v = 0; v < f.source.vertex_count(); ++v) {
      std::size_t fibre = 0;
      for (VertexIndex w = 0; w < f.source.vertex_count(); ++w) fibre += f(w) == f(v);
      index.expect(fibre <= cc.cover.degree, at(i) + " fibre exceeds degree");
      VertexIndex local = 0;
      GraphMap part = restrict_to_component(f, v, &local);
      if (!is_surjective(part)) continue;
      ++vertices;
      ImageIndex ix = image_index(part, local);
      index.expect(ix.bound <= cc.cover.degree, at(i) + " index bound exceeds degree");
      index.expect(ix.index && *ix.index <= cc.cover.degree, at(i) + " image index exceeds degree");
      if (ix.index) {
        index.expect(check::index_by_permutation_search(part, local, cc.cover.degree) == *ix.index,
                     at(i) + " image index differs from coset enumeration");
      }
    }
  });
  report(5, "image index and fibre size bounded by degree", index, " (" + std::to_string(vertices) + " vertices)");
}

void criterion_6() {
  Rng rng(1006);
  Tally t;
  each(t, 200, [&](std::size_t i) {
    StallingsGraph g = incidence_graph(check::random_configuration(rng, {2, 15, 6, true}));
    Path c = surjective_circuit(g);
    t.expect(is_circuit(g, c), at(i) + " not closed");
    t.expect(check::covers_every_edge(g, c), at(i) + " misses an edge");
  });
  report(6, "surjective circuit is closed and covers every edge", t);
}

// ---------------------------------------------------------------- relations

DimRelation profinite_fixture(int depth) {
  auto corr = [](std::string id, std::string s, std::string d, int dim, bool fam, bool ds, bool dd) {
    return DimCorrespondence{std::move(id), std::move(s), std::move(d), dim, fam, ds, dd};
  };
  switch (depth) {
    case 0:
      return {{{"A", 2}, {"B", 2}, {"C", 1}}, {corr("t", "A", "B", 2, true, true, true), corr("l", "C", "A", 1, false, true, false)}, {}};
    case 1:
      return {{{"A", 2}, {"B", 2}, {"C", 1}},
              {corr("t", "A", "B", 2, false, true, true), corr("l", "C", "A", 1, false, true, false),
               corr("f", "C", "C", 1, true, true, true)},
              {}};
    default:
      return {{{"A", 2}, {"B", 1}, {"C", 0}},
              {corr("l1", "B", "A", 1, false, true, false), corr("l2", "C", "B", 0, false, true, false),
               corr("f", "C", "C", 0, true, true, true)},
              {}};
  }
}

void criterion_7() {
  Tally t;
  Rng rng(1007);
  each(t, 100, [&](std::size_t i) {
    PointRelation r = check::random_point_relation(rng, 200, 150);
    t.expect(equivalence_closure(r).classes == check::naive_classes(r), at(i) + " point closure differs from saturation");
  });
  each(t, 200, [&](std::size_t i) {
    DimRelation r = check::random_dim_relation(rng, 6, 10, true);
    DimClosure c = dim_closure(r);
    const int D = c.top_dim;
    DimRelation top = r;
    top.generators.clear();
    for (const auto& g : r.generators) {
      if (g.dim == D) top.generators.push_back(g);
    }
    auto slice = c.slice(D);
    t.expect(slice == dim_closure(top).slice(D), at(i) + " top slice depends on lower generators");
    for (const auto& [s, dim] : r.strata) t.expect(slice.count({s, s, D, false, true, true}) == 1, at(i) + " slice not reflexive");
    for (const auto& a : slice) {
      t.expect(slice.count(a.flipped()) == 1, at(i) + " slice not symmetric");
      for (const auto& b : slice) {
        auto ab = compose(a, b, r);
        if (ab && ab->dim == D) t.expect(slice.count(*ab) == 1, at(i) + " slice not transitive");
      }
    }
  });
  each(t, 100, [&](std::size_t i) {
    DimRelation r = check::random_dim_relation(rng, 6, 10);
    DimClosure c = dim_closure(r);
    auto locus = invariant_low_locus(r, c);
    for (const auto& k : c.slice(c.top_dim)) {
      t.expect(!locus.count(k.src) || locus.count(k.dst), at(i) + " correspondence leaves the low locus");
    }
  });
  std::size_t depths = 0;
  for (int depth : {0, 1, 2}) {
    ++t.instances;
    ProfiniteResult r = profinite_analysis(profinite_fixture(depth));
    bool equidim = true;
    for (const auto& [s, d] : r.dims) equidim = equidim && d == r.dim;
    for (const auto& k : r.restricted) equidim = equidim && k.dim == r.dim;
    bool ok = r.infinite && r.depth == static_cast<std::size_t>(depth) && equidim && !r.restricted.empty();
    t.expect(ok, "profinite fixture of depth " + std::to_string(depth) + " answered depth " + std::to_string(r.depth));
    depths += ok;
  }
  report(7, "closures, top slice, low locus, profinite depth", t,
         " (" + std::to_string(depths) + "/3 profinite fixtures at predicted depth)");
}

// ---------------------------------------------------------------- gluing

void criterion_8() {
  Rng rng(1008);
  Tally t;
  each(t, 500, [&](std::size_t i) {
    FibrationFamily fam = check::random_family(rng, true);
    t.expect(build_gluing_relation(fam).closure.classes == check::naive_gluing_classes(fam), at(i) + " classes differ");
    for (const auto& p : pseudofibres(fam)) t.expect(p.connected, at(i) + " pseudofibre " + p.representative + " disconnected");
  });
  each(t, 100, [&](std::size_t i) {
    FibrationFamily down = check::random_family(rng, check::coin(rng, 0.7));
    FamilyCover cover = check::random_family_cover(rng, down);
    CompatibilityReport rep = cover_compatibility(down, cover);
    // Independent check: sigma-images of upstairs classes are exactly the
    // downstairs classes, and preimages are disjoint unions of classes.
    GluingRelation up = build_gluing_relation(cover.up);
    GluingRelation dn = build_gluing_relation(down);
    std::set<std::set<std::string>> image, target;
    for (const auto& cls : up.closure.classes) {
      std::set<std::string> im;
      for (const auto& x : cls) im.insert(rep.sigma.at(x));
      image.insert(im);
    }
    for (const auto& cls : dn.closure.classes) target.insert({cls.begin(), cls.end()});
    bool disjoint = true;
    for (const auto& [x, sx] : rep.sigma) {
      for (const auto& [y, sy] : rep.sigma) {
        if (up.closure.related(x, y) && !dn.closure.related(sx, sy)) disjoint = false;
      }
    }
    t.expect(image == target && disjoint, at(i) + " partitions differ");
    t.expect(rep.preimage_is_union && rep.image_is_class, at(i) + " report disagrees");
  });
  report(8, "pseudofibres connected, cover partition identity", t);
}

void criterion_9() {
  Rng rng(1009);
  Tally t;
  std::size_t twisted = 0;
  auto t0 = Clock::now();
  each(t, 100, [&](std::size_t i) {
    check::SurfaceCase sc = check::random_surface_case(rng);
    const SurfaceModel& sm = sc.model;
    DivisorResult good = descend_divisor(sm, sm.divisor("D"));
    auto* d = std::get_if<DivisorDescent>(&good);
    t.expect(d && check::divisor_round_trip(sm, sm.divisor("D"), *d), at(i) + " m D not reconstructed");
    t.expect(std::holds_alternative<DivisorObstruction>(descend_divisor(sm, sm.divisor("D-bad"))),
             at(i) + " perturbed divisor descended");
    GlobalSectionResult g = synthesize_global_section(sm, sc.at);
    auto* s = std::get_if<GlobalSection>(&g);
    t.expect(s && verify_section(sm, *s) && check::global_section_ok(sm, *s, sc.at), at(i) + " section fails");
    if (sc.obstructed) {
      ++twisted;
      t.expect(std::holds_alternative<SectionObstruction>(synthesize_global_section(*sc.obstructed, sc.at)),
               at(i) + " twisted model has a section");
    }
  });
  std::ostringstream extra;
  extra.precision(2);
  extra << std::fixed << " (" << twisted << " twisted), " << seconds_since(t0) << " s";
  report(9, "divisor descent round trip, obstructions, glued sections", t, extra.str());
}

}  // namespace

int main() {
  auto t0 = Clock::now();
  criteria_1_2();
  criterion_3();
  criteria_4_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("total %.2f s, %d failed criteria\n", seconds_since(t0), failed_criteria);
  return failed_criteria;
}
