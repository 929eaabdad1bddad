#include <doctest.h>

#include "check/check.hpp"
#include "snc/error.hpp"
#include "snc/gluing.hpp"
#include "support.hpp"

using namespace snc;
using test::scalar;

namespace {

FibrationFamily chain() { return io::family_from_json(io::read_file(test::fixture("chain-family.json"))); }
SurfaceModel surface(const char* name) { return io::surface_from_json(io::read_file(test::fixture(name))); }

// Every point of the chain split into two sheets, fibres split alike.
FamilyCover doubled(const FibrationFamily& down) {
  FamilyCover c;
  for (const auto& t : down.components) {
    FamilyComponent u{t.id + "'", {}, {}, {}};
    for (const auto& y : t.points) {
      for (int k = 0; k < 2; ++k) {
        std::string yk = y + "#" + std::to_string(k);
        u.points.push_back(yk);
        u.phi[yk] = t.phi.at(y) + "#" + std::to_string(k);
        c.point_map[qualified(u.id, yk)] = qualified(t.id, y);
      }
    }
    c.component_map[u.id] = t.id;
    c.up.components.push_back(u);
  }
  for (const auto& s : down.shared_points) {
    for (int k = 0; k < 2; ++k) {
      SharedPoint sk{s.id + "#" + std::to_string(k), {}};
      for (const auto& a : s.aliases) {
        auto [t, y] = split_qualified(a);
        sk.aliases.push_back(qualified(t + "'", y + "#" + std::to_string(k)));
      }
      c.up.shared_points.push_back(sk);
    }
  }
  return c;
}

SurfaceModel with_kappa0(bool twisted) {
  // S1 (kappa 1) over Q1 with one fibre over p; E (kappa 0) is a single
  // fibre class over p glued to it at one or two points.
  SurfaceModel sm;
  sm.curve = {{"Q1"}, {{"p", "Q1", false}}};
  sm.fibrations = {{"S1", 1, "Q1", {{"F", "p", {"C1"}}}}, {"E", 0, "Q1", {{"E", "p", {"E1"}}}}};
  sm.pullback_weights = {{{"S1", "C1"}, Rational(1)}, {{"E", "E1"}, Rational(1)}};
  sm.shared_points.push_back({"y1", "p", {{"S1", "F", "C1"}, {"E", "E", "E1"}}, scalar("3", "1/4")});
  if (twisted) sm.shared_points.push_back({"y2", "p", {{"S1", "F", "C1"}, {"E", "E", "E1"}}, scalar("3", "3/4")});
  return sm;
}

}  // namespace

TEST_SUITE("gluing") {
  TEST_CASE("chain family classes") {
    FibrationFamily fam = chain();
    GluingRelation g = build_gluing_relation(fam);
    CHECK(g.closure.classes == std::vector<std::vector<std::string>>{{"T1:x", "T2:y", "T3:z"}, {"T2:y2"}});
    CHECK(g.closure.classes == check::naive_gluing_classes(fam));
    CHECK(base_points(fam) == std::vector<std::string>{"T1:x", "T2:y", "T2:y2", "T3:z"});
  }

  TEST_CASE("chain pseudofibre is connected through two shared points") {
    PseudoFibre p = pseudofibre(chain(), "T3:z");
    CHECK(p.members == std::vector<std::string>{"T1:x", "T2:y", "T3:z"});
    CHECK(p.connected);
    // u1, u3 and the two shared points; shared points appear once.
    CHECK(p.points == std::vector<std::string>{"T1:u1", "T3:u3", "y12", "y23"});
    CHECK_THROWS_AS(pseudofibre(chain(), "T9:q"), InputError);
  }

  TEST_CASE("malformed families") {
    FibrationFamily fam = chain();
    fam.shared_points.push_back({"bad", {"T1:nope", "T2:s12"}});
    CHECK_THROWS_AS(check_family(fam), InputError);
    FibrationFamily phi = chain();
    phi.components[0].phi.erase("u1");
    CHECK_THROWS_AS(check_family(phi), InputError);
    FibrationFamily colon = chain();
    colon.components[0].id = "T:1";
    CHECK_THROWS_AS(check_family(colon), InputError);
  }

  TEST_CASE("two sheeted cover of the chain") {
    FibrationFamily down = chain();
    FamilyCover c = doubled(down);
    CompatibilityReport rep = cover_compatibility(down, c);
    CHECK(rep.sigma.size() == 8);
    std::map<std::string, int> hits;
    for (const auto& [up, d] : rep.sigma) ++hits[d];
    for (const auto& [d, n] : hits) CHECK(n == 2);
    CHECK(rep.preimage_is_union);
    CHECK(rep.image_is_class);
  }

  TEST_CASE("birational cover deleting a non-shared point") {
    FibrationFamily down = chain();
    FamilyCover c;
    c.up = down;
    c.up.components[0].points.push_back("e");
    c.up.components[0].phi["e"] = "x";
    c.birational = true;
    for (const auto& t : down.components) {
      c.component_map[t.id] = t.id;
      for (const auto& y : t.points) c.point_map[qualified(t.id, y)] = qualified(t.id, y);
    }
    CompatibilityReport rep = cover_compatibility(down, c);
    CHECK(rep.partitions_equal);
    CHECK(rep.preimage_is_union);
  }

  TEST_CASE("a square that does not commute is rejected") {
    FibrationFamily down = chain();
    FamilyCover c = doubled(down);
    c.point_map["T1':u1#0"] = "T2:u2";
    CHECK_THROWS_AS(cover_compatibility(down, c), InputError);
  }

  TEST_CASE("random families and covers") {
    check::Rng rng(83);
    for (int i = 0; i < 100; ++i) {
      FibrationFamily fam = check::random_family(rng);
      GluingRelation g = build_gluing_relation(fam);
      CHECK(g.closure.classes == check::naive_gluing_classes(fam));
      for (const auto& p : pseudofibres(fam)) CHECK(p.connected);
      CompatibilityReport rep = cover_compatibility(fam, check::random_family_cover(rng, fam));
      CHECK(rep.preimage_is_union);
      CHECK(rep.image_is_class);
    }
  }

  TEST_CASE("divisor descends with m = 2") {
    SurfaceModel sm = surface("surface.json");
    DivisorResult r = descend_divisor(sm, sm.divisor("D"));
    auto* d = std::get_if<DivisorDescent>(&r);
    REQUIRE(d);
    CHECK(d->m == 2);
    CHECK(d->delta == std::map<std::string, Integer>{{"p", 1}});
    CHECK(d->alpha.at("p") == Rational(1, 2));
    CHECK(check::divisor_round_trip(sm, sm.divisor("D"), *d));
    auto pulled = pullback_divisor(sm, d->delta);
    CHECK(pulled.at({"S2", "Dp2"}) == 2);
  }

  TEST_CASE("inconsistent weights give a one-step chain") {
    SurfaceModel sm = surface("surface.json");
    DivisorResult r = descend_divisor(sm, sm.divisor("D-bad"));
    auto* o = std::get_if<DivisorObstruction>(&r);
    REQUIRE(o);
    CHECK(o->point == "p");
    CHECK(o->shared_point == "y1");
    std::set<std::string> named{o->from.component, o->to.component};
    CHECK(named == std::set<std::string>{"S1", "S2"});
    CHECK(o->from_scale != o->to_scale);
  }

  TEST_CASE("divisor hypotheses") {
    SurfaceModel sm = surface("surface.json");
    SurfaceDivisor skew{"skew", {{{"S2", "Dp1"}, Rational(1)}, {{"S2", "Dp2"}, Rational(1)}}};
    CHECK_THROWS_AS(descend_divisor(sm, skew), HypothesisError);
    CHECK_THROWS_AS(sm.divisor("nope"), InputError);
  }

  TEST_CASE("global section on the fixture") {
    SurfaceModel sm = surface("surface.json");
    GlobalSectionResult r = synthesize_global_section(sm, {"S1", "Fp"});
    auto* s = std::get_if<GlobalSection>(&r);
    REQUIRE(s);
    CHECK(verify_section(sm, *s));
    CHECK(s->values.at({"S1", "Fp"}) == ExactScalar::identity());
    CHECK(s->values.at({"S2", "Gq"}) / s->values.at({"S1", "Fq"}) == scalar("1", "1/2"));
    CHECK(check::global_section_ok(sm, *s, {"S1", "Fp"}));
  }

  TEST_CASE("kappa zero component matched at one point") {
    SurfaceModel sm = with_kappa0(false);
    GlobalSectionResult r = synthesize_global_section(sm, {"S1", "F"});
    auto* s = std::get_if<GlobalSection>(&r);
    REQUIRE(s);
    CHECK(s->values.at({"E", "E"}) == scalar("3", "1/4"));
    CHECK(verify_section(sm, *s));
  }

  TEST_CASE("kappa zero cycle with sign monodromy is obstructed") {
    SurfaceModel sm = with_kappa0(true);
    GlobalSectionResult r = synthesize_global_section(sm, {"S1", "F"});
    auto* o = std::get_if<SectionObstruction>(&r);
    REQUIRE(o);
    CHECK(o->monodromy == scalar("1", "1/2"));
    CHECK(o->circuit.size() == 2);
  }

  TEST_CASE("twisted fixture is obstructed") {
    SurfaceModel sm = surface("surface-twisted.json");
    auto r = synthesize_global_section(sm, {"S1", "Fp"});
    CHECK(std::holds_alternative<SectionObstruction>(r));
  }

  TEST_CASE("random surfaces") {
    check::Rng rng(89);
    for (int i = 0; i < 40; ++i) {
      check::SurfaceCase sc = check::random_surface_case(rng);
      const SurfaceModel& sm = sc.model;
      DivisorResult r = descend_divisor(sm, sm.divisor("D"));
      auto* d = std::get_if<DivisorDescent>(&r);
      REQUIRE(d);
      CHECK(check::divisor_round_trip(sm, sm.divisor("D"), *d));
      CHECK(std::holds_alternative<DivisorObstruction>(descend_divisor(sm, sm.divisor("D-bad"))));
      auto g = synthesize_global_section(sm, sc.at);
      auto* s = std::get_if<GlobalSection>(&g);
      REQUIRE(s);
      CHECK(check::global_section_ok(sm, *s, sc.at));
    }
  }
}
