#include <doctest.h>

#include <set>

#include "check/check.hpp"
#include "snc/error.hpp"
#include "snc/relation.hpp"
#include "support.hpp"

using namespace snc;

namespace {

DimRelation load_dim(const std::string& name) { return io::dim_relation_from_json(io::read_file(test::fixture(name))); }

CorrKey key(const std::string& s, const std::string& d, int dim, bool fam = false, bool ds = false, bool dd = false) {
  return {s, d, dim, fam, ds, dd};
}

}  // namespace

TEST_SUITE("relations") {
  TEST_CASE("fixture closure") {
    PointRelation r = io::point_relation_from_json(io::read_file(test::fixture("points.json")));
    PointClosure c = equivalence_closure(r);
    CHECK(c.classes == std::vector<std::vector<std::string>>{{"p1", "p2", "p3"}, {"p4", "p5"}, {"p6"}});
    CHECK(c.related("p3", "p1"));
    CHECK_FALSE(c.related("p3", "p4"));
    CHECK(c.witness("p1", "p3") == std::vector<std::string>{"g", "h"});
    CHECK(c.witness("p2", "p2").empty());
    CHECK_THROWS_AS(c.witness("p1", "p6"), InputError);
    CHECK(c.pairs().size() == 9 + 4 + 1);
  }

  TEST_CASE("bad relations are rejected") {
    PointRelation r{{{"S", 1}}, {{"a", "S"}, {"b", "T"}}, {}};
    CHECK_THROWS_AS(check_relation(r), InputError);
    PointRelation d{{{"S", 1}}, {{"a", "S"}, {"a", "S"}}, {}};
    CHECK_THROWS_AS(check_relation(d), InputError);
    PointRelation p{{{"S", 1}}, {{"a", "S"}}, {{"a", "z", "g"}}};
    CHECK_THROWS_AS(check_relation(p), InputError);
  }

  TEST_CASE("closure matches Warshall saturation") {
    check::Rng rng(61);
    for (int i = 0; i < 100; ++i) {
      PointRelation r = check::random_point_relation(rng, 50, 50);
      PointClosure c = equivalence_closure(r);
      CHECK(c.classes == check::naive_classes(r));
      // Every witness step is a declared pair.
      std::set<std::pair<std::string, std::string>> declared;
      for (const auto& p : r.pairs) {
        declared.insert({p.a, p.b});
        declared.insert({p.b, p.a});
      }
      for (const auto& [point, step] : c.trace) CHECK(declared.count({point, step.parent}));
    }
  }

  TEST_CASE("pullback along a two to one map") {
    PointRelation r{{{"S", 1}}, {{"a", "S"}, {"b", "S"}}, {{"a", "b", "g"}}};
    std::map<std::string, std::string> g{{"a0", "a"}, {"a1", "a"}, {"b0", "b"}, {"b1", "b"}};
    PointRelation up = pullback_relation(r, g);
    std::size_t lifted = 0;
    for (const auto& p : up.pairs) lifted += p.generator.rfind("g", 0) == 0;
    CHECK(lifted == 4);
    CHECK_THROWS_AS(pullback_relation(r, {{"a0", "a"}}), InputError);
  }

  TEST_CASE("closure of a pullback refines the pullback of the closure") {
    check::Rng rng(67);
    for (int i = 0; i < 60; ++i) {
      PointRelation r = check::random_point_relation(rng, 20, 15);
      std::map<std::string, std::string> g;
      for (const auto& p : r.points) {
        std::size_t k = check::uniform(rng, 1, 3);
        for (std::size_t j = 0; j < k; ++j) g[p.id + "'" + std::to_string(j)] = p.id;
      }
      PointClosure down = equivalence_closure(r);
      PointClosure up = equivalence_closure(pullback_relation(r, g));
      PointRelation refl = r;
      for (const auto& p : r.points) refl.pairs.push_back({p.id, p.id, "id"});
      PointClosure up_refl = equivalence_closure(pullback_relation(refl, g));
      for (const auto& [x, gx] : g) {
        for (const auto& [y, gy] : g) {
          if (up.related(x, y)) CHECK(down.related(gx, gy));
          CHECK(up_refl.related(x, y) == down.related(gx, gy));
        }
      }
    }
  }

  TEST_CASE("composition of correspondences") {
    DimRelation table{{{"A", 2}, {"B", 2}, {"C", 2}}, {}, {}};
    auto top = compose(key("A", "B", 2, false, true, true), key("B", "C", 2, false, true, true), table);
    REQUIRE(top);
    CHECK(top->dim == 2);
    CHECK(top->dominant_src);
    CHECK(top->dominant_dst);
    auto low = compose(key("A", "B", 2, false, true, true), key("B", "C", 1, true), table);
    REQUIRE(low);
    CHECK(low->dim <= 1);
    CHECK(low->family);
    CHECK_FALSE(compose(key("A", "B", 2), key("C", "A", 2), table));
    DimRelation overlap{{{"A", 2}, {"B", 2}, {"C", 2}}, {}, {{"B", "C", 1}}};
    auto through = compose(key("A", "B", 2, false, true, true), key("C", "A", 2, false, true, true), overlap);
    REQUIRE(through);
    CHECK(through->dim == 1);
    CHECK_FALSE(through->dominant_src);
  }

  TEST_CASE("top slice of an all-top relation closes on its own") {
    check::Rng rng(71);
    for (int i = 0; i < 100; ++i) {
      DimRelation r = check::random_dim_relation(rng, 6, 10, true);
      DimClosure c = dim_closure(r);
      DimRelation top = r;
      top.generators.clear();
      for (const auto& g : r.generators) {
        if (g.dim == r.top_dim()) top.generators.push_back(g);
      }
      CHECK(c.slice(c.top_dim) == dim_closure(top).slice(c.top_dim));
      // The slice is an equivalence on strata: symmetric and transitive.
      auto slice = c.slice(c.top_dim);
      for (const auto& k : slice) CHECK(slice.count(k.flipped()));
    }
  }

  TEST_CASE("dim closure matches exhaustive saturation") {
    check::Rng rng(73);
    for (int i = 0; i < 100; ++i) {
      DimRelation r = check::random_dim_relation(rng, 6, 12);
      DimClosure c = dim_closure(r);
      CHECK(c.keys == check::naive_dim_closure(r));
      for (const auto& k : c.keys) {
        CHECK(c.trace.count(k));
        CHECK_FALSE(c.support(k).empty());
      }
    }
  }

  TEST_CASE("low locus reaches along top correspondences") {
    DimRelation r{{{"A", 2}, {"B", 2}, {"C", 2}},
                  {{"low", "A", "A", 1, false, false, false}, {"t", "A", "B", 2, false, true, true}},
                  {}};
    CHECK(invariant_low_locus(r) == std::set<std::string>{"A", "B"});
  }

  TEST_CASE("low locus never leaks") {
    check::Rng rng(79);
    for (int i = 0; i < 100; ++i) {
      DimRelation r = check::random_dim_relation(rng, 6, 10);
      DimClosure c = dim_closure(r);
      auto locus = invariant_low_locus(r, c);
      for (const auto& k : c.slice(c.top_dim)) CHECK((!locus.count(k.src) || locus.count(k.dst)));
    }
  }

  TEST_CASE("profinite fixtures") {
    ProfiniteResult r0 = profinite_analysis(load_dim("profinite-depth0.json"));
    CHECK(r0.infinite);
    CHECK(r0.depth == 0);
    CHECK(r0.strata == std::set<std::string>{"A", "B"});

    for (auto [name, depth, dim] : {std::tuple{"profinite-depth1.json", 1, 1}, std::tuple{"profinite-depth2.json", 2, 0}}) {
      ProfiniteResult r = profinite_analysis(load_dim(name));
      CAPTURE(name);
      CHECK(r.infinite);
      CHECK(r.depth == static_cast<std::size_t>(depth));
      CHECK(r.dim == dim);
      CHECK(r.strata == std::set<std::string>{"A", "B", "C"});
      for (const auto& [s, d] : r.dims) CHECK(d == dim);
      for (const auto& k : r.restricted) CHECK(k.dim == dim);
    }

    ProfiniteResult f = profinite_analysis(load_dim("profinite-finite.json"));
    CHECK_FALSE(f.infinite);
    CHECK(f.classes == std::vector<std::vector<std::string>>{{"A", "B", "C"}});
  }

  TEST_CASE("dim pullback lifts each generator to every fibre pair") {
    DimRelation r{{{"A", 2}, {"B", 1}}, {{"g", "A", "B", 1, false, false, true}}, {}};
    DimRelation up = pullback_relation(r, {{"A0", "A"}, {"A1", "A"}, {"B0", "B"}, {"B1", "B"}});
    CHECK(up.generators.size() == 4);
    CHECK(up.strata.at("A1") == 2);
    CHECK_THROWS_AS(pullback_relation(r, {{"A0", "A"}, {"B0", "B"}}, {{"A0", 1}}), InputError);
    CHECK_THROWS_AS(pullback_relation(r, {{"A0", "A"}}), InputError);
  }
}
