#include <doctest.h>

#include <set>

#include "check/check.hpp"
#include "snc/core.hpp"
#include "snc/error.hpp"
#include "support.hpp"

using namespace snc;

namespace {

bool has_finding(const ValidationReport& r, const std::string& text) {
  for (const auto& f : r.findings) {
    if (f.message.find(text) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("well formed configurations validate") {
    auto r = validate_configuration(test::load_configuration("triangle.json"));
    CHECK(r.ok);
    CHECK(r.findings.empty());
  }

  TEST_CASE("structural errors are reported") {
    SncConfiguration cfg{{{"Z1", 2, ""}, {"Z2", 2, ""}, {"Z1", 1, ""}},
                         {{"f", "Z1", "Z1", ""}, {"g", "Z1", "Z9", ""}, {"~h", "Z1", "Z2", ""}, {"Z2", "Z1", "Z2", ""}},
                         {{"s", {"Z1", "Z2"}, 2}, {"t", {}, 0}}};
    auto r = validate_configuration(cfg);
    CHECK_FALSE(r.ok);
    CHECK(has_finding(r, "duplicate component"));
    CHECK(has_finding(r, "self-intersection"));
    CHECK(has_finding(r, "is not a component"));
    CHECK(has_finding(r, "not start with '~'"));
    CHECK(has_finding(r, "collides"));
    CHECK(has_finding(r, "not proper"));
    CHECK(has_finding(r, "no carrier"));
    CHECK_THROWS_AS(require_valid(cfg), InputError);
    CHECK_THROWS_AS(incidence_graph(cfg), InputError);
  }

  TEST_CASE("theta configuration") {
    StallingsGraph g = incidence_graph(test::load_configuration("theta.json"));
    CHECK(g.vertex_count() == 2);
    CHECK(g.geometric_edge_count() == 2);
    // Rank E - V + 1 from a spanning tree count on the connected graph.
    CHECK(g.geometric_edge_count() - g.vertex_count() + 1 == pi1_basis(g, 0).rank());
    CHECK(g.edge_id(g.bar(g.edge_at("f1"))) == "~f1");
    CHECK(g.vertex_id(g.initial(g.edge_at("f2"))) == "Z1");
    CHECK(g.vertex_id(g.terminal(g.edge_at("f2"))) == "Z2");
  }

  TEST_CASE("reverse edge ids") {
    CHECK(reverse_edge_id("e12") == "~e12");
  }

  TEST_CASE("canonicalize sorts every list") {
    SncConfiguration cfg{{{"B", 2, ""}, {"A", 2, ""}}, {{"y", "A", "B", ""}, {"x", "B", "A", ""}}, {}};
    cfg.canonicalize();
    CHECK(cfg.components.front().id == "A");
    CHECK(cfg.intersections.front().id == "x");
    CHECK(cfg.find_piece("y")->a == "A");
    CHECK(cfg.find_component("C") == nullptr);
  }

  TEST_CASE("incidence graph invariants on random configurations") {
    check::Rng rng(3);
    for (int i = 0; i < 100; ++i) {
      SncConfiguration cfg = check::random_configuration(rng, {1, 8, 4, check::coin(rng)});
      REQUIRE(validate_configuration(cfg).ok);
      StallingsGraph g = incidence_graph(cfg);
      CHECK(g.vertex_count() == cfg.components.size());
      CHECK(g.geometric_edge_count() == cfg.intersections.size());
      std::set<std::string> ids;
      for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        CHECK(g.bar(e) != e);
        CHECK(g.bar(g.bar(e)) == e);
        CHECK(g.initial(g.bar(e)) == g.terminal(e));
        ids.insert(g.edge_id(e));
      }
      CHECK(ids.size() == g.edge_count());
      for (const auto& p : cfg.intersections) {
        EdgeIndex e = g.edge_at(p.id);
        CHECK(g.is_positive(e));
        CHECK(g.vertex_id(g.initial(e)) == p.a);
        CHECK(g.vertex_id(g.terminal(e)) == p.b);
      }
    }
  }
}
