#include <doctest.h>

#include "check/check.hpp"
#include "snc/error.hpp"
#include "snc/io.hpp"
#include "support.hpp"

using namespace snc;
using io::Json;

namespace {

// Parsed, re-serialized text must be a fixed point of parse -> dump.
template <class Parse>
void round_trip(const std::string& name, Parse parse) {
  CAPTURE(name);
  Json j = io::read_file(test::fixture(name));
  std::string once = io::dump(io::to_json(parse(j)));
  std::string twice = io::dump(io::to_json(parse(Json::parse(once))));
  CHECK(once == twice);
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("fixtures round trip byte for byte") {
    auto ctx = test::fixture_context();
    for (const char* f : {"triangle.json", "theta.json"}) round_trip(f, [](const Json& j) { return io::configuration_from_json(j); });
    for (const char* f : {"triangle-torsion3.json", "triangle-obstructed.json", "triangle-trivial.json", "theta-nontorsion.json"}) {
      round_trip(f, [&](const Json& j) { return io::bundle_from_json(j, ctx); });
    }
    round_trip("hexagon-cover.json", [&](const Json& j) { return io::cover_from_json(j, ctx); });
    round_trip("curve-cover.json", [&](const Json& j) { return io::curve_cover_from_json(j, ctx); });
    round_trip("points.json", [](const Json& j) { return io::point_relation_from_json(j); });
    for (const char* f : {"profinite-depth0.json", "profinite-depth1.json", "profinite-depth2.json"}) {
      round_trip(f, [](const Json& j) { return io::dim_relation_from_json(j); });
    }
    round_trip("chain-family.json", [](const Json& j) { return io::family_from_json(j); });
    round_trip("surface.json", [](const Json& j) { return io::surface_from_json(j); });
  }

  TEST_CASE("random instances round trip") {
    check::Rng rng(97);
    for (int i = 0; i < 40; ++i) {
      SncConfiguration cfg = check::random_configuration(rng);
      LineBundleModel b = check::random_bundle(rng, cfg);
      std::string text = io::dump(io::to_json(b));
      LineBundleModel back = io::bundle_from_json(Json::parse(text));
      CHECK(back == b);
      CHECK(io::dump(io::to_json(back)) == text);

      FibrationFamily fam = check::random_family(rng);
      std::string ft = io::dump(io::to_json(fam));
      CHECK(io::dump(io::to_json(io::family_from_json(Json::parse(ft)))) == ft);

      SurfaceModel sm = check::random_surface_case(rng).model;
      std::string st = io::dump(io::to_json(sm));
      CHECK(io::dump(io::to_json(io::surface_from_json(Json::parse(st)))) == st);

      DimRelation dr = check::random_dim_relation(rng, 5, 8);
      std::string dt = io::dump(io::to_json(dr));
      CHECK(io::dump(io::to_json(io::dim_relation_from_json(Json::parse(dt)))) == dt);
    }
  }

  TEST_CASE("reverse transitions are inverted") {
    Json j = {{"v", 1},
              {"configuration", "triangle.json"},
              {"transitions", {{{"edge", "~e12"}, {"modulus", "2"}, {"phase", "1/3"}}}}};
    LineBundleModel b = io::bundle_from_json(j, test::fixture_context());
    CHECK(b.piece_transition("e12") == ExactScalar(Rational(1, 2), Rational(2, 3)));
    j["transitions"].push_back({{"edge", "e12"}, {"modulus", "2"}});
    CHECK_THROWS_AS(io::bundle_from_json(j, test::fixture_context()), InputError);
  }

  TEST_CASE("inline nested documents get the version") {
    Json cfg = io::read_file(test::fixture("triangle.json"));
    cfg.erase("v");
    Json j = {{"v", 1}, {"configuration", cfg}};
    CHECK(io::bundle_from_json(j).base().components.size() == 3);
  }

  TEST_CASE("schema errors") {
    CHECK_THROWS_AS(io::configuration_from_json(Json{{"components", Json::array()}}), InputError);
    CHECK_THROWS_AS(io::configuration_from_json(Json{{"v", 2}, {"components", Json::array()}}), InputError);
    CHECK_THROWS_AS(io::configuration_from_json(Json{{"v", 1}, {"components", 3}, {"intersections", Json::array()}}), InputError);
    CHECK_THROWS_AS(io::configuration_from_json(Json{{"v", 1}, {"components", {{{"id", "Z"}}}}, {"intersections", Json::array()}}),
                    InputError);
    CHECK_THROWS_AS(io::rational_from_json(Json(0.5)), InputError);
    CHECK_THROWS_AS(io::read_file(test::fixture("missing.json")), InputError);
    CHECK(io::rational_from_json(Json(3)) == 3);
  }

  TEST_CASE("certificates serialize the witness") {
    LineBundleModel b = test::load_bundle("theta-nontorsion.json");
    Json c = io::to_json(monodromy_certificate(b, "Z1"), b.graph());
    CHECK(c["verdict"] == "non-torsion");
    CHECK(c["order"] == "0");
    CHECK(c["witness"] == Json({"f1", "~f2"}));
  }
}
