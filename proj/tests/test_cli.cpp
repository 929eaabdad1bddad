#include <doctest.h>

#include <sstream>

#include "check/check.hpp"
#include "snc/cli.hpp"
#include "support.hpp"

using namespace snc;
using io::Json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args, int expect) {
  args.insert(args.begin(), {"--format", "json"});
  Outcome o = run(args);
  CHECK(o.code == expect);
  return Json::parse(o.out);
}

std::string fx(const char* name) { return test::fixture(name); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("torsion fixture") {
    Outcome o = run({"torsion", fx("triangle-torsion3.json")});
    CHECK(o.code == 0);
    CHECK(o.out.rfind("torsion, order 3\n", 0) == 0);
    CHECK(o.out.find("certificate:") != std::string::npos);
  }

  TEST_CASE("obstructed section lists the witness and re-verifies") {
    Json j = run_json({"section", fx("triangle-obstructed.json")}, 1);
    CHECK(j["exit"] == 1);
    const Json& cert = j["certificate"];
    CHECK(cert["status"] == "obstruction");
    // Re-multiply the fixture transitions along the listed circuit.
    LineBundleModel b = test::load_bundle("triangle-obstructed.json");
    ExactScalar value;
    for (const auto& id : cert["circuit"]) {
      std::string e = id.get<std::string>();
      value *= e[0] == '~' ? b.piece_transition(e.substr(1)).inverse() : b.piece_transition(e);
    }
    CHECK(value == io::scalar_from_json(cert["value"]));
    CHECK_FALSE(value.is_identity());
  }

  TEST_CASE("sections re-verify against the fixture") {
    Json j = run_json({"section", fx("triangle-trivial.json")}, 0);
    LineBundleModel b = test::load_bundle("triangle-trivial.json");
    std::map<std::string, ExactScalar> v;
    for (const auto& e : j["certificate"]["values"]) v[e["component"]] = io::scalar_from_json(e["value"]);
    for (const auto& p : b.base().intersections) CHECK(v.at(p.b) == b.piece_transition(p.id) * v.at(p.a));
  }

  TEST_CASE("exit codes") {
    CHECK(run({"validate", fx("bad-selfloop.json")}).code == 2);
    CHECK(run({"validate", fx("triangle.json")}).code == 0);
    CHECK(run({"validate", fx("surface.json")}).code == 0);
    CHECK(run({"validate", fx("chain-family.json")}).code == 0);
    CHECK(run({"validate", fx("hexagon-cover.json")}).code == 0);
    CHECK(run({"monodromy", fx("theta-nontorsion.json")}).code == 1);
    CHECK(run({"monodromy", fx("theta-nontorsion.json"), "--base", "Z2"}).code == 1);
    CHECK(run({"monodromy", fx("theta-nontorsion.json"), "--base", "nope"}).code == 2);
    CHECK(run({"torsion", fx("missing.json")}).code == 2);
    CHECK(run({"torsion", fx("triangle.json")}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--format", "xml", "torsion", fx("triangle-torsion3.json")}).code == 2);
    CHECK(run({"lift", fx("hexagon-cover.json")}).code == 2);
    Outcome hyp = run({"descend-torsion", fx("hexagon-cover.json"), fx("triangle-torsion3.json")});
    CHECK(hyp.code == 2);
    Outcome nontrivial = run({"descend-torsion", fx("hexagon-cover.json"), fx("hexagon-cube-bundle.json")});
    CHECK(nontrivial.code == 1);
    CHECK(nontrivial.out.find("hypothesis failure") != std::string::npos);
  }

  TEST_CASE("cover commands") {
    Json d = run_json({"descend-torsion", fx("hexagon-cover.json"), fx("hexagon-base-bundle.json")}, 0);
    CHECK(d["certificate"]["order_bound"] == "2");
    CHECK(d["certificate"]["verified_order"] == "2");
    CHECK(d["certificate"]["divides"] == true);
    Json l = run_json({"lift", fx("hexagon-cover.json"), "--circuit", "ab,bc,ca"}, 0);
    CHECK(l["certificate"]["multiplier"] == 2);
    CHECK(l["certificate"]["lifted"]["edges"].size() == 6);
    Json c = run_json({"lift", fx("curve-cover.json"), "--circuit", "ab,~ba"}, 0);
    CHECK(c["certificate"]["multiplier"] == 1);
  }

  TEST_CASE("relation commands") {
    Json c = run_json({"closure", fx("points.json")}, 0);
    CHECK(c["certificate"]["classes"].size() == 3);
    Json d = run_json({"closure", fx("profinite-depth1.json")}, 0);
    CHECK(d["certificate"]["top_dim"] == 2);
    Json p = run_json({"profinite", fx("profinite-depth2.json")}, 0);
    CHECK(p["certificate"]["verdict"] == "infinite");
    CHECK(p["certificate"]["depth"] == 2);
    Json f = run_json({"profinite", fx("profinite-finite.json")}, 0);
    CHECK(f["certificate"]["verdict"] == "finite");
  }

  TEST_CASE("gluing commands") {
    Json p = run_json({"pseudofibres", fx("chain-family.json")}, 0);
    CHECK(p["certificate"].size() == 2);
    Json d = run_json({"descend", fx("surface.json"), "--divisor", "D"}, 0);
    CHECK(d["certificate"]["m"] == "2");
    CHECK(d["certificate"]["delta"]["p"] == "1");
    Json bad = run_json({"descend", fx("surface.json"), "--divisor", "D-bad"}, 1);
    CHECK(bad["certificate"]["status"] == "obstruction");
    CHECK(run({"descend", fx("surface.json"), "--divisor", "nope"}).code == 2);
    Json g = run_json({"glue-section", fx("surface.json"), "--at", "S1:Fp"}, 0);
    CHECK(g["certificate"]["status"] == "section");
    Json t = run_json({"glue-section", fx("surface-twisted.json"), "--at", "S1:Fp"}, 1);
    CHECK(t["certificate"]["monodromy"]["phase"] == "1/2");
    CHECK(run({"glue-section", fx("surface.json"), "--at", "S1"}).code == 2);
  }

  TEST_CASE("fuzz reports are reproducible") {
    Outcome a = run({"--format", "json", "fuzz", "--seed", "3", "--cases", "21"});
    Outcome b = run({"--format", "json", "fuzz", "--seed", "3", "--cases", "21"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    Json j = Json::parse(a.out);
    CHECK(j["certificate"]["failures"] == 0);
    CHECK(j["certificate"]["results"].size() == 21);
    for (std::size_t i = 0; i < 21; ++i) CHECK(j["certificate"]["results"][i]["case"] == i);
  }
}
