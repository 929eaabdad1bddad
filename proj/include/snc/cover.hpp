#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "snc/bundle.hpp"
#include "snc/core.hpp"
#include "snc/graph.hpp"

namespace snc {

/// Finite cover of SNC configurations, recorded on components and on
/// intersection pieces. `intersection_map` may omit a source piece when its
/// image piece is determined (the image components share a single piece).
struct CoverMap {
  SncConfiguration source;
  SncConfiguration target;
  std::map<std::string, std::string> component_map;
  std::map<std::string, std::string> intersection_map;
  unsigned degree = 1;
};

ValidationReport validate_cover(const CoverMap& c);

// Subgraph of the source incidence graph without the edges whose endpoints
// have equal images.
StallingsGraph tau_graph(const CoverMap& c);

// Natural map tau_graph(c) -> incidence_graph(target). Throws InputError on
// an unresolvable edge or when the map misses part of the target.
GraphMap induced_graph_map(const CoverMap& c);

// Kept edges inherit the transition of their image; dropped edges get the
// identity.
LineBundleModel pullback_bundle(const CoverMap& c, const LineBundleModel& b);

struct TorsionDescent {
  Integer order_bound;     // degree!
  Integer verified_order;  // torsion order of the bundle on the target
  // Index of the image of pi_1 of the tau-graph component over the base in
  // pi_1 of the target; nullopt if that component does not map onto the
  // target or the index exceeded the sheet cap.
  std::optional<std::size_t> index;
  std::size_t index_bound = 0;  // fibre size over the base
  std::string base;             // target component used as base point
};

// Requires a trivial pullback; throws HypothesisError otherwise.
TorsionDescent descend_torsion(const CoverMap& c, const LineBundleModel& b);

struct CurveImage {
  std::string component;
};
struct PointImage {
  std::string location;
};
using ComponentImage = std::variant<CurveImage, PointImage>;

/// Generically finite map of curve configurations; some source components
/// are contracted to points. A point location is either a target
/// intersection piece (a node, lying on both its endpoints) or a label
/// declared in `points` together with the curves it lies on.
struct CurveCoverMap {
  SncConfiguration source;
  SncConfiguration target;
  std::map<std::string, ComponentImage> image;
  std::map<std::string, std::string> intersection_map;
  std::map<std::string, std::vector<std::string>> points;
};

ValidationReport validate_curve_cover(const CurveCoverMap& c);

// Keeps an edge iff both ends map to curves, or one end maps to a curve and
// the other to a point on it, or both ends map to the same point.
StallingsGraph curve_tau_graph(const CurveCoverMap& c);

// Image of a circuit of curve_tau_graph(c) based at a component with curve
// image. Runs of contracted components collapse to nothing (equal flanking
// images) or to the node they are contracted to.
Path induced_curve_map(const CurveCoverMap& c, const Path& circuit);

struct CircuitLift {
  Path lifted;  // circuit in the source tau-graph
  std::size_t multiplier = 0;
  std::size_t fibre_count = 0;  // source components over the base component
};

// Circuit in the tau-graph whose image is homotopic to `circuit` repeated
// `multiplier` times, with multiplier <= fibre_count. Throws
// HypothesisError if no lift exists.
CircuitLift lift_circuit_power(const CoverMap& c, const Path& circuit);
CircuitLift lift_circuit_power(const CurveCoverMap& c, const Path& circuit);

}  // namespace snc
