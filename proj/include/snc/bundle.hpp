#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "snc/core.hpp"
#include "snc/graph.hpp"
#include "snc/scalar.hpp"

namespace snc {

/// Line bundle that is trivial on every component, recorded as an edge
/// cocycle on the incidence graph: across an edge e a section value on the
/// target component equals transition(e) times the value on the source.
///
/// Only the positive orientation of each geometric edge is stored; the
/// reverse transition is the inverse.
class LineBundleModel {
 public:
  // Pieces missing from `transitions` get the identity. Unknown piece ids
  // throw InputError.
  LineBundleModel(SncConfiguration base, const std::map<std::string, ExactScalar>& transitions);

  static LineBundleModel identity(SncConfiguration base) { return LineBundleModel(std::move(base), {}); }

  const SncConfiguration& base() const { return base_; }
  const StallingsGraph& graph() const { return graph_; }

  ExactScalar transition(EdgeIndex e) const;
  const ExactScalar& piece_transition(const std::string& piece_id) const;
  // Positive-orientation transitions keyed by piece id.
  std::map<std::string, ExactScalar> transitions() const;

  friend bool operator==(const LineBundleModel& a, const LineBundleModel& b);

 private:
  LineBundleModel(SncConfiguration base, StallingsGraph graph, std::vector<ExactScalar> positive);
  friend LineBundleModel tensor_power(const LineBundleModel&, long);
  friend LineBundleModel gauge_transform(const LineBundleModel&, const std::vector<ExactScalar>&);

  SncConfiguration base_;
  StallingsGraph graph_;
  std::vector<ExactScalar> positive_;  // indexed by geometric edge (e / 2)
};

/// Per-component section values; nullopt stands for the zero section.
struct SectionAssignment {
  std::vector<std::string> components;  // vertex order of the incidence graph
  std::vector<std::optional<ExactScalar>> values;

  bool nowhere_vanishing() const;
};

bool is_compatible(const LineBundleModel& b, const SectionAssignment& s);

ExactScalar monodromy(const LineBundleModel& b, const Path& circuit);

enum class Verdict { trivial, torsion, non_torsion };
std::string to_string(Verdict v);

struct BasisValue {
  Path circuit;
  ExactScalar value;
};

struct MonodromyCertificate {
  std::string base;
  std::vector<BasisValue> basis;
  Verdict verdict = Verdict::trivial;
  Integer order = 1;  // 0 for non-torsion
  // A basis circuit with non-identity (torsion verdict) or non-unit modulus
  // (non-torsion verdict) monodromy.
  std::optional<Path> witness;
};

// Throws InputError when the base configuration is disconnected.
MonodromyCertificate monodromy_certificate(const LineBundleModel& b, const std::string& base_component);

struct Obstruction {
  Path circuit;
  ExactScalar value;
};

using SectionResult = std::variant<SectionAssignment, Obstruction>;

// Spanning-tree propagation from value 1 on the first component; fails with
// the basis circuit of the first co-tree edge that does not close up.
SectionResult synthesize_section(const LineBundleModel& b);

// Triviality on every connected component (no connectivity requirement).
bool is_trivial(const LineBundleModel& b);

// Throws InputError for m == 0.
LineBundleModel tensor_power(const LineBundleModel& b, long m);

// Change of trivialization by per-vertex scalars g: e -> g(i(e)) / g(t(e)) * T(e).
LineBundleModel gauge_transform(const LineBundleModel& b, const std::vector<ExactScalar>& g);

// Gauge in which every edge of the BFS tree at `base_component` carries the
// identity; co-tree transitions are then the basis monodromies.
LineBundleModel normalize_cocycle(const LineBundleModel& b, const std::string& base_component);

}  // namespace snc
