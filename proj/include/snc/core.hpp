#pragma once

#include <string>
#include <vector>

#include "snc/graph.hpp"

namespace snc {

struct Component {
  std::string id;
  int dim = 0;
  std::string label;
};

// One connected component of a pairwise intersection. The endpoint order
// fixes the positive orientation of the corresponding incidence edge.
struct IntersectionPiece {
  std::string id;
  std::string a;
  std::string b;
  std::string label;
};

struct Stratum {
  std::string id;
  std::vector<std::string> carriers;
  int dim = 0;
};

/// Combinatorial skeleton of a simple normal crossings variety.
struct SncConfiguration {
  std::vector<Component> components;
  std::vector<IntersectionPiece> intersections;
  std::vector<Stratum> strata;

  const Component* find_component(const std::string& id) const;
  const IntersectionPiece* find_piece(const std::string& id) const;
  // Sorts every list by id.
  void canonicalize();
};

enum class Severity { warning, error };

struct Finding {
  Severity severity = Severity::error;
  std::string location;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Finding> findings;

  void add(Severity s, std::string location, std::string message);
  // One line per finding.
  std::string describe() const;
};

ValidationReport validate_configuration(const SncConfiguration& cfg);

// Throws InputError carrying the findings when cfg is invalid.
void require_valid(const SncConfiguration& cfg);

// Id of the reverse orientation of an intersection piece's edge.
std::string reverse_edge_id(const std::string& piece_id);

/// Incidence graph: one vertex per component, one edge pair per
/// intersection piece. Vertices and edges are created in id order; the
/// positive edge of piece f runs a -> b and is named f, its reverse ~f.
StallingsGraph incidence_graph(const SncConfiguration& cfg);

}  // namespace snc
