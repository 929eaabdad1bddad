#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace snc {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

struct DirectedEdge {
  std::string id;
  EdgeIndex bar;
  VertexIndex from;
};

/// Graph in the sense of Serre/Stallings: a set of directed edges with a
/// fixed-point-free involution e -> bar(e) and an initial-vertex map.
///
/// Edges are always created in pairs by add_edge, so the involution
/// invariant holds by construction. The edge created first in each pair is
/// the positive orientation.
class StallingsGraph {
 public:
  VertexIndex add_vertex(std::string id);
  // Adds e: from -> to together with bar(e): to -> from. Returns e.
  EdgeIndex add_edge(std::string id, std::string bar_id, VertexIndex from, VertexIndex to);

  std::size_t vertex_count() const { return vertex_ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t geometric_edge_count() const { return edges_.size() / 2; }

  const std::string& vertex_id(VertexIndex v) const { return vertex_ids_.at(v); }
  const DirectedEdge& edge(EdgeIndex e) const { return edges_.at(e); }
  const std::string& edge_id(EdgeIndex e) const { return edges_.at(e).id; }
  EdgeIndex bar(EdgeIndex e) const { return edges_[e].bar; }
  VertexIndex initial(EdgeIndex e) const { return edges_[e].from; }
  VertexIndex terminal(EdgeIndex e) const { return edges_[edges_[e].bar].from; }
  bool is_positive(EdgeIndex e) const { return e < edges_[e].bar; }
  EdgeIndex positive(EdgeIndex e) const { return is_positive(e) ? e : edges_[e].bar; }

  // Star St(v): edges with initial vertex v, sorted by edge id.
  const std::vector<EdgeIndex>& star(VertexIndex v) const { return stars_.at(v); }

  std::optional<VertexIndex> find_vertex(const std::string& id) const;
  std::optional<EdgeIndex> find_edge(const std::string& id) const;
  VertexIndex vertex_at(const std::string& id) const;
  EdgeIndex edge_at(const std::string& id) const;

  friend bool operator==(const StallingsGraph& a, const StallingsGraph& b);

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<DirectedEdge> edges_;
  std::vector<std::vector<EdgeIndex>> stars_;
  std::unordered_map<std::string, VertexIndex> vertex_lookup_;
  std::unordered_map<std::string, EdgeIndex> edge_lookup_;
};

// Raw edge record of the interchange format {"id", "bar", "from"}.
struct EdgeRecord {
  std::string id;
  std::string bar;
  std::string from;
};

// Builds a graph from the interchange format, checking that "bar" is a
// fixed-point-free involution. Throws InputError.
StallingsGraph graph_from_records(const std::vector<std::string>& vertices,
                                  const std::vector<EdgeRecord>& edges);

/// Edge sequence e1..en with terminal(e_i) = initial(e_{i+1}). The start
/// vertex is stored so that the empty path is anchored.
struct Path {
  VertexIndex start = 0;
  std::vector<EdgeIndex> edges;

  friend bool operator==(const Path&, const Path&) = default;
};

bool is_path(const StallingsGraph& g, const Path& p);
// Throws InputError naming the first broken link.
void check_path(const StallingsGraph& g, const Path& p);
VertexIndex path_end(const StallingsGraph& g, const Path& p);
bool is_circuit(const StallingsGraph& g, const Path& p);
bool is_reduced(const StallingsGraph& g, const Path& p);

Path reduce_path(const StallingsGraph& g, const Path& p);
Path concatenate(const StallingsGraph& g, const Path& a, const Path& b);
Path inverse_path(const StallingsGraph& g, const Path& p);
Path power(const StallingsGraph& g, const Path& circuit, std::size_t m);

// Parses a comma separated list of edge ids. An empty list yields the empty
// path at `start`.
Path path_from_ids(const StallingsGraph& g, const std::vector<std::string>& ids,
                   std::optional<VertexIndex> start = std::nullopt);
std::vector<std::string> path_ids(const StallingsGraph& g, const Path& p);

// Component label per vertex, labels numbered by smallest vertex index.
std::vector<std::size_t> connected_components(const StallingsGraph& g);
std::size_t component_count(const StallingsGraph& g);

// Shortest path (BFS, id-ordered) from `from` to `to`; nullopt if none.
std::optional<Path> shortest_path(const StallingsGraph& g, VertexIndex from, VertexIndex to);

struct Letter {
  std::size_t generator;
  bool inverted;
  friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

/// Free basis of pi_1(g, base) from a BFS spanning tree.
struct Pi1Basis {
  VertexIndex base = 0;
  // Tree edge used to discover each vertex (pointing away from the base);
  // nullopt for the base itself.
  std::vector<std::optional<EdgeIndex>> parent_edge;
  std::vector<std::size_t> discovery;  // BFS discovery rank per vertex
  std::vector<bool> tree;              // per directed edge
  // One oriented co-tree edge per generator and its basis circuit.
  std::vector<EdgeIndex> generator_edges;
  std::vector<Path> circuits;

  std::size_t rank() const { return circuits.size(); }
  // Tree path from the base to v.
  Path tree_path(const StallingsGraph& g, VertexIndex v) const;
};

// Throws InputError if g is disconnected.
Pi1Basis pi1_basis(const StallingsGraph& g, VertexIndex base);

// Freely reduced word in the basis generators representing a circuit at
// the basis' base vertex. Throws InputError if p is not such a circuit.
Word express_in_basis(const StallingsGraph& g, const Pi1Basis& basis, const Path& circuit);
Path expand_word(const StallingsGraph& g, const Pi1Basis& basis, const Word& word);

/// Morphism of graphs: vertex and edge maps commuting with bar and initial.
struct GraphMap {
  StallingsGraph source;
  StallingsGraph target;
  std::vector<VertexIndex> vertex_map;
  std::vector<EdgeIndex> edge_map;

  VertexIndex operator()(VertexIndex v) const { return vertex_map[v]; }
  Path image(const Path& p) const;
};

// Restriction of f to the connected component of `v` in the source. The
// component's vertex and edge order is preserved; `v` is renumbered into
// `*v_out` when given.
GraphMap restrict_to_component(const GraphMap& f, VertexIndex v, VertexIndex* v_out = nullptr);

bool is_surjective(const GraphMap& f);

// Throws InputError if the maps have wrong sizes or break the structure.
void check_graph_map(const GraphMap& f);
bool is_covering(const GraphMap& f);

struct ImageIndex {
  // nullopt when the covering completion exceeded `cap` sheets.
  std::optional<std::size_t> index;
  std::size_t bound = 0;  // |f^{-1}(f(v))|
  std::size_t cap = 0;
};

// Index of f_* pi_1(source, v) in pi_1(target, f(v)). The image subgroup is
// computed by Stallings folding; the covering it defines is then built
// sheet by sheet until complete or until a fibre exceeds `cap`
// (default 10 * bound). Requires a connected source and a surjective f.
ImageIndex image_index(const GraphMap& f, VertexIndex v, std::optional<std::size_t> cap = std::nullopt);

// Circuit that traverses every geometric edge in at least one orientation.
// Throws InputError on an empty or disconnected graph.
Path surjective_circuit(const StallingsGraph& g);

}  // namespace snc
