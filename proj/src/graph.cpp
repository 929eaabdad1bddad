#include "snc/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "snc/error.hpp"

namespace snc {

// ---------------------------------------------------------------- graph

VertexIndex StallingsGraph::add_vertex(std::string id) {
  if (vertex_lookup_.count(id)) throw InputError("duplicate vertex id \"" + id + "\"");
  VertexIndex v = vertex_ids_.size();
  vertex_lookup_.emplace(id, v);
  vertex_ids_.push_back(std::move(id));
  stars_.emplace_back();
  return v;
}

EdgeIndex StallingsGraph::add_edge(std::string id, std::string bar_id, VertexIndex from, VertexIndex to) {
  if (from >= vertex_count() || to >= vertex_count()) throw InputError("edge \"" + id + "\" references a missing vertex");
  if (id == bar_id) throw InputError("edge \"" + id + "\" cannot be its own reverse");
  if (edge_lookup_.count(id)) throw InputError("duplicate edge id \"" + id + "\"");
  if (edge_lookup_.count(bar_id)) throw InputError("duplicate edge id \"" + bar_id + "\"");
  EdgeIndex e = edges_.size();
  edges_.push_back({std::move(id), e + 1, from});
  edges_.push_back({std::move(bar_id), e, to});
  edge_lookup_.emplace(edges_[e].id, e);
  edge_lookup_.emplace(edges_[e + 1].id, e + 1);
  auto insert_sorted = [this](std::vector<EdgeIndex>& star, EdgeIndex x) {
    auto pos = std::lower_bound(star.begin(), star.end(), x,
                                [this](EdgeIndex a, EdgeIndex b) { return edges_[a].id < edges_[b].id; });
    star.insert(pos, x);
  };
  insert_sorted(stars_[from], e);
  insert_sorted(stars_[to], e + 1);
  return e;
}

std::optional<VertexIndex> StallingsGraph::find_vertex(const std::string& id) const {
  auto it = vertex_lookup_.find(id);
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeIndex> StallingsGraph::find_edge(const std::string& id) const {
  auto it = edge_lookup_.find(id);
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

VertexIndex StallingsGraph::vertex_at(const std::string& id) const {
  auto v = find_vertex(id);
  if (!v) throw InputError("unknown vertex \"" + id + "\"");
  return *v;
}

EdgeIndex StallingsGraph::edge_at(const std::string& id) const {
  auto e = find_edge(id);
  if (!e) throw InputError("unknown edge \"" + id + "\"");
  return *e;
}

bool operator==(const StallingsGraph& a, const StallingsGraph& b) {
  if (a.vertex_ids_ != b.vertex_ids_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const auto& x = a.edges_[i];
    const auto& y = b.edges_[i];
    if (x.id != y.id || x.bar != y.bar || x.from != y.from) return false;
  }
  return true;
}

StallingsGraph graph_from_records(const std::vector<std::string>& vertices, const std::vector<EdgeRecord>& edges) {
  StallingsGraph g;
  for (const auto& v : vertices) g.add_vertex(v);
  std::map<std::string, const EdgeRecord*> by_id;
  for (const auto& e : edges) {
    if (!by_id.emplace(e.id, &e).second) throw InputError("duplicate edge id \"" + e.id + "\"");
  }
  for (const auto& e : edges) {
    auto it = by_id.find(e.bar);
    if (it == by_id.end()) throw InputError("edge \"" + e.id + "\" has missing reverse \"" + e.bar + "\"");
    if (e.bar == e.id) throw InputError("edge \"" + e.id + "\" is its own reverse");
    if (it->second->bar != e.id) throw InputError("reverse of reverse of \"" + e.id + "\" is not itself");
  }
  for (const auto& e : edges) {
    if (g.find_edge(e.id)) continue;
    const EdgeRecord& r = *by_id.at(e.bar);
    g.add_edge(e.id, e.bar, g.vertex_at(e.from), g.vertex_at(r.from));
  }
  return g;
}

// ---------------------------------------------------------------- paths

bool is_path(const StallingsGraph& g, const Path& p) {
  if (p.start >= g.vertex_count()) return false;
  VertexIndex at = p.start;
  for (EdgeIndex e : p.edges) {
    if (e >= g.edge_count() || g.initial(e) != at) return false;
    at = g.terminal(e);
  }
  return true;
}

void check_path(const StallingsGraph& g, const Path& p) {
  if (p.start >= g.vertex_count()) throw InputError("path starts at a missing vertex");
  VertexIndex at = p.start;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    EdgeIndex e = p.edges[i];
    if (e >= g.edge_count()) throw InputError("path uses a missing edge at position " + std::to_string(i));
    if (g.initial(e) != at) {
      throw InputError("path is not chained at position " + std::to_string(i) + ": edge \"" + g.edge_id(e) +
                       "\" does not start at \"" + g.vertex_id(at) + "\"");
    }
    at = g.terminal(e);
  }
}

VertexIndex path_end(const StallingsGraph& g, const Path& p) {
  return p.edges.empty() ? p.start : g.terminal(p.edges.back());
}

bool is_circuit(const StallingsGraph& g, const Path& p) { return is_path(g, p) && path_end(g, p) == p.start; }

bool is_reduced(const StallingsGraph& g, const Path& p) {
  for (std::size_t i = 1; i < p.edges.size(); ++i) {
    if (p.edges[i] == g.bar(p.edges[i - 1])) return false;
  }
  return true;
}

Path reduce_path(const StallingsGraph& g, const Path& p) {
  check_path(g, p);
  Path r{p.start, {}};
  for (EdgeIndex e : p.edges) {
    if (!r.edges.empty() && r.edges.back() == g.bar(e)) {
      r.edges.pop_back();
    } else {
      r.edges.push_back(e);
    }
  }
  return r;
}

Path concatenate(const StallingsGraph& g, const Path& a, const Path& b) {
  if (path_end(g, a) != b.start) throw InputError("cannot concatenate paths with mismatched endpoints");
  Path r = a;
  r.edges.insert(r.edges.end(), b.edges.begin(), b.edges.end());
  return r;
}

Path inverse_path(const StallingsGraph& g, const Path& p) {
  Path r{path_end(g, p), {}};
  r.edges.reserve(p.edges.size());
  for (auto it = p.edges.rbegin(); it != p.edges.rend(); ++it) r.edges.push_back(g.bar(*it));
  return r;
}

Path power(const StallingsGraph& g, const Path& circuit, std::size_t m) {
  if (!is_circuit(g, circuit)) throw InputError("power of a non-circuit");
  Path r{circuit.start, {}};
  r.edges.reserve(circuit.edges.size() * m);
  for (std::size_t i = 0; i < m; ++i) r.edges.insert(r.edges.end(), circuit.edges.begin(), circuit.edges.end());
  return r;
}

Path path_from_ids(const StallingsGraph& g, const std::vector<std::string>& ids, std::optional<VertexIndex> start) {
  Path p;
  for (const auto& id : ids) p.edges.push_back(g.edge_at(id));
  if (!p.edges.empty()) {
    p.start = g.initial(p.edges.front());
    if (start && *start != p.start) throw InputError("path does not start at \"" + g.vertex_id(*start) + "\"");
  } else {
    if (!start) throw InputError("empty path needs a start vertex");
    p.start = *start;
  }
  check_path(g, p);
  return p;
}

std::vector<std::string> path_ids(const StallingsGraph& g, const Path& p) {
  std::vector<std::string> out;
  out.reserve(p.edges.size());
  for (EdgeIndex e : p.edges) out.push_back(g.edge_id(e));
  return out;
}

std::vector<std::size_t> connected_components(const StallingsGraph& g) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(g.vertex_count(), unset);
  std::size_t next = 0;
  for (VertexIndex s = 0; s < g.vertex_count(); ++s) {
    if (label[s] != unset) continue;
    std::vector<VertexIndex> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      VertexIndex v = stack.back();
      stack.pop_back();
      for (EdgeIndex e : g.star(v)) {
        VertexIndex w = g.terminal(e);
        if (label[w] == unset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t component_count(const StallingsGraph& g) {
  auto labels = connected_components(g);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

std::optional<Path> shortest_path(const StallingsGraph& g, VertexIndex from, VertexIndex to) {
  std::vector<std::optional<EdgeIndex>> via(g.vertex_count());
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<VertexIndex> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    VertexIndex v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (EdgeIndex e : g.star(v)) {
      VertexIndex w = g.terminal(e);
      if (!seen[w]) {
        seen[w] = true;
        via[w] = e;
        queue.push_back(w);
      }
    }
  }
  if (!seen[to]) return std::nullopt;
  Path p{from, {}};
  for (VertexIndex v = to; v != from; v = g.initial(*via[v])) p.edges.push_back(*via[v]);
  std::reverse(p.edges.begin(), p.edges.end());
  return p;
}

// ---------------------------------------------------------------- pi_1

Path Pi1Basis::tree_path(const StallingsGraph& g, VertexIndex v) const {
  Path p{base, {}};
  for (VertexIndex at = v; parent_edge[at]; at = g.initial(*parent_edge[at])) p.edges.push_back(*parent_edge[at]);
  std::reverse(p.edges.begin(), p.edges.end());
  return p;
}

Pi1Basis pi1_basis(const StallingsGraph& g, VertexIndex base) {
  if (base >= g.vertex_count()) throw InputError("base vertex out of range");
  Pi1Basis b;
  b.base = base;
  b.parent_edge.assign(g.vertex_count(), std::nullopt);
  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  b.discovery.assign(g.vertex_count(), unseen);
  b.tree.assign(g.edge_count(), false);

  std::deque<VertexIndex> queue{base};
  std::size_t rank = 0;
  b.discovery[base] = rank++;
  while (!queue.empty()) {
    VertexIndex v = queue.front();
    queue.pop_front();
    for (EdgeIndex e : g.star(v)) {
      VertexIndex w = g.terminal(e);
      if (b.discovery[w] != unseen) continue;
      b.discovery[w] = rank++;
      b.parent_edge[w] = e;
      b.tree[e] = b.tree[g.bar(e)] = true;
      queue.push_back(w);
    }
  }
  if (rank != g.vertex_count()) {
    std::string missing;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      if (b.discovery[v] == unseen) {
        missing = g.vertex_id(v);
        break;
      }
    }
    throw InputError("graph is disconnected: \"" + missing + "\" is not reachable from \"" + g.vertex_id(base) +
                     "\" (" + std::to_string(component_count(g)) + " components)");
  }

  // Co-tree edges in id order of their positive orientation, each oriented
  // from its later-discovered endpoint.
  std::vector<EdgeIndex> cotree;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (g.is_positive(e) && !b.tree[e]) cotree.push_back(e);
  }
  std::sort(cotree.begin(), cotree.end(), [&](EdgeIndex x, EdgeIndex y) { return g.edge_id(x) < g.edge_id(y); });
  for (EdgeIndex e : cotree) {
    EdgeIndex oriented = b.discovery[g.initial(e)] >= b.discovery[g.terminal(e)] ? e : g.bar(e);
    Path c = b.tree_path(g, g.initial(oriented));
    c.edges.push_back(oriented);
    Path back = inverse_path(g, b.tree_path(g, g.terminal(oriented)));
    c.edges.insert(c.edges.end(), back.edges.begin(), back.edges.end());
    b.generator_edges.push_back(oriented);
    b.circuits.push_back(std::move(c));
  }
  return b;
}

Word express_in_basis(const StallingsGraph& g, const Pi1Basis& basis, const Path& circuit) {
  check_path(g, circuit);
  if (circuit.start != basis.base || path_end(g, circuit) != basis.base) {
    throw InputError("circuit is not based at \"" + g.vertex_id(basis.base) + "\"");
  }
  std::vector<std::optional<Letter>> letter_of(g.edge_count());
  for (std::size_t i = 0; i < basis.generator_edges.size(); ++i) {
    EdgeIndex e = basis.generator_edges[i];
    letter_of[e] = Letter{i, false};
    letter_of[g.bar(e)] = Letter{i, true};
  }
  Word w;
  for (EdgeIndex e : circuit.edges) {
    if (!letter_of[e]) continue;
    Letter l = *letter_of[e];
    if (!w.empty() && w.back().generator == l.generator && w.back().inverted != l.inverted) {
      w.pop_back();
    } else {
      w.push_back(l);
    }
  }
  return w;
}

Path expand_word(const StallingsGraph& g, const Pi1Basis& basis, const Word& word) {
  Path p{basis.base, {}};
  for (const Letter& l : word) {
    const Path& c = basis.circuits.at(l.generator);
    Path piece = l.inverted ? inverse_path(g, c) : c;
    p.edges.insert(p.edges.end(), piece.edges.begin(), piece.edges.end());
  }
  return p;
}

// ---------------------------------------------------------------- maps

Path GraphMap::image(const Path& p) const {
  check_path(source, p);
  Path r{vertex_map.at(p.start), {}};
  r.edges.reserve(p.edges.size());
  for (EdgeIndex e : p.edges) r.edges.push_back(edge_map.at(e));
  return r;
}

void check_graph_map(const GraphMap& f) {
  if (f.vertex_map.size() != f.source.vertex_count() || f.edge_map.size() != f.source.edge_count()) {
    throw InputError("graph map is not total");
  }
  for (VertexIndex v : f.vertex_map) {
    if (v >= f.target.vertex_count()) throw InputError("graph map sends a vertex outside the target");
  }
  for (EdgeIndex e = 0; e < f.source.edge_count(); ++e) {
    EdgeIndex fe = f.edge_map[e];
    if (fe >= f.target.edge_count()) throw InputError("graph map sends an edge outside the target");
    if (f.edge_map[f.source.bar(e)] != f.target.bar(fe)) {
      throw InputError("graph map does not commute with bar at \"" + f.source.edge_id(e) + "\"");
    }
    if (f.vertex_map[f.source.initial(e)] != f.target.initial(fe)) {
      throw InputError("graph map does not preserve the initial vertex of \"" + f.source.edge_id(e) + "\"");
    }
  }
}

bool is_covering(const GraphMap& f) {
  check_graph_map(f);
  for (VertexIndex v = 0; v < f.source.vertex_count(); ++v) {
    const auto& src = f.source.star(v);
    const auto& dst = f.target.star(f.vertex_map[v]);
    if (src.size() != dst.size()) return false;
    std::vector<EdgeIndex> images;
    images.reserve(src.size());
    for (EdgeIndex e : src) images.push_back(f.edge_map[e]);
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
  }
  return true;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

// Folded image of pi_1(source, v): a deterministic labelled graph, i.e. an
// immersion into the target.
struct Immersion {
  std::size_t base = 0;
  std::map<std::pair<std::size_t, EdgeIndex>, std::size_t> next;

  bool reads_loop(const StallingsGraph& target, const Path& reduced) const {
    std::size_t at = base;
    for (EdgeIndex e : reduced.edges) {
      auto it = next.find({at, e});
      if (it == next.end()) return false;
      at = it->second;
    }
    (void)target;
    return at == base;
  }
};

Immersion fold_image(const GraphMap& f, VertexIndex v) {
  const auto& g = f.source;
  UnionFind uf(g.vertex_count());
  bool changed = true;
  std::map<std::pair<std::size_t, EdgeIndex>, std::size_t> next;
  while (changed) {
    changed = false;
    next.clear();
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      std::size_t from = uf.find(g.initial(e));
      std::size_t to = uf.find(g.terminal(e));
      auto [it, inserted] = next.emplace(std::make_pair(from, f.edge_map[e]), to);
      if (!inserted && uf.find(it->second) != to) {
        uf.unite(it->second, to);
        changed = true;
      }
    }
  }
  Immersion im;
  im.base = uf.find(v);
  for (auto& [key, to] : next) im.next[key] = uf.find(to);
  return im;
}

}  // namespace

ImageIndex image_index(const GraphMap& f, VertexIndex v, std::optional<std::size_t> cap) {
  check_graph_map(f);
  const auto& src = f.source;
  const auto& dst = f.target;
  if (v >= src.vertex_count()) throw InputError("base vertex out of range");
  if (component_count(src) != 1) throw InputError("image_index needs a connected source graph");
  std::vector<bool> hit_v(dst.vertex_count(), false), hit_e(dst.edge_count(), false);
  for (VertexIndex x : f.vertex_map) hit_v[x] = true;
  for (EdgeIndex e : f.edge_map) hit_e[e] = true;
  for (EdgeIndex e = 0; e < dst.edge_count(); ++e) {
    if (!hit_e[e]) throw InputError("map is not surjective: edge \"" + dst.edge_id(e) + "\" is not hit");
  }
  for (VertexIndex x = 0; x < dst.vertex_count(); ++x) {
    if (!hit_v[x]) throw InputError("map is not surjective: vertex \"" + dst.vertex_id(x) + "\" is not hit");
  }

  ImageIndex out;
  VertexIndex w0 = f.vertex_map[v];
  out.bound = static_cast<std::size_t>(std::count(f.vertex_map.begin(), f.vertex_map.end(), w0));
  out.cap = cap.value_or(10 * out.bound);

  Immersion im = fold_image(f, v);

  // Sheets of the covering attached to the image subgroup H: reduced paths
  // from w0, identified when p q^{-1} lies in H.
  std::vector<Path> reps{Path{w0, {}}};
  std::vector<std::size_t> fibre(dst.vertex_count(), 0);
  fibre[w0] = 1;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    VertexIndex at = path_end(dst, reps[i]);
    for (EdgeIndex e : dst.star(at)) {
      Path q = reps[i];
      q.edges.push_back(e);
      q = reduce_path(dst, q);
      VertexIndex end = dst.terminal(e);
      bool known = false;
      for (const Path& r : reps) {
        if (path_end(dst, r) != end) continue;
        Path loop = reduce_path(dst, concatenate(dst, q, inverse_path(dst, r)));
        if (im.reads_loop(dst, loop)) {
          known = true;
          break;
        }
      }
      if (known) continue;
      if (++fibre[end] > out.cap) return out;
      reps.push_back(std::move(q));
    }
  }
  out.index = fibre[w0];
  return out;
}

// ---------------------------------------------------------------- circuits

Path surjective_circuit(const StallingsGraph& g) {
  if (g.vertex_count() == 0 || g.geometric_edge_count() == 0) throw InputError("surjective circuit needs an edge");
  if (component_count(g) != 1) throw InputError("surjective circuit needs a connected graph");

  std::vector<EdgeIndex> order;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (g.is_positive(e)) order.push_back(e);
  }
  std::sort(order.begin(), order.end(), [&](EdgeIndex x, EdgeIndex y) { return g.edge_id(x) < g.edge_id(y); });

  std::vector<bool> covered(g.edge_count(), false);
  Path c{g.initial(order.front()), {}};
  auto append = [&](EdgeIndex e) {
    c.edges.push_back(e);
    covered[g.positive(e)] = true;
  };
  append(order.front());
  for (EdgeIndex e : order) {
    if (covered[e]) continue;
    // Walk to whichever orientation of e is nearer, then traverse it.
    VertexIndex at = path_end(g, c);
    Path to_init = *shortest_path(g, at, g.initial(e));
    Path to_term = *shortest_path(g, at, g.terminal(e));
    EdgeIndex pick = to_init.edges.size() <= to_term.edges.size() ? e : g.bar(e);
    const Path& approach = pick == e ? to_init : to_term;
    for (EdgeIndex a : approach.edges) append(a);
    if (!covered[e]) append(pick);
  }
  Path back = *shortest_path(g, path_end(g, c), c.start);
  for (EdgeIndex a : back.edges) append(a);
  return c;
}

}  // namespace snc

namespace snc {

GraphMap restrict_to_component(const GraphMap& f, VertexIndex v, VertexIndex* v_out) {
  const auto& g = f.source;
  auto labels = connected_components(g);
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> new_vertex(g.vertex_count(), none);
  GraphMap r;
  r.target = f.target;
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    if (labels[x] != labels[v]) continue;
    new_vertex[x] = r.source.add_vertex(g.vertex_id(x));
    r.vertex_map.push_back(f.vertex_map[x]);
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (!g.is_positive(e) || new_vertex[g.initial(e)] == none) continue;
    r.source.add_edge(g.edge_id(e), g.edge_id(g.bar(e)), new_vertex[g.initial(e)], new_vertex[g.terminal(e)]);
    r.edge_map.push_back(f.edge_map[e]);
    r.edge_map.push_back(f.edge_map[g.bar(e)]);
  }
  if (v_out) *v_out = new_vertex[v];
  return r;
}

bool is_surjective(const GraphMap& f) {
  std::vector<bool> hit_v(f.target.vertex_count(), false), hit_e(f.target.edge_count(), false);
  for (VertexIndex x : f.vertex_map) hit_v[x] = true;
  for (EdgeIndex e : f.edge_map) hit_e[e] = true;
  return std::all_of(hit_v.begin(), hit_v.end(), [](bool b) { return b; }) &&
         std::all_of(hit_e.begin(), hit_e.end(), [](bool b) { return b; });
}

}  // namespace snc
