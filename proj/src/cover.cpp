#include "snc/cover.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "snc/error.hpp"

namespace snc {

namespace {

bool same_configuration(SncConfiguration a, SncConfiguration b) {
  a.canonicalize();
  b.canonicalize();
  if (a.components.size() != b.components.size() || a.intersections.size() != b.intersections.size()) return false;
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    if (a.components[i].id != b.components[i].id) return false;
  }
  for (std::size_t i = 0; i < a.intersections.size(); ++i) {
    const auto& x = a.intersections[i];
    const auto& y = b.intersections[i];
    if (x.id != y.id || x.a != y.a || x.b != y.b) return false;
  }
  return true;
}

// Directed target edge A -> B for the source piece `piece`, either from the
// explicit map or as the unique piece joining A and B.
EdgeIndex resolve_piece(const std::string& piece, const std::string& A, const std::string& B,
                        const SncConfiguration& target, const StallingsGraph& tg,
                        const std::map<std::string, std::string>& intersection_map) {
  auto oriented = [&](const IntersectionPiece& p) -> EdgeIndex {
    EdgeIndex e = tg.edge_at(p.id);
    return p.a == A ? e : tg.bar(e);
  };
  if (auto it = intersection_map.find(piece); it != intersection_map.end()) {
    const IntersectionPiece* p = target.find_piece(it->second);
    if (!p) throw InputError("source piece \"" + piece + "\" maps to unknown target piece \"" + it->second + "\"");
    bool joins = (p->a == A && p->b == B) || (p->a == B && p->b == A);
    if (!joins) {
      throw InputError("source piece \"" + piece + "\" maps to \"" + p->id + "\" which does not join \"" + A +
                       "\" and \"" + B + "\"");
    }
    return oriented(*p);
  }
  const IntersectionPiece* found = nullptr;
  for (const auto& p : target.intersections) {
    if ((p.a == A && p.b == B) || (p.a == B && p.b == A)) {
      if (found) {
        throw InputError("ambiguous image for source piece \"" + piece + "\": \"" + A + "\" and \"" + B +
                         "\" share several pieces");
      }
      found = &p;
    }
  }
  if (!found) throw InputError("source piece \"" + piece + "\" has no image: \"" + A + "\" and \"" + B + "\" are disjoint");
  return oriented(*found);
}

const std::string& image_of(const CoverMap& c, const std::string& component) {
  auto it = c.component_map.find(component);
  if (it == c.component_map.end()) throw InputError("component \"" + component + "\" has no image");
  return it->second;
}

void require(const ValidationReport& r, const char* what) {
  if (!r.ok) throw InputError(std::string("invalid ") + what + ":\n" + r.describe());
}

}  // namespace

ValidationReport validate_cover(const CoverMap& c) {
  ValidationReport r = validate_configuration(c.source);
  for (auto& f : r.findings) f.location = "source " + f.location;
  ValidationReport t = validate_configuration(c.target);
  for (auto& f : t.findings) r.add(f.severity, "target " + f.location, f.message);
  if (!r.ok) return r;
  if (c.degree == 0) r.add(Severity::error, "degree", "degree must be positive");
  std::map<std::string, unsigned> fibre;
  for (const auto& comp : c.source.components) {
    auto it = c.component_map.find(comp.id);
    if (it == c.component_map.end()) {
      r.add(Severity::error, "component_map", "component \"" + comp.id + "\" has no image");
    } else if (!c.target.find_component(it->second)) {
      r.add(Severity::error, "component_map", "\"" + comp.id + "\" maps to unknown \"" + it->second + "\"");
    } else {
      ++fibre[it->second];
    }
  }
  for (const auto& [src, dst] : c.component_map) {
    if (!c.source.find_component(src)) r.add(Severity::error, "component_map", "unknown source component \"" + src + "\"");
  }
  for (const auto& comp : c.target.components) {
    unsigned n = fibre[comp.id];
    if (n == 0) r.add(Severity::error, "component_map", "target component \"" + comp.id + "\" is not hit");
    if (n > c.degree) {
      r.add(Severity::error, "component_map",
            "fibre over \"" + comp.id + "\" has " + std::to_string(n) + " components, more than the degree");
    }
  }
  for (const auto& [src, dst] : c.intersection_map) {
    const IntersectionPiece* sp = c.source.find_piece(src);
    const IntersectionPiece* tp = c.target.find_piece(dst);
    if (!sp) {
      r.add(Severity::error, "intersection_map", "unknown source piece \"" + src + "\"");
      continue;
    }
    if (!tp) {
      r.add(Severity::error, "intersection_map", "unknown target piece \"" + dst + "\"");
      continue;
    }
    auto A = c.component_map.find(sp->a);
    auto B = c.component_map.find(sp->b);
    if (A == c.component_map.end() || B == c.component_map.end()) continue;
    if (A->second == B->second) {
      r.add(Severity::warning, "intersection_map", "piece \"" + src + "\" joins components with equal image; entry ignored");
      continue;
    }
    bool joins = (tp->a == A->second && tp->b == B->second) || (tp->a == B->second && tp->b == A->second);
    if (!joins) r.add(Severity::error, "intersection_map", "\"" + src + "\" -> \"" + dst + "\" does not join the image components");
  }
  return r;
}

StallingsGraph tau_graph(const CoverMap& c) {
  require(validate_cover(c), "cover");
  StallingsGraph full = incidence_graph(c.source);
  StallingsGraph g;
  for (VertexIndex v = 0; v < full.vertex_count(); ++v) g.add_vertex(full.vertex_id(v));
  for (EdgeIndex e = 0; e < full.edge_count(); e += 2) {
    const auto& A = image_of(c, full.vertex_id(full.initial(e)));
    const auto& B = image_of(c, full.vertex_id(full.terminal(e)));
    if (A == B) continue;
    g.add_edge(full.edge_id(e), full.edge_id(e + 1), full.initial(e), full.terminal(e));
  }
  return g;
}

GraphMap induced_graph_map(const CoverMap& c) {
  GraphMap f;
  f.source = tau_graph(c);
  f.target = incidence_graph(c.target);
  for (VertexIndex v = 0; v < f.source.vertex_count(); ++v) {
    f.vertex_map.push_back(f.target.vertex_at(image_of(c, f.source.vertex_id(v))));
  }
  for (EdgeIndex e = 0; e < f.source.edge_count(); e += 2) {
    const auto& A = f.target.vertex_id(f.vertex_map[f.source.initial(e)]);
    const auto& B = f.target.vertex_id(f.vertex_map[f.source.terminal(e)]);
    EdgeIndex img = resolve_piece(f.source.edge_id(e), A, B, c.target, f.target, c.intersection_map);
    f.edge_map.push_back(img);
    f.edge_map.push_back(f.target.bar(img));
  }
  check_graph_map(f);
  std::vector<bool> hit(f.target.edge_count(), false);
  for (EdgeIndex e : f.edge_map) hit[e] = true;
  for (EdgeIndex e = 0; e < f.target.edge_count(); e += 2) {
    if (!hit[e]) throw InputError("cover does not surject onto target piece \"" + f.target.edge_id(e) + "\"");
  }
  return f;
}

LineBundleModel pullback_bundle(const CoverMap& c, const LineBundleModel& b) {
  if (!same_configuration(c.target, b.base())) throw InputError("bundle does not live on the cover's target");
  GraphMap f = induced_graph_map(c);
  std::map<std::string, ExactScalar> transitions;
  for (EdgeIndex e = 0; e < f.source.edge_count(); e += 2) {
    transitions.emplace(f.source.edge_id(e), b.transition(f.edge_map[e]));
  }
  return LineBundleModel(c.source, transitions);
}

TorsionDescent descend_torsion(const CoverMap& c, const LineBundleModel& b) {
  LineBundleModel up = pullback_bundle(c, b);
  if (!is_trivial(up)) throw HypothesisError("hypothesis of torsion descent fails: the pullback bundle is not trivial");
  TorsionDescent out;
  out.order_bound = factorial(c.degree);
  SncConfiguration target = c.target;
  target.canonicalize();
  out.base = target.components.front().id;
  MonodromyCertificate cert = monodromy_certificate(b, out.base);

  GraphMap f = induced_graph_map(c);
  VertexIndex base_v = f.target.vertex_at(out.base);
  VertexIndex lift = 0;
  while (f.vertex_map[lift] != base_v) ++lift;
  VertexIndex local = 0;
  GraphMap part = restrict_to_component(f, lift, &local);
  out.index_bound = static_cast<std::size_t>(std::count(f.vertex_map.begin(), f.vertex_map.end(), base_v));
  if (is_surjective(part)) out.index = image_index(part, local).index;

  if (cert.verdict == Verdict::non_torsion) {
    throw HypothesisError(
        "bundle is not torsion although its pullback is trivial; the tau-graph over the base does not map onto the "
        "target locally surjectively");
  }
  out.verified_order = cert.order;
  return out;
}

// ---------------------------------------------------------------- curves

namespace {

const ComponentImage& image_of(const CurveCoverMap& c, const std::string& component) {
  auto it = c.image.find(component);
  if (it == c.image.end()) throw InputError("component \"" + component + "\" has no image");
  return it->second;
}

const std::string* curve_of(const ComponentImage& im) {
  if (auto* cv = std::get_if<CurveImage>(&im)) return &cv->component;
  return nullptr;
}

const std::string* point_of(const ComponentImage& im) {
  if (auto* pt = std::get_if<PointImage>(&im)) return &pt->location;
  return nullptr;
}

bool point_on_curve(const CurveCoverMap& c, const std::string& point, const std::string& curve) {
  if (const IntersectionPiece* p = c.target.find_piece(point)) return p->a == curve || p->b == curve;
  auto it = c.points.find(point);
  if (it == c.points.end()) return false;
  return std::find(it->second.begin(), it->second.end(), curve) != it->second.end();
}

// Node `point` seen as the target edge A -> B, if it is one.
std::optional<EdgeIndex> node_edge(const CurveCoverMap& c, const StallingsGraph& tg, const std::string& point,
                                   const std::string& A, const std::string& B) {
  const IntersectionPiece* p = c.target.find_piece(point);
  if (!p) return std::nullopt;
  EdgeIndex e = tg.edge_at(p->id);
  if (p->a == A && p->b == B) return e;
  if (p->a == B && p->b == A) return tg.bar(e);
  return std::nullopt;
}

}  // namespace

ValidationReport validate_curve_cover(const CurveCoverMap& c) {
  ValidationReport r = validate_configuration(c.source);
  for (auto& f : r.findings) f.location = "source " + f.location;
  ValidationReport t = validate_configuration(c.target);
  for (auto& f : t.findings) r.add(f.severity, "target " + f.location, f.message);
  if (!r.ok) return r;
  std::set<std::string> hit;
  for (const auto& comp : c.source.components) {
    auto it = c.image.find(comp.id);
    if (it == c.image.end()) {
      r.add(Severity::error, "image", "component \"" + comp.id + "\" has no image");
      continue;
    }
    if (const std::string* k = curve_of(it->second)) {
      if (!c.target.find_component(*k)) r.add(Severity::error, "image", "\"" + comp.id + "\" maps to unknown curve \"" + *k + "\"");
      hit.insert(*k);
    } else {
      const std::string& p = *point_of(it->second);
      if (!c.target.find_piece(p) && !c.points.count(p)) {
        r.add(Severity::error, "image", "\"" + comp.id + "\" maps to undeclared point \"" + p + "\"");
      }
    }
  }
  for (const auto& [p, curves] : c.points) {
    if (c.target.find_piece(p)) r.add(Severity::error, "points", "point \"" + p + "\" shadows a target node");
    for (const auto& k : curves) {
      if (!c.target.find_component(k)) r.add(Severity::error, "points", "point \"" + p + "\" lies on unknown curve \"" + k + "\"");
    }
  }
  for (const auto& comp : c.target.components) {
    if (!hit.count(comp.id)) r.add(Severity::error, "image", "target curve \"" + comp.id + "\" is not dominated");
  }
  return r;
}

StallingsGraph curve_tau_graph(const CurveCoverMap& c) {
  require(validate_curve_cover(c), "curve cover");
  StallingsGraph full = incidence_graph(c.source);
  StallingsGraph g;
  for (VertexIndex v = 0; v < full.vertex_count(); ++v) g.add_vertex(full.vertex_id(v));
  for (EdgeIndex e = 0; e < full.edge_count(); e += 2) {
    const auto& x = image_of(c, full.vertex_id(full.initial(e)));
    const auto& y = image_of(c, full.vertex_id(full.terminal(e)));
    const std::string* kx = curve_of(x);
    const std::string* ky = curve_of(y);
    bool keep = false;
    if (kx && ky) {
      keep = true;
    } else if (kx) {
      keep = point_on_curve(c, *point_of(y), *kx);
    } else if (ky) {
      keep = point_on_curve(c, *point_of(x), *ky);
    } else {
      keep = *point_of(x) == *point_of(y);
    }
    if (keep) g.add_edge(full.edge_id(e), full.edge_id(e + 1), full.initial(e), full.terminal(e));
  }
  return g;
}

Path induced_curve_map(const CurveCoverMap& c, const Path& circuit) {
  StallingsGraph g = curve_tau_graph(c);
  StallingsGraph tg = incidence_graph(c.target);
  if (!is_circuit(g, circuit)) throw InputError("induced curve map needs a circuit of the tau-graph");
  auto im = [&](VertexIndex v) -> const ComponentImage& { return image_of(c, g.vertex_id(v)); };
  const std::string* base = curve_of(im(circuit.start));
  if (!base) throw InputError("circuit is based at contracted component \"" + g.vertex_id(circuit.start) + "\"");

  Path out{tg.vertex_at(*base), {}};
  std::vector<VertexIndex> seq{circuit.start};
  for (EdgeIndex e : circuit.edges) seq.push_back(g.terminal(e));
  std::size_t h = 0;
  while (h + 1 < seq.size()) {
    std::size_t j = h + 1;
    while (!curve_of(im(seq[j]))) ++j;  // seq.back() == start has a curve image
    const std::string& A = *curve_of(im(seq[h]));
    const std::string& B = *curve_of(im(seq[j]));
    if (A != B) {
      if (j == h + 1) {
        out.edges.push_back(resolve_piece(g.edge_id(g.positive(circuit.edges[h])), A, B, c.target, tg, c.intersection_map));
      } else {
        const std::string& p = *point_of(im(seq[h + 1]));
        auto e = node_edge(c, tg, p, A, B);
        if (!e) {
          throw InputError("contracted run at \"" + g.vertex_id(seq[h + 1]) + "\" maps to \"" + p +
                           "\" which is not a node between \"" + A + "\" and \"" + B + "\"");
        }
        out.edges.push_back(*e);
      }
    }
    h = j;
  }
  return out;
}

// ---------------------------------------------------------------- lifting

namespace {

struct Move {
  VertexIndex to;
  Path path;                     // in the source tau-graph
  std::optional<EdgeIndex> image;  // nullopt: maps to no edge
};

struct LiftProblem {
  StallingsGraph source;
  StallingsGraph target;
  std::vector<std::optional<VertexIndex>> over;  // curve image per source vertex
  std::vector<std::vector<Move>> moves;          // from curve-image vertices
};

LiftProblem lift_problem(const CoverMap& c) {
  GraphMap f = induced_graph_map(c);
  LiftProblem lp;
  lp.source = f.source;
  lp.target = f.target;
  lp.moves.resize(f.source.vertex_count());
  for (VertexIndex v = 0; v < f.source.vertex_count(); ++v) lp.over.emplace_back(f.vertex_map[v]);
  for (EdgeIndex e = 0; e < f.source.edge_count(); ++e) {
    lp.moves[f.source.initial(e)].push_back({f.source.terminal(e), Path{f.source.initial(e), {e}}, f.edge_map[e]});
  }
  return lp;
}

LiftProblem lift_problem(const CurveCoverMap& c) {
  LiftProblem lp;
  lp.source = curve_tau_graph(c);
  lp.target = incidence_graph(c.target);
  const auto& g = lp.source;
  const auto& tg = lp.target;
  lp.moves.resize(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const std::string* k = curve_of(image_of(c, g.vertex_id(v)));
    lp.over.push_back(k ? std::optional<VertexIndex>(tg.vertex_at(*k)) : std::nullopt);
  }
  for (VertexIndex u = 0; u < g.vertex_count(); ++u) {
    if (!lp.over[u]) continue;
    const std::string& A = tg.vertex_id(*lp.over[u]);
    for (EdgeIndex e : g.star(u)) {
      VertexIndex x = g.terminal(e);
      if (lp.over[x]) {
        const std::string& B = tg.vertex_id(*lp.over[x]);
        std::optional<EdgeIndex> img;
        if (A != B) img = resolve_piece(g.edge_id(g.positive(e)), A, B, c.target, tg, c.intersection_map);
        lp.moves[u].push_back({x, Path{u, {e}}, img});
        continue;
      }
      // Excursion through components contracted to the same point.
      const std::string& p = *point_of(image_of(c, g.vertex_id(x)));
      std::map<VertexIndex, Path> reach{{x, Path{u, {e}}}};
      std::deque<VertexIndex> queue{x};
      while (!queue.empty()) {
        VertexIndex y = queue.front();
        queue.pop_front();
        for (EdgeIndex d : g.star(y)) {
          VertexIndex z = g.terminal(d);
          Path via = reach.at(y);
          via.edges.push_back(d);
          if (lp.over[z]) {
            const std::string& B = tg.vertex_id(*lp.over[z]);
            if (A == B) {
              lp.moves[u].push_back({z, via, std::nullopt});
            } else if (auto ne = node_edge(c, tg, p, A, B)) {
              lp.moves[u].push_back({z, via, *ne});
            }
          } else if (!reach.count(z)) {
            reach.emplace(z, std::move(via));
            queue.push_back(z);
          }
        }
      }
    }
  }
  return lp;
}

struct Transition {
  VertexIndex from_vertex;
  std::size_t move;
};

CircuitLift solve_lift(const LiftProblem& lp, const Path& circuit) {
  const auto& g = lp.source;
  const auto& tg = lp.target;
  if (!is_circuit(tg, circuit)) throw InputError("lift needs a circuit of the target incidence graph");
  VertexIndex K1 = circuit.start;
  std::vector<VertexIndex> starts;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (lp.over[v] == K1) starts.push_back(v);
  }
  CircuitLift out;
  out.fibre_count = starts.size();
  if (starts.empty()) throw HypothesisError("no source component lies over \"" + tg.vertex_id(K1) + "\"");
  const std::size_t len = circuit.edges.size();
  if (len == 0) {
    out.lifted = Path{starts.front(), {}};
    out.multiplier = 1;
    return out;
  }

  // Free moves (no image) split the curve-image vertices into classes.
  std::vector<std::size_t> cls(g.vertex_count());
  std::iota(cls.begin(), cls.end(), 0);
  auto find = [&](std::size_t x) {
    while (cls[x] != x) x = cls[x] = cls[cls[x]];
    return x;
  };
  for (VertexIndex u = 0; u < g.vertex_count(); ++u) {
    for (const Move& m : lp.moves[u]) {
      if (!m.image) {
        std::size_t a = find(u), b = find(m.to);
        if (a != b) cls[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::map<std::size_t, std::vector<VertexIndex>> members;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (lp.over[v]) members[find(v)].push_back(v);
  }

  auto free_path = [&](VertexIndex from, VertexIndex to) {
    std::map<VertexIndex, Path> reach{{from, Path{from, {}}}};
    std::deque<VertexIndex> queue{from};
    while (!queue.empty() && !reach.count(to)) {
      VertexIndex y = queue.front();
      queue.pop_front();
      for (const Move& m : lp.moves[y]) {
        if (m.image || reach.count(m.to)) continue;
        Path p = reach.at(y);
        p.edges.insert(p.edges.end(), m.path.edges.begin(), m.path.edges.end());
        reach.emplace(m.to, std::move(p));
        queue.push_back(m.to);
      }
    }
    return reach.at(to);
  };

  using State = std::pair<std::size_t, std::size_t>;  // (class, position)
  auto transitions_of = [&](const State& s) {
    std::vector<std::pair<State, Transition>> out_edges;
    EdgeIndex want = circuit.edges[s.second];
    for (VertexIndex u : members[s.first]) {
      for (std::size_t i = 0; i < lp.moves[u].size(); ++i) {
        const Move& m = lp.moves[u][i];
        if (m.image == want) out_edges.push_back({{find(m.to), (s.second + 1) % len}, {u, i}});
      }
    }
    return out_edges;
  };

  std::optional<EdgeIndex> breaking;
  std::set<State> finished;
  for (VertexIndex start : starts) {
    State s0{find(start), 0};
    if (finished.count(s0)) continue;
    struct Frame {
      State state;
      std::vector<std::pair<State, Transition>> edges;
      std::size_t next = 0;
    };
    std::vector<Frame> stack;
    std::vector<Transition> into;  // into[i]: transition from stack[i-1] to stack[i]
    std::map<State, std::size_t> on_stack;
    stack.push_back({s0, transitions_of(s0)});
    into.push_back({start, 0});
    on_stack[s0] = 0;
    if (stack.back().edges.empty() && !breaking) breaking = circuit.edges[0];
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next == top.edges.size()) {
        finished.insert(top.state);
        on_stack.erase(top.state);
        stack.pop_back();
        into.pop_back();
        continue;
      }
      auto [next_state, trans] = top.edges[top.next++];
      if (auto it = on_stack.find(next_state); it != on_stack.end()) {
        std::size_t j = it->second;
        std::size_t top_index = stack.size() - 1;
        std::size_t anchor = j;
        while (stack[anchor].state.second != 0) ++anchor;
        std::vector<Transition> lead(into.begin() + 1, into.begin() + anchor + 1);
        std::vector<Transition> loop(into.begin() + anchor + 1, into.end());
        loop.push_back(trans);
        loop.insert(loop.end(), into.begin() + j + 1, into.begin() + anchor + 1);
        (void)top_index;

        VertexIndex cur = start;
        Path walk{start, {}};
        auto follow = [&](const Transition& t) {
          Path fp = free_path(cur, t.from_vertex);
          walk.edges.insert(walk.edges.end(), fp.edges.begin(), fp.edges.end());
          const Move& m = lp.moves[t.from_vertex][t.move];
          walk.edges.insert(walk.edges.end(), m.path.edges.begin(), m.path.edges.end());
          cur = m.to;
        };
        for (const auto& t : lead) follow(t);
        Path gamma = walk;
        VertexIndex anchor_vertex = cur;
        walk = Path{cur, {}};
        for (const auto& t : loop) follow(t);
        Path closing = free_path(cur, anchor_vertex);
        walk.edges.insert(walk.edges.end(), closing.edges.begin(), closing.edges.end());

        out.multiplier = loop.size() / len;
        out.lifted = concatenate(g, concatenate(g, gamma, walk), inverse_path(g, gamma));
        std::size_t cap = 1;
        for (std::size_t k = 2; k <= out.fibre_count && cap <= out.multiplier; ++k) cap *= k;
        if (out.multiplier == 0 || out.multiplier > cap) {
          throw HypothesisError("lift multiplier " + std::to_string(out.multiplier) + " exceeds N! for N = " +
                                std::to_string(out.fibre_count));
        }
        return out;
      }
      if (finished.count(next_state)) continue;
      auto edges = transitions_of(next_state);
      if (edges.empty() && !breaking) breaking = circuit.edges[next_state.second];
      on_stack[next_state] = stack.size();
      stack.push_back({next_state, std::move(edges)});
      into.push_back(trans);
    }
  }
  std::string edge = breaking ? tg.edge_id(*breaking) : tg.edge_id(circuit.edges[0]);
  throw HypothesisError("no lift of the circuit: the fibre structure breaks at target edge \"" + edge + "\"");
}

}  // namespace

CircuitLift lift_circuit_power(const CoverMap& c, const Path& circuit) { return solve_lift(lift_problem(c), circuit); }

CircuitLift lift_circuit_power(const CurveCoverMap& c, const Path& circuit) {
  return solve_lift(lift_problem(c), circuit);
}

}  // namespace snc
