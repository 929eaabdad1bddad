#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

#include "check/check.hpp"
#include "snc/parallel.hpp"

namespace snc::check {

ExactScalar multiply_along(const LineBundleModel& b, const Path& p) {
  auto table = b.transitions();
  const StallingsGraph& g = b.graph();
  ExactScalar out = ExactScalar::identity();
  for (EdgeIndex e : p.edges) {
    const std::string& id = g.edge_id(e);
    out *= id[0] == '~' ? table.at(id.substr(1)).inverse() : table.at(id);
  }
  return out;
}

// ---------------------------------------------------------------- circuits

namespace {

struct Scanner {
  const StallingsGraph& g;
  std::vector<ExactScalar> scalar;  // per directed edge
  VertexIndex base;
  std::size_t max_length;
  bool stop_at_witness;

  Scanner(const LineBundleModel& b, VertexIndex base_, std::size_t max_len, bool stop)
      : g(b.graph()), base(base_), max_length(max_len), stop_at_witness(stop) {
    auto table = b.transitions();
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      const std::string& id = g.edge_id(e);
      scalar.push_back(id[0] == '~' ? table.at(id.substr(1)).inverse() : table.at(id));
    }
  }

  void run(Path& path, const ExactScalar& value, CircuitScan& out) const {
    VertexIndex u = path_end(g, path);
    if (!path.edges.empty() && u == base) {
      ++out.circuits;
      if (!value.is_identity() && out.all_identity) {
        out.all_identity = false;
        out.witness = path;
      }
    }
    if (path.edges.size() == max_length || (stop_at_witness && !out.all_identity)) return;
    for (EdgeIndex e : g.star(u)) {
      if (!path.edges.empty() && e == g.bar(path.edges.back())) continue;
      path.edges.push_back(e);
      run(path, value * scalar[e], out);
      path.edges.pop_back();
      if (stop_at_witness && !out.all_identity) return;
    }
  }

  CircuitScan from_edge(EdgeIndex first) const {
    CircuitScan out;
    Path p{base, {first}};
    run(p, scalar[first], out);
    return out;
  }
};

CircuitScan merge(const std::vector<CircuitScan>& parts) {
  CircuitScan out;
  for (const auto& s : parts) {
    out.circuits += s.circuits;
    if (out.all_identity && !s.all_identity) {
      out.all_identity = false;
      out.witness = s.witness;
    }
  }
  return out;
}

}  // namespace

CircuitScan scan_reduced_circuits_serial(const LineBundleModel& b, VertexIndex base, std::size_t max_length) {
  Scanner sc(b, base, max_length, false);
  CircuitScan out;
  Path p{base, {}};
  if (max_length > 0) sc.run(p, ExactScalar::identity(), out);
  return out;
}

CircuitScan scan_reduced_circuits_parallel(const LineBundleModel& b, VertexIndex base, std::size_t max_length) {
  if (max_length == 0) return {};
  Scanner sc(b, base, max_length, false);
  const auto& star = b.graph().star(base);
  return merge(parallel::map_parallel<CircuitScan>(star.size(), [&](std::size_t i) { return sc.from_edge(star[i]); }));
}

bool brute_force_trivial(const LineBundleModel& b, bool use_parallel) {
  const StallingsGraph& g = b.graph();
  std::vector<std::size_t> comp = connected_components(g);
  std::map<std::size_t, VertexIndex> base;
  std::map<std::size_t, std::size_t> edges;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) base.try_emplace(comp[v], v);
  for (EdgeIndex e = 0; e < g.edge_count(); e += 2) ++edges[comp[g.initial(e)]];
  for (const auto& [c, v] : base) {
    Scanner sc(b, v, 2 * edges[c], true);
    const auto& star = g.star(v);
    auto parts = use_parallel
                     ? parallel::map_parallel<CircuitScan>(star.size(), [&](std::size_t i) { return sc.from_edge(star[i]); })
                     : parallel::map_serial<CircuitScan>(star.size(), [&](std::size_t i) { return sc.from_edge(star[i]); });
    if (!merge(parts).all_identity) return false;
  }
  return true;
}

bool section_satisfies(const LineBundleModel& b, const SectionAssignment& s) {
  std::map<std::string, std::optional<ExactScalar>> value;
  for (std::size_t i = 0; i < s.components.size(); ++i) value[s.components[i]] = s.values.at(i);
  for (const auto& c : b.base().components) {
    if (!value.count(c.id)) return false;
  }
  for (const auto& [piece, t] : b.transitions()) {
    const IntersectionPiece* p = b.base().find_piece(piece);
    const auto& a = value.at(p->a);
    const auto& z = value.at(p->b);
    if (a.has_value() != z.has_value()) return false;
    if (a && *z != t * *a) return false;
  }
  return true;
}

bool covers_every_edge(const StallingsGraph& g, const Path& p) {
  if (p.edges.empty()) return g.edge_count() == 0;
  VertexIndex at = p.start;
  std::set<EdgeIndex> hit;
  for (EdgeIndex e : p.edges) {
    if (g.initial(e) != at) return false;
    at = g.terminal(e);
    hit.insert(std::min(e, g.bar(e)));
  }
  return at == p.start && hit.size() == g.geometric_edge_count();
}

// ---------------------------------------------------------------- index

namespace {

using Perm = std::vector<std::size_t>;

bool transitive(const std::vector<Perm>& gens, std::size_t k) {
  std::vector<bool> seen(k, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  auto visit = [&](std::size_t y) {
    if (!seen[y]) {
      seen[y] = true;
      ++count;
      queue.push_back(y);
    }
  };
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (const auto& p : gens) {
      visit(p[x]);
      visit(static_cast<std::size_t>(std::find(p.begin(), p.end(), x) - p.begin()));
    }
  }
  return count == k;
}

std::size_t act(const std::vector<Perm>& gens, const Word& w, std::size_t x) {
  for (const Letter& l : w) {
    const Perm& p = gens[l.generator];
    if (!l.inverted) {
      x = p[x];
    } else {
      x = static_cast<std::size_t>(std::find(p.begin(), p.end(), x) - p.begin());
    }
  }
  return x;
}

}  // namespace

std::size_t index_by_permutation_search(const GraphMap& f, VertexIndex v, std::size_t max_degree) {
  const VertexIndex w = f.vertex_map[v];
  Pi1Basis tb = pi1_basis(f.target, w);
  Pi1Basis sb = pi1_basis(f.source, v);
  std::vector<Word> words;
  for (const auto& c : sb.circuits) words.push_back(express_in_basis(f.target, tb, reduce_path(f.target, f.image(c))));
  const std::size_t r = tb.rank();
  if (r == 0) return 1;
  for (std::size_t k = max_degree; k >= 2; --k) {
    Perm id(k);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Perm> all;
    Perm p = id;
    do {
      all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<Perm> gens(r);
    std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
      if (i == r) {
        if (!transitive(gens, k)) return false;
        return std::all_of(words.begin(), words.end(), [&](const Word& word) { return act(gens, word, 0) == 0; });
      }
      for (const auto& q : all) {
        gens[i] = q;
        if (search(i + 1)) return true;
      }
      return false;
    };
    if (search(0)) return k;
  }
  return 1;
}

std::size_t covering_orbit_length(const GraphMap& f, const Path& circuit, VertexIndex start) {
  VertexIndex at = start;
  for (std::size_t m = 1;; ++m) {
    for (EdgeIndex c : circuit.edges) {
      const auto& star = f.source.star(at);
      auto it = std::find_if(star.begin(), star.end(), [&](EdgeIndex e) { return f.edge_map[e] == c; });
      at = f.source.terminal(*it);
    }
    if (at == start) return m;
  }
}

// ---------------------------------------------------------------- relations

std::vector<std::vector<bool>> naive_closure(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (const auto& [a, b] : pairs) r[a][b] = r[b][a] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!r[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (r[k][j]) r[i][j] = true;
      }
    }
  }
  return r;
}

namespace {

std::vector<std::vector<std::string>> classes_of(const std::vector<std::string>& names,
                                                 const std::vector<std::vector<bool>>& r) {
  std::vector<std::vector<std::string>> out;
  std::vector<bool> done(names.size(), false);
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (done[i]) continue;
    std::vector<std::string> cls;
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (r[i][j]) {
        cls.push_back(names[j]);
        done[j] = true;
      }
    }
    out.push_back(cls);
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::string>> naive_classes(const PointRelation& r) {
  std::vector<std::string> names;
  for (const auto& p : r.points) names.push_back(p.id);
  std::sort(names.begin(), names.end());
  auto index = [&](const std::string& x) {
    return static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), x) - names.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& q : r.pairs) pairs.emplace_back(index(q.a), index(q.b));
  return classes_of(names, naive_closure(names.size(), pairs));
}

std::set<CorrKey> naive_dim_closure(const DimRelation& r) {
  std::set<CorrKey> s;
  for (const auto& [id, dim] : r.strata) s.insert({id, id, dim, false, true, true});
  for (const auto& c : r.generators) s.insert({c.src, c.dst, c.dim, c.family, c.dominant_src, c.dominant_dst});
  auto overlap = [&](const std::string& x, const std::string& y) -> std::optional<int> {
    for (const auto& o : r.intersections) {
      if ((o.a == x && o.b == y) || (o.a == y && o.b == x)) return o.dim;
    }
    return std::nullopt;
  };
  for (;;) {
    std::set<CorrKey> next = s;
    for (const auto& a : s) {
      next.insert({a.dst, a.src, a.dim, a.family, a.dominant_dst, a.dominant_src});
      for (const auto& b : s) {
        if (a.dst == b.src) {
          next.insert({a.src, b.dst, std::min(a.dim, b.dim), a.family || b.family, a.dominant_src && b.dominant_src,
                       a.dominant_dst && b.dominant_dst});
        } else if (auto d = overlap(a.dst, b.src)) {
          next.insert({a.src, b.dst, std::min({a.dim, b.dim, *d}), a.family || b.family, false, false});
        }
      }
    }
    if (next == s) return s;
    s = std::move(next);
  }
}

std::vector<std::vector<std::string>> naive_gluing_classes(const FibrationFamily& fam) {
  std::set<std::string> pts;
  std::map<std::string, std::string> phi;  // qualified point -> qualified base point
  for (const auto& c : fam.components) {
    for (const auto& [y, x] : c.phi) {
      pts.insert(c.id + ":" + x);
      phi[c.id + ":" + y] = c.id + ":" + x;
    }
    for (const auto& x : c.base) pts.insert(c.id + ":" + x);
  }
  std::vector<std::string> names(pts.begin(), pts.end());
  auto index = [&](const std::string& x) {
    return static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), x) - names.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& s : fam.shared_points) {
    for (std::size_t i = 0; i < s.aliases.size(); ++i) {
      for (std::size_t j = i + 1; j < s.aliases.size(); ++j) {
        pairs.emplace_back(index(phi.at(s.aliases[i])), index(phi.at(s.aliases[j])));
      }
    }
  }
  return classes_of(names, naive_closure(names.size(), pairs));
}

// ---------------------------------------------------------------- surfaces

bool divisor_round_trip(const SurfaceModel& sm, const SurfaceDivisor& d, const DivisorDescent& out) {
  std::map<FibreMember, std::string> over;
  for (const auto& f : sm.fibrations) {
    for (const auto& fc : f.fibres) {
      for (const auto& m : fc.members) over[{f.component, m}] = fc.over;
    }
  }
  std::map<FibreMember, Rational> given;
  for (const auto& c : d.coefficients) given[c.at] = c.value;
  for (const auto& w : sm.pullback_weights) {
    auto it = out.delta.find(over.at(w.at));
    Rational rebuilt = it == out.delta.end() ? Rational(0) : Rational(it->second) * w.value;
    Rational expected = given.count(w.at) ? Rational(Rational(out.m) * given.at(w.at)) : Rational(0);
    if (rebuilt != expected) return false;
  }
  return true;
}

bool global_section_ok(const SurfaceModel& sm, const GlobalSection& s, const FibreUnit& at) {
  for (const auto& f : sm.fibrations) {
    for (const auto& fc : f.fibres) {
      auto it = s.values.find({f.component, fc.id});
      if (it == s.values.end() || it->second.modulus() <= 0) return false;
    }
  }
  for (const auto& sp : sm.shared_points) {
    const ExactScalar& a = s.values.at({sp.links[0].component, sp.links[0].fibre});
    const ExactScalar& b = s.values.at({sp.links[1].component, sp.links[1].fibre});
    if (b != sp.transition * a) return false;
  }
  return s.values.count(at) == 1;
}

}  // namespace snc::check
