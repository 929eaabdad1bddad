#include "snc/relation.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "snc/error.hpp"

namespace snc {

// ---------------------------------------------------------------- points

void check_relation(const PointRelation& r) {
  for (const auto& [id, dim] : r.strata) {
    if (dim < 0) throw InputError("stratum \"" + id + "\" has negative dim");
  }
  std::set<std::string> seen;
  for (const auto& p : r.points) {
    if (!seen.insert(p.id).second) throw InputError("duplicate point \"" + p.id + "\"");
    if (!r.strata.count(p.stratum)) throw InputError("point \"" + p.id + "\" lies on unknown stratum \"" + p.stratum + "\"");
  }
  for (const auto& q : r.pairs) {
    for (const auto* end : {&q.a, &q.b}) {
      if (!seen.count(*end)) throw InputError("pair \"" + q.generator + "\" names unknown point \"" + *end + "\"");
    }
  }
}

std::size_t PointClosure::index(const std::string& point) const {
  auto it = std::lower_bound(points.begin(), points.end(), point);
  if (it == points.end() || *it != point) throw InputError("unknown point \"" + point + "\"");
  return static_cast<std::size_t>(it - points.begin());
}

bool PointClosure::related(const std::string& a, const std::string& b) const {
  return class_of[index(a)] == class_of[index(b)];
}

std::set<std::pair<std::string, std::string>> PointClosure::pairs() const {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& cls : classes) {
    for (const auto& x : cls) {
      for (const auto& y : cls) out.emplace(x, y);
    }
  }
  return out;
}

std::vector<std::string> PointClosure::witness(const std::string& a, const std::string& b) const {
  if (!related(a, b)) throw InputError("\"" + a + "\" and \"" + b + "\" are not related");
  auto to_root = [&](std::string x) {
    std::vector<std::pair<std::string, std::string>> chain;  // (point, generator into parent)
    for (auto it = trace.find(x); it != trace.end(); it = trace.find(x)) {
      chain.emplace_back(x, it->second.generator);
      x = it->second.parent;
    }
    chain.emplace_back(x, "");
    return chain;
  };
  auto ca = to_root(a);
  auto cb = to_root(b);
  while (ca.size() > 1 && cb.size() > 1 && ca[ca.size() - 2].first == cb[cb.size() - 2].first) {
    ca.pop_back();
    cb.pop_back();
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i + 1 < ca.size(); ++i) out.push_back(ca[i].second);
  for (std::size_t i = cb.size() - 1; i-- > 0;) out.push_back(cb[i].second);
  return out;
}

PointClosure equivalence_closure(const PointRelation& r) {
  check_relation(r);
  PointClosure out;
  for (const auto& p : r.points) out.points.push_back(p.id);
  std::sort(out.points.begin(), out.points.end());
  const std::size_t n = out.points.size();

  std::vector<std::vector<std::pair<std::size_t, std::string>>> adj(n);
  for (const auto& q : r.pairs) {
    std::size_t a = out.index(q.a), b = out.index(q.b);
    adj[a].emplace_back(b, q.generator);
    adj[b].emplace_back(a, q.generator);
  }
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  out.class_of.assign(n, none);
  for (std::size_t root = 0; root < n; ++root) {
    if (out.class_of[root] != none) continue;
    std::size_t c = out.classes.size();
    out.classes.emplace_back();
    out.class_of[root] = c;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      out.classes[c].push_back(out.points[x]);
      for (const auto& [y, gen] : adj[x]) {
        if (out.class_of[y] != none) continue;
        out.class_of[y] = c;
        out.trace[out.points[y]] = {out.points[x], gen};
        queue.push_back(y);
      }
    }
    std::sort(out.classes[c].begin(), out.classes[c].end());
  }
  return out;
}

PointRelation pullback_relation(const PointRelation& r, const std::map<std::string, std::string>& g) {
  check_relation(r);
  std::map<std::string, std::string> stratum;
  for (const auto& p : r.points) stratum[p.id] = p.stratum;
  std::map<std::string, std::vector<std::string>> fibre;
  for (const auto& [up, down] : g) {
    if (!stratum.count(down)) throw InputError("\"" + up + "\" maps to unknown point \"" + down + "\"");
    fibre[down].push_back(up);
  }
  for (const auto& p : r.points) {
    if (!fibre.count(p.id)) throw InputError("pullback map misses point \"" + p.id + "\"");
  }
  PointRelation out;
  out.strata = r.strata;
  for (const auto& [up, down] : g) out.points.push_back({up, stratum[down]});
  for (const auto& q : r.pairs) {
    for (const auto& x : fibre[q.a]) {
      for (const auto& y : fibre[q.b]) out.pairs.push_back({x, y, q.generator});
    }
  }
  return out;
}

// ---------------------------------------------------------------- strata

CorrKey key_of(const DimCorrespondence& c) {
  return {c.src, c.dst, c.dim, c.family, c.dominant_src, c.dominant_dst};
}

std::string describe(const CorrKey& k) {
  std::string s = k.src + " -> " + k.dst + " dim " + std::to_string(k.dim);
  if (k.family) s += " family";
  if (k.dominant_src) s += " dom-src";
  if (k.dominant_dst) s += " dom-dst";
  return s;
}

int DimRelation::top_dim() const {
  int d = -1;
  for (const auto& [id, dim] : strata) d = std::max(d, dim);
  return d;
}

void check_relation(const DimRelation& r) {
  for (const auto& [id, dim] : r.strata) {
    if (dim < 0) throw InputError("stratum \"" + id + "\" has negative dim");
  }
  auto dim_of = [&](const std::string& s, const std::string& who) {
    auto it = r.strata.find(s);
    if (it == r.strata.end()) throw InputError(who + " names unknown stratum \"" + s + "\"");
    return it->second;
  };
  std::set<std::string> ids;
  for (const auto& c : r.generators) {
    if (!ids.insert(c.id).second) throw InputError("duplicate generator \"" + c.id + "\"");
    int ds = dim_of(c.src, "generator \"" + c.id + "\"");
    int dd = dim_of(c.dst, "generator \"" + c.id + "\"");
    if (c.dim < 0 || c.dim > std::min(ds, dd)) {
      throw InputError("generator \"" + c.id + "\" has dim " + std::to_string(c.dim) + " outside [0, " +
                       std::to_string(std::min(ds, dd)) + "]");
    }
  }
  for (const auto& o : r.intersections) {
    int da = dim_of(o.a, "overlap");
    int db = dim_of(o.b, "overlap");
    if (o.a == o.b) throw InputError("overlap of \"" + o.a + "\" with itself");
    if (o.dim < 0 || o.dim >= std::min(da, db) + 1) throw InputError("overlap of \"" + o.a + "\" and \"" + o.b + "\" is too big");
  }
}

std::optional<CorrKey> compose(const CorrKey& c1, const CorrKey& c2, const DimRelation& table) {
  if (c1.dst == c2.src) {
    return CorrKey{c1.src, c2.dst, std::min(c1.dim, c2.dim), c1.family || c2.family,
                   c1.dominant_src && c2.dominant_src, c1.dominant_dst && c2.dominant_dst};
  }
  for (const auto& o : table.intersections) {
    if ((o.a == c1.dst && o.b == c2.src) || (o.b == c1.dst && o.a == c2.src)) {
      return CorrKey{c1.src, c2.dst, std::min({c1.dim, c2.dim, o.dim}), c1.family || c2.family, false, false};
    }
  }
  return std::nullopt;
}

std::set<CorrKey> compose(const std::set<CorrKey>& c1, const std::set<CorrKey>& c2, const DimRelation& table) {
  std::set<CorrKey> out;
  for (const auto& a : c1) {
    for (const auto& b : c2) {
      if (auto k = compose(a, b, table)) out.insert(*k);
    }
  }
  return out;
}

std::set<CorrKey> DimClosure::slice(int dim) const {
  std::set<CorrKey> out;
  for (const auto& k : keys) {
    if (k.dim == dim) out.insert(k);
  }
  return out;
}

std::vector<std::string> DimClosure::support(const CorrKey& k) const {
  std::vector<std::string> out;
  std::function<void(const CorrKey&)> walk = [&](const CorrKey& x) {
    const Derivation& d = trace.at(x);
    if (d.kind == Derivation::Kind::generator || d.kind == Derivation::Kind::diagonal) {
      if (std::find(out.begin(), out.end(), d.generator) == out.end()) out.push_back(d.generator);
      return;
    }
    for (const auto& y : d.from) walk(y);
  };
  walk(k);
  return out;
}

DimClosure dim_closure(const DimRelation& r) {
  check_relation(r);
  DimClosure out;
  out.top_dim = r.top_dim();
  std::deque<CorrKey> queue;
  auto add = [&](const CorrKey& k, Derivation d) {
    if (out.keys.insert(k).second) {
      out.trace.emplace(k, std::move(d));
      queue.push_back(k);
    }
  };
  for (const auto& [id, dim] : r.strata) add({id, id, dim, false, true, true}, {Derivation::Kind::diagonal, id, {}, 0});
  for (const auto& c : r.generators) add(key_of(c), {Derivation::Kind::generator, c.id, {}, 0});
  std::vector<CorrKey> done;
  while (!queue.empty()) {
    CorrKey k = queue.front();
    queue.pop_front();
    std::size_t depth = out.trace.at(k).depth + 1;
    add(k.flipped(), {Derivation::Kind::flip, "", {k}, depth});
    done.push_back(k);
    for (std::size_t i = 0; i < done.size(); ++i) {
      const CorrKey other = done[i];
      std::size_t d = std::max(depth, out.trace.at(other).depth + 1);
      if (auto c = compose(k, other, r)) add(*c, {Derivation::Kind::compose, "", {k, other}, d});
      if (auto c = compose(other, k, r)) add(*c, {Derivation::Kind::compose, "", {other, k}, d});
    }
  }
  return out;
}

std::set<std::string> invariant_low_locus(const DimRelation& r) { return invariant_low_locus(r, dim_closure(r)); }

std::set<std::string> invariant_low_locus(const DimRelation& r, const DimClosure& closure) {
  const int D = r.top_dim();
  std::set<std::string> locus;
  for (const auto& [id, dim] : r.strata) {
    if (dim < D) locus.insert(id);
  }
  for (const auto& c : r.generators) {
    if (c.dim < D) {
      locus.insert(c.src);
      locus.insert(c.dst);
    }
  }
  std::set<CorrKey> top = closure.slice(D);
  std::deque<std::string> queue(locus.begin(), locus.end());
  while (!queue.empty()) {
    std::string s = queue.front();
    queue.pop_front();
    for (const auto& k : top) {
      if (k.src == s && locus.insert(k.dst).second) queue.push_back(k.dst);
    }
  }
  return locus;
}

namespace {

std::vector<std::vector<std::string>> stratum_classes(const DimRelation& r, const DimClosure& closure) {
  std::map<std::string, std::string> parent;
  for (const auto& [id, dim] : r.strata) parent[id] = id;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& k : closure.keys) {
    std::string a = find(k.src), b = find(k.dst);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::string, std::vector<std::string>> by_root;
  for (const auto& [id, dim] : r.strata) by_root[find(id)].push_back(id);
  std::vector<std::vector<std::string>> out;
  for (auto& [root, members] : by_root) out.push_back(std::move(members));
  return out;
}

ProfiniteResult analyse_level(const DimRelation& r, std::size_t depth) {
  DimClosure closure = dim_closure(r);
  const int D = r.top_dim();
  std::set<CorrKey> top = closure.slice(D);

  std::set<std::string> dominated;
  for (const auto& k : top) {
    if (!k.family) continue;
    if (k.dominant_src) dominated.insert(k.src);
    if (k.dominant_dst) dominated.insert(k.dst);
  }
  if (!dominated.empty()) {
    ProfiniteResult out;
    out.infinite = true;
    out.depth = depth;
    out.strata = dominated;
    out.dim = D;
    for (const auto& s : dominated) out.dims[s] = r.strata.at(s);
    for (const auto& k : top) {
      if (dominated.count(k.src) && dominated.count(k.dst)) out.restricted.push_back(k);
    }
    return out;
  }

  std::set<std::string> locus = invariant_low_locus(r, closure);
  if (locus.empty() || D <= 0) {
    ProfiniteResult out;
    out.depth = depth;
    return out;
  }

  // Dim of the locus inside each stratum: bounded by the low-dimensional
  // pieces that reach its class under the top slice.
  std::map<std::string, std::string> parent;
  for (const auto& s : locus) parent[s] = s;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& k : top) {
    if (locus.count(k.src) && locus.count(k.dst)) {
      std::string a = find(k.src), b = find(k.dst);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::string, int> low;
  auto raise = [&](const std::string& s, int d) {
    auto& v = low.try_emplace(find(s), -1).first->second;
    v = std::max(v, d);
  };
  for (const auto& s : locus) {
    if (r.strata.at(s) < D) raise(s, r.strata.at(s));
  }
  for (const auto& c : r.generators) {
    if (c.dim < D) {
      raise(c.src, c.dim);
      raise(c.dst, c.dim);
    }
  }
  DimRelation next;
  for (const auto& s : locus) next.strata[s] = std::min(r.strata.at(s), low.at(find(s)));
  for (const auto& c : r.generators) {
    if (c.dim >= D) continue;
    DimCorrespondence d = c;
    d.dominant_src = c.dim == next.strata.at(c.src);
    d.dominant_dst = c.dim == next.strata.at(c.dst);
    next.generators.push_back(d);
  }
  std::size_t n = 0;
  for (const auto& k : top) {
    if (!locus.count(k.src) || !locus.count(k.dst)) continue;
    if (k.src == k.dst && !k.family) continue;
    int e = std::min(next.strata.at(k.src), next.strata.at(k.dst));
    next.generators.push_back({"top#" + std::to_string(n++), k.src, k.dst, e, k.family, e == next.strata.at(k.src),
                               e == next.strata.at(k.dst)});
  }
  for (const auto& o : r.intersections) {
    if (locus.count(o.a) && locus.count(o.b)) {
      next.intersections.push_back({o.a, o.b, std::min({o.dim, next.strata.at(o.a), next.strata.at(o.b)})});
    }
  }
  return analyse_level(next, depth + 1);
}

}  // namespace

ProfiniteResult profinite_analysis(const DimRelation& r) {
  ProfiniteResult out = analyse_level(r, 0);
  if (!out.infinite) out.classes = stratum_classes(r, dim_closure(r));
  return out;
}

DimRelation pullback_relation(const DimRelation& r, const std::map<std::string, std::string>& g,
                              const std::map<std::string, int>& upstairs_dims) {
  check_relation(r);
  std::map<std::string, std::vector<std::string>> fibre;
  DimRelation out;
  for (const auto& [up, down] : g) {
    auto it = r.strata.find(down);
    if (it == r.strata.end()) throw InputError("\"" + up + "\" maps to unknown stratum \"" + down + "\"");
    if (auto d = upstairs_dims.find(up); d != upstairs_dims.end() && d->second != it->second) {
      throw InputError("stratum \"" + up + "\" has dim " + std::to_string(d->second) + " but its image \"" + down +
                       "\" has dim " + std::to_string(it->second));
    }
    fibre[down].push_back(up);
    out.strata[up] = it->second;
  }
  for (const auto& [id, dim] : r.strata) {
    if (!fibre.count(id)) throw InputError("pullback map misses stratum \"" + id + "\"");
  }
  for (const auto& c : r.generators) {
    for (const auto& s : fibre[c.src]) {
      for (const auto& t : fibre[c.dst]) {
        DimCorrespondence d = c;
        d.id = c.id + "@" + s + "," + t;
        d.src = s;
        d.dst = t;
        out.generators.push_back(d);
      }
    }
  }
  for (const auto& o : r.intersections) {
    for (const auto& s : fibre[o.a]) {
      for (const auto& t : fibre[o.b]) out.intersections.push_back({s, t, o.dim});
    }
  }
  return out;
}

}  // namespace snc
