#include "snc/gluing.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "snc/core.hpp"
#include "snc/error.hpp"

namespace snc {

// ---------------------------------------------------------------- families

const FamilyComponent* FibrationFamily::find(const std::string& id) const {
  for (const auto& c : components) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::string qualified(const std::string& component, const std::string& local) { return component + ":" + local; }

std::pair<std::string, std::string> split_qualified(const std::string& name) {
  auto colon = name.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == name.size()) {
    throw InputError("expected \"component:point\", got \"" + name + "\"");
  }
  return {name.substr(0, colon), name.substr(colon + 1)};
}

namespace {

std::set<std::string> base_of(const FamilyComponent& c) {
  if (!c.base.empty()) return {c.base.begin(), c.base.end()};
  std::set<std::string> out;
  for (const auto& [y, x] : c.phi) out.insert(x);
  return out;
}

// Fibre phi^{-1}(x) as qualified points.
std::vector<std::string> fibre_of(const FamilyComponent& c, const std::string& x) {
  std::vector<std::string> out;
  for (const auto& y : c.points) {
    if (c.phi.at(y) == x) out.push_back(qualified(c.id, y));
  }
  return out;
}

// Qualified point -> its shared point id.
std::map<std::string, std::string> shared_index(const FibrationFamily& fam) {
  std::map<std::string, std::string> out;
  for (const auto& s : fam.shared_points) {
    for (const auto& a : s.aliases) out[a] = s.id;
  }
  return out;
}

const std::string& phi_of(const FibrationFamily& fam, const std::string& point) {
  auto [t, y] = split_qualified(point);
  const FamilyComponent* c = fam.find(t);
  if (!c) throw InputError("unknown component in \"" + point + "\"");
  auto it = c->phi.find(y);
  if (it == c->phi.end()) throw InputError("unknown point \"" + point + "\"");
  return it->second;
}

}  // namespace

void check_family(const FibrationFamily& fam) {
  std::set<std::string> ids;
  for (const auto& c : fam.components) {
    if (c.id.empty() || c.id.find(':') != std::string::npos) throw InputError("bad component id \"" + c.id + "\"");
    if (!ids.insert(c.id).second) throw InputError("duplicate component \"" + c.id + "\"");
    std::set<std::string> pts;
    for (const auto& y : c.points) {
      if (!pts.insert(y).second) throw InputError("duplicate point \"" + qualified(c.id, y) + "\"");
      if (!c.phi.count(y)) throw InputError("phi is not defined at \"" + qualified(c.id, y) + "\"");
    }
    for (const auto& [y, x] : c.phi) {
      if (!pts.count(y)) throw InputError("phi names unknown point \"" + qualified(c.id, y) + "\"");
    }
    if (!c.base.empty()) {
      std::set<std::string> image;
      for (const auto& [y, x] : c.phi) image.insert(x);
      std::set<std::string> base(c.base.begin(), c.base.end());
      for (const auto& x : image) {
        if (!base.count(x)) throw InputError("phi on \"" + c.id + "\" leaves its base at \"" + x + "\"");
      }
      for (const auto& x : base) {
        if (!image.count(x)) throw InputError("phi on \"" + c.id + "\" misses base point \"" + x + "\"");
      }
    }
  }
  std::set<std::string> shared_ids;
  std::set<std::string> used;
  for (const auto& s : fam.shared_points) {
    if (!shared_ids.insert(s.id).second) throw InputError("duplicate shared point \"" + s.id + "\"");
    if (s.aliases.size() < 2) throw InputError("shared point \"" + s.id + "\" needs at least two aliases");
    std::set<std::string> comps;
    for (const auto& a : s.aliases) {
      auto [t, y] = split_qualified(a);
      const FamilyComponent* c = fam.find(t);
      if (!c || std::find(c->points.begin(), c->points.end(), y) == c->points.end()) {
        throw InputError("shared point \"" + s.id + "\" names unknown point \"" + a + "\"");
      }
      if (!comps.insert(t).second) throw InputError("shared point \"" + s.id + "\" repeats component \"" + t + "\"");
      if (!used.insert(a).second) throw InputError("point \"" + a + "\" belongs to two shared points");
    }
  }
}

std::vector<std::string> base_points(const FibrationFamily& fam) {
  std::vector<std::string> out;
  for (const auto& c : fam.components) {
    for (const auto& x : base_of(c)) out.push_back(qualified(c.id, x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

GluingRelation build_gluing_relation(const FibrationFamily& fam) {
  check_family(fam);
  GluingRelation out;
  for (const auto& c : fam.components) {
    out.relation.strata[c.id] = 0;
    for (const auto& x : base_of(c)) out.relation.points.push_back({qualified(c.id, x), c.id});
  }
  for (const auto& s : fam.shared_points) {
    auto first = split_qualified(s.aliases[0]).first;
    std::string x1 = qualified(first, phi_of(fam, s.aliases[0]));
    for (std::size_t i = 1; i < s.aliases.size(); ++i) {
      auto t = split_qualified(s.aliases[i]).first;
      out.relation.pairs.push_back({x1, qualified(t, phi_of(fam, s.aliases[i])), s.id});
    }
  }
  out.closure = equivalence_closure(out.relation);
  return out;
}

namespace {

PseudoFibre make_pseudofibre(const FibrationFamily& fam, const PointClosure& closure, std::size_t cls) {
  PseudoFibre out;
  out.members = closure.classes[cls];
  out.representative = out.members.front();
  auto shared = shared_index(fam);

  // One vertex per member fibre; fibres are adjacent when they contain
  // aliases of the same shared point.
  std::map<std::string, std::size_t> owner;  // shared id -> first fibre containing it
  std::vector<std::vector<std::size_t>> adj(out.members.size());
  std::set<std::string> points;
  for (std::size_t i = 0; i < out.members.size(); ++i) {
    auto [t, x] = split_qualified(out.members[i]);
    for (const auto& y : fibre_of(*fam.find(t), x)) {
      auto it = shared.find(y);
      if (it == shared.end()) {
        points.insert(y);
        continue;
      }
      points.insert(it->second);
      auto [o, fresh] = owner.emplace(it->second, i);
      if (!fresh && o->second != i) {
        adj[i].push_back(o->second);
        adj[o->second].push_back(i);
      }
    }
  }
  out.points.assign(points.begin(), points.end());
  std::vector<bool> seen(out.members.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t j : adj[i]) {
      if (!seen[j]) {
        seen[j] = true;
        ++reached;
        queue.push_back(j);
      }
    }
  }
  out.connected = reached == out.members.size();
  return out;
}

}  // namespace

PseudoFibre pseudofibre(const FibrationFamily& fam, const std::string& base_point) {
  GluingRelation g = build_gluing_relation(fam);
  return make_pseudofibre(fam, g.closure, g.closure.class_of[g.closure.index(base_point)]);
}

std::vector<PseudoFibre> pseudofibres(const FibrationFamily& fam) {
  GluingRelation g = build_gluing_relation(fam);
  std::vector<PseudoFibre> out;
  for (std::size_t c = 0; c < g.closure.classes.size(); ++c) out.push_back(make_pseudofibre(fam, g.closure, c));
  return out;
}

CompatibilityReport cover_compatibility(const FibrationFamily& down, const FamilyCover& cover) {
  const FibrationFamily& up = cover.up;
  check_family(down);
  check_family(up);
  for (const auto& c : up.components) {
    auto it = cover.component_map.find(c.id);
    if (it == cover.component_map.end()) throw InputError("upstairs component \"" + c.id + "\" has no image");
    if (!down.find(it->second)) throw InputError("\"" + c.id + "\" maps to unknown component \"" + it->second + "\"");
  }
  auto down_shared = shared_index(down);
  auto up_shared = shared_index(up);
  std::map<std::string, std::vector<std::string>> shared_aliases;
  for (const auto& s : down.shared_points) shared_aliases[s.id] = s.aliases;

  // The point map, component by component.
  std::map<std::string, std::string> pmap;
  for (const auto& c : up.components) {
    for (const auto& y : c.points) {
      std::string q = qualified(c.id, y);
      auto it = cover.point_map.find(q);
      if (it == cover.point_map.end()) {
        if (cover.birational && !up_shared.count(q)) continue;
        throw InputError("point \"" + q + "\" has no image");
      }
      auto [t, z] = split_qualified(it->second);
      if (t != cover.component_map.at(c.id)) {
        throw InputError("point \"" + q + "\" maps to \"" + it->second + "\" off the image component");
      }
      phi_of(down, it->second);
      pmap[q] = it->second;
    }
  }
  for (const auto& [q, image] : cover.point_map) {
    if (!pmap.count(q)) throw InputError("point map names unknown point \"" + q + "\"");
  }
  std::set<std::string> hit;
  for (const auto& [q, image] : pmap) hit.insert(image);
  if (cover.birational) {
    if (hit.size() != pmap.size()) throw InputError("birational point map is not injective");
    for (const auto& [a, s] : down_shared) {
      if (!hit.count(a)) throw InputError("shared point \"" + a + "\" lies in the exceptional set");
    }
  } else {
    for (const auto& c : down.components) {
      for (const auto& y : c.points) {
        if (!hit.count(qualified(c.id, y))) throw InputError("point map misses \"" + qualified(c.id, y) + "\"");
      }
    }
  }

  // Shared points go to shared points, aliases onto aliases.
  for (const auto& s : up.shared_points) {
    std::set<std::string> image;
    for (const auto& a : s.aliases) image.insert(pmap.at(a));
    auto it = down_shared.find(pmap.at(s.aliases[0]));
    if (it == down_shared.end()) {
      throw InputError("shared point \"" + s.id + "\" maps to the unshared point \"" + pmap.at(s.aliases[0]) + "\"");
    }
    const auto& target = shared_aliases[it->second];
    if (image != std::set<std::string>(target.begin(), target.end())) {
      throw InputError("shared point \"" + s.id + "\" does not map onto the aliases of \"" + it->second + "\"");
    }
  }
  for (const auto& [q, image] : pmap) {
    if (!up_shared.count(q) && down_shared.count(image)) {
      throw InputError("unshared point \"" + q + "\" maps to shared point \"" + down_shared.at(image) + "\"");
    }
  }

  // sigma on base points, checking that the square commutes.
  CompatibilityReport report;
  std::map<std::string, std::string> witness;
  for (const auto& c : up.components) {
    const std::string& t = cover.component_map.at(c.id);
    for (const auto& y : c.points) {
      std::string q = qualified(c.id, y);
      if (!pmap.count(q)) continue;
      std::string xbar = qualified(c.id, c.phi.at(y));
      std::string x = qualified(t, phi_of(down, pmap.at(q)));
      auto [it, fresh] = report.sigma.emplace(xbar, x);
      if (!fresh && it->second != x) {
        throw InputError("square does not commute at \"" + q + "\": fibre over \"" + xbar + "\" maps to \"" + it->second +
                         "\" and \"" + x + "\"");
      }
      witness.emplace(xbar, q);
    }
  }
  for (const auto& xbar : base_points(up)) {
    if (!report.sigma.count(xbar)) throw InputError("fibre over \"" + xbar + "\" lies in the exceptional set");
  }
  if (cover.birational) {
    for (const auto& [xbar, x] : report.sigma) {
      if (split_qualified(xbar).second != split_qualified(x).second) {
        throw InputError("birational cover moves base point \"" + xbar + "\" to \"" + x + "\"");
      }
    }
  } else {
    // Fibres map onto fibres.
    for (const auto& c : up.components) {
      const FamilyComponent& t = *down.find(cover.component_map.at(c.id));
      for (const auto& x : base_of(c)) {
        std::string xbar = qualified(c.id, x);
        std::set<std::string> image;
        for (const auto& q : fibre_of(c, x)) image.insert(pmap.at(q));
        for (const auto& q : fibre_of(t, split_qualified(report.sigma.at(xbar)).second)) {
          if (!image.count(q)) throw InputError("fibre over \"" + xbar + "\" misses \"" + q + "\"");
        }
      }
    }
  }

  GluingRelation lo = build_gluing_relation(down);
  GluingRelation hi = build_gluing_relation(up);
  const auto& dc = lo.closure;
  const auto& uc = hi.closure;
  auto down_class = [&](const std::string& xbar) { return dc.class_of[dc.index(report.sigma.at(xbar))]; };

  // Each upstairs class lands in one downstairs class and covers it.
  report.image_is_class = true;
  report.preimage_is_union = true;
  std::vector<std::set<std::size_t>> up_classes_over(dc.classes.size());
  for (std::size_t k = 0; k < uc.classes.size(); ++k) {
    std::size_t target = down_class(uc.classes[k].front());
    std::set<std::string> image;
    for (const auto& xbar : uc.classes[k]) {
      if (down_class(xbar) != target) report.preimage_is_union = false;
      image.insert(report.sigma.at(xbar));
    }
    up_classes_over[target].insert(k);
    if (image != std::set<std::string>(dc.classes[target].begin(), dc.classes[target].end())) {
      report.image_is_class = false;
    }
  }
  std::size_t covered = 0;
  for (std::size_t c = 0; c < dc.classes.size(); ++c) {
    std::size_t size = 0;
    for (std::size_t k : up_classes_over[c]) size += uc.classes[k].size();
    std::size_t pre = 0;
    for (const auto& [xbar, x] : report.sigma) pre += dc.class_of[dc.index(x)] == c;
    if (size != pre) report.preimage_is_union = false;
    covered += !up_classes_over[c].empty();
  }
  if (covered != dc.classes.size()) report.image_is_class = false;
  report.partitions_equal = report.image_is_class && report.preimage_is_union && uc.classes.size() == dc.classes.size();
  return report;
}

// ---------------------------------------------------------------- surfaces

const SurfaceDivisor& SurfaceModel::divisor(const std::string& id) const {
  for (const auto& d : divisors) {
    if (d.id == id) return d;
  }
  throw InputError("unknown divisor \"" + id + "\"");
}

namespace {

struct SurfaceIndex {
  std::map<std::string, const QPoint*> qpoints;
  std::map<std::string, const SurfaceFibration*> fibrations;
  std::map<FibreMember, FibreUnit> unit_of;
  std::map<FibreUnit, const FibreClass*> fibres;
  std::map<FibreMember, Rational> weight;
};

SurfaceIndex index_surface(const SurfaceModel& sm) {
  SurfaceIndex ix;
  std::set<std::string> qcomps(sm.curve.components.begin(), sm.curve.components.end());
  if (qcomps.size() != sm.curve.components.size()) throw InputError("duplicate component of Q");
  for (const auto& p : sm.curve.points) {
    if (!qcomps.count(p.component)) throw InputError("Q point \"" + p.id + "\" lies on unknown component \"" + p.component + "\"");
    if (!ix.qpoints.emplace(p.id, &p).second) throw InputError("duplicate Q point \"" + p.id + "\"");
  }
  for (const auto& f : sm.fibrations) {
    if (f.component.empty() || f.component.find(':') != std::string::npos) {
      throw InputError("bad component id \"" + f.component + "\"");
    }
    if (!ix.fibrations.emplace(f.component, &f).second) throw InputError("duplicate fibration on \"" + f.component + "\"");
    if (!qcomps.count(f.q_component)) throw InputError("\"" + f.component + "\" maps to unknown component of Q");
    if (f.kappa != 0 && f.kappa != 1) throw InputError("kappa of \"" + f.component + "\" must be 0 or 1");
    if (f.kappa == 0 && f.fibres.size() != 1) throw InputError("kappa 0 component \"" + f.component + "\" needs exactly one fibre class");
    for (const auto& fc : f.fibres) {
      auto q = ix.qpoints.find(fc.over);
      if (q == ix.qpoints.end()) throw InputError("fibre \"" + fc.id + "\" of \"" + f.component + "\" lies over unknown point \"" + fc.over + "\"");
      if (!q->second->node && q->second->component != f.q_component) {
        throw InputError("fibre \"" + fc.id + "\" of \"" + f.component + "\" lies over a point off its component of Q");
      }
      FibreUnit u{f.component, fc.id};
      if (!ix.fibres.emplace(u, &fc).second) throw InputError("duplicate fibre \"" + unit_name(u) + "\"");
      for (const auto& m : fc.members) {
        if (!ix.unit_of.emplace(FibreMember{f.component, m}, u).second) {
          throw InputError("member \"" + m + "\" of \"" + f.component + "\" lies in two fibres");
        }
      }
    }
  }
  for (const auto& w : sm.pullback_weights) {
    if (!ix.unit_of.count(w.at)) throw InputError("pullback weight on unknown member \"" + w.at.component + ":" + w.at.member + "\"");
    if (w.value <= 0) throw InputError("pullback weight of \"" + w.at.component + ":" + w.at.member + "\" must be positive");
    if (!ix.weight.emplace(w.at, w.value).second) throw InputError("duplicate pullback weight");
  }
  for (const auto& [m, u] : ix.unit_of) {
    if (!ix.weight.count(m)) throw InputError("member \"" + m.component + ":" + m.member + "\" has no pullback weight");
  }
  std::set<std::string> ids;
  for (const auto& s : sm.shared_points) {
    if (!ids.insert(s.id).second) throw InputError("duplicate shared point \"" + s.id + "\"");
    if (!ix.qpoints.count(s.over)) throw InputError("shared point \"" + s.id + "\" lies over unknown point \"" + s.over + "\"");
    for (const auto& l : s.links) {
      auto it = ix.unit_of.find({l.component, l.member});
      if (it == ix.unit_of.end() || it->second.fibre != l.fibre) {
        throw InputError("shared point \"" + s.id + "\" names unknown member \"" + l.component + ":" + l.fibre + ":" + l.member + "\"");
      }
      if (ix.fibres.at(it->second)->over != s.over) {
        throw InputError("shared point \"" + s.id + "\" links a fibre over another point");
      }
    }
    if (s.links[0].component == s.links[1].component) throw InputError("shared point \"" + s.id + "\" links a component to itself");
  }
  std::set<std::string> div_ids;
  for (const auto& d : sm.divisors) {
    if (!div_ids.insert(d.id).second) throw InputError("duplicate divisor \"" + d.id + "\"");
    std::set<FibreMember> seen;
    for (const auto& c : d.coefficients) {
      if (!ix.unit_of.count(c.at)) throw InputError("divisor \"" + d.id + "\" names unknown member \"" + c.at.component + ":" + c.at.member + "\"");
      if (!seen.insert(c.at).second) throw InputError("divisor \"" + d.id + "\" repeats a member");
    }
  }
  return ix;
}

// Units over `point` and the shared points joining them.
struct FibreGraph {
  std::vector<FibreUnit> units;
  std::vector<const SurfaceSharedPoint*> links;
};

std::map<std::string, FibreGraph> fibre_graphs(const SurfaceModel& sm, const SurfaceIndex& ix) {
  std::map<std::string, FibreGraph> out;
  for (const auto& [u, fc] : ix.fibres) out[fc->over].units.push_back(u);
  for (const auto& s : sm.shared_points) out[s.over].links.push_back(&s);
  return out;
}

}  // namespace

void check_surface(const SurfaceModel& sm) { index_surface(sm); }

std::string unit_name(const FibreUnit& u) { return u.component + ":" + u.fibre; }

DivisorResult descend_divisor(const SurfaceModel& sm, const SurfaceDivisor& d) {
  SurfaceIndex ix = index_surface(sm);
  std::map<FibreMember, Rational> value;
  for (const auto& c : d.coefficients) value[c.at] = c.value;

  std::set<std::string> support;
  for (const auto& [m, v] : value) {
    if (v == 0) continue;
    const std::string& p = ix.fibres.at(ix.unit_of.at(m))->over;
    if (ix.qpoints.at(p)->node) {
      throw InputError("divisor \"" + d.id + "\" is supported over the node \"" + p + "\" of Q");
    }
    support.insert(p);
  }

  // Scale of D against phi^* p on each fibre class.
  std::map<FibreUnit, Rational> scale;
  for (const auto& [u, fc] : ix.fibres) {
    std::optional<Rational> a;
    for (const auto& m : fc->members) {
      FibreMember fm{u.component, m};
      auto it = value.find(fm);
      Rational r = it == value.end() ? Rational(0) : Rational(it->second / ix.weight.at(fm));
      if (a && *a != r) {
        throw HypothesisError("divisor \"" + d.id + "\" is not proportional to the fibre \"" + unit_name(u) +
                              "\" on component \"" + u.component + "\"");
      }
      a = r;
    }
    scale[u] = a.value_or(0);
  }

  DivisorDescent out;
  out.m = 1;
  auto graphs = fibre_graphs(sm, ix);
  for (const auto& p : support) {
    const FibreGraph& fg = graphs.at(p);
    std::map<FibreUnit, std::vector<std::pair<const SurfaceSharedPoint*, int>>> adj;
    for (const auto* s : fg.links) {
      FibreUnit a{s->links[0].component, s->links[0].fibre};
      FibreUnit b{s->links[1].component, s->links[1].fibre};
      adj[a].emplace_back(s, 1);
      adj[b].emplace_back(s, 0);
    }
    const FibreUnit& start = fg.units.front();
    Rational alpha = scale.at(start);
    std::set<FibreUnit> seen{start};
    std::deque<FibreUnit> queue{start};
    while (!queue.empty()) {
      FibreUnit u = queue.front();
      queue.pop_front();
      for (const auto& [s, other] : adj[u]) {
        const FibreLink& to = s->links[other];
        FibreUnit v{to.component, to.fibre};
        if (scale.at(v) != scale.at(u)) {
          return DivisorObstruction{p, s->id, s->links[1 - other], to, scale.at(u), scale.at(v)};
        }
        if (seen.insert(v).second) queue.push_back(v);
      }
    }
    if (seen.size() != fg.units.size()) {
      for (const auto& u : fg.units) {
        if (!seen.count(u)) {
          throw InputError("fibre over \"" + p + "\" is disconnected: \"" + unit_name(u) + "\" is not linked to \"" +
                           unit_name(start) + "\"");
        }
      }
    }
    out.alpha[p] = alpha;
    out.m = lcm(out.m, Integer(alpha.get_den()));
  }
  for (const auto& [p, a] : out.alpha) {
    Rational scaled = a * Rational(out.m);
    out.delta[p] = scaled.get_num();
  }
  return out;
}

std::map<FibreMember, Rational> pullback_divisor(const SurfaceModel& sm, const std::map<std::string, Integer>& delta) {
  SurfaceIndex ix = index_surface(sm);
  std::map<FibreMember, Rational> out;
  for (const auto& [m, u] : ix.unit_of) {
    auto it = delta.find(ix.fibres.at(u)->over);
    if (it != delta.end() && it->second != 0) out[m] = Rational(it->second) * ix.weight.at(m);
  }
  return out;
}

GlobalSectionResult synthesize_global_section(const SurfaceModel& sm, const FibreUnit& at) {
  SurfaceIndex ix = index_surface(sm);
  if (!ix.fibres.count(at)) throw InputError("unknown fibre class \"" + unit_name(at) + "\"");

  // Fibre classes as components, shared points as intersection pieces.
  SncConfiguration cfg;
  for (const auto& [u, fc] : ix.fibres) cfg.components.push_back({unit_name(u), 1, ""});
  std::map<std::string, ExactScalar> transitions;
  for (const auto& s : sm.shared_points) {
    cfg.intersections.push_back({s.id, unit_name({s.links[0].component, s.links[0].fibre}),
                                 unit_name({s.links[1].component, s.links[1].fibre}), ""});
    transitions.emplace(s.id, s.transition);
  }
  LineBundleModel full(cfg, transitions);
  const StallingsGraph& g = full.graph();
  std::vector<std::size_t> comp = connected_components(g);

  GlobalSection out;
  std::size_t groups = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  for (std::size_t k = 0; k < groups; ++k) {
    SncConfiguration part;
    std::set<std::string> names;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      if (comp[v] == k) {
        part.components.push_back({g.vertex_id(v), 1, ""});
        names.insert(g.vertex_id(v));
      }
    }
    std::map<std::string, ExactScalar> tr;
    for (const auto& piece : cfg.intersections) {
      if (names.count(piece.a)) {
        part.intersections.push_back(piece);
        tr.emplace(piece.id, transitions.at(piece.id));
      }
    }
    LineBundleModel b(part, tr);
    SectionResult r = synthesize_section(b);
    if (auto* ob = std::get_if<Obstruction>(&r)) {
      return SectionObstruction{path_ids(b.graph(), ob->circuit), ob->value};
    }
    const auto& s = std::get<SectionAssignment>(r);
    std::optional<std::size_t> requested, kappa_one;
    for (std::size_t i = 0; i < s.components.size(); ++i) {
      auto [c, f] = split_qualified(s.components[i]);
      if (FibreUnit{c, f} == at) requested = i;
      if (!kappa_one && ix.fibrations.at(c)->kappa == 1) kappa_one = i;
    }
    std::size_t root = requested ? *requested : kappa_one.value_or(0);
    ExactScalar scale = s.values[root]->inverse();
    for (std::size_t i = 0; i < s.components.size(); ++i) {
      auto [c, f] = split_qualified(s.components[i]);
      out.values.emplace(FibreUnit{c, f}, *s.values[i] * scale);
    }
  }
  return out;
}

bool verify_section(const SurfaceModel& sm, const GlobalSection& s) {
  SurfaceIndex ix = index_surface(sm);
  for (const auto& [u, fc] : ix.fibres) {
    if (!s.values.count(u)) return false;
  }
  for (const auto& sp : sm.shared_points) {
    const auto& a = s.values.at({sp.links[0].component, sp.links[0].fibre});
    const auto& b = s.values.at({sp.links[1].component, sp.links[1].fibre});
    if (b != sp.transition * a) return false;
  }
  return true;
}

}  // namespace snc
