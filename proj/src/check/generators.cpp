#include <algorithm>
#include <map>
#include <numeric>

#include "check/check.hpp"

namespace snc::check {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

namespace {

std::string numbered(const std::string& prefix, std::size_t i) {
  std::string n = std::to_string(i);
  if (n.size() < 2) n = "0" + n;
  return prefix + n;
}

ExactScalar random_gauge_value(Rng& rng) {
  static const long moduli[][2] = {{1, 1}, {2, 1}, {1, 2}, {3, 1}, {2, 3}, {5, 4}};
  const auto& m = moduli[uniform(rng, 0, 5)];
  long den = static_cast<long>(uniform(rng, 1, 6));
  long num = static_cast<long>(uniform(rng, 0, static_cast<std::size_t>(den - 1)));
  return ExactScalar(Rational(m[0], m[1]), Rational(num, den));
}

}  // namespace

// ---------------------------------------------------------------- configurations

SncConfiguration random_configuration(Rng& rng, const ConfigurationOptions& opt) {
  SncConfiguration cfg;
  std::size_t n = uniform(rng, opt.min_components, opt.max_components);
  for (std::size_t i = 0; i < n; ++i) cfg.components.push_back({numbered("Z", i + 1), 2, ""});
  std::size_t pieces = 0;
  auto add = [&](std::size_t a, std::size_t b) {
    if (coin(rng)) std::swap(a, b);
    cfg.intersections.push_back({numbered("e", ++pieces), cfg.components[a].id, cfg.components[b].id, ""});
  };
  // Spanning forest: one tree, or two when a disconnected sample is asked for.
  std::size_t split = (!opt.connected && n >= 2) ? uniform(rng, 1, n - 1) : n;
  for (std::size_t i = 1; i < n; ++i) {
    if (i == split) continue;
    std::size_t lo = i < split ? 0 : split;
    add(i, uniform(rng, lo, i - 1));
  }
  if (n >= 2) {
    std::size_t extra = uniform(rng, 0, opt.max_extra_edges);
    for (std::size_t k = 0; k < extra; ++k) {
      std::size_t a = uniform(rng, 0, n - 1);
      std::size_t b = uniform(rng, 0, n - 1);
      if (a == b) continue;
      if ((a < split) != (b < split)) continue;
      add(a, b);
    }
  }
  return cfg;
}

LineBundleModel random_coboundary(Rng& rng, const SncConfiguration& cfg) {
  std::map<std::string, ExactScalar> g;
  for (const auto& c : cfg.components) g.emplace(c.id, random_gauge_value(rng));
  std::map<std::string, ExactScalar> t;
  for (const auto& p : cfg.intersections) t.emplace(p.id, g.at(p.b) / g.at(p.a));
  return LineBundleModel(cfg, t);
}

LineBundleModel random_bundle(Rng& rng, const SncConfiguration& cfg, CocycleKind kind) {
  std::map<std::string, ExactScalar> t = random_coboundary(rng, cfg).transitions();
  if (kind == CocycleKind::coboundary || cfg.intersections.empty()) return LineBundleModel(cfg, t);
  std::size_t twists = uniform(rng, 1, std::min<std::size_t>(3, cfg.intersections.size()));
  for (std::size_t k = 0; k < twists; ++k) {
    const auto& p = cfg.intersections[uniform(rng, 0, cfg.intersections.size() - 1)];
    ExactScalar s = ExactScalar::root_of_unity(static_cast<std::int64_t>(uniform(rng, 1, 5)),
                                               static_cast<std::int64_t>(uniform(rng, 2, 6)));
    if (kind == CocycleKind::non_torsion && k == 0) s = ExactScalar(Rational(coin(rng) ? 2 : 3, coin(rng) ? 1 : 2), 0);
    t.at(p.id) *= s;
  }
  return LineBundleModel(cfg, t);
}

LineBundleModel random_bundle(Rng& rng, const SncConfiguration& cfg) {
  return random_bundle(rng, cfg, static_cast<CocycleKind>(uniform(rng, 0, 2)));
}

// ---------------------------------------------------------------- covers

CoverCase random_cover_case(Rng& rng, unsigned max_degree, std::size_t max_target_components) {
  for (;;) {
    const unsigned d = static_cast<unsigned>(uniform(rng, 1, max_degree));
    SncConfiguration target = random_configuration(rng, {1, max_target_components, 2, true});
    const bool cyclic = coin(rng, 0.7);
    // Target phases c * s_f / d make every closed lift have trivial monodromy.
    const unsigned c = cyclic ? static_cast<unsigned>(uniform(rng, 0, d - 1)) : 0;

    std::map<std::string, std::vector<unsigned>> perm;
    std::map<std::string, unsigned> shift;
    for (const auto& p : target.intersections) {
      std::vector<unsigned> s(d);
      if (cyclic) {
        shift[p.id] = static_cast<unsigned>(uniform(rng, 0, d - 1));
        for (unsigned i = 0; i < d; ++i) s[i] = (i + shift[p.id]) % d;
      } else {
        std::iota(s.begin(), s.end(), 0u);
        std::shuffle(s.begin(), s.end(), rng);
      }
      perm[p.id] = s;
    }
    // Sheets i and j over the same component may be joined when c (j - i) = 0 mod d.
    auto joinable = [&](unsigned i, unsigned j) { return (c * (d + j - i)) % d == 0; };

    std::map<std::pair<std::string, unsigned>, std::string> sheet;
    for (const auto& k : target.components) {
      for (unsigned i = 0; i < d; ++i) sheet[{k.id, i}] = k.id + "." + std::to_string(i);
    }
    if (d > 1) {
      std::size_t merges = uniform(rng, 0, 2);
      for (std::size_t m = 0; m < merges; ++m) {
        const auto& k = target.components[uniform(rng, 0, target.components.size() - 1)].id;
        unsigned i = static_cast<unsigned>(uniform(rng, 0, d - 1));
        unsigned j = static_cast<unsigned>(uniform(rng, 0, d - 1));
        if (i == j || !joinable(i, j)) continue;
        std::string from = sheet[{k, j}], to = sheet[{k, i}];
        for (auto& [key, name] : sheet) {
          if (name == from) name = to;
        }
      }
    }

    CoverMap cover;
    cover.target = target;
    cover.degree = d;
    std::set<std::string> made;
    for (const auto& [key, name] : sheet) {
      if (made.insert(name).second) {
        cover.source.components.push_back({name, 2, ""});
        cover.component_map[name] = key.first;
      }
    }
    for (const auto& p : target.intersections) {
      for (unsigned i = 0; i < d; ++i) {
        std::string id = p.id + "." + std::to_string(i);
        cover.source.intersections.push_back({id, sheet[{p.a, i}], sheet[{p.b, perm[p.id][i]}], ""});
        cover.intersection_map[id] = p.id;
      }
    }
    if (d > 1) {
      std::size_t vertical = uniform(rng, 0, 2);
      for (std::size_t v = 0; v < vertical; ++v) {
        const auto& k = target.components[uniform(rng, 0, target.components.size() - 1)].id;
        unsigned i = static_cast<unsigned>(uniform(rng, 0, d - 1));
        unsigned j = static_cast<unsigned>(uniform(rng, 0, d - 1));
        if (!joinable(i, j) || sheet[{k, i}] == sheet[{k, j}]) continue;
        cover.source.intersections.push_back({"w" + std::to_string(v), sheet[{k, i}], sheet[{k, j}], ""});
      }
    }

    std::map<std::string, ExactScalar> t;
    LineBundleModel gauge = random_coboundary(rng, target);
    for (const auto& p : target.intersections) {
      ExactScalar phase = ExactScalar::root_of_unity(static_cast<std::int64_t>(c * shift[p.id]), static_cast<std::int64_t>(d));
      t.emplace(p.id, gauge.piece_transition(p.id) * phase);
    }
    LineBundleModel bundle(target, t);
    if (!is_trivial(pullback_bundle(cover, bundle))) continue;
    return {cover, bundle};
  }
}

// ---------------------------------------------------------------- relations

PointRelation random_point_relation(Rng& rng, std::size_t max_points, std::size_t max_pairs) {
  PointRelation r;
  std::size_t strata = uniform(rng, 1, 3);
  for (std::size_t s = 0; s < strata; ++s) r.strata[numbered("S", s)] = static_cast<int>(uniform(rng, 0, 2));
  std::size_t n = uniform(rng, 1, max_points);
  for (std::size_t i = 0; i < n; ++i) r.points.push_back({"p" + std::to_string(i), numbered("S", uniform(rng, 0, strata - 1))});
  std::size_t m = uniform(rng, 0, max_pairs);
  for (std::size_t k = 0; k < m; ++k) {
    r.pairs.push_back({r.points[uniform(rng, 0, n - 1)].id, r.points[uniform(rng, 0, n - 1)].id, "g" + std::to_string(k)});
  }
  return r;
}

DimRelation random_dim_relation(Rng& rng, std::size_t max_strata, std::size_t max_generators, bool all_top_dim) {
  DimRelation r;
  std::size_t n = uniform(rng, 1, max_strata);
  int top = static_cast<int>(uniform(rng, 1, 3));
  std::vector<std::string> ids;
  for (std::size_t s = 0; s < n; ++s) {
    ids.push_back(numbered("S", s));
    r.strata[ids.back()] = all_top_dim ? top : static_cast<int>(uniform(rng, 0, 3));
  }
  std::size_t m = uniform(rng, 0, max_generators);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& a = ids[uniform(rng, 0, n - 1)];
    const auto& b = ids[uniform(rng, 0, n - 1)];
    int cap = std::min(r.strata[a], r.strata[b]);
    int dim = coin(rng, 0.5) ? cap : static_cast<int>(uniform(rng, 0, static_cast<std::size_t>(cap)));
    r.generators.push_back({numbered("g", k), a, b, dim, coin(rng, 0.2), coin(rng, 0.6), coin(rng, 0.6)});
  }
  return r;
}

// ---------------------------------------------------------------- families

FibrationFamily random_family(Rng& rng, bool connected) {
  std::size_t k = uniform(rng, 1, 6);
  std::vector<std::size_t> base_size(k);
  std::vector<std::vector<std::string>> points(k);
  for (auto& b : base_size) b = uniform(rng, 1, 3);
  FibrationFamily fam;
  auto fresh = [&](std::size_t comp) {
    points[comp].push_back("y" + std::to_string(points[comp].size()));
    return qualified("T" + std::to_string(comp), points[comp].back());
  };
  std::size_t split = (!connected && k >= 2) ? uniform(rng, 1, k - 1) : k;
  auto same_side = [&](std::size_t a, std::size_t b) { return (a < split) == (b < split); };
  std::size_t shared = 0;
  for (std::size_t i = 1; i < k; ++i) {
    if (i == split) continue;
    std::size_t j = uniform(rng, i < split ? 0 : split, i - 1);
    SharedPoint s{"s" + std::to_string(shared++), {fresh(i), fresh(j)}};
    if (k >= 3 && coin(rng, 0.2)) {
      std::size_t third = uniform(rng, 0, k - 1);
      if (third != i && third != j && same_side(third, i)) s.aliases.push_back(fresh(third));
    }
    fam.shared_points.push_back(s);
  }
  std::size_t extra = k >= 2 ? uniform(rng, 0, 3) : 0;
  for (std::size_t e = 0; e < extra; ++e) {
    std::size_t a = uniform(rng, 0, k - 1), b = uniform(rng, 0, k - 1);
    if (a == b || !same_side(a, b)) continue;
    fam.shared_points.push_back({"s" + std::to_string(shared++), {fresh(a), fresh(b)}});
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t priv = uniform(rng, 0, 3);
    for (std::size_t p = 0; p < priv; ++p) fresh(c);
    while (points[c].size() < base_size[c]) fresh(c);
    FamilyComponent comp{"T" + std::to_string(c), points[c], {}, {}};
    std::vector<std::size_t> order(points[c].size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::size_t x = i < base_size[c] ? i : uniform(rng, 0, base_size[c] - 1);
      comp.phi[points[c][order[i]]] = "x" + std::to_string(x);
    }
    fam.components.push_back(std::move(comp));
  }
  return fam;
}

FamilyCover random_family_cover(Rng& rng, const FibrationFamily& down) {
  FamilyCover cover;
  const std::size_t sheets = uniform(rng, 1, 2);
  std::map<std::string, std::size_t> copies;
  // Upstairs points over each downstairs point, ordered by copy then sheet.
  std::map<std::string, std::vector<std::string>> over;
  for (const auto& c : down.components) {
    copies[c.id] = uniform(rng, 1, 2);
    for (std::size_t a = 0; a < copies[c.id]; ++a) {
      FamilyComponent up{c.id + "#" + std::to_string(a), {}, {}, {}};
      bool split_base = coin(rng);
      for (const auto& y : c.points) {
        for (std::size_t t = 0; t < sheets; ++t) {
          std::string ybar = y + "/" + std::to_string(t);
          up.points.push_back(ybar);
          up.phi[ybar] = split_base ? c.phi.at(y) + "/" + std::to_string(t) : c.phi.at(y);
          std::string q = qualified(up.id, ybar);
          cover.point_map[q] = qualified(c.id, y);
          over[qualified(c.id, y)].push_back(q);
        }
      }
      cover.component_map[up.id] = c.id;
      cover.up.components.push_back(std::move(up));
    }
  }
  for (const auto& s : down.shared_points) {
    // Lifts of one copy sit in distinct groups since every alias has at
    // least `sheets` lifts.
    std::size_t groups = over[s.aliases[0]].size();
    for (const auto& a : s.aliases) groups = std::min(groups, over[a].size());
    std::vector<SharedPoint> made(groups);
    for (std::size_t g = 0; g < groups; ++g) made[g].id = s.id + "/" + std::to_string(g);
    for (const auto& a : s.aliases) {
      const auto& lifts = over[a];
      for (std::size_t j = 0; j < lifts.size(); ++j) made[j % groups].aliases.push_back(lifts[j]);
    }
    for (auto& m : made) cover.up.shared_points.push_back(std::move(m));
  }
  return cover;
}

// ---------------------------------------------------------------- surfaces

SurfaceCase random_surface_case(Rng& rng) {
  SurfaceModel sm;
  const bool two = coin(rng, 0.4);
  sm.curve.components = two ? std::vector<std::string>{"Q1", "Q2"} : std::vector<std::string>{"Q1"};
  std::map<std::string, std::vector<std::string>> smooth;
  for (const auto& q : sm.curve.components) {
    std::size_t n = uniform(rng, 1, 3);
    for (std::size_t i = 0; i < n; ++i) {
      std::string id = "p" + q.substr(1) + std::to_string(i);
      sm.curve.points.push_back({id, q, false});
      smooth[q].push_back(id);
    }
  }
  if (two) sm.curve.points.push_back({"n1", "Q1", true});

  std::size_t k = uniform(rng, two ? 4 : 2, 6);
  std::map<std::string, std::vector<FibreUnit>> units_over;
  std::map<FibreUnit, std::vector<std::string>> members;
  for (std::size_t s = 0; s < k; ++s) {
    SurfaceFibration f;
    f.component = "S" + std::to_string(s);
    // Every point of Q carries two kappa = 1 components so fibres can be linked.
    if (s < 4) {
      f.q_component = (two && s >= 2) ? "Q2" : "Q1";
    } else {
      f.q_component = sm.curve.components[uniform(rng, 0, sm.curve.components.size() - 1)];
    }
    f.kappa = (s >= 4 && coin(rng, 0.5)) ? 0 : 1;
    std::vector<std::string> pts = smooth[f.q_component];
    if (f.kappa == 0) pts = {pts[uniform(rng, 0, pts.size() - 1)]};
    for (const auto& p : pts) {
      std::size_t classes = (f.kappa == 1 && coin(rng, 0.3)) ? 2 : 1;
      for (std::size_t c = 0; c < classes; ++c) {
        FibreClass fc{"F" + p + char('a' + c), p, {}};
        std::size_t m = uniform(rng, 1, 3);
        for (std::size_t i = 0; i < m; ++i) {
          fc.members.push_back("C" + p + char('a' + c) + std::to_string(i));
          sm.pullback_weights.push_back({{f.component, fc.members.back()}, Rational(static_cast<long>(uniform(rng, 1, 3)))});
        }
        FibreUnit u{f.component, fc.id};
        units_over[p].push_back(u);
        members[u] = fc.members;
        f.fibres.push_back(std::move(fc));
      }
    }
    sm.fibrations.push_back(std::move(f));
  }
  if (two) {
    // A fibre over the node, kept out of every divisor.
    auto& f = sm.fibrations[0];
    f.fibres.push_back({"Fnode", "n1", {"Cnode"}});
    sm.pullback_weights.push_back({{f.component, "Cnode"}, Rational(1)});
  }

  // Units over a point form a connected graph through shared points joining
  // different components; fibres of a lone component over a point are merged.
  std::size_t link_count = 0;
  std::map<FibreUnit, ExactScalar> gauge;
  auto add_link = [&](const std::string& p, const FibreUnit& a, const FibreUnit& b) {
    if (!gauge.count(a)) gauge.emplace(a, random_gauge_value(rng));
    if (!gauge.count(b)) gauge.emplace(b, random_gauge_value(rng));
    const auto& ma = members[a];
    const auto& mb = members[b];
    sm.shared_points.push_back({"y" + std::to_string(link_count++), p,
                                {{a.component, a.fibre, ma[uniform(rng, 0, ma.size() - 1)]},
                                 {b.component, b.fibre, mb[uniform(rng, 0, mb.size() - 1)]}},
                                gauge.at(b) / gauge.at(a)});
  };
  for (auto& [p, units] : units_over) {
    std::shuffle(units.begin(), units.end(), rng);
    if (units.size() > 1 && units[1].component == units[0].component) {
      std::size_t j = 2;
      while (j < units.size() && units[j].component == units[0].component) ++j;
      if (j < units.size()) std::swap(units[1], units[j]);
    }
    for (std::size_t i = 1; i < units.size(); ++i) {
      std::vector<std::size_t> choices;
      for (std::size_t j = 0; j < i; ++j) {
        if (units[j].component != units[i].component) choices.push_back(j);
      }
      add_link(p, units[choices[uniform(rng, 0, choices.size() - 1)]], units[i]);
    }
    std::size_t extra = uniform(rng, 0, 2);
    for (std::size_t e = 0; e < extra; ++e) {
      const auto& a = units[uniform(rng, 0, units.size() - 1)];
      const auto& b = units[uniform(rng, 0, units.size() - 1)];
      if (a.component != b.component) add_link(p, a, b);
    }
  }
  for (const auto& f : sm.fibrations) {
    for (const auto& fc : f.fibres) gauge.try_emplace({f.component, fc.id}, ExactScalar::identity());
  }

  // D: a multiple of phi^* p at a few points.
  std::map<FibreMember, Rational> weight;
  for (const auto& w : sm.pullback_weights) weight[w.at] = w.value;
  std::vector<std::string> support;
  for (const auto& [p, units] : units_over) {
    if (support.empty() || coin(rng)) support.push_back(p);
  }
  SurfaceDivisor good{"D", {}};
  std::map<std::string, Rational> alpha;
  for (const auto& p : support) {
    long den = static_cast<long>(uniform(rng, 1, 4));
    long num = static_cast<long>(uniform(rng, 1, 7));
    alpha[p] = Rational(coin(rng, 0.2) ? -num : num, den);
    alpha[p].canonicalize();
    for (const auto& u : units_over[p]) {
      for (const auto& m : members[u]) good.coefficients.push_back({{u.component, m}, alpha[p] * weight.at({u.component, m})});
    }
  }
  SurfaceDivisor bad = good;
  bad.id = "D-bad";
  const std::string& p = support[uniform(rng, 0, support.size() - 1)];
  const FibreUnit& victim = units_over[p][uniform(rng, 0, units_over[p].size() - 1)];
  for (auto& c : bad.coefficients) {
    const auto& fibres = members[victim];
    if (c.at.component == victim.component && std::find(fibres.begin(), fibres.end(), c.at.member) != fibres.end()) {
      c.value *= 2;
    }
  }
  sm.divisors = {good, bad};

  SurfaceCase out;
  out.model = sm;
  std::vector<FibreUnit> all;
  for (const auto& [u, m] : members) all.push_back(u);
  out.at = all[uniform(rng, 0, all.size() - 1)];

  // Obstruction: a second link parallel to an existing one, twisted by -1.
  if (!sm.shared_points.empty()) {
    SurfaceModel twisted = sm;
    SurfaceSharedPoint copy = twisted.shared_points[uniform(rng, 0, twisted.shared_points.size() - 1)];
    copy.id = "y-twist";
    copy.transition = copy.transition * ExactScalar::root_of_unity(1, 2);
    twisted.shared_points.push_back(copy);
    out.obstructed = twisted;
  }
  return out;
}

}  // namespace snc::check
