#include "snc/bundle.hpp"

#include "snc/error.hpp"

namespace snc {

LineBundleModel::LineBundleModel(SncConfiguration base, const std::map<std::string, ExactScalar>& transitions)
    : base_(std::move(base)), graph_(incidence_graph(base_)) {
  positive_.assign(graph_.geometric_edge_count(), ExactScalar::identity());
  for (const auto& [piece, value] : transitions) {
    auto e = graph_.find_edge(piece);
    if (!e || !graph_.is_positive(*e)) throw InputError("transition given for unknown intersection \"" + piece + "\"");
    positive_[*e / 2] = value;
  }
}

LineBundleModel::LineBundleModel(SncConfiguration base, StallingsGraph graph, std::vector<ExactScalar> positive)
    : base_(std::move(base)), graph_(std::move(graph)), positive_(std::move(positive)) {}

ExactScalar LineBundleModel::transition(EdgeIndex e) const {
  const ExactScalar& t = positive_.at(e / 2);
  return graph_.is_positive(e) ? t : t.inverse();
}

const ExactScalar& LineBundleModel::piece_transition(const std::string& piece_id) const {
  return positive_.at(graph_.edge_at(piece_id) / 2);
}

std::map<std::string, ExactScalar> LineBundleModel::transitions() const {
  std::map<std::string, ExactScalar> out;
  for (EdgeIndex e = 0; e < graph_.edge_count(); e += 2) out.emplace(graph_.edge_id(e), positive_[e / 2]);
  return out;
}

bool operator==(const LineBundleModel& a, const LineBundleModel& b) {
  return a.graph_ == b.graph_ && a.positive_ == b.positive_;
}

bool SectionAssignment::nowhere_vanishing() const {
  for (const auto& v : values) {
    if (!v) return false;
  }
  return true;
}

bool is_compatible(const LineBundleModel& b, const SectionAssignment& s) {
  const auto& g = b.graph();
  if (s.values.size() != g.vertex_count()) return false;
  for (EdgeIndex e = 0; e < g.edge_count(); e += 2) {
    const auto& from = s.values[g.initial(e)];
    const auto& to = s.values[g.terminal(e)];
    if (!from || !to) {
      if (from.has_value() != to.has_value()) return false;
      continue;
    }
    if (*to != b.transition(e) * *from) return false;
  }
  return true;
}

ExactScalar monodromy(const LineBundleModel& b, const Path& circuit) {
  if (!is_circuit(b.graph(), circuit)) throw InputError("monodromy is only defined on circuits");
  ExactScalar r;
  for (EdgeIndex e : circuit.edges) r *= b.transition(e);
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::trivial:
      return "trivial";
    case Verdict::torsion:
      return "torsion";
    case Verdict::non_torsion:
      return "non-torsion";
  }
  return "?";
}

MonodromyCertificate monodromy_certificate(const LineBundleModel& b, const std::string& base_component) {
  const auto& g = b.graph();
  Pi1Basis basis = pi1_basis(g, g.vertex_at(base_component));
  MonodromyCertificate cert;
  cert.base = base_component;
  Integer order = 1;
  bool torsion = true;
  for (const Path& c : basis.circuits) {
    ExactScalar phi = monodromy(b, c);
    if (!phi.is_torsion()) {
      if (torsion) cert.witness = c;
      torsion = false;
    } else if (torsion) {
      order = lcm(order, phi.order());
      if (!phi.is_identity() && !cert.witness) cert.witness = c;
    }
    cert.basis.push_back({c, std::move(phi)});
  }
  if (!torsion) {
    cert.verdict = Verdict::non_torsion;
    cert.order = 0;
  } else if (order == 1) {
    cert.verdict = Verdict::trivial;
    cert.order = 1;
    cert.witness.reset();
  } else {
    cert.verdict = Verdict::torsion;
    cert.order = order;
  }
  return cert;
}

namespace {

// Values forced by propagation along the BFS tree from value 1 at the base.
std::vector<ExactScalar> tree_values(const LineBundleModel& b, const Pi1Basis& basis) {
  const auto& g = b.graph();
  std::vector<VertexIndex> order(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) order[basis.discovery[v]] = v;
  std::vector<ExactScalar> values(g.vertex_count());
  for (VertexIndex v : order) {
    if (auto e = basis.parent_edge[v]) values[v] = b.transition(*e) * values[g.initial(*e)];
  }
  return values;
}

}  // namespace

SectionResult synthesize_section(const LineBundleModel& b) {
  const auto& g = b.graph();
  if (g.vertex_count() == 0) return SectionAssignment{};
  Pi1Basis basis = pi1_basis(g, 0);
  auto values = tree_values(b, basis);
  for (std::size_t i = 0; i < basis.generator_edges.size(); ++i) {
    EdgeIndex e = basis.generator_edges[i];
    if (values[g.terminal(e)] != b.transition(e) * values[g.initial(e)]) {
      return Obstruction{basis.circuits[i], monodromy(b, basis.circuits[i])};
    }
  }
  SectionAssignment s;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    s.components.push_back(g.vertex_id(v));
    s.values.emplace_back(values[v]);
  }
  return s;
}

bool is_trivial(const LineBundleModel& b) {
  const auto& g = b.graph();
  std::vector<std::optional<ExactScalar>> values(g.vertex_count());
  for (VertexIndex root = 0; root < g.vertex_count(); ++root) {
    if (values[root]) continue;
    values[root] = ExactScalar::identity();
    std::vector<VertexIndex> stack{root};
    while (!stack.empty()) {
      VertexIndex v = stack.back();
      stack.pop_back();
      for (EdgeIndex e : g.star(v)) {
        ExactScalar forced = b.transition(e) * *values[v];
        auto& slot = values[g.terminal(e)];
        if (!slot) {
          slot = std::move(forced);
          stack.push_back(g.terminal(e));
        } else if (*slot != forced) {
          return false;
        }
      }
    }
  }
  return true;
}

LineBundleModel tensor_power(const LineBundleModel& b, long m) {
  if (m == 0) throw InputError("tensor power needs m >= 1; build the identity cocycle explicitly");
  if (m < 0) throw InputError("tensor power needs m >= 1");
  std::vector<ExactScalar> positive;
  positive.reserve(b.positive_.size());
  for (const auto& t : b.positive_) positive.push_back(t.pow(m));
  return LineBundleModel(b.base_, b.graph_, std::move(positive));
}

LineBundleModel gauge_transform(const LineBundleModel& b, const std::vector<ExactScalar>& gauge) {
  const auto& g = b.graph_;
  if (gauge.size() != g.vertex_count()) throw InputError("gauge must give one scalar per component");
  std::vector<ExactScalar> positive = b.positive_;
  for (EdgeIndex e = 0; e < g.edge_count(); e += 2) {
    positive[e / 2] = b.positive_[e / 2] * gauge[g.initial(e)] / gauge[g.terminal(e)];
  }
  return LineBundleModel(b.base_, b.graph_, std::move(positive));
}

LineBundleModel normalize_cocycle(const LineBundleModel& b, const std::string& base_component) {
  Pi1Basis basis = pi1_basis(b.graph(), b.graph().vertex_at(base_component));
  return gauge_transform(b, tree_values(b, basis));
}

}  // namespace snc
