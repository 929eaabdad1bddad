#include "snc/core.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "snc/error.hpp"

namespace snc {

const Component* SncConfiguration::find_component(const std::string& id) const {
  for (const auto& c : components) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const IntersectionPiece* SncConfiguration::find_piece(const std::string& id) const {
  for (const auto& p : intersections) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

void SncConfiguration::canonicalize() {
  auto by_id = [](const auto& x, const auto& y) { return x.id < y.id; };
  std::sort(components.begin(), components.end(), by_id);
  std::sort(intersections.begin(), intersections.end(), by_id);
  std::sort(strata.begin(), strata.end(), by_id);
}

void ValidationReport::add(Severity s, std::string location, std::string message) {
  if (s == Severity::error) ok = false;
  findings.push_back({s, std::move(location), std::move(message)});
}

std::string ValidationReport::describe() const {
  std::string out;
  for (const auto& f : findings) {
    out += f.severity == Severity::error ? "error" : "warning";
    out += " [" + f.location + "] " + f.message + "\n";
  }
  return out;
}

ValidationReport validate_configuration(const SncConfiguration& cfg) {
  ValidationReport report;
  std::map<std::string, int> dims;
  for (const auto& c : cfg.components) {
    if (c.id.empty()) report.add(Severity::error, "components", "empty component id");
    if (!dims.emplace(c.id, c.dim).second) report.add(Severity::error, "component " + c.id, "duplicate component id");
    if (c.dim < 0) report.add(Severity::error, "component " + c.id, "negative dimension");
  }
  std::set<std::string> piece_ids;
  for (const auto& p : cfg.intersections) {
    std::string where = "intersection " + p.id;
    if (!piece_ids.insert(p.id).second) report.add(Severity::error, where, "duplicate intersection id");
    if (p.id.empty() || p.id.front() == '~') report.add(Severity::error, where, "intersection id must be non-empty and not start with '~'");
    if (dims.count(p.id)) report.add(Severity::error, where, "intersection id collides with a component id");
    for (const auto* end : {&p.a, &p.b}) {
      if (!dims.count(*end)) report.add(Severity::error, where, "endpoint \"" + *end + "\" is not a component");
    }
    if (p.a == p.b) report.add(Severity::error, where, "self-intersection edge forbidden");
  }
  std::set<std::string> stratum_ids;
  for (const auto& s : cfg.strata) {
    std::string where = "stratum " + s.id;
    if (!stratum_ids.insert(s.id).second) report.add(Severity::error, where, "duplicate stratum id");
    if (s.carriers.empty()) report.add(Severity::error, where, "stratum has no carrier components");
    if (s.dim < 0) report.add(Severity::error, where, "negative dimension");
    int min_dim = -1;
    for (const auto& c : s.carriers) {
      auto it = dims.find(c);
      if (it == dims.end()) {
        report.add(Severity::error, where, "carrier \"" + c + "\" is not a component");
        continue;
      }
      min_dim = min_dim < 0 ? it->second : std::min(min_dim, it->second);
    }
    if (min_dim >= 0 && s.dim >= min_dim) report.add(Severity::error, where, "stratum not proper");
  }
  return report;
}

void require_valid(const SncConfiguration& cfg) {
  auto report = validate_configuration(cfg);
  if (!report.ok) throw InputError("invalid configuration:\n" + report.describe());
}

std::string reverse_edge_id(const std::string& piece_id) { return "~" + piece_id; }

StallingsGraph incidence_graph(const SncConfiguration& cfg) {
  require_valid(cfg);
  SncConfiguration sorted = cfg;
  sorted.canonicalize();
  StallingsGraph g;
  for (const auto& c : sorted.components) g.add_vertex(c.id);
  for (const auto& p : sorted.intersections) {
    g.add_edge(p.id, reverse_edge_id(p.id), g.vertex_at(p.a), g.vertex_at(p.b));
  }
  return g;
}

}  // namespace snc
