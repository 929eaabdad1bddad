#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "snc/bundle.hpp"
#include "snc/core.hpp"
#include "snc/cover.hpp"
#include "snc/gluing.hpp"
#include "snc/graph.hpp"
#include "snc/relation.hpp"

namespace snc::io {

using Json = nlohmann::json;

inline constexpr int schema_version = 1;

// Reads a JSON file; throws InputError on I/O or syntax errors.
Json read_file(const std::filesystem::path& path);
// Throws InputError unless "v" is present and supported.
void require_version(const Json& j, const std::string& what);
// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

// Nested documents may be given inline or as a path relative to `dir`.
struct Context {
  std::filesystem::path dir;
};

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json to_json(const ExactScalar& s);
ExactScalar scalar_from_json(const Json& j);

Json to_json(const SncConfiguration& cfg);
SncConfiguration configuration_from_json(const Json& j, const Context& ctx = {});

Json to_json(const StallingsGraph& g);
StallingsGraph graph_from_json(const Json& j);
Json to_json(const StallingsGraph& g, const Path& p);

Json to_json(const ValidationReport& r);

Json to_json(const LineBundleModel& b);
LineBundleModel bundle_from_json(const Json& j, const Context& ctx = {});

Json to_json(const MonodromyCertificate& c, const StallingsGraph& g);
Json to_json(const SectionResult& r, const StallingsGraph& g);

bool is_curve_cover(const Json& j);
Json to_json(const CoverMap& c);
CoverMap cover_from_json(const Json& j, const Context& ctx = {});
Json to_json(const CurveCoverMap& c);
CurveCoverMap curve_cover_from_json(const Json& j, const Context& ctx = {});
Json to_json(const TorsionDescent& t);
Json to_json(const CircuitLift& l, const StallingsGraph& source);

bool is_point_relation(const Json& j);
Json to_json(const PointRelation& r);
PointRelation point_relation_from_json(const Json& j);
Json to_json(const DimRelation& r);
DimRelation dim_relation_from_json(const Json& j);
Json to_json(const PointClosure& c);
Json to_json(const CorrKey& k);
Json to_json(const DimClosure& c);
Json to_json(const ProfiniteResult& r);

Json to_json(const FibrationFamily& fam);
FibrationFamily family_from_json(const Json& j);
Json to_json(const PseudoFibre& p);

Json to_json(const SurfaceModel& sm);
SurfaceModel surface_from_json(const Json& j);
Json to_json(const DivisorResult& r);
Json to_json(const GlobalSectionResult& r);

}  // namespace snc::io
