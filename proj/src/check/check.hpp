#pragma once

// Random instance generators and brute-force oracles shared by the tests,
// the acceptance suite, the fuzz driver and the benchmarks. Oracles avoid
// the library algorithms they are used to check.

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "snc/bundle.hpp"
#include "snc/core.hpp"
#include "snc/cover.hpp"
#include "snc/gluing.hpp"
#include "snc/graph.hpp"
#include "snc/relation.hpp"

namespace snc::check {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);  // inclusive
bool coin(Rng& rng, double p = 0.5);

// ---------------------------------------------------------------- generators

struct ConfigurationOptions {
  std::size_t min_components = 1;
  std::size_t max_components = 8;
  std::size_t max_extra_edges = 3;
  bool connected = true;
};

SncConfiguration random_configuration(Rng& rng, const ConfigurationOptions& opt = {});

enum class CocycleKind { coboundary, torsion, non_torsion };

// Random coboundary, optionally twisted by root-of-unity or non-unit scalars.
LineBundleModel random_bundle(Rng& rng, const SncConfiguration& cfg, CocycleKind kind);
LineBundleModel random_bundle(Rng& rng, const SncConfiguration& cfg);
// Scalars T(e) = g(t(e)) / g(i(e)) for a random gauge g.
LineBundleModel random_coboundary(Rng& rng, const SncConfiguration& cfg);

struct CoverCase {
  CoverMap cover;
  LineBundleModel bundle;  // on the target, with trivial pullback
};

// Sheeted cover of a random connected target: cyclic or random permutations
// per piece, some sheets merged and some vertical pieces added, all chosen so
// that the pullback of the returned cocycle is trivial.
CoverCase random_cover_case(Rng& rng, unsigned max_degree = 4, std::size_t max_target_components = 6);

PointRelation random_point_relation(Rng& rng, std::size_t max_points, std::size_t max_pairs);
DimRelation random_dim_relation(Rng& rng, std::size_t max_strata, std::size_t max_generators, bool all_top_dim = false);

FibrationFamily random_family(Rng& rng, bool connected = true);
// Component copies and pointwise sheets over `down`; fibres map onto fibres.
FamilyCover random_family_cover(Rng& rng, const FibrationFamily& down);

struct SurfaceCase {
  SurfaceModel model;       // divisors "D" (consistent) and "D-bad" (perturbed)
  FibreUnit at;
  std::optional<SurfaceModel> obstructed;  // one transition twisted on a cycle
};

SurfaceCase random_surface_case(Rng& rng);

// ---------------------------------------------------------------- oracles

// Product of piece transitions along edge ids ("f" or "~f").
ExactScalar multiply_along(const LineBundleModel& b, const Path& p);

struct CircuitScan {
  std::size_t circuits = 0;
  bool all_identity = true;
  std::optional<Path> witness;  // first non-identity circuit in DFS order
  friend bool operator==(const CircuitScan&, const CircuitScan&) = default;
};

// Every reduced circuit at `base` of length 1..max_length.
CircuitScan scan_reduced_circuits_serial(const LineBundleModel& b, VertexIndex base, std::size_t max_length);
// Same scan, one OpenMP task per first edge.
CircuitScan scan_reduced_circuits_parallel(const LineBundleModel& b, VertexIndex base, std::size_t max_length);

// Triviality by scanning reduced circuits of length <= 2 * E_geom at one
// vertex of every connected component.
bool brute_force_trivial(const LineBundleModel& b, bool parallel = false);

// Re-multiplies every edge constraint.
bool section_satisfies(const LineBundleModel& b, const SectionAssignment& s);

bool covers_every_edge(const StallingsGraph& g, const Path& p);

// Largest k <= max_degree such that f lifts, based at v, through a connected
// k-sheeted cover of the target. Equals the index of the image subgroup when
// that index is at most max_degree.
std::size_t index_by_permutation_search(const GraphMap& f, VertexIndex v, std::size_t max_degree);

// For a covering f: number of times `circuit` must be repeated before its
// lift from `start` closes up.
std::size_t covering_orbit_length(const GraphMap& f, const Path& circuit, VertexIndex start);

// Reflexive symmetric transitive closure by Warshall's algorithm.
std::vector<std::vector<bool>> naive_closure(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);
std::vector<std::vector<std::string>> naive_classes(const PointRelation& r);

// Fixed point of S -> S u flips(S) u (S o S) starting from the generators
// and diagonals, composing every pair each round.
std::set<CorrKey> naive_dim_closure(const DimRelation& r);

std::vector<std::vector<std::string>> naive_gluing_classes(const FibrationFamily& fam);

// m * D equals delta pulled back through the weights, member by member.
bool divisor_round_trip(const SurfaceModel& sm, const SurfaceDivisor& d, const DivisorDescent& out);
bool global_section_ok(const SurfaceModel& sm, const GlobalSection& s, const FibreUnit& at);

}  // namespace snc::check

namespace snc::check {

struct CaseResult {
  std::size_t index = 0;
  std::string kind;
  bool ok = true;
  std::string detail;
  friend bool operator==(const CaseResult&, const CaseResult&) = default;
};

// One randomized property check; the kind cycles with the index and the
// instance depends only on (seed, index).
CaseResult run_case(std::uint64_t seed, std::size_t index);
std::vector<CaseResult> run_cases_serial(std::uint64_t seed, std::size_t count);
std::vector<CaseResult> run_cases_parallel(std::uint64_t seed, std::size_t count);

}  // namespace snc::check
