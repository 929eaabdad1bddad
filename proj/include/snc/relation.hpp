#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace snc {

// ---------------------------------------------------------------- points

struct RelPoint {
  std::string id;
  std::string stratum;
};

struct RelPair {
  std::string a;
  std::string b;
  std::string generator;
};

/// Finite relation on a stratified point set. Pairs carry the id of the
/// generator that produced them.
struct PointRelation {
  std::map<std::string, int> strata;  // id -> dim
  std::vector<RelPoint> points;
  std::vector<RelPair> pairs;
};

// Throws InputError on dangling points or strata, duplicate points or
// negative dims.
void check_relation(const PointRelation& r);

struct TraceStep {
  std::string parent;
  std::string generator;
};

/// Equivalence closure of a point relation with a spanning forest that
/// explains every identification.
struct PointClosure {
  std::vector<std::string> points;     // sorted
  std::vector<std::size_t> class_of;   // per point, index into classes
  std::vector<std::vector<std::string>> classes;  // sorted members, ordered by first member
  // BFS forest per class rooted at the first member; roots have no entry.
  std::map<std::string, TraceStep> trace;

  std::size_t index(const std::string& point) const;
  bool related(const std::string& a, const std::string& b) const;
  std::set<std::pair<std::string, std::string>> pairs() const;
  // Generator ids along a chain a ~ ... ~ b; empty for a == b. Throws
  // InputError if a and b are not related.
  std::vector<std::string> witness(const std::string& a, const std::string& b) const;
};

PointClosure equivalence_closure(const PointRelation& r);

// Pairs (x, y) with (g x, g y) in r. Points of the result take the stratum
// of their image. Throws InputError if g is not total onto r's points.
PointRelation pullback_relation(const PointRelation& r, const std::map<std::string, std::string>& g);

// ---------------------------------------------------------------- strata

struct DimCorrespondence {
  std::string id;
  std::string src;
  std::string dst;
  int dim = 0;
  bool family = false;
  bool dominant_src = false;
  bool dominant_dst = false;
};

// Everything about a correspondence except its name.
struct CorrKey {
  std::string src;
  std::string dst;
  int dim = 0;
  bool family = false;
  bool dominant_src = false;
  bool dominant_dst = false;

  CorrKey flipped() const { return {dst, src, dim, family, dominant_dst, dominant_src}; }
  friend auto operator<=>(const CorrKey&, const CorrKey&) = default;
  friend bool operator==(const CorrKey&, const CorrKey&) = default;
};

CorrKey key_of(const DimCorrespondence& c);
std::string describe(const CorrKey& k);

// Declared overlap of two distinct strata, of the given dim.
struct StratumOverlap {
  std::string a;
  std::string b;
  int dim = 0;
};

struct DimRelation {
  std::map<std::string, int> strata;
  std::vector<DimCorrespondence> generators;
  std::vector<StratumOverlap> intersections;

  int top_dim() const;  // -1 for an empty table
};

void check_relation(const DimRelation& r);

// Composite of c1 then c2, if they can be composed: through a shared
// stratum, or through a declared overlap (dim capped by the overlap, no
// dominance).
std::optional<CorrKey> compose(const CorrKey& c1, const CorrKey& c2, const DimRelation& table);
std::set<CorrKey> compose(const std::set<CorrKey>& c1, const std::set<CorrKey>& c2, const DimRelation& table);

struct Derivation {
  enum class Kind { generator, diagonal, flip, compose } kind = Kind::generator;
  std::string generator;  // generator id, or stratum id for a diagonal
  std::vector<CorrKey> from;
  std::size_t depth = 0;
};

struct DimClosure {
  std::set<CorrKey> keys;
  std::map<CorrKey, Derivation> trace;
  int top_dim = -1;

  std::set<CorrKey> slice(int dim) const;
  // Leaves (generators and diagonals) used to derive k, in first-use order.
  std::vector<std::string> support(const CorrKey& k) const;
};

// Saturation under diagonals, flips and composition.
DimClosure dim_closure(const DimRelation& r);

// Strata meeting the sub-top-dimensional part of the reflexive-symmetric
// hull of the generators, closed under the top-dimensional closure.
std::set<std::string> invariant_low_locus(const DimRelation& r);
std::set<std::string> invariant_low_locus(const DimRelation& r, const DimClosure& closure);

struct ProfiniteResult {
  bool infinite = false;
  std::size_t depth = 0;
  // Finite: strata partitioned by the closure.
  std::vector<std::vector<std::string>> classes;
  // Infinite: strata dominated by family correspondences at the level where
  // the family appeared, their dims at that level and the top slice of the
  // closure restricted to them.
  std::set<std::string> strata;
  std::map<std::string, int> dims;
  std::vector<CorrKey> restricted;
  int dim = -1;
};

ProfiniteResult profinite_analysis(const DimRelation& r);

// Lifts every generator along each pair of fibres of g (upstairs stratum ->
// downstairs stratum). Upstairs strata inherit the dim of their image;
// `upstairs_dims`, when given, must agree. Throws InputError if g is not
// surjective onto the strata.
DimRelation pullback_relation(const DimRelation& r, const std::map<std::string, std::string>& g,
                              const std::map<std::string, int>& upstairs_dims = {});

}  // namespace snc
