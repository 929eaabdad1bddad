#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "snc/bundle.hpp"
#include "snc/relation.hpp"
#include "snc/scalar.hpp"

namespace snc {

// ---------------------------------------------------------------- families

/// Component T with its finite point set and the fibration phi: T -> V_T.
/// V_T is the image of phi unless `base` lists it explicitly.
struct FamilyComponent {
  std::string id;
  std::vector<std::string> points;
  std::map<std::string, std::string> phi;
  std::vector<std::string> base;
};

// A point lying on several components; aliases are "T:y".
struct SharedPoint {
  std::string id;
  std::vector<std::string> aliases;
};

struct FibrationFamily {
  std::vector<FamilyComponent> components;
  std::vector<SharedPoint> shared_points;

  const FamilyComponent* find(const std::string& id) const;
};

// Throws InputError.
void check_family(const FibrationFamily& fam);

// "T:x" for a base point x of T, and the inverse split.
std::string qualified(const std::string& component, const std::string& local);
std::pair<std::string, std::string> split_qualified(const std::string& name);

// All base points "T:x", sorted.
std::vector<std::string> base_points(const FibrationFamily& fam);

struct GluingRelation {
  PointRelation relation;  // on base points; one stratum per component
  PointClosure closure;
};

// x1 ~ x2 whenever a shared point lies over x1 on one component and over x2
// on another.
GluingRelation build_gluing_relation(const FibrationFamily& fam);

struct PseudoFibre {
  std::string representative;
  std::vector<std::string> members;  // base points of the class
  // Points of the union of the member fibres; a shared point appears once,
  // under its shared id.
  std::vector<std::string> points;
  bool connected = false;
};

// Throws InputError for an unknown base point.
PseudoFibre pseudofibre(const FibrationFamily& fam, const std::string& base_point);
std::vector<PseudoFibre> pseudofibres(const FibrationFamily& fam);

/// Point-level map from `up` onto `down`. Keys and values of `point_map`
/// are "T:y". In birational mode the map is a bijection off exceptional
/// points that are not shared, and base points keep their local names.
struct FamilyCover {
  FibrationFamily up;
  std::map<std::string, std::string> component_map;
  std::map<std::string, std::string> point_map;
  bool birational = false;
};

struct CompatibilityReport {
  std::map<std::string, std::string> sigma;  // up base point -> down base point
  // Every downstairs class pulls back to a disjoint union of upstairs classes.
  bool preimage_is_union = false;
  // sigma maps each upstairs class onto a whole downstairs class.
  bool image_is_class = false;
  // Birational mode: sigma induces a bijection of classes.
  bool partitions_equal = false;
};

// Throws InputError when the square does not commute, naming a point.
CompatibilityReport cover_compatibility(const FibrationFamily& down, const FamilyCover& cover);

// ---------------------------------------------------------------- surfaces

struct QPoint {
  std::string id;
  std::string component;
  bool node = false;
};

struct CurveQ {
  std::vector<std::string> components;
  std::vector<QPoint> points;
};

// A fibre class of f_S; `over` is the point of Q it maps to.
struct FibreClass {
  std::string id;
  std::string over;
  std::vector<std::string> members;
};

struct SurfaceFibration {
  std::string component;
  int kappa = 1;  // 0: the component is a single fibre class
  std::string q_component;
  std::vector<FibreClass> fibres;
};

struct FibreMember {
  std::string component;
  std::string member;
  friend auto operator<=>(const FibreMember&, const FibreMember&) = default;
};

struct Coefficient {
  FibreMember at;
  Rational value;
};

struct FibreLink {
  std::string component;
  std::string fibre;
  std::string member;
};

// Point where two components meet; the section value on links[1]'s fibre
// equals `transition` times the value on links[0]'s fibre.
struct SurfaceSharedPoint {
  std::string id;
  std::string over;
  FibreLink links[2];
  ExactScalar transition;
};

struct SurfaceDivisor {
  std::string id;
  std::vector<Coefficient> coefficients;
};

struct SurfaceModel {
  CurveQ curve;
  std::vector<SurfaceFibration> fibrations;
  std::vector<Coefficient> pullback_weights;  // multiplicities of phi^* p
  std::vector<SurfaceSharedPoint> shared_points;
  std::vector<SurfaceDivisor> divisors;

  const SurfaceDivisor& divisor(const std::string& id) const;
};

// Throws InputError.
void check_surface(const SurfaceModel& sm);

struct DivisorDescent {
  Integer m;
  std::map<std::string, Integer> delta;  // Q point -> coefficient of m * delta
  std::map<std::string, Rational> alpha;
};

// Neighbouring fibre classes over `point` whose propagated scales disagree.
struct DivisorObstruction {
  std::string point;
  std::string shared_point;
  FibreLink from;
  FibreLink to;
  Rational from_scale;
  Rational to_scale;
};

using DivisorResult = std::variant<DivisorDescent, DivisorObstruction>;

// InputError if D meets a node of Q or a fibre over a support point is
// disconnected; HypothesisError if D is not proportional to a fibre class.
DivisorResult descend_divisor(const SurfaceModel& sm, const SurfaceDivisor& d);

// m * D as prescribed by the pullback weights: delta(p) * w on each member.
std::map<FibreMember, Rational> pullback_divisor(const SurfaceModel& sm, const std::map<std::string, Integer>& delta);

struct FibreUnit {
  std::string component;
  std::string fibre;
  friend auto operator<=>(const FibreUnit&, const FibreUnit&) = default;
};

std::string unit_name(const FibreUnit& u);

struct GlobalSection {
  std::map<FibreUnit, ExactScalar> values;
};

struct SectionObstruction {
  std::vector<std::string> circuit;  // shared point ids, "~id" when crossed backwards
  ExactScalar monodromy;
};

using GlobalSectionResult = std::variant<GlobalSection, SectionObstruction>;

// Per connected group of fibre classes the section is propagated from the
// requested unit, else from a kappa = 1 unit, else from the first one.
GlobalSectionResult synthesize_global_section(const SurfaceModel& sm, const FibreUnit& at);

bool verify_section(const SurfaceModel& sm, const GlobalSection& s);

}  // namespace snc
