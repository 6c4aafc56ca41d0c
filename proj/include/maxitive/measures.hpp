#pragma once

// Lattice-valued maxitive measures on the two ground models.
//
// A TabularMeasure stores one value per member of a finite prepaving. A
// ParametricMeasure lives on the finite/cofinite algebra of N and is given by
// a finite map of exceptional point levels, a default level for every other
// point, and a residual level that is charged to infinite sets only:
//
//   nu(G) = join of point levels over G                    (G finite)
//   nu(G) = residual \/ default \/ join of levels over G    (G cofinite)

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "maxitive/order.hpp"
#include "maxitive/spaces.hpp"

namespace maxitive {

class MeasureError : public std::runtime_error {
 public:
  enum class Kind {
    set_not_in_paving,
    invalid_value,
    lattice_mismatch,
    model_mismatch,
    not_a_domain,
    not_a_frame,
    not_a_paving,
    not_in_estar,
    empty_superset_family,
    missing_bound,
    invalid_ideal_family,
    filter_condition,
    not_maxitive,
    not_boolean_algebra,
    precondition,
    equivalence_violation,
  };

  MeasureError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

using LatticePtr = std::shared_ptr<const Lattice>;
using FamilyPtr = std::shared_ptr<const SetFamily>;

class TabularMeasure {
 public:
  /// `values[i]` is the value of `family->member(i)`. Only sizes and element
  /// ranges are checked here; see validate_maxitive().
  TabularMeasure(LatticePtr lattice, FamilyPtr family, std::vector<Element> values);

  static TabularMeasure zero(LatticePtr lattice, FamilyPtr family);

  template <class F>
  static TabularMeasure from_function(LatticePtr lattice, FamilyPtr family, F&& f) {
    std::vector<Element> values;
    values.reserve(family->size());
    for (PointSet g : family->members()) values.push_back(f(g));
    return TabularMeasure(std::move(lattice), std::move(family), std::move(values));
  }

  const Lattice& lattice() const noexcept { return *lattice_; }
  const LatticePtr& lattice_ptr() const noexcept { return lattice_; }
  const SetFamily& family() const noexcept { return *family_; }
  const FamilyPtr& family_ptr() const noexcept { return family_; }

  /// Throws MeasureError(set_not_in_paving).
  Element operator()(PointSet g) const;
  Element at(std::size_t index) const { return values_.at(index); }
  const std::vector<Element>& values() const noexcept { return values_; }

  friend bool operator==(const TabularMeasure& a, const TabularMeasure& b);

 private:
  LatticePtr lattice_;
  FamilyPtr family_;
  std::vector<Element> values_;
};

class ParametricMeasure {
 public:
  /// Exceptions whose level equals the default are dropped; they do not
  /// change any value.
  ParametricMeasure(LatticePtr lattice, std::map<Point, Element> exceptions,
                    Element default_level, Element residual);

  static ParametricMeasure zero(LatticePtr lattice);

  const Lattice& lattice() const noexcept { return *lattice_; }
  const LatticePtr& lattice_ptr() const noexcept { return lattice_; }
  const std::map<Point, Element>& exceptions() const noexcept { return exceptions_; }
  Element default_level() const noexcept { return default_; }
  Element residual() const noexcept { return residual_; }

  Element operator()(const CodedSet& g) const;
  /// Level of a single point: its exception level, else the default.
  Element level(Point x) const;
  /// Exception points, ascending.
  std::vector<Point> support() const;

  friend bool operator==(const ParametricMeasure& a, const ParametricMeasure& b);

 private:
  LatticePtr lattice_;
  std::map<Point, Element> exceptions_;
  Element default_ = 0;
  Element residual_ = 0;
};

using Measure = std::variant<TabularMeasure, ParametricMeasure>;

const Lattice& lattice_of(const Measure& m);

// ---------------------------------------------------------------------------
// Maxitivity

struct MaxitivityReport {
  enum class Violation { none, nonzero_on_empty, monotonicity, cover };

  Violation violation = Violation::none;
  /// monotonicity: {smaller, larger}; cover: {target, cover members...}.
  std::vector<PointSet> witness;
  std::string detail;

  bool ok() const noexcept { return violation == Violation::none; }
};

/// nu(empty) = 0, monotone on the family, and for every member T and every
/// inclusion-minimal subfamily with union exactly T, the join of the values
/// exists and equals nu(T).
MaxitivityReport validate_maxitive(const TabularMeasure& nu);

/// Inclusion-minimal subfamilies of nonempty members whose union is exactly
/// `target`. Single-member covers are included.
std::vector<std::vector<PointSet>> minimal_exact_covers(const SetFamily& family, PointSet target);

// ---------------------------------------------------------------------------
// Ideal representation

/// An assignment t -> I_t of subfamilies of a finite prepaving, one per
/// lattice element. Membership is a bitmask over member indices.
class IdealFamily {
 public:
  IdealFamily(LatticePtr lattice, FamilyPtr family, std::vector<std::uint64_t> members);

  const Lattice& lattice() const noexcept { return *lattice_; }
  const LatticePtr& lattice_ptr() const noexcept { return lattice_; }
  const SetFamily& family() const noexcept { return *family_; }
  const FamilyPtr& family_ptr() const noexcept { return family_; }

  std::uint64_t ideal(Element t) const { return members_.at(t); }
  bool contains(Element t, PointSet g) const;
  /// {t : G in I_t} as a lattice element mask.
  ElementSet levels_containing(std::size_t member_index) const;

  friend bool operator==(const IdealFamily&, const IdealFamily&);

 private:
  LatticePtr lattice_;
  FamilyPtr family_;
  std::vector<std::uint64_t> members_;
};

struct IdealCheck {
  bool ok = true;
  std::optional<Element> level;
  std::optional<PointSet> set;
  std::string detail;

  explicit operator bool() const noexcept { return ok; }
};

/// Each I_t is an ideal (nonempty, union-closed, downward closed) and each
/// {t : G in I_t} is a filter of L with an infimum.
IdealCheck check_ideal_family(const IdealFamily& fam);
/// I_t equals the intersection of I_s over s way-above t, for every t.
IdealCheck is_right_continuous(const IdealFamily& fam);
/// J_t = intersection of I_s over s way-above t.
IdealFamily right_continuous_closure(const IdealFamily& fam);
/// I_t = {G : t >= nu(G)}.
IdealFamily to_canonical_ideals(const TabularMeasure& nu);

struct IdealConstruction {
  TabularMeasure measure;
  bool right_continuous = true;
  /// Set when the input was not right-continuous and the measure was built
  /// from right_continuous_closure() instead.
  bool used_closure = false;
  IdealCheck continuity;
};

/// nu(G) = inf {t : G in I_t}. Throws MeasureError(filter_condition or
/// invalid_ideal_family) when check_ideal_family() fails.
IdealConstruction from_ideals(const IdealFamily& fam);

// ---------------------------------------------------------------------------
// Maximal extension and densities

/// nu*(A) = inf {nu(G) : G in the family, G contains A}.
/// Throws MeasureError(not_in_estar) when the supersets do not form a filter.
Element extend_star(const TabularMeasure& nu, PointSet a);
Element extend_star(const ParametricMeasure& nu, const CodedSet& a);

/// nu* on every subset of the ground set, indexed by mask; empty where the
/// subset is outside estar.
std::vector<std::optional<Element>> extension_table(const TabularMeasure& nu);

/// nu* as a tabular measure on the estar family.
TabularMeasure extend_to_estar(const TabularMeasure& nu);

/// c*(x) = nu*({x}) for each ground point.
std::vector<Element> density_candidate(const TabularMeasure& nu);

/// A point density on N: explicit levels plus a level for all other points.
struct PointDensity {
  std::map<Point, Element> levels;
  Element default_level = 0;

  Element at(Point x) const;
  std::vector<Point> support() const;
};

PointDensity density_candidate(const ParametricMeasure& nu);

template <class Set>
struct SetVerdict {
  bool ok = true;
  std::optional<Set> witness;

  explicit operator bool() const noexcept { return ok; }
};

/// nu(G) = join {c(x) : x in G} for every member G.
SetVerdict<PointSet> check_density(const TabularMeasure& nu, std::span<const Element> density);
SetVerdict<CodedSet> check_density(const ParametricMeasure& nu, const PointDensity& density);

/// The three equivalent characterisations of having a density, each
/// evaluated on its own.
struct DensityDiagnosis {
  bool completely_maxitive = false;
  bool inner_continuous = false;
  bool density = false;

  bool agree() const noexcept {
    return completely_maxitive == inner_continuous && inner_continuous == density;
  }
  bool verdict() const noexcept { return density; }
};

/// Throws MeasureError(equivalence_violation) if the three verdicts differ,
/// and MeasureError(not_maxitive) for a table that fails validate_maxitive().
DensityDiagnosis has_density(const TabularMeasure& nu);
DensityDiagnosis has_density(const ParametricMeasure& nu);

/// {x : t >> c*(x)} is open for every t.
bool usc_check(const TabularMeasure& nu);
bool usc_check(const ParametricMeasure& nu);

/// inf over compact-closed H of nu(complement of H) is the bottom.
bool is_tight(const TabularMeasure& nu);
bool is_tight(const ParametricMeasure& nu);

struct IntersectionCheck {
  bool equal = false;
  Element meet_of_values = 0;
  Element value_of_intersection = 0;
};

/// Compares inf_j nu*(H_j) with nu*(intersection) for a filtered family of
/// compact-closed sets whose intersection is compact-closed. Throws
/// MeasureError(precondition) when the family does not qualify.
IntersectionCheck check_filtered_intersections_H(const TabularMeasure& nu,
                                                 std::span<const PointSet> sets);
IntersectionCheck check_filtered_intersections_H(const ParametricMeasure& nu,
                                                 std::span<const CodedSet> sets);

/// Same comparison over the closed-star family; requires nu tight and L a
/// continuous semilattice.
IntersectionCheck check_filtered_intersections_F_tight(const TabularMeasure& nu,
                                                       std::span<const PointSet> sets);
IntersectionCheck check_filtered_intersections_F_tight(const ParametricMeasure& nu,
                                                       std::span<const CodedSet> sets);

// ---------------------------------------------------------------------------
// Pointwise algebra

/// Pointwise join. Parametric measures combine parameter-wise.
TabularMeasure join(const TabularMeasure& nu, const TabularMeasure& tau);
ParametricMeasure join(const ParametricMeasure& nu, const ParametricMeasure& tau);

/// Sets on which two parametric measures are compared: representative sets
/// over the union of their supports. Exact, since both measures only depend
/// on the behaviour class of a set relative to that support.
std::vector<CodedSet> comparison_sets(const ParametricMeasure& nu, const ParametricMeasure& tau);

bool pointwise_leq(const TabularMeasure& nu, const TabularMeasure& tau);
bool pointwise_leq(const ParametricMeasure& nu, const ParametricMeasure& tau);
bool same_values(const TabularMeasure& nu, const TabularMeasure& tau);
bool same_values(const ParametricMeasure& nu, const ParametricMeasure& tau);
bool is_zero(const TabularMeasure& nu);
bool is_zero(const ParametricMeasure& nu);

/// First set where the values differ, formatted for reports.
std::optional<std::string> first_difference(const TabularMeasure& nu, const TabularMeasure& tau);
std::optional<std::string> first_difference(const ParametricMeasure& nu,
                                            const ParametricMeasure& tau);

/// Builds a parametric measure from a set function that depends only on the
/// behaviour class relative to `support`, and checks that it reproduces `f`
/// on every representative set. Throws MeasureError(equivalence_violation)
/// otherwise.
template <class F>
ParametricMeasure fit_parametric(LatticePtr lattice, const std::vector<Point>& support, F&& f);

// Gates shared with the decomposition module.
void require_domain(const Lattice& lattice);
void require_frame(const Lattice& lattice);
void require_paving(const SetFamily& family);
void require_same_model(const TabularMeasure& nu, const TabularMeasure& tau);
void require_same_model(const ParametricMeasure& nu, const ParametricMeasure& tau);

template <class F>
ParametricMeasure fit_parametric(LatticePtr lattice, const std::vector<Point>& support, F&& f) {
  std::map<Point, Element> exceptions;
  for (Point x : support) exceptions[x] = f(CodedSet::singleton(x));
  const Element default_level = f(CodedSet::singleton(fresh_point(support)));
  const Element residual = f(CodedSet::cofinite(support));
  ParametricMeasure fitted(lattice, std::move(exceptions), default_level, residual);
  for (const CodedSet& g : representative_sets(support)) {
    if (fitted(g) != f(g)) {
      throw MeasureError(MeasureError::Kind::equivalence_violation,
                         "set function is not parametric: mismatch on " + g.to_string());
    }
  }
  return fitted;
}

}  // namespace maxitive
