#pragma once

// Brute-force reference implementations.
//
// Maxitivity is checked over every
// subfamily, measures are enumerated by backtracking over value tables, and
// the infinite meets and joins of the cofinite model are evaluated over every
// coded set whose exceptions fall in a finite window.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxitive/decomposition.hpp"
#include "maxitive/measures.hpp"

namespace maxitive {

struct EnumerationBudget {
  std::size_t max_points = 4;
  std::size_t max_paving = 10;
  std::size_t max_lattice = 5;
  Point max_window = 12;
  std::size_t instance_cap = 1000;

  /// Throws std::invalid_argument unless every field is positive.
  void validate() const;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StabilizationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The definition itself: nu(empty) = 0 and, for every subfamily whose union
/// is a member, the values have a supremum equal to the value of the union.
bool is_maxitive_by_definition(const TabularMeasure& nu);

/// Values pinned to member indices during enumeration; empty entries are free.
using PartialAssignment = std::vector<std::optional<Element>>;

/// Calls `visit` for every value table on `family` that is maxitive by
/// definition, in lexicographic order over (member index, element index).
/// Throws BudgetExceeded when the family or lattice is larger than allowed.
void for_each_maxitive_measure(const FamilyPtr& family, const LatticePtr& lattice,
                               const std::function<void(const TabularMeasure&)>& visit,
                               const EnumerationBudget& budget = {},
                               const PartialAssignment& fixed = {});

std::vector<TabularMeasure> enumerate_maxitive_measures(const FamilyPtr& family,
                                                        const LatticePtr& lattice,
                                                        const EnumerationBudget& budget = {},
                                                        const PartialAssignment& fixed = {});

/// Every maxitive measure on the estar family that agrees with nu on the
/// members of nu's family.
std::vector<TabularMeasure> enumerate_extensions(const TabularMeasure& nu,
                                                 const EnumerationBudget& budget = {});

// ---------------------------------------------------------------------------
// Window finitisation for the cofinite model

enum class WindowQuery { extension, regular, residual, singular };

/// Tables of a parametric measure over every coded set whose exceptions lie
/// in [0, window). Values of windowed sets are assembled from nu on
/// singletons and on one cofinite tail by finite maxitivity, and spot-checked
/// against nu; none of the closed forms of the measures module is used.
class WindowOracle {
 public:
  /// Throws std::invalid_argument when an exception point is outside the
  /// window or the window exceeds kMaxWindow.
  WindowOracle(const ParametricMeasure& nu, Point window);

  static constexpr Point kMaxWindow = 20;
  /// Points past the window that finite subsets of a cofinite set may use.
  /// Points outside the support are interchangeable, so one is enough.
  static constexpr Point kTail = 1;

  Point window() const noexcept { return window_; }

  /// Meet of nu over windowed supersets.
  Element extension(const CodedSet& a) const;
  /// Join of nu* over finite subsets, which may reach kTail points past the
  /// window.
  Element regular(const CodedSet& g) const;
  /// Meet of the levels t with nu(H) <= regular(H) \/ t for windowed H in G.
  Element residual(const CodedSet& g) const;
  /// Meet of nu(G \ H) over finite windowed H in G.
  Element singular(const CodedSet& g) const;
  /// Meet of nu(N \ H) over finite windowed H.
  Element tightness_meet() const;
  /// Every windowed cofinite G has nu(G) equal to the join of nu over its
  /// singletons.
  bool completely_maxitive() const;

  Element evaluate(WindowQuery query, const CodedSet& g) const;

 private:
  std::uint32_t mask_of(const CodedSet& g) const;

  const Lattice* lattice_;
  Point window_;
  std::uint32_t full_ = 0;  // the window points
  std::uint32_t tail_ = 0;  // the kTail points past the window
  // Indexed by masks over window + kTail points; cofinite entries stand for
  // the mask plus every point past it.
  std::vector<Element> fin_;
  std::vector<Element> cof_;
  std::vector<Element> ext_fin_;
  std::vector<Element> ext_cof_;
  std::vector<Element> reg_;
  // Indexed by masks over the window points.
  std::vector<ElementSet> ok_fin_;
  std::vector<ElementSet> ok_cof_;
  std::vector<Element> sing_fin_;
  std::vector<Element> sing_cof_;
  Element tightness_ = 0;
  bool completely_maxitive_ = true;
};

/// Default window: the largest exception plus 8, or 8 with no exceptions.
Point default_window(const ParametricMeasure& nu);

/// Oracles at `window` and `window + 4`. Each answer is checked to move in
/// the direction its meet or join allows and to agree at both windows;
/// StabilizationFailure otherwise.
class StableWindow {
 public:
  StableWindow(const ParametricMeasure& nu, Point window);

  static constexpr Point kStep = 4;

  Element evaluate(WindowQuery query, const CodedSet& g) const;
  Element tightness_meet() const;
  bool completely_maxitive() const;

 private:
  WindowOracle small_;
  WindowOracle large_;
  const Lattice* lattice_;
};

/// One-shot StableWindow queries.
Element window_evaluate(const ParametricMeasure& nu, WindowQuery query, const CodedSet& g,
                        Point window);
Element window_tightness(const ParametricMeasure& nu, Point window);
bool window_completely_maxitive(const ParametricMeasure& nu, Point window);

// ---------------------------------------------------------------------------
// Extremality

struct ExtremalityResult {
  bool ok = true;
  std::size_t candidates = 0;
  std::optional<TabularMeasure> counterexample;
  std::string detail;
};

/// residual: the residual part is below every maxitive tau with
/// nu = reg(nu) \/ tau. singular: the singular part is above every singular
/// such tau (Boolean algebras only, else MeasureError(not_boolean_algebra)).
/// regular: the regular part is above every measure below nu that has a
/// density.
ExtremalityResult verify_extremality(const TabularMeasure& nu, Part part,
                                     const EnumerationBudget& budget = {});
/// Same, with the maxitive measures on nu's family supplied by the caller.
ExtremalityResult verify_extremality(const TabularMeasure& nu, Part part,
                                     std::span<const TabularMeasure> all_measures);

}  // namespace maxitive
