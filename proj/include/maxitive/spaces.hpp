#pragma once

// Ground-set models and set systems.
//
// Two models are supported:
//  * a finite ground set {0, ..., n-1} with an explicit family of subsets
//    (SetFamily), subsets being bitmasks;
//  * the countable ground set N with the Boolean algebra of finite and
//    cofinite subsets (CofiniteAlgebra), subsets being CodedSet values.
//
// In the cofinite model every singleton is a member of the algebra, so the
// generated topology is discrete and the compact sets are exactly the finite
// sets.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace maxitive {

/// Point of a ground set.
using Point = std::uint32_t;

/// Subset of a finite ground set {0, ..., n-1}.
using PointSet = std::uint32_t;

inline constexpr std::size_t kMaxPoints = 16;

class SpaceError : public std::runtime_error {
 public:
  enum class Kind {
    missing_empty_set,
    union_escape,
    uncovered_point,
    point_filter_failure,
    point_out_of_range,
    too_many_points,
    not_boolean_algebra,
  };

  SpaceError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

std::string format_point_set(PointSet s);

inline bool is_subset(PointSet a, PointSet b) { return (a & ~b) == 0; }

/// A prepaving on {0, ..., n-1}: contains the empty set and is closed under
/// pairwise unions. Members are kept sorted ascending and deduplicated, so a
/// proper subset always precedes its supersets.
class SetFamily {
 public:
  /// Throws SpaceError(missing_empty_set | union_escape | point_out_of_range).
  static SetFamily prepaving(std::size_t points, std::vector<PointSet> sets);
  /// Additionally requires covering and, for each point x, that the members
  /// containing x form a nonempty filtered family under inclusion.
  /// Throws SpaceError(uncovered_point | point_filter_failure).
  static SetFamily paving(std::size_t points, std::vector<PointSet> sets);
  static SetFamily power_set(std::size_t points);

  std::size_t points() const noexcept { return points_; }
  PointSet universe() const noexcept { return universe_; }
  const std::vector<PointSet>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  PointSet member(std::size_t i) const { return members_.at(i); }

  std::optional<std::size_t> index_of(PointSet s) const;
  bool contains(PointSet s) const { return index_of(s).has_value(); }
  bool is_paving() const noexcept { return paving_; }

  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.points_ == b.points_ && a.members_ == b.members_;
  }

 private:
  SetFamily() = default;

  std::size_t points_ = 0;
  PointSet universe_ = 0;
  std::vector<PointSet> members_;
  bool paving_ = false;
};

/// Complement-closure of the family.
bool is_boolean_algebra(const SetFamily& family);
/// Contains the empty set and the universe, closed under unions and
/// intersections.
bool is_topology(const SetFamily& family);
/// Closure of the family together with the universe under unions. For a
/// paving this is the topology the family generates (the family is a base).
std::vector<PointSet> generated_topology(const SetFamily& family);
/// Finite-subcover search over open covers drawn from the generated topology.
/// The search is exhaustive while the topology has at most
/// `kCoverSearchLimit` members; beyond that only the cover by the whole
/// topology is searched.
bool is_compact(const SetFamily& family, PointSet a);
inline constexpr std::size_t kCoverSearchLimit = 12;
/// The members of the family containing `a` form a filter under inclusion.
bool estar_contains(const SetFamily& family, PointSet a);

/// Collections derived from a finite family.
struct DerivedFamilies {
  std::vector<PointSet> topology;        ///< generated topology
  std::vector<PointSet> compacts;        ///< compact subsets
  std::vector<PointSet> estar;           ///< subsets whose supersets form a filter
  std::vector<PointSet> closed_star;     ///< F in estar with complement in the family
  std::vector<PointSet> compact_closed;  ///< compacts that are in closed_star
};

/// All subsets are compact in a finite space; `compacts` lists every subset.
DerivedFamilies derive_families(const SetFamily& family);

/// A finite or cofinite subset of N.
///
/// `exceptions` are the members of a finite set, or the excluded points of a
/// cofinite set; always sorted and duplicate-free.
class CodedSet {
 public:
  enum class Polarity : std::uint8_t { finite, cofinite };

  CodedSet() = default;
  CodedSet(Polarity polarity, std::vector<Point> exceptions);

  static CodedSet empty() { return {}; }
  static CodedSet everything() { return CodedSet(Polarity::cofinite, {}); }
  static CodedSet finite(std::vector<Point> points) {
    return CodedSet(Polarity::finite, std::move(points));
  }
  static CodedSet cofinite(std::vector<Point> excluded) {
    return CodedSet(Polarity::cofinite, std::move(excluded));
  }
  static CodedSet singleton(Point x) { return CodedSet(Polarity::finite, {x}); }

  Polarity polarity() const noexcept { return polarity_; }
  bool is_finite() const noexcept { return polarity_ == Polarity::finite; }
  bool is_empty() const noexcept { return is_finite() && exceptions_.empty(); }
  const std::vector<Point>& exceptions() const noexcept { return exceptions_; }

  bool contains(Point x) const;
  bool subset_of(const CodedSet& other) const;

  CodedSet complement() const;
  CodedSet operator|(const CodedSet& other) const;
  CodedSet operator&(const CodedSet& other) const;
  CodedSet operator-(const CodedSet& other) const;

  std::string to_string() const;

  friend bool operator==(const CodedSet&, const CodedSet&) = default;
  friend auto operator<=>(const CodedSet&, const CodedSet&) = default;

 private:
  Polarity polarity_ = Polarity::finite;
  std::vector<Point> exceptions_;
};

/// The Boolean algebra of finite and cofinite subsets of N. Every member is
/// in estar and in the closed-star family; the compact-closed members are
/// the finite sets.
struct CofiniteAlgebra {
  friend bool operator==(const CofiniteAlgebra&, const CofiniteAlgebra&) = default;
};

inline bool is_boolean_algebra(const CofiniteAlgebra&) { return true; }
inline bool is_compact(const CofiniteAlgebra&, const CodedSet& a) { return a.is_finite(); }
inline bool estar_contains(const CofiniteAlgebra&, const CodedSet&) { return true; }
inline bool in_closed_star(const CofiniteAlgebra&, const CodedSet&) { return true; }
inline bool in_compact_closed(const CofiniteAlgebra&, const CodedSet& a) {
  return a.is_finite();
}

/// Every finite subset of {0, ..., window-1}.
std::vector<CodedSet> finite_sets_in_window(Point window);
/// Every coded set whose exceptions lie in {0, ..., window-1}.
std::vector<CodedSet> coded_sets_in_window(Point window);

/// The smallest point strictly above every point of `support`.
Point fresh_point(const std::vector<Point>& support);

/// One coded set per behaviour class relative to `support`.
///
/// A set function that only depends on (G intersected with support, whether
/// G is finite, whether G has a point outside support) is determined by its
/// values on these 3 * 2^|support| sets: every subset S of support, S plus
/// the fresh point, and the cofinite set N minus (support - S).
std::vector<CodedSet> representative_sets(const std::vector<Point>& support);

/// Coded subsets of `g` covering every behaviour class of subsets of `g`
/// relative to `support`. `support` must contain the exceptions of `g`.
std::vector<CodedSet> representative_subsets(const CodedSet& g,
                                             const std::vector<Point>& support);

/// Sorted union of point lists.
std::vector<Point> merge_support(const std::vector<Point>& a, const std::vector<Point>& b);

using GroundModel = std::variant<std::shared_ptr<const SetFamily>, CofiniteAlgebra>;

}  // namespace maxitive
