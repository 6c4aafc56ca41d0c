#pragma once

// Finite posets with a bottom element, the way-above relation, and decision
// procedures for the order-theoretic hypotheses used by the measure code
// (continuity, domain, interpolation, distributivity, local completeness,
// join-continuity, locally continuous frame).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace maxitive {

/// Index of an element of a finite poset.
using Element = std::uint32_t;

/// Bitmask over element indices.
using ElementSet = std::uint32_t;

inline constexpr std::size_t kDefaultElementLimit = 10;
inline constexpr std::size_t kMaxElements = 16;

template <class Mask, class F>
void for_each_bit(Mask mask, F&& f) {
  while (mask != 0) {
    f(static_cast<Element>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
}

class OrderError : public std::runtime_error {
 public:
  enum class Kind {
    reflexivity,
    antisymmetry,
    transitivity,
    no_bottom,
    size_limit,
    malformed,
    missing_join,
    missing_meet,
  };

  OrderError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// A validated finite poset with a bottom element.
///
/// Elements are identified by index; labels are only used for reporting and
/// document I/O. The value is immutable once constructed. All filters are
/// enumerated at construction, which is why the size is capped.
///
/// Despite the name, pairwise joins and meets need not exist; `is_lattice()`
/// reports whether they do.
class Lattice {
 public:
  /// Validates `leq` as a partial order with a bottom element.
  ///
  /// Throws OrderError naming the offending elements when reflexivity,
  /// antisymmetry or transitivity fails, or when no bottom exists.
  static Lattice from_relation(std::vector<std::vector<bool>> leq,
                               std::vector<std::string> labels = {},
                               std::size_t limit = kDefaultElementLimit);

  /// Builds the reflexive-transitive closure of `pairs` (lower, upper) and
  /// validates the result.
  static Lattice from_pairs(std::size_t size,
                            const std::vector<std::pair<Element, Element>>& pairs,
                            std::vector<std::string> labels = {},
                            std::size_t limit = kDefaultElementLimit);

  static Lattice chain(std::size_t size);
  /// Powerset lattice of `atoms` atoms; element index = atom bitmask.
  static Lattice boolean(std::size_t atoms);
  /// Bottom, three pairwise incomparable atoms, top.
  static Lattice diamond();
  /// Bottom < a < c < top, bottom < b < top with b incomparable to a, c.
  static Lattice pentagon();
  /// Componentwise product of two chains.
  static Lattice grid(std::size_t rows, std::size_t cols);

  std::size_t size() const noexcept { return size_; }
  Element bottom() const noexcept { return bottom_; }
  std::optional<Element> top() const noexcept { return top_; }
  ElementSet all() const noexcept { return all_; }

  bool leq(Element a, Element b) const { return (up_[a] >> b) & 1U; }
  bool less(Element a, Element b) const { return a != b && leq(a, b); }
  ElementSet up_set(Element x) const { return up_[x]; }
  ElementSet down_set(Element x) const { return down_[x]; }

  const std::string& label(Element x) const { return labels_.at(x); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<Element> find(std::string_view label) const;

  /// Least upper bound of `s`, if it exists. The empty join is the bottom.
  std::optional<Element> supremum(ElementSet s) const;
  /// Greatest lower bound of `s`, if it exists. The empty meet is the top,
  /// which may be absent.
  std::optional<Element> infimum(ElementSet s) const;

  std::optional<Element> try_join(Element a, Element b) const;
  std::optional<Element> try_meet(Element a, Element b) const;
  /// Binary join; throws OrderError(missing_join) when absent.
  Element join(Element a, Element b) const;
  /// Binary meet; throws OrderError(missing_meet) when absent.
  Element meet(Element a, Element b) const;

  ElementSet upper_bounds(ElementSet s) const;
  ElementSet lower_bounds(ElementSet s) const;

  /// True iff `s` is a nonempty, downward filtered, upward closed subset.
  bool is_filter(ElementSet s) const;
  /// Every filter of the poset, enumerated as upward closures of antichains
  /// that turn out to be filtered. Sorted ascending by mask.
  const std::vector<ElementSet>& filters() const noexcept { return filters_; }

  /// y >> x: every filter F with an infimum and x >= inf F contains y.
  bool way_above(Element y, Element x) const {
    return (way_above_[x] >> y) & 1U;
  }
  /// The set of elements way-above x.
  ElementSet way_above_set(Element x) const { return way_above_[x]; }

  /// Every pair has a join and a meet (and hence every finite subset does).
  bool is_lattice() const noexcept { return is_lattice_; }
  /// Cached verdict of is_domain().
  bool is_domain() const noexcept { return is_domain_; }
  /// Cached verdict of check_locally_continuous_frame().
  bool is_frame() const noexcept { return is_frame_; }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.size_ == b.size_ && a.up_ == b.up_;
  }

 private:
  Lattice() = default;
  void build_tables();

  std::size_t size_ = 0;
  Element bottom_ = 0;
  std::optional<Element> top_;
  ElementSet all_ = 0;
  std::vector<ElementSet> up_;
  std::vector<ElementSet> down_;
  std::vector<std::string> labels_;
  // join_[a * size_ + b], -1 when absent.
  std::vector<std::int16_t> join_;
  std::vector<std::int16_t> meet_;
  std::vector<ElementSet> filters_;
  std::vector<ElementSet> way_above_;
  bool is_lattice_ = false;
  bool is_domain_ = false;
  bool is_frame_ = false;
};

/// Outcome of an order-theoretic check. On failure `witness` holds the
/// offending elements and `detail` names the failed property.
struct OrderCheck {
  bool ok = true;
  std::vector<Element> witness;
  std::string detail;

  explicit operator bool() const noexcept { return ok; }
};

/// For every x: the way-above set of x is a filter whose infimum is x.
OrderCheck check_continuity(const Lattice& lattice);
/// Continuous and every filter has an infimum.
OrderCheck check_domain(const Lattice& lattice);
/// y >> x implies y >> z >> x for some z.
OrderCheck check_interpolation(const Lattice& lattice);
/// Every pair has a join and a meet.
OrderCheck check_lattice(const Lattice& lattice);
/// a /\ (b \/ c) = (a /\ b) \/ (a /\ c) for all triples.
OrderCheck check_distributive(const Lattice& lattice);
/// Every subset with an upper bound has a supremum.
OrderCheck check_locally_complete(const Lattice& lattice);
/// t \/ inf F = inf (t \/ F) for every element t and filter F.
OrderCheck check_join_continuous(const Lattice& lattice);
/// Lattice, locally complete, continuous and distributive.
OrderCheck check_locally_continuous_frame(const Lattice& lattice);

inline bool is_continuous_poset(const Lattice& l) { return check_continuity(l).ok; }
inline bool is_distributive(const Lattice& l) { return check_distributive(l).ok; }
inline bool is_join_continuous(const Lattice& l) { return check_join_continuous(l).ok; }
inline bool is_locally_continuous_frame(const Lattice& l) {
  return check_locally_continuous_frame(l).ok;
}

}  // namespace maxitive
