#include "maxitive/spaces.hpp"

#include <algorithm>
#include <bit>
#include <iterator>

#include "maxitive/order.hpp"

namespace maxitive {

std::string format_point_set(PointSet s) {
  std::string out = "{";
  bool first = true;
  for_each_bit(s, [&](Element x) {
    if (!first) out += ",";
    out += std::to_string(x);
    first = false;
  });
  return out + "}";
}

namespace {

// A finite family is filtered under inclusion iff it has a least member, and
// that member is the intersection of all of them.
bool has_least_member(const std::vector<PointSet>& sets) {
  if (sets.empty()) return false;
  PointSet meet = sets.front();
  for (PointSet s : sets) meet &= s;
  return std::find(sets.begin(), sets.end(), meet) != sets.end();
}

std::optional<SpaceError> paving_violation(std::size_t points, PointSet universe,
                                           const std::vector<PointSet>& members) {
  PointSet covered = 0;
  for (PointSet s : members) covered |= s;
  if (covered != universe) {
    const auto x = std::countr_zero(static_cast<PointSet>(universe & ~covered));
    return SpaceError(SpaceError::Kind::uncovered_point,
                      "point " + std::to_string(x) + " is not covered by the family");
  }
  for (Point x = 0; x < points; ++x) {
    const PointSet bit = PointSet{1} << x;
    std::vector<PointSet> around;
    for (PointSet s : members)
      if (s & bit) around.push_back(s);
    if (!has_least_member(around)) {
      return SpaceError(SpaceError::Kind::point_filter_failure,
                        "members containing point " + std::to_string(x) +
                            " have no least element");
    }
  }
  return std::nullopt;
}

}  // namespace

SetFamily SetFamily::prepaving(std::size_t points, std::vector<PointSet> sets) {
  if (points > kMaxPoints) {
    throw SpaceError(SpaceError::Kind::too_many_points,
                     "at most " + std::to_string(kMaxPoints) + " ground points are supported");
  }
  SetFamily f;
  f.points_ = points;
  f.universe_ = points == 0 ? 0 : static_cast<PointSet>((std::uint64_t{1} << points) - 1);
  for (PointSet s : sets) {
    if (!is_subset(s, f.universe_)) {
      throw SpaceError(SpaceError::Kind::point_out_of_range,
                       "set " + format_point_set(s) + " leaves the ground set of " +
                           std::to_string(points) + " points");
    }
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  if (sets.empty() || sets.front() != 0) {
    throw SpaceError(SpaceError::Kind::missing_empty_set, "family does not contain the empty set");
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      const PointSet u = sets[i] | sets[j];
      if (!std::binary_search(sets.begin(), sets.end(), u)) {
        throw SpaceError(SpaceError::Kind::union_escape,
                         "union of " + format_point_set(sets[i]) + " and " +
                             format_point_set(sets[j]) + " is not in the family");
      }
    }
  }
  f.members_ = std::move(sets);
  f.paving_ = !paving_violation(f.points_, f.universe_, f.members_).has_value();
  return f;
}

SetFamily SetFamily::paving(std::size_t points, std::vector<PointSet> sets) {
  SetFamily f = prepaving(points, std::move(sets));
  if (auto violation = paving_violation(f.points_, f.universe_, f.members_)) throw *violation;
  return f;
}

SetFamily SetFamily::power_set(std::size_t points) {
  if (points > kMaxPoints) {
    throw SpaceError(SpaceError::Kind::too_many_points, "power set too large");
  }
  std::vector<PointSet> sets;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << points); ++s) sets.push_back(static_cast<PointSet>(s));
  return paving(points, std::move(sets));
}

std::optional<std::size_t> SetFamily::index_of(PointSet s) const {
  const auto it = std::lower_bound(members_.begin(), members_.end(), s);
  if (it == members_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

bool is_boolean_algebra(const SetFamily& family) {
  return std::all_of(family.members().begin(), family.members().end(), [&](PointSet s) {
    return family.contains(family.universe() & ~s);
  });
}

bool is_topology(const SetFamily& family) {
  if (!family.contains(family.universe())) return false;
  for (PointSet a : family.members())
    for (PointSet b : family.members())
      if (!family.contains(a & b) || !family.contains(a | b)) return false;
  return true;
}

std::vector<PointSet> generated_topology(const SetFamily& family) {
  std::vector<PointSet> open = family.members();
  if (!family.contains(family.universe())) open.push_back(family.universe());
  // Each newly found union is paired with everything before it.
  for (std::size_t i = 0; i < open.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const PointSet u = open[i] | open[j];
      if (std::find(open.begin(), open.end(), u) == open.end()) open.push_back(u);
    }
  }
  std::sort(open.begin(), open.end());
  return open;
}

namespace {

// Drops redundant members of a cover of `a` one at a time; the result is a
// finite subcover.
std::vector<PointSet> prune_cover(std::vector<PointSet> cover, PointSet a) {
  for (std::size_t i = 0; i < cover.size();) {
    PointSet rest = 0;
    for (std::size_t j = 0; j < cover.size(); ++j)
      if (j != i) rest |= cover[j];
    if (is_subset(a, rest)) cover.erase(cover.begin() + static_cast<std::ptrdiff_t>(i));
    else ++i;
  }
  return cover;
}

bool covers(const std::vector<PointSet>& cover, PointSet a) {
  PointSet u = 0;
  for (PointSet s : cover) u |= s;
  return is_subset(a, u);
}

}  // namespace

bool is_compact(const SetFamily& family, PointSet a) {
  if (!is_subset(a, family.universe())) {
    throw SpaceError(SpaceError::Kind::point_out_of_range,
                     "set " + format_point_set(a) + " leaves the ground set");
  }
  const std::vector<PointSet> open = generated_topology(family);
  if (open.size() > kCoverSearchLimit) {
    return covers(prune_cover(open, a), a);
  }
  const std::uint64_t covers_count = std::uint64_t{1} << open.size();
  for (std::uint64_t pick = 0; pick < covers_count; ++pick) {
    std::vector<PointSet> cover;
    for (std::size_t i = 0; i < open.size(); ++i)
      if ((pick >> i) & 1U) cover.push_back(open[i]);
    if (!covers(cover, a)) continue;
    if (!covers(prune_cover(std::move(cover), a), a)) return false;
  }
  return true;
}

bool estar_contains(const SetFamily& family, PointSet a) {
  std::vector<PointSet> above;
  for (PointSet g : family.members())
    if (is_subset(a, g)) above.push_back(g);
  return has_least_member(above);
}

DerivedFamilies derive_families(const SetFamily& family) {
  DerivedFamilies d;
  d.topology = generated_topology(family);
  const PointSet universe = family.universe();
  for (std::uint64_t raw = 0; raw <= universe; ++raw) {
    const auto s = static_cast<PointSet>(raw);
    d.compacts.push_back(s);
    if (!estar_contains(family, s)) continue;
    d.estar.push_back(s);
    if (family.contains(universe & ~s)) {
      d.closed_star.push_back(s);
      d.compact_closed.push_back(s);
    }
  }
  return d;
}

CodedSet::CodedSet(Polarity polarity, std::vector<Point> exceptions)
    : polarity_(polarity), exceptions_(std::move(exceptions)) {
  std::sort(exceptions_.begin(), exceptions_.end());
  exceptions_.erase(std::unique(exceptions_.begin(), exceptions_.end()), exceptions_.end());
}

bool CodedSet::contains(Point x) const {
  const bool listed = std::binary_search(exceptions_.begin(), exceptions_.end(), x);
  return is_finite() ? listed : !listed;
}

CodedSet CodedSet::complement() const {
  return CodedSet(is_finite() ? Polarity::cofinite : Polarity::finite, exceptions_);
}

namespace {

std::vector<Point> set_union(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Point> set_intersection(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Point> set_difference(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

CodedSet CodedSet::operator|(const CodedSet& o) const {
  if (is_finite() && o.is_finite()) return finite(set_union(exceptions_, o.exceptions_));
  if (is_finite()) return cofinite(set_difference(o.exceptions_, exceptions_));
  if (o.is_finite()) return cofinite(set_difference(exceptions_, o.exceptions_));
  return cofinite(set_intersection(exceptions_, o.exceptions_));
}

CodedSet CodedSet::operator&(const CodedSet& o) const {
  if (is_finite() && o.is_finite()) return finite(set_intersection(exceptions_, o.exceptions_));
  if (is_finite()) return finite(set_difference(exceptions_, o.exceptions_));
  if (o.is_finite()) return finite(set_difference(o.exceptions_, exceptions_));
  return cofinite(set_union(exceptions_, o.exceptions_));
}

CodedSet CodedSet::operator-(const CodedSet& o) const { return *this & o.complement(); }

bool CodedSet::subset_of(const CodedSet& o) const { return (*this - o).is_empty(); }

std::string CodedSet::to_string() const {
  std::string body = "{";
  for (std::size_t i = 0; i < exceptions_.size(); ++i) {
    if (i) body += ",";
    body += std::to_string(exceptions_[i]);
  }
  body += "}";
  return is_finite() ? body : "N\\" + body;
}

std::vector<CodedSet> finite_sets_in_window(Point window) {
  std::vector<CodedSet> out;
  const std::uint64_t count = std::uint64_t{1} << window;
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<Point> pts;
    for (Point x = 0; x < window; ++x)
      if ((mask >> x) & 1U) pts.push_back(x);
    out.push_back(CodedSet::finite(std::move(pts)));
  }
  return out;
}

std::vector<CodedSet> coded_sets_in_window(Point window) {
  std::vector<CodedSet> out = finite_sets_in_window(window);
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out.push_back(out[i].complement());
  return out;
}

Point fresh_point(const std::vector<Point>& support) {
  return support.empty() ? 0 : *std::max_element(support.begin(), support.end()) + 1;
}

namespace {

std::vector<Point> pick(const std::vector<Point>& pts, std::uint64_t mask) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if ((mask >> i) & 1U) out.push_back(pts[i]);
  return out;
}

}  // namespace

std::vector<CodedSet> representative_sets(const std::vector<Point>& support_in) {
  std::vector<Point> support = support_in;
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  const Point fresh = fresh_point(support);
  std::vector<CodedSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << support.size()); ++mask) {
    std::vector<Point> chosen = pick(support, mask);
    out.push_back(CodedSet::finite(chosen));
    std::vector<Point> with_fresh = chosen;
    with_fresh.push_back(fresh);
    out.push_back(CodedSet::finite(std::move(with_fresh)));
    out.push_back(CodedSet::cofinite(pick(support, ~mask)));
  }
  return out;
}

std::vector<CodedSet> representative_subsets(const CodedSet& g, const std::vector<Point>& support_in) {
  std::vector<Point> support = support_in;
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  for (Point x : g.exceptions()) {
    if (!std::binary_search(support.begin(), support.end(), x)) {
      throw std::invalid_argument("support must contain the exceptions of the set");
    }
  }
  std::vector<Point> inside;
  for (Point x : support)
    if (g.contains(x)) inside.push_back(x);
  const Point fresh = fresh_point(support);
  std::vector<CodedSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inside.size()); ++mask) {
    std::vector<Point> chosen = pick(inside, mask);
    out.push_back(CodedSet::finite(chosen));
    if (g.is_finite()) continue;
    std::vector<Point> with_fresh = chosen;
    with_fresh.push_back(fresh);
    out.push_back(CodedSet::finite(std::move(with_fresh)));
    out.push_back(CodedSet::cofinite(set_difference(support, chosen)));
  }
  return out;
}

std::vector<Point> merge_support(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::vector<Point> out = set_union(sa, sb);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace maxitive
