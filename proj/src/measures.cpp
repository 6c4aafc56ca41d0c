#include "maxitive/measures.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

namespace maxitive {

namespace {

using Kind = MeasureError::Kind;

ElementSet bit(Element x) { return ElementSet{1} << x; }

Element infimum_or_throw(const Lattice& lattice, ElementSet s, const std::string& context) {
  if (s == 0) throw MeasureError(Kind::empty_superset_family, "empty meet in " + context);
  auto inf = lattice.infimum(s);
  if (!inf) throw MeasureError(Kind::missing_bound, "no infimum in " + context);
  return *inf;
}

void check_element(const Lattice& lattice, Element x) {
  if (x >= lattice.size()) {
    throw MeasureError(Kind::invalid_value, "lattice element " + std::to_string(x) + " out of range");
  }
}

}  // namespace

void require_domain(const Lattice& lattice) {
  if (!lattice.is_domain()) throw MeasureError(Kind::not_a_domain, "value poset is not a domain");
}

void require_frame(const Lattice& lattice) {
  if (!lattice.is_frame()) {
    throw MeasureError(Kind::not_a_frame, "value poset is not a locally continuous frame");
  }
}

void require_paving(const SetFamily& family) {
  if (!family.is_paving()) throw MeasureError(Kind::not_a_paving, "set family is not a paving");
}

void require_same_model(const TabularMeasure& nu, const TabularMeasure& tau) {
  if (!(nu.lattice() == tau.lattice())) {
    throw MeasureError(Kind::lattice_mismatch, "measures take values in different posets");
  }
  if (!(nu.family() == tau.family())) {
    throw MeasureError(Kind::model_mismatch, "measures are defined on different families");
  }
}

void require_same_model(const ParametricMeasure& nu, const ParametricMeasure& tau) {
  if (!(nu.lattice() == tau.lattice())) {
    throw MeasureError(Kind::lattice_mismatch, "measures take values in different posets");
  }
}

// ---------------------------------------------------------------------------

TabularMeasure::TabularMeasure(LatticePtr lattice, FamilyPtr family, std::vector<Element> values)
    : lattice_(std::move(lattice)), family_(std::move(family)), values_(std::move(values)) {
  if (!lattice_ || !family_) throw std::invalid_argument("null lattice or family");
  if (values_.size() != family_->size()) {
    throw MeasureError(Kind::invalid_value, "expected " + std::to_string(family_->size()) +
                                                " values, got " + std::to_string(values_.size()));
  }
  for (Element v : values_) check_element(*lattice_, v);
}

TabularMeasure TabularMeasure::zero(LatticePtr lattice, FamilyPtr family) {
  const Element bottom = lattice->bottom();
  const std::size_t n = family->size();
  return TabularMeasure(std::move(lattice), std::move(family), std::vector<Element>(n, bottom));
}

Element TabularMeasure::operator()(PointSet g) const {
  auto index = family_->index_of(g);
  if (!index) throw MeasureError(Kind::set_not_in_paving, format_point_set(g) + " is not in the family");
  return values_[*index];
}

bool operator==(const TabularMeasure& a, const TabularMeasure& b) {
  return a.lattice() == b.lattice() && a.family() == b.family() && a.values_ == b.values_;
}

ParametricMeasure::ParametricMeasure(LatticePtr lattice, std::map<Point, Element> exceptions,
                                     Element default_level, Element residual)
    : lattice_(std::move(lattice)),
      exceptions_(std::move(exceptions)),
      default_(default_level),
      residual_(residual) {
  if (!lattice_) throw std::invalid_argument("null lattice");
  if (!lattice_->is_lattice()) {
    throw MeasureError(Kind::precondition, "parametric measures need binary joins");
  }
  check_element(*lattice_, default_);
  check_element(*lattice_, residual_);
  for (auto it = exceptions_.begin(); it != exceptions_.end();) {
    check_element(*lattice_, it->second);
    it = it->second == default_ ? exceptions_.erase(it) : std::next(it);
  }
}

ParametricMeasure ParametricMeasure::zero(LatticePtr lattice) {
  const Element bottom = lattice->bottom();
  return ParametricMeasure(std::move(lattice), {}, bottom, bottom);
}

Element ParametricMeasure::level(Point x) const {
  auto it = exceptions_.find(x);
  return it == exceptions_.end() ? default_ : it->second;
}

std::vector<Point> ParametricMeasure::support() const {
  std::vector<Point> out;
  for (const auto& [x, _] : exceptions_) out.push_back(x);
  return out;
}

Element ParametricMeasure::operator()(const CodedSet& g) const {
  const Lattice& l = *lattice_;
  Element acc = l.bottom();
  if (g.is_finite()) {
    for (Point x : g.exceptions()) acc = l.join(acc, level(x));
    return acc;
  }
  acc = l.join(residual_, default_);
  for (const auto& [x, v] : exceptions_)
    if (g.contains(x)) acc = l.join(acc, v);
  return acc;
}

bool operator==(const ParametricMeasure& a, const ParametricMeasure& b) {
  return a.lattice() == b.lattice() && a.exceptions_ == b.exceptions_ &&
         a.default_ == b.default_ && a.residual_ == b.residual_;
}

const Lattice& lattice_of(const Measure& m) {
  return std::visit([](const auto& nu) -> const Lattice& { return nu.lattice(); }, m);
}

// ---------------------------------------------------------------------------
// Maxitivity

std::vector<std::vector<PointSet>> minimal_exact_covers(const SetFamily& family, PointSet target) {
  std::vector<PointSet> candidates;
  for (PointSet g : family.members())
    if (g != 0 && is_subset(g, target)) candidates.push_back(g);
  const int bound = std::popcount(target);

  std::vector<std::vector<PointSet>> out;
  std::vector<PointSet> chosen;
  std::function<void(std::size_t, PointSet)> search = [&](std::size_t from, PointSet covered) {
    if (covered == target) {
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        PointSet others = 0;
        for (std::size_t j = 0; j < chosen.size(); ++j)
          if (j != i) others |= chosen[j];
        if (is_subset(chosen[i], others)) return;
      }
      out.push_back(chosen);
      return;
    }
    if (static_cast<int>(chosen.size()) >= bound) return;
    for (std::size_t i = from; i < candidates.size(); ++i) {
      // A member adding nothing new is covered by the others.
      if (is_subset(candidates[i], covered)) continue;
      chosen.push_back(candidates[i]);
      search(i + 1, covered | candidates[i]);
      chosen.pop_back();
    }
  };
  if (target != 0) search(0, 0);
  return out;
}

MaxitivityReport validate_maxitive(const TabularMeasure& nu) {
  const Lattice& l = nu.lattice();
  const SetFamily& fam = nu.family();
  MaxitivityReport report;

  if (nu(0) != l.bottom()) {
    report.violation = MaxitivityReport::Violation::nonzero_on_empty;
    report.witness = {0};
    report.detail = "value of the empty set is " + l.label(nu(0));
    return report;
  }
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (std::size_t j = 0; j < fam.size(); ++j) {
      if (i == j || !is_subset(fam.member(i), fam.member(j))) continue;
      if (!l.leq(nu.at(i), nu.at(j))) {
        report.violation = MaxitivityReport::Violation::monotonicity;
        report.witness = {fam.member(i), fam.member(j)};
        report.detail = "not monotone on " + format_point_set(fam.member(i)) + " within " +
                        format_point_set(fam.member(j));
        return report;
      }
    }
  }
  for (std::size_t t = 0; t < fam.size(); ++t) {
    const PointSet target = fam.member(t);
    for (const auto& cover : minimal_exact_covers(fam, target)) {
      ElementSet values = 0;
      for (PointSet g : cover) values |= bit(nu(g));
      auto sup = l.supremum(values);
      if (sup && *sup == nu.at(t)) continue;
      report.violation = MaxitivityReport::Violation::cover;
      report.witness = {target};
      report.witness.insert(report.witness.end(), cover.begin(), cover.end());
      report.detail = "cover of " + format_point_set(target) +
                      (sup ? " has join " + l.label(*sup) + " but value " + l.label(nu.at(t))
                           : std::string(" has no join"));
      return report;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Ideal representation

IdealFamily::IdealFamily(LatticePtr lattice, FamilyPtr family, std::vector<std::uint64_t> members)
    : lattice_(std::move(lattice)), family_(std::move(family)), members_(std::move(members)) {
  if (family_->size() > 64) {
    throw MeasureError(Kind::invalid_ideal_family, "ideal families support at most 64 members");
  }
  if (members_.size() != lattice_->size()) {
    throw MeasureError(Kind::invalid_ideal_family, "one ideal per lattice element is required");
  }
  const std::uint64_t all =
      family_->size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << family_->size()) - 1;
  for (std::uint64_t m : members_) {
    if (m & ~all) throw MeasureError(Kind::invalid_ideal_family, "ideal member index out of range");
  }
}

bool IdealFamily::contains(Element t, PointSet g) const {
  auto index = family_->index_of(g);
  if (!index) throw MeasureError(Kind::set_not_in_paving, format_point_set(g) + " is not in the family");
  return (members_.at(t) >> *index) & 1U;
}

ElementSet IdealFamily::levels_containing(std::size_t member_index) const {
  ElementSet out = 0;
  for (Element t = 0; t < members_.size(); ++t)
    if ((members_[t] >> member_index) & 1U) out |= bit(t);
  return out;
}

bool operator==(const IdealFamily& a, const IdealFamily& b) {
  return a.lattice() == b.lattice() && a.family() == b.family() && a.members_ == b.members_;
}

IdealCheck check_ideal_family(const IdealFamily& fam) {
  const Lattice& l = fam.lattice();
  const SetFamily& sets = fam.family();
  auto fail = [](std::optional<Element> t, std::optional<PointSet> g, std::string detail) {
    return IdealCheck{false, t, g, std::move(detail)};
  };
  for (Element t = 0; t < l.size(); ++t) {
    const std::uint64_t ideal = fam.ideal(t);
    if (ideal == 0) return fail(t, std::nullopt, "ideal at " + l.label(t) + " is empty");
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (!((ideal >> i) & 1U)) continue;
      for (std::size_t j = 0; j < sets.size(); ++j) {
        const bool in_j = (ideal >> j) & 1U;
        if (!in_j && is_subset(sets.member(j), sets.member(i))) {
          return fail(t, sets.member(j), "ideal at " + l.label(t) + " is not downward closed");
        }
        if (in_j) {
          const std::size_t u = *sets.index_of(sets.member(i) | sets.member(j));
          if (!((ideal >> u) & 1U)) {
            return fail(t, sets.member(u), "ideal at " + l.label(t) + " is not union closed");
          }
        }
      }
    }
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const ElementSet levels = fam.levels_containing(i);
    if (!l.is_filter(levels) || !l.infimum(levels)) {
      return fail(std::nullopt, sets.member(i),
                  "levels containing " + format_point_set(sets.member(i)) +
                      " do not form a filter with an infimum");
    }
  }
  return {};
}

IdealFamily right_continuous_closure(const IdealFamily& fam) {
  const Lattice& l = fam.lattice();
  const std::size_t n = fam.family().size();
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> closed(l.size(), all);
  for (Element t = 0; t < l.size(); ++t) {
    for_each_bit(l.way_above_set(t), [&](Element s) { closed[t] &= fam.ideal(s); });
  }
  return IdealFamily(fam.lattice_ptr(), fam.family_ptr(), std::move(closed));
}

IdealCheck is_right_continuous(const IdealFamily& fam) {
  const IdealFamily closed = right_continuous_closure(fam);
  const Lattice& l = fam.lattice();
  for (Element t = 0; t < l.size(); ++t) {
    const std::uint64_t diff = closed.ideal(t) ^ fam.ideal(t);
    if (diff == 0) continue;
    const PointSet g = fam.family().member(static_cast<std::size_t>(std::countr_zero(diff)));
    return {false, t, g,
            "ideal at " + l.label(t) + " differs from the intersection above it at " +
                format_point_set(g)};
  }
  return {};
}

IdealFamily to_canonical_ideals(const TabularMeasure& nu) {
  const Lattice& l = nu.lattice();
  std::vector<std::uint64_t> members(l.size(), 0);
  for (Element t = 0; t < l.size(); ++t)
    for (std::size_t i = 0; i < nu.family().size(); ++i)
      if (l.leq(nu.at(i), t)) members[t] |= std::uint64_t{1} << i;
  return IdealFamily(nu.lattice_ptr(), nu.family_ptr(), std::move(members));
}

IdealConstruction from_ideals(const IdealFamily& fam) {
  if (IdealCheck check = check_ideal_family(fam); !check) {
    throw MeasureError(check.set && !check.level ? Kind::filter_condition : Kind::invalid_ideal_family,
                       check.detail);
  }
  IdealCheck continuity = is_right_continuous(fam);
  const bool used_closure = !continuity.ok;
  const IdealFamily source = used_closure ? right_continuous_closure(fam) : fam;
  const Lattice& l = fam.lattice();
  std::vector<Element> values;
  for (std::size_t i = 0; i < fam.family().size(); ++i) {
    values.push_back(infimum_or_throw(l, source.levels_containing(i),
                                      "levels of " + format_point_set(fam.family().member(i))));
  }
  TabularMeasure nu(fam.lattice_ptr(), fam.family_ptr(), std::move(values));
  if (MaxitivityReport report = validate_maxitive(nu); !report.ok()) {
    throw MeasureError(Kind::equivalence_violation,
                       "measure built from ideals is not maxitive: " + report.detail);
  }
  return IdealConstruction{std::move(nu), continuity.ok, used_closure, std::move(continuity)};
}

// ---------------------------------------------------------------------------
// Maximal extension and densities

Element extend_star(const TabularMeasure& nu, PointSet a) {
  require_domain(nu.lattice());
  const SetFamily& fam = nu.family();
  if (!is_subset(a, fam.universe()) || !estar_contains(fam, a)) {
    throw MeasureError(Kind::not_in_estar,
                       "supersets of " + format_point_set(a) + " do not form a filter");
  }
  ElementSet values = 0;
  for (std::size_t i = 0; i < fam.size(); ++i)
    if (is_subset(a, fam.member(i))) values |= bit(nu.at(i));
  return infimum_or_throw(nu.lattice(), values, "extension at " + format_point_set(a));
}

Element extend_star(const ParametricMeasure& nu, const CodedSet& a) {
  require_domain(nu.lattice());
  // `a` is its own smallest coded superset and nu is monotone.
  return nu(a);
}

std::vector<std::optional<Element>> extension_table(const TabularMeasure& nu) {
  const PointSet universe = nu.family().universe();
  std::vector<std::optional<Element>> table(std::size_t{universe} + 1);
  for (std::uint64_t raw = 0; raw <= universe; ++raw) {
    const auto a = static_cast<PointSet>(raw);
    if (estar_contains(nu.family(), a)) table[raw] = extend_star(nu, a);
  }
  return table;
}

TabularMeasure extend_to_estar(const TabularMeasure& nu) {
  const auto table = extension_table(nu);
  std::vector<PointSet> sets;
  std::vector<Element> values;
  for (std::size_t a = 0; a < table.size(); ++a) {
    if (!table[a]) continue;
    sets.push_back(static_cast<PointSet>(a));
    values.push_back(*table[a]);
  }
  auto family = std::make_shared<const SetFamily>(
      SetFamily::prepaving(nu.family().points(), std::move(sets)));
  return TabularMeasure(nu.lattice_ptr(), std::move(family), std::move(values));
}

std::vector<Element> density_candidate(const TabularMeasure& nu) {
  std::vector<Element> c;
  for (Point x = 0; x < nu.family().points(); ++x) c.push_back(extend_star(nu, PointSet{1} << x));
  return c;
}

Element PointDensity::at(Point x) const {
  auto it = levels.find(x);
  return it == levels.end() ? default_level : it->second;
}

std::vector<Point> PointDensity::support() const {
  std::vector<Point> out;
  for (const auto& [x, _] : levels) out.push_back(x);
  return out;
}

PointDensity density_candidate(const ParametricMeasure& nu) {
  PointDensity c;
  for (Point x : nu.support()) c.levels[x] = extend_star(nu, CodedSet::singleton(x));
  c.default_level = extend_star(nu, CodedSet::singleton(fresh_point(nu.support())));
  return c;
}

SetVerdict<PointSet> check_density(const TabularMeasure& nu, std::span<const Element> density) {
  const Lattice& l = nu.lattice();
  if (density.size() != nu.family().points()) {
    throw MeasureError(Kind::invalid_value, "density must assign a level to every point");
  }
  for (std::size_t i = 0; i < nu.family().size(); ++i) {
    const PointSet g = nu.family().member(i);
    ElementSet levels = 0;
    for_each_bit(g, [&](Element x) { levels |= bit(density[x]); });
    auto sup = l.supremum(levels);
    if (!sup || *sup != nu.at(i)) return {false, g};
  }
  return {};
}

SetVerdict<CodedSet> check_density(const ParametricMeasure& nu, const PointDensity& density) {
  const Lattice& l = nu.lattice();
  const std::vector<Point> support = merge_support(nu.support(), density.support());
  for (const CodedSet& g : representative_sets(support)) {
    // A cofinite set contains infinitely many points at the density's
    // default level.
    Element acc = g.is_finite() ? l.bottom() : density.default_level;
    if (g.is_finite()) {
      for (Point x : g.exceptions()) acc = l.join(acc, density.at(x));
    } else {
      for (Point x : support)
        if (g.contains(x)) acc = l.join(acc, density.at(x));
    }
    if (acc != nu(g)) return {false, g};
  }
  return {};
}

DensityDiagnosis has_density(const TabularMeasure& nu) {
  require_paving(nu.family());
  DensityDiagnosis d;
  const MaxitivityReport report = validate_maxitive(nu);
  if (!report.ok()) throw MeasureError(Kind::not_maxitive, report.detail);
  // Every family of members of a finite family is finite.
  d.completely_maxitive = true;

  const Lattice& l = nu.lattice();
  const auto table = extension_table(nu);
  d.inner_continuous = true;
  for (std::size_t i = 0; i < nu.family().size() && d.inner_continuous; ++i) {
    const PointSet g = nu.family().member(i);
    ElementSet inner = 0;
    for (PointSet k = g;; k = (k - 1) & g) {
      inner |= bit(table.at(k).value());
      if (k == 0) break;
    }
    auto sup = l.supremum(inner);
    d.inner_continuous = sup && *sup == nu.at(i);
  }

  const std::vector<Element> c = density_candidate(nu);
  d.density = check_density(nu, c).ok;
  if (!d.agree()) {
    throw MeasureError(Kind::equivalence_violation, "density characterisations disagree");
  }
  return d;
}

DensityDiagnosis has_density(const ParametricMeasure& nu) {
  const Lattice& l = nu.lattice();
  DensityDiagnosis d;
  d.completely_maxitive = l.leq(nu.residual(), nu.default_level());

  d.inner_continuous = true;
  for (const CodedSet& g : representative_sets(nu.support())) {
    const std::vector<Point> support = merge_support(nu.support(), g.exceptions());
    Element inner = l.bottom();
    for (const CodedSet& k : representative_subsets(g, support))
      if (is_compact(CofiniteAlgebra{}, k)) inner = l.join(inner, extend_star(nu, k));
    if (inner != nu(g)) {
      d.inner_continuous = false;
      break;
    }
  }

  d.density = check_density(nu, density_candidate(nu)).ok;
  if (!d.agree()) {
    throw MeasureError(Kind::equivalence_violation, "density characterisations disagree");
  }
  return d;
}

bool usc_check(const TabularMeasure& nu) {
  const Lattice& l = nu.lattice();
  const std::vector<PointSet> open = generated_topology(nu.family());
  const std::vector<Element> c = density_candidate(nu);
  for (Element t = 0; t < l.size(); ++t) {
    PointSet u = 0;
    for (Point x = 0; x < c.size(); ++x)
      if (l.way_above(t, c[x])) u |= PointSet{1} << x;
    if (!std::binary_search(open.begin(), open.end(), u)) return false;
  }
  return true;
}

bool usc_check(const ParametricMeasure& nu) {
  require_domain(nu.lattice());
  // Singletons are members of the algebra, so every subset of N is open.
  return true;
}

bool is_tight(const TabularMeasure& nu) {
  const DerivedFamilies d = derive_families(nu.family());
  const PointSet universe = nu.family().universe();
  ElementSet values = 0;
  for (PointSet h : d.compact_closed) values |= bit(nu(universe & ~h));
  return infimum_or_throw(nu.lattice(), values, "tightness meet") == nu.lattice().bottom();
}

bool is_tight(const ParametricMeasure& nu) {
  const Lattice& l = nu.lattice();
  return l.join(nu.residual(), nu.default_level()) == l.bottom();
}

namespace {

template <class Set, class Intersect, class Subset>
void require_filtered(std::span<const Set> sets, Intersect&& intersect, Subset&& subset) {
  if (sets.empty()) throw MeasureError(Kind::precondition, "the family must be nonempty");
  for (const Set& a : sets) {
    for (const Set& b : sets) {
      const Set ab = intersect(a, b);
      const bool refined =
          std::any_of(sets.begin(), sets.end(), [&](const Set& c) { return subset(c, ab); });
      if (!refined) throw MeasureError(Kind::precondition, "the family is not filtered");
    }
  }
}

IntersectionCheck tabular_intersections(const TabularMeasure& nu, std::span<const PointSet> sets,
                                        const std::vector<PointSet>& allowed) {
  auto member = [&](PointSet s) { return std::binary_search(allowed.begin(), allowed.end(), s); };
  require_filtered(
      sets, [](PointSet a, PointSet b) { return a & b; },
      [](PointSet a, PointSet b) { return is_subset(a, b); });
  PointSet meet = nu.family().universe();
  ElementSet values = 0;
  for (PointSet s : sets) {
    if (!member(s)) throw MeasureError(Kind::precondition, format_point_set(s) + " is not eligible");
    meet &= s;
    values |= bit(extend_star(nu, s));
  }
  if (!member(meet)) {
    throw MeasureError(Kind::precondition, "the intersection " + format_point_set(meet) + " is not eligible");
  }
  IntersectionCheck out;
  out.meet_of_values = infimum_or_throw(nu.lattice(), values, "filtered family");
  out.value_of_intersection = extend_star(nu, meet);
  out.equal = out.meet_of_values == out.value_of_intersection;
  return out;
}

IntersectionCheck parametric_intersections(const ParametricMeasure& nu,
                                           std::span<const CodedSet> sets, bool finite_only) {
  require_filtered(
      sets, [](const CodedSet& a, const CodedSet& b) { return a & b; },
      [](const CodedSet& a, const CodedSet& b) { return a.subset_of(b); });
  CodedSet meet = CodedSet::everything();
  Element acc = 0;
  bool first = true;
  const Lattice& l = nu.lattice();
  for (const CodedSet& s : sets) {
    if (finite_only && !in_compact_closed(CofiniteAlgebra{}, s)) {
      throw MeasureError(Kind::precondition, s.to_string() + " is not eligible");
    }
    meet = meet & s;
    const Element v = extend_star(nu, s);
    acc = first ? v : l.meet(acc, v);
    first = false;
  }
  if (finite_only && !in_compact_closed(CofiniteAlgebra{}, meet)) {
    throw MeasureError(Kind::precondition, "the intersection " + meet.to_string() + " is not eligible");
  }
  IntersectionCheck out;
  out.meet_of_values = acc;
  out.value_of_intersection = extend_star(nu, meet);
  out.equal = out.meet_of_values == out.value_of_intersection;
  return out;
}

void require_tight_semilattice(const Lattice& l, bool tight) {
  if (!tight) throw MeasureError(Kind::precondition, "the measure is not tight");
  if (!l.is_lattice() || !l.is_domain()) {
    throw MeasureError(Kind::precondition, "values must form a continuous semilattice");
  }
}

}  // namespace

IntersectionCheck check_filtered_intersections_H(const TabularMeasure& nu,
                                                 std::span<const PointSet> sets) {
  return tabular_intersections(nu, sets, derive_families(nu.family()).compact_closed);
}

IntersectionCheck check_filtered_intersections_H(const ParametricMeasure& nu,
                                                 std::span<const CodedSet> sets) {
  return parametric_intersections(nu, sets, true);
}

IntersectionCheck check_filtered_intersections_F_tight(const TabularMeasure& nu,
                                                       std::span<const PointSet> sets) {
  require_tight_semilattice(nu.lattice(), is_tight(nu));
  return tabular_intersections(nu, sets, derive_families(nu.family()).closed_star);
}

IntersectionCheck check_filtered_intersections_F_tight(const ParametricMeasure& nu,
                                                       std::span<const CodedSet> sets) {
  require_tight_semilattice(nu.lattice(), is_tight(nu));
  return parametric_intersections(nu, sets, false);
}

// ---------------------------------------------------------------------------
// Pointwise algebra

TabularMeasure join(const TabularMeasure& nu, const TabularMeasure& tau) {
  require_same_model(nu, tau);
  std::vector<Element> values;
  for (std::size_t i = 0; i < nu.values().size(); ++i)
    values.push_back(nu.lattice().join(nu.at(i), tau.at(i)));
  return TabularMeasure(nu.lattice_ptr(), nu.family_ptr(), std::move(values));
}

ParametricMeasure join(const ParametricMeasure& nu, const ParametricMeasure& tau) {
  require_same_model(nu, tau);
  const Lattice& l = nu.lattice();
  std::map<Point, Element> exceptions;
  for (Point x : merge_support(nu.support(), tau.support()))
    exceptions[x] = l.join(nu.level(x), tau.level(x));
  return ParametricMeasure(nu.lattice_ptr(), std::move(exceptions),
                           l.join(nu.default_level(), tau.default_level()),
                           l.join(nu.residual(), tau.residual()));
}

std::vector<CodedSet> comparison_sets(const ParametricMeasure& nu, const ParametricMeasure& tau) {
  return representative_sets(merge_support(nu.support(), tau.support()));
}

bool pointwise_leq(const TabularMeasure& nu, const TabularMeasure& tau) {
  require_same_model(nu, tau);
  for (std::size_t i = 0; i < nu.values().size(); ++i)
    if (!nu.lattice().leq(nu.at(i), tau.at(i))) return false;
  return true;
}

bool pointwise_leq(const ParametricMeasure& nu, const ParametricMeasure& tau) {
  require_same_model(nu, tau);
  for (const CodedSet& g : comparison_sets(nu, tau))
    if (!nu.lattice().leq(nu(g), tau(g))) return false;
  return true;
}

bool same_values(const TabularMeasure& nu, const TabularMeasure& tau) {
  require_same_model(nu, tau);
  return nu.values() == tau.values();
}

bool same_values(const ParametricMeasure& nu, const ParametricMeasure& tau) {
  return !first_difference(nu, tau).has_value();
}

bool is_zero(const TabularMeasure& nu) {
  return std::all_of(nu.values().begin(), nu.values().end(),
                     [&](Element v) { return v == nu.lattice().bottom(); });
}

bool is_zero(const ParametricMeasure& nu) {
  return same_values(nu, ParametricMeasure::zero(nu.lattice_ptr()));
}

std::optional<std::string> first_difference(const TabularMeasure& nu, const TabularMeasure& tau) {
  require_same_model(nu, tau);
  for (std::size_t i = 0; i < nu.values().size(); ++i) {
    if (nu.at(i) != tau.at(i)) return format_point_set(nu.family().member(i));
  }
  return std::nullopt;
}

std::optional<std::string> first_difference(const ParametricMeasure& nu,
                                            const ParametricMeasure& tau) {
  require_same_model(nu, tau);
  for (const CodedSet& g : comparison_sets(nu, tau))
    if (nu(g) != tau(g)) return g.to_string();
  return std::nullopt;
}

}  // namespace maxitive
