#include "maxitive/oracle.hpp"

#include <algorithm>
#include <bit>

namespace maxitive {

namespace {

ElementSet bit(Element x) { return ElementSet{1} << x; }

// a[m] = op over a[s] for s ranging over the submasks of m.
template <class T, class Op>
void fold_submasks(std::vector<T>& a, Point bits, Op op) {
  for (Point b = 0; b < bits; ++b)
    for (std::uint32_t m = 0; m < a.size(); ++m)
      if ((m >> b) & 1U) a[m] = op(a[m], a[m ^ (1U << b)]);
}

// a[m] = op over a[s] for s ranging over the supermasks of m.
template <class T, class Op>
void fold_supermasks(std::vector<T>& a, Point bits, Op op) {
  for (Point b = 0; b < bits; ++b)
    for (std::uint32_t m = 0; m < a.size(); ++m)
      if (!((m >> b) & 1U)) a[m] = op(a[m], a[m | (1U << b)]);
}

std::vector<Point> points_of(std::uint32_t mask) {
  std::vector<Point> out;
  for_each_bit(mask, [&](Element x) { out.push_back(x); });
  return out;
}

}  // namespace

void EnumerationBudget::validate() const {
  if (max_points == 0 || max_paving == 0 || max_lattice == 0 || max_window == 0 ||
      instance_cap == 0) {
    throw std::invalid_argument("every budget field must be positive");
  }
}

// ---------------------------------------------------------------------------

bool is_maxitive_by_definition(const TabularMeasure& nu) {
  const SetFamily& fam = nu.family();
  const Lattice& l = nu.lattice();
  const std::size_t m = fam.size();
  if (m > 24) throw BudgetExceeded("family too large for the literal maxitivity check");
  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << m); ++sub) {
    PointSet u = 0;
    ElementSet values = 0;
    for_each_bit(sub, [&](Element i) {
      u |= fam.member(i);
      values |= bit(nu.at(i));
    });
    auto index = fam.index_of(u);
    if (!index) continue;
    auto sup = l.supremum(values);
    if (!sup || *sup != nu.at(*index)) return false;
  }
  return true;
}

void for_each_maxitive_measure(const FamilyPtr& family, const LatticePtr& lattice,
                               const std::function<void(const TabularMeasure&)>& visit,
                               const EnumerationBudget& budget, const PartialAssignment& fixed) {
  budget.validate();
  if (family->points() > budget.max_points) throw BudgetExceeded("too many ground points");
  if (family->size() > budget.max_paving) throw BudgetExceeded("family too large");
  if (lattice->size() > budget.max_lattice) throw BudgetExceeded("value poset too large");
  if (!fixed.empty() && fixed.size() != family->size()) {
    throw std::invalid_argument("partial assignment must cover every member");
  }

  const Lattice& l = *lattice;
  const std::vector<PointSet>& members = family->members();
  const std::size_t m = members.size();
  std::vector<Element> values(m, 0);

  // Unions of two earlier members landing on member i.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> unions(m);
  std::vector<std::vector<std::size_t>> below(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (is_subset(members[j], members[i])) below[i].push_back(j);
      for (std::size_t k = 0; k < j; ++k)
        if ((members[j] | members[k]) == members[i]) unions[i].emplace_back(j, k);
    }
  }

  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (i == m) {
      TabularMeasure nu(lattice, family, values);
      if (is_maxitive_by_definition(nu)) visit(nu);
      return;
    }
    for (Element v = 0; v < l.size(); ++v) {
      if (!fixed.empty() && fixed[i] && *fixed[i] != v) continue;
      if (members[i] == 0 && v != l.bottom()) continue;
      const bool monotone = std::all_of(below[i].begin(), below[i].end(),
                                        [&](std::size_t j) { return l.leq(values[j], v); });
      if (!monotone) continue;
      const bool pairs = std::all_of(unions[i].begin(), unions[i].end(), [&](auto jk) {
        auto sup = l.try_join(values[jk.first], values[jk.second]);
        return sup && *sup == v;
      });
      if (!pairs) continue;
      values[i] = v;
      assign(i + 1);
    }
  };
  assign(0);
}

std::vector<TabularMeasure> enumerate_maxitive_measures(const FamilyPtr& family,
                                                        const LatticePtr& lattice,
                                                        const EnumerationBudget& budget,
                                                        const PartialAssignment& fixed) {
  std::vector<TabularMeasure> out;
  for_each_maxitive_measure(
      family, lattice, [&](const TabularMeasure& nu) { out.push_back(nu); }, budget, fixed);
  return out;
}

std::vector<TabularMeasure> enumerate_extensions(const TabularMeasure& nu,
                                                 const EnumerationBudget& budget) {
  const DerivedFamilies d = derive_families(nu.family());
  auto estar = std::make_shared<const SetFamily>(SetFamily::prepaving(nu.family().points(), d.estar));
  PartialAssignment fixed(estar->size());
  for (std::size_t i = 0; i < estar->size(); ++i) {
    if (auto index = nu.family().index_of(estar->member(i))) fixed[i] = nu.at(*index);
  }
  return enumerate_maxitive_measures(estar, nu.lattice_ptr(), budget, fixed);
}

// ---------------------------------------------------------------------------
// Window oracle

WindowOracle::WindowOracle(const ParametricMeasure& nu, Point window)
    : lattice_(&nu.lattice()), window_(window) {
  if (window == 0 || window > kMaxWindow) throw std::invalid_argument("window out of range");
  for (Point x : nu.support()) {
    if (x >= window) throw std::invalid_argument("exception point outside the window");
  }
  const Lattice& l = *lattice_;
  const Point wide = window + kTail;
  const std::uint32_t wide_size = std::uint32_t{1} << wide;
  const std::uint32_t size = std::uint32_t{1} << window;
  full_ = size - 1;
  const std::uint32_t tail = (wide_size - 1) & ~full_;

  // nu on finite sets and on cofinite sets containing [wide, infinity), by
  // finite unions of singletons and of that tail set.
  const Element beyond = nu(CodedSet::cofinite(points_of(wide_size - 1)));
  fin_.assign(wide_size, 0);
  cof_.assign(wide_size, 0);
  fin_[0] = nu(CodedSet::empty());
  std::vector<Element> single(wide);
  for (Point x = 0; x < wide; ++x) single[x] = nu(CodedSet::singleton(x));
  for (std::uint32_t m = 1; m < wide_size; ++m)
    fin_[m] = l.join(fin_[m & (m - 1)], single[static_cast<Point>(std::countr_zero(m))]);
  for (std::uint32_t m = 0; m < wide_size; ++m) cof_[m] = l.join(beyond, fin_[m]);
  for (std::uint32_t m = 0; m < wide_size; m += 97) {
    if (fin_[m] != nu(CodedSet::finite(points_of(m))) ||
        cof_[m] != nu(CodedSet::cofinite(points_of(~m & (wide_size - 1))))) {
      throw std::logic_error("measure is not maxitive on windowed sets");
    }
  }

  // Meets over windowed supersets.
  auto meet = [&](Element a, Element b) { return l.meet(a, b); };
  auto join = [&](Element a, Element b) { return l.join(a, b); };
  std::vector<Element> sup_cof = cof_;
  fold_supermasks(sup_cof, wide, meet);
  std::vector<Element> ext_fin = fin_;
  fold_supermasks(ext_fin, wide, meet);
  for (std::uint32_t m = 0; m < wide_size; ++m) ext_fin[m] = l.meet(ext_fin[m], sup_cof[m]);
  ext_fin_ = ext_fin;
  ext_cof_ = sup_cof;

  // Joins of nu* over finite subsets.
  reg_ = ext_fin;
  fold_submasks(reg_, wide, join);

  ok_fin_.assign(size, 0);
  ok_cof_.assign(size, 0);
  for (std::uint32_t h = 0; h < size; ++h) {
    for (Element t = 0; t < l.size(); ++t) {
      if (l.leq(fin_[h], l.join(reg_[h], t))) ok_fin_[h] |= bit(t);
      if (l.leq(cof_[h | tail], l.join(reg_[h | tail], t))) ok_cof_[h] |= bit(t);
    }
  }
  auto both = [](ElementSet a, ElementSet b) { return a & b; };
  fold_submasks(ok_fin_, window, both);
  fold_submasks(ok_cof_, window, both);

  sing_fin_.assign(fin_.begin(), fin_.begin() + size);
  sing_cof_.assign(size, 0);
  for (std::uint32_t g = 0; g < size; ++g) sing_cof_[g] = cof_[g | tail];
  fold_submasks(sing_fin_, window, meet);
  fold_submasks(sing_cof_, window, meet);
  tightness_ = sing_cof_[full_];

  for (std::uint32_t g = 0; g < size && completely_maxitive_; ++g) {
    Element acc = l.bottom();
    for_each_bit(g | tail, [&](Element x) { acc = l.join(acc, single[x]); });
    completely_maxitive_ = acc == cof_[g | tail];
  }
  tail_ = tail;
}

std::uint32_t WindowOracle::mask_of(const CodedSet& g) const {
  std::uint32_t m = 0;
  for (Point x : g.exceptions()) {
    if (x >= window_) throw std::invalid_argument("set " + g.to_string() + " leaves the window");
    m |= std::uint32_t{1} << x;
  }
  return g.is_finite() ? m : full_ & ~m;
}

Element WindowOracle::extension(const CodedSet& a) const {
  const std::uint32_t m = mask_of(a);
  return a.is_finite() ? ext_fin_[m] : ext_cof_[m | tail_];
}

Element WindowOracle::regular(const CodedSet& g) const {
  const std::uint32_t m = mask_of(g);
  return reg_[g.is_finite() ? m : m | tail_];
}

Element WindowOracle::residual(const CodedSet& g) const {
  const std::uint32_t m = mask_of(g);
  ElementSet good = ok_fin_[m];
  if (!g.is_finite()) good &= ok_cof_[m];
  auto inf = good == 0 ? std::nullopt : lattice_->infimum(good);
  if (!inf) throw std::logic_error("admissible residual levels have no infimum");
  return *inf;
}

Element WindowOracle::singular(const CodedSet& g) const {
  const std::uint32_t m = mask_of(g);
  return g.is_finite() ? sing_fin_[m] : sing_cof_[m];
}

Element WindowOracle::tightness_meet() const { return tightness_; }

bool WindowOracle::completely_maxitive() const { return completely_maxitive_; }

Element WindowOracle::evaluate(WindowQuery query, const CodedSet& g) const {
  switch (query) {
    case WindowQuery::extension: return extension(g);
    case WindowQuery::regular: return regular(g);
    case WindowQuery::residual: return residual(g);
    case WindowQuery::singular: return singular(g);
  }
  throw std::invalid_argument("unknown window query");
}

Point default_window(const ParametricMeasure& nu) {
  const std::vector<Point> support = nu.support();
  return support.empty() ? 8 : support.back() + 8;
}

namespace {

// Meets can only drop as the window grows, joins can only rise.
void check_pair(const Lattice& l, Element small, Element large, bool meet_like,
                const std::string& what) {
  const bool monotone = meet_like ? l.leq(large, small) : l.leq(small, large);
  if (!monotone) throw StabilizationFailure(what + " is not monotone in the window");
  if (small != large) throw StabilizationFailure(what + " did not stabilise");
}

}  // namespace

StableWindow::StableWindow(const ParametricMeasure& nu, Point window)
    : small_(nu, window), large_(nu, window + kStep), lattice_(&nu.lattice()) {}

Element StableWindow::evaluate(WindowQuery query, const CodedSet& g) const {
  const Element a = small_.evaluate(query, g);
  const Element b = large_.evaluate(query, g);
  const bool meet_like = query == WindowQuery::extension || query == WindowQuery::singular;
  check_pair(*lattice_, a, b, meet_like, "window query on " + g.to_string());
  return a;
}

Element StableWindow::tightness_meet() const {
  const Element a = small_.tightness_meet();
  check_pair(*lattice_, a, large_.tightness_meet(), true, "tightness meet");
  return a;
}

bool StableWindow::completely_maxitive() const {
  const bool a = small_.completely_maxitive();
  if (a != large_.completely_maxitive()) {
    throw StabilizationFailure("complete maxitivity did not stabilise");
  }
  return a;
}

Element window_evaluate(const ParametricMeasure& nu, WindowQuery query, const CodedSet& g,
                        Point window) {
  return StableWindow(nu, window).evaluate(query, g);
}

Element window_tightness(const ParametricMeasure& nu, Point window) {
  return StableWindow(nu, window).tightness_meet();
}

bool window_completely_maxitive(const ParametricMeasure& nu, Point window) {
  return StableWindow(nu, window).completely_maxitive();
}

// ---------------------------------------------------------------------------
// Extremality

ExtremalityResult verify_extremality(const TabularMeasure& nu, Part part,
                                     std::span<const TabularMeasure> all_measures) {
  ExtremalityResult result;
  const TabularMeasure regular = regular_part(nu);
  auto fail = [&](const TabularMeasure& tau, std::string detail) {
    result.ok = false;
    result.counterexample = tau;
    result.detail = std::move(detail);
    return result;
  };

  switch (part) {
    case Part::residual: {
      const TabularMeasure residual = residual_part(nu);
      if (!is_maxitive_by_definition(residual)) return fail(residual, "residual part is not maxitive");
      for (const TabularMeasure& tau : all_measures) {
        if (!same_values(nu, join(regular, tau))) continue;
        ++result.candidates;
        if (!pointwise_leq(residual, tau)) return fail(tau, "a smaller complement exists");
      }
      break;
    }
    case Part::singular: {
      const TabularMeasure singular = singular_part(nu);
      if (!is_maxitive_by_definition(singular) || !is_singular(singular)) {
        return fail(singular, "singular part is not a singular maxitive measure");
      }
      for (const TabularMeasure& tau : all_measures) {
        if (!is_singular(tau) || !same_values(nu, join(regular, tau))) continue;
        ++result.candidates;
        if (!pointwise_leq(tau, singular)) return fail(tau, "a larger singular complement exists");
      }
      break;
    }
    case Part::regular: {
      for (const TabularMeasure& tau : all_measures) {
        if (!pointwise_leq(tau, nu) || !has_density(tau).verdict()) continue;
        ++result.candidates;
        if (!pointwise_leq(tau, regular)) return fail(tau, "a larger measure with a density exists");
      }
      break;
    }
  }
  return result;
}

ExtremalityResult verify_extremality(const TabularMeasure& nu, Part part,
                                     const EnumerationBudget& budget) {
  const std::vector<TabularMeasure> all =
      enumerate_maxitive_measures(nu.family_ptr(), nu.lattice_ptr(), budget);
  return verify_extremality(nu, part, all);
}

}  // namespace maxitive
