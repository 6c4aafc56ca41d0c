#include "doctest.h"
#include "maxitive/oracle.hpp"
#include "support.hpp"

using namespace maxitive;
using namespace maxitive::testing;

namespace {

ParametricMeasure parametric(const LatticePtr& l, std::map<Point, Element> exceptions,
                             Element default_level, Element residual) {
  return ParametricMeasure(l, std::move(exceptions), default_level, residual);
}

// Counts tables that pass the literal check by running over all of them.
std::size_t brute_count(const FamilyPtr& family, const LatticePtr& lattice) {
  std::vector<Element> values(family->size(), 0);
  std::size_t count = 0;
  while (true) {
    count += is_maxitive_by_definition(TabularMeasure(lattice, family, values));
    std::size_t i = 0;
    while (i < values.size() && ++values[i] == lattice->size()) values[i++] = 0;
    if (i == values.size()) return count;
  }
}

}  // namespace

TEST_CASE("the literal maxitivity check") {
  const auto l = chain(3);
  const auto f = power_set(2);
  CHECK(is_maxitive_by_definition(TabularMeasure(l, f, {0, 2, 1, 2})));
  CHECK_FALSE(is_maxitive_by_definition(TabularMeasure(l, f, {0, 1, 1, 2})));
  CHECK_FALSE(is_maxitive_by_definition(TabularMeasure(l, f, {1, 1, 1, 1})));
  // No join of a and b in the bowtie, so {0} and {1} cannot carry them.
  const auto bt = share(Lattice::from_pairs(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}}));
  CHECK_FALSE(is_maxitive_by_definition(TabularMeasure(bt, f, {0, 1, 2, 3})));
  CHECK(is_maxitive_by_definition(TabularMeasure(bt, f, {0, 1, 3, 3})));
}

TEST_CASE("enumeration counts") {
  const auto c2 = chain(2);
  CHECK(enumerate_maxitive_measures(share(SetFamily::paving(1, {0, 1})), c2).size() == 2);
  CHECK(enumerate_maxitive_measures(share(SetFamily::prepaving(0, {0})), c2).size() == 1);
  // On a power set a measure is fixed by its singletons.
  CHECK(enumerate_maxitive_measures(power_set(2), c2).size() == 4);
  CHECK(enumerate_maxitive_measures(power_set(3), chain(3)).size() == 27);
  CHECK(enumerate_maxitive_measures(power_set(2), share(Lattice::boolean(2))).size() == 16);
}

TEST_CASE("enumeration agrees with a scan over all tables") {
  for (const FamilyPtr& family : small_pavings()) {
    for (const LatticePtr& lattice : {chain(2), chain(3), share(Lattice::boolean(2))}) {
      if (std::pow(lattice->size(), family->size()) > 70000) continue;
      const auto all = enumerate_maxitive_measures(family, lattice);
      CHECK(all.size() == brute_count(family, lattice));
      for (const TabularMeasure& nu : all) CHECK(is_maxitive_by_definition(nu));
    }
  }
}

TEST_CASE("measures on a power set all have densities") {
  for (const TabularMeasure& nu : enumerate_maxitive_measures(power_set(2), chain(3)))
    CHECK(has_density(nu).verdict());
}

TEST_CASE("fixed values restrict the enumeration") {
  const auto f = power_set(2);
  const PartialAssignment fixed{std::nullopt, Element{2}, std::nullopt, std::nullopt};
  const auto some = enumerate_maxitive_measures(f, chain(3), {}, fixed);
  CHECK(some.size() == 3);
  for (const TabularMeasure& nu : some) {
    CHECK(nu.at(1) == 2);
    CHECK(nu.at(3) == 2);
  }
  const PartialAssignment impossible{Element{1}, std::nullopt, std::nullopt, std::nullopt};
  CHECK(enumerate_maxitive_measures(f, chain(3), {}, impossible).empty());
}

TEST_CASE("budgets") {
  EnumerationBudget small;
  small.max_paving = 3;
  CHECK_THROWS_AS(enumerate_maxitive_measures(power_set(2), chain(2), small), BudgetExceeded);
  small = {};
  small.max_lattice = 2;
  CHECK_THROWS_AS(enumerate_maxitive_measures(power_set(1), chain(3), small), BudgetExceeded);
  small = {};
  small.max_points = 1;
  CHECK_THROWS_AS(enumerate_maxitive_measures(power_set(2), chain(2), small), BudgetExceeded);
  small = {};
  small.max_window = 0;
  CHECK_THROWS_AS(small.validate(), std::invalid_argument);
  CHECK_NOTHROW(EnumerationBudget{}.validate());
}

TEST_CASE("the maximal extension dominates every extension") {
  for (const CorpusEntry& entry : exhaustive_corpus()) {
    if (entry.family->points() > 2) continue;
    for (const TabularMeasure& nu : entry.measures) {
      const TabularMeasure star = extend_to_estar(nu);
      const auto extensions = enumerate_extensions(nu);
      CHECK(std::find(extensions.begin(), extensions.end(), star) != extensions.end());
      for (const TabularMeasure& mu : extensions) CHECK(pointwise_leq(mu, star));
    }
  }
}

TEST_CASE("window examples") {
  const auto infinite = parametric(chain(2), {}, 0, 1);
  CHECK(WindowOracle(infinite, 8).tightness_meet() == 1);
  CHECK(WindowOracle(infinite, 12).tightness_meet() == 1);
  CHECK(window_tightness(infinite, 8) == 1);
  CHECK_FALSE(window_completely_maxitive(infinite, 8));

  const auto nu = parametric(chain(3), {{0, 2}}, 0, 1);
  CHECK(window_evaluate(nu, WindowQuery::singular, CodedSet::everything(), 8) == 1);
  CHECK(window_evaluate(nu, WindowQuery::regular, CodedSet::everything(), 8) == 2);
  CHECK(window_evaluate(nu, WindowQuery::residual, CodedSet::cofinite({0}), 8) == 1);
  CHECK(window_evaluate(nu, WindowQuery::extension, CodedSet::singleton(3), 8) == 0);
  CHECK(default_window(nu) == 8);
  CHECK(default_window(parametric(chain(2), {{5, 1}}, 0, 0)) == 13);
}

TEST_CASE("window arguments") {
  const auto nu = parametric(chain(2), {{9, 1}}, 0, 0);
  CHECK_THROWS_AS(WindowOracle(nu, 5), std::invalid_argument);
  CHECK_THROWS_AS(WindowOracle(nu, WindowOracle::kMaxWindow + 1), std::invalid_argument);
  const WindowOracle oracle(nu, 12);
  CHECK_THROWS_AS(oracle.regular(CodedSet::singleton(15)), std::invalid_argument);
}

TEST_CASE("closed forms agree with the window oracle") {
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const ParametricMeasure nu = random_measure(rng);
    const StableWindow window(nu, default_window(nu));
    const ParametricMeasure reg = regular_part(nu);
    const ParametricMeasure res = residual_part(nu);
    const ParametricMeasure sing = singular_part(nu);
    for (const CodedSet& g : representative_sets(nu.support())) {
      CHECK(extend_star(nu, g) == window.evaluate(WindowQuery::extension, g));
      CHECK(reg(g) == window.evaluate(WindowQuery::regular, g));
      CHECK(res(g) == window.evaluate(WindowQuery::residual, g));
      CHECK(sing(g) == window.evaluate(WindowQuery::singular, g));
    }
    CHECK(is_tight(nu) == (window.tightness_meet() == nu.lattice().bottom()));
    CHECK(has_density(nu).completely_maxitive == window.completely_maxitive());
  }
}

TEST_CASE("extremality on the finite corpus") {
  for (const CorpusEntry& entry : exhaustive_corpus()) {
    if (entry.family->points() > 2) continue;
    const bool boolean = is_boolean_algebra(*entry.family);
    for (const TabularMeasure& nu : entry.measures) {
      for (Part part : {Part::regular, Part::residual, Part::singular}) {
        if (part == Part::singular && !boolean) continue;
        const ExtremalityResult r = verify_extremality(nu, part, entry.measures);
        INFO(to_string(part) << ": " << r.detail);
        CHECK(r.ok);
        CHECK(r.candidates > 0);
      }
    }
  }
}

TEST_CASE("singular extremality needs a Boolean algebra") {
  const auto nu = TabularMeasure::zero(chain(2), share(SetFamily::paving(2, {0, 1, 3})));
  try {
    verify_extremality(nu, Part::singular);
    FAIL("expected an error");
  } catch (const MeasureError& e) {
    CHECK(e.kind() == MeasureError::Kind::not_boolean_algebra);
  }
}
