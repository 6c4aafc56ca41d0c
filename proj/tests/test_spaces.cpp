#include <algorithm>

#include "doctest.h"
#include "maxitive/generators.hpp"
#include "maxitive/spaces.hpp"
#include "support.hpp"

using namespace maxitive;
using maxitive::testing::set_of;

namespace {

template <class F>
SpaceError::Kind error_kind(F&& f) {
  try {
    f();
  } catch (const SpaceError& e) {
    return e.kind();
  }
  FAIL("expected a SpaceError");
  return SpaceError::Kind::missing_empty_set;
}

bool contains(const std::vector<PointSet>& v, PointSet s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

CodedSet random_coded(Rng& rng) {
  std::vector<Point> pts;
  const std::size_t k = draw(rng, 4);
  for (std::size_t i = 0; i < k; ++i) pts.push_back(static_cast<Point>(draw(rng, 8)));
  return draw(rng, 2) ? CodedSet::finite(pts) : CodedSet::cofinite(pts);
}

}  // namespace

TEST_CASE("prepaving validation") {
  const SetFamily f = SetFamily::prepaving(2, {0, 1, 2, 3});
  CHECK(f.size() == 4);
  CHECK(error_kind([] { SetFamily::prepaving(2, {0, 1, 2}); }) == SpaceError::Kind::union_escape);
  CHECK(error_kind([] { SetFamily::prepaving(2, {1}); }) == SpaceError::Kind::missing_empty_set);
  CHECK(error_kind([] { SetFamily::prepaving(2, {0, 4}); }) == SpaceError::Kind::point_out_of_range);
}

TEST_CASE("members are canonical") {
  const SetFamily f = SetFamily::prepaving(2, {3, 0, 1, 3});
  CHECK(f.members() == std::vector<PointSet>{0, 1, 3});
  CHECK(f.index_of(3) == std::optional<std::size_t>(2));
  CHECK_FALSE(f.contains(2));
}

TEST_CASE("paving validation") {
  CHECK(error_kind([] { SetFamily::paving(3, {0, set_of({0}), set_of({1}), set_of({0, 1})}); }) ==
        SpaceError::Kind::uncovered_point);
  CHECK(SetFamily::paving(3, {0, 1, 2, 3, 4, 5, 6, 7}).is_paving());
  CHECK(error_kind([] {
          SetFamily::paving(3, {0, set_of({0, 1}), set_of({1, 2}), set_of({0, 1, 2})});
        }) == SpaceError::Kind::point_filter_failure);
  // Still a prepaving, just not a paving.
  CHECK_FALSE(SetFamily::prepaving(3, {0, set_of({0, 1}), set_of({1, 2}), set_of({0, 1, 2})}).is_paving());
}

TEST_CASE("Boolean algebras") {
  CHECK(is_boolean_algebra(SetFamily::power_set(3)));
  CHECK_FALSE(is_boolean_algebra(SetFamily::paving(2, {0, set_of({0}), set_of({0, 1})})));
  CHECK(is_boolean_algebra(CofiniteAlgebra{}));
  // The partition algebra {empty, {0,1}, {2}, all}.
  CHECK(is_boolean_algebra(SetFamily::paving(3, {0, set_of({0, 1}), set_of({2}), 7})));
}

TEST_CASE("generated topology") {
  const SetFamily f = SetFamily::prepaving(3, {0, set_of({0, 1}), set_of({1, 2}), 7});
  CHECK(generated_topology(f) == f.members());
  const SetFamily p = SetFamily::power_set(3);
  CHECK(generated_topology(p) == p.members());
  CHECK(generated_topology(SetFamily::prepaving(0, {0})) == std::vector<PointSet>{0});
  // The universe is added when unions do not reach it.
  CHECK(generated_topology(SetFamily::prepaving(2, {0, 1})) == std::vector<PointSet>{0, 1, 3});
}

TEST_CASE("every finite paving is a topology") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const FamilyPtr& f : all_pavings(n, 16)) {
      CHECK(is_topology(*f));
      CHECK(generated_topology(*f) == f->members());
    }
  }
}

TEST_CASE("compactness") {
  const SetFamily f = SetFamily::power_set(4);
  for (PointSet a = 0; a < 16; ++a) CHECK(is_compact(f, a));
  for (const FamilyPtr& p : all_pavings(3, 8))
    for (PointSet a = 0; a < 8; ++a) CHECK(is_compact(*p, a));
  CHECK(is_compact(CofiniteAlgebra{}, CodedSet::finite({1, 5, 9})));
  CHECK_FALSE(is_compact(CofiniteAlgebra{}, CodedSet::cofinite({0})));
}

TEST_CASE("the estar collection") {
  CHECK(estar_contains(SetFamily::power_set(3), set_of({0, 2})));
  CHECK(estar_contains(CofiniteAlgebra{}, CodedSet::cofinite({3})));
  const SetFamily f = SetFamily::paving(4, {0, set_of({0, 1}), set_of({2, 3}), 15});
  CHECK(estar_contains(f, set_of({1, 2})));
  // Supersets {0,1} and {1,2} of {1} have no common refinement above {1}.
  const SetFamily g = SetFamily::prepaving(3, {0, set_of({0, 1}), set_of({1, 2}), 7});
  CHECK_FALSE(estar_contains(g, set_of({1})));
  // Nothing contains a point outside every member.
  CHECK_FALSE(estar_contains(SetFamily::prepaving(2, {0, 1}), set_of({1})));
}

TEST_CASE("every subset of a paving's ground set is in estar") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const FamilyPtr& f : all_pavings(n, 16)) {
      const DerivedFamilies d = derive_families(*f);
      CHECK(d.estar.size() == (std::size_t{1} << n));
      for (PointSet k : d.compacts) CHECK(contains(d.estar, k));
    }
  }
}

TEST_CASE("derived families") {
  SUBCASE("power set") {
    const DerivedFamilies d = derive_families(SetFamily::power_set(2));
    CHECK(d.closed_star == std::vector<PointSet>{0, 1, 2, 3});
    CHECK(d.compact_closed == std::vector<PointSet>{0, 1, 2, 3});
  }
  SUBCASE("a chain of sets") {
    const DerivedFamilies d = derive_families(SetFamily::paving(2, {0, set_of({0}), set_of({0, 1})}));
    CHECK(d.closed_star == std::vector<PointSet>{0, set_of({1}), set_of({0, 1})});
  }
  SUBCASE("inclusions") {
    for (const FamilyPtr& f : all_pavings(3, 8)) {
      const DerivedFamilies d = derive_families(*f);
      for (PointSet g : f->members()) CHECK(contains(d.topology, g));
      for (PointSet h : d.compact_closed) {
        CHECK(contains(d.compacts, h));
        CHECK(contains(d.closed_star, h));
      }
    }
  }
  SUBCASE("cofinite model") {
    CHECK(in_compact_closed(CofiniteAlgebra{}, CodedSet::finite({2, 4})));
    CHECK_FALSE(in_compact_closed(CofiniteAlgebra{}, CodedSet::everything()));
    CHECK(in_closed_star(CofiniteAlgebra{}, CodedSet::everything()));
  }
}

TEST_CASE("coded sets are canonical") {
  const CodedSet a = CodedSet::finite({3, 1, 3});
  CHECK(a.exceptions() == std::vector<Point>{1, 3});
  CHECK(a.to_string() == "{1,3}");
  CHECK(CodedSet::cofinite({2}).to_string() == "N\\{2}");
  CHECK(CodedSet::empty().is_empty());
  CHECK(CodedSet::everything().contains(1000));
  CHECK(CodedSet::everything().complement() == CodedSet::empty());
}

TEST_CASE("coded set algebra") {
  const CodedSet a = CodedSet::finite({1, 2});
  const CodedSet b = CodedSet::cofinite({2, 3});
  CHECK((a | b) == CodedSet::cofinite({3}));
  CHECK((a & b) == CodedSet::finite({1}));
  CHECK((b - a) == CodedSet::cofinite({1, 2, 3}));
  CHECK((a - b) == CodedSet::finite({2}));
  CHECK(a.subset_of(CodedSet::cofinite({0})));
  CHECK_FALSE(b.subset_of(a));
}

TEST_CASE("coded set laws on random operands") {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const CodedSet a = random_coded(rng), b = random_coded(rng), c = random_coded(rng);
    CHECK((a | b).complement() == (a.complement() & b.complement()));
    CHECK((a & b).complement() == (a.complement() | b.complement()));
    CHECK(a.complement().complement() == a);
    CHECK((a - b) == (a & b.complement()));
    CHECK(((a | b) | c) == (a | (b | c)));
    CHECK((a & (b | c)) == ((a & b) | (a & c)));
    for (Point x = 0; x < 10; ++x) {
      CHECK((a | b).contains(x) == (a.contains(x) || b.contains(x)));
      CHECK((a & b).contains(x) == (a.contains(x) && b.contains(x)));
    }
    CHECK((a & b).subset_of(a));
    CHECK(a.subset_of(a | b));
  }
}

TEST_CASE("finite compact-closed sets are stable under union and coded intersection") {
  Rng rng(9);
  for (int i = 0; i < 300; ++i) {
    CodedSet h1 = random_coded(rng), h2 = random_coded(rng), g = random_coded(rng);
    if (!h1.is_finite() || !h2.is_finite()) continue;
    CHECK(in_compact_closed(CofiniteAlgebra{}, h1 | h2));
    CHECK(in_compact_closed(CofiniteAlgebra{}, h1 & g));
  }
}

TEST_CASE("windows and representative sets") {
  CHECK(finite_sets_in_window(3).size() == 8);
  CHECK(coded_sets_in_window(3).size() == 16);
  CHECK(fresh_point({}) == 0);
  CHECK(fresh_point({4, 1}) == 5);

  const auto reps = representative_sets({1, 4});
  CHECK(reps.size() == 12);
  CHECK(std::find(reps.begin(), reps.end(), CodedSet::finite({1, 5})) != reps.end());
  CHECK(std::find(reps.begin(), reps.end(), CodedSet::cofinite({4})) != reps.end());

  const auto subs = representative_subsets(CodedSet::cofinite({1}), {1, 4});
  for (const CodedSet& h : subs) CHECK(h.subset_of(CodedSet::cofinite({1})));
  CHECK(subs.size() == 6);
  CHECK(representative_subsets(CodedSet::finite({1, 4}), {1, 4}).size() == 4);
  CHECK_THROWS(representative_subsets(CodedSet::finite({7}), {1}));
  CHECK(merge_support({3, 1}, {1, 2}) == std::vector<Point>{1, 2, 3});
}
