#include "maxitive/generators.hpp"

#include <algorithm>
#include <set>

namespace maxitive {

std::uint64_t draw(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("draw bound must be positive");
  return rng() % bound;
}

std::vector<FamilyPtr> all_pavings(std::size_t points, std::size_t max_members) {
  if (points > 4) throw std::invalid_argument("exhaustive paving enumeration supports at most 4 points");
  const std::uint32_t universe = (std::uint32_t{1} << points) - 1;
  std::vector<PointSet> nonempty;
  for (PointSet s = 1; s <= universe; ++s) nonempty.push_back(s);

  std::vector<FamilyPtr> out;
  for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << nonempty.size()); ++choice) {
    if (static_cast<std::size_t>(std::popcount(choice)) + 1 > max_members) continue;
    std::vector<PointSet> sets{0};
    for_each_bit(choice, [&](Element i) { sets.push_back(nonempty[i]); });
    try {
      out.push_back(std::make_shared<const SetFamily>(SetFamily::paving(points, std::move(sets))));
    } catch (const SpaceError&) {
    }
  }
  return out;
}

std::vector<LatticePtr> frame_catalog(std::size_t max_size) {
  std::vector<LatticePtr> out;
  for (std::size_t n = 2; n <= max_size; ++n)
    out.push_back(std::make_shared<const Lattice>(Lattice::chain(n)));
  for (std::size_t atoms = 2; (std::size_t{1} << atoms) <= max_size; ++atoms)
    out.push_back(std::make_shared<const Lattice>(Lattice::boolean(atoms)));
  return out;
}

Lattice random_poset(Rng& rng, std::size_t size) {
  std::vector<std::pair<Element, Element>> pairs;
  for (Element j = 1; j < size; ++j) {
    pairs.emplace_back(0, j);
    for (Element i = 1; i < j; ++i)
      if (draw(rng, 3) == 0) pairs.emplace_back(i, j);
  }
  return Lattice::from_pairs(size, pairs);
}

namespace {

std::set<PointSet> union_closure(std::set<PointSet> sets) {
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<PointSet> snapshot(sets.begin(), sets.end());
    for (PointSet a : snapshot)
      for (PointSet b : snapshot)
        grew |= sets.insert(a | b).second;
  }
  return sets;
}

}  // namespace

SetFamily random_paving(Rng& rng, std::size_t points, std::size_t generators, int attempts) {
  const PointSet universe = static_cast<PointSet>((std::uint64_t{1} << points) - 1);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::set<PointSet> sets{0, universe};
    for (std::size_t i = 0; i < generators; ++i)
      sets.insert(static_cast<PointSet>(draw(rng, universe) + 1));
    sets = union_closure(std::move(sets));
    for (std::size_t round = 0; round < 4 * points; ++round) {
      bool repaired = false;
      for (Point x = 0; x < points; ++x) {
        PointSet meet = universe;
        for (PointSet s : sets)
          if ((s >> x) & 1U) meet &= s;
        repaired |= sets.insert(meet).second;
      }
      if (!repaired) break;
      sets = union_closure(std::move(sets));
    }
    try {
      return SetFamily::paving(points, std::vector<PointSet>(sets.begin(), sets.end()));
    } catch (const SpaceError&) {
    }
  }
  return SetFamily::power_set(points);
}

ParametricMeasure random_parametric(Rng& rng, const LatticePtr& lattice, Point point_bound,
                                    std::size_t max_exceptions) {
  const std::size_t count = draw(rng, max_exceptions + 1);
  std::map<Point, Element> exceptions;
  for (std::size_t i = 0; i < count; ++i) {
    const auto x = static_cast<Point>(draw(rng, point_bound));
    exceptions[x] = static_cast<Element>(draw(rng, lattice->size()));
  }
  const auto default_level = static_cast<Element>(draw(rng, lattice->size()));
  const auto residual = static_cast<Element>(draw(rng, lattice->size()));
  return ParametricMeasure(lattice, std::move(exceptions), default_level, residual);
}

ParametricMeasure random_tight_parametric(Rng& rng, const LatticePtr& lattice, Point point_bound,
                                          std::size_t max_exceptions) {
  const ParametricMeasure base = random_parametric(rng, lattice, point_bound, max_exceptions);
  return ParametricMeasure(lattice, base.exceptions(), lattice->bottom(), lattice->bottom());
}

TabularMeasure random_tabular(Rng& rng, const LatticePtr& lattice, const FamilyPtr& family) {
  std::vector<Element> density(family->points());
  for (Element& c : density) c = static_cast<Element>(draw(rng, lattice->size()));
  return TabularMeasure::from_function(lattice, family, [&](PointSet g) {
    Element acc = lattice->bottom();
    for_each_bit(g, [&](Element x) { acc = lattice->join(acc, density[x]); });
    return acc;
  });
}

}  // namespace maxitive
