#pragma once

// Instance generators for the exhaustive and randomised suites.

#include <cstdint>
#include <random>
#include <vector>

#include "maxitive/measures.hpp"

namespace maxitive {

using Rng = std::mt19937_64;

/// Uniform draw from [0, bound) by reduction modulo `bound`; the stream is
/// fixed by the engine alone, unlike the standard distributions.
std::uint64_t draw(Rng& rng, std::uint64_t bound);

/// Every paving on `points` points with at most `max_members` members.
std::vector<FamilyPtr> all_pavings(std::size_t points, std::size_t max_members);

/// Chains 2..max_size and Boolean lattices with at most max_size elements.
std::vector<LatticePtr> frame_catalog(std::size_t max_size);

/// A random poset with bottom element 0 on `size` elements; each pair i < j
/// is related with probability about one third before transitive closure.
Lattice random_poset(Rng& rng, std::size_t size);

/// Union closure of `generators` random subsets plus the empty set and the
/// universe, repaired towards a paving by adding intersections of the members
/// around each point. Retries with fresh subsets up to `attempts` times, then
/// falls back to the power set.
SetFamily random_paving(Rng& rng, std::size_t points, std::size_t generators,
                        int attempts = 16);

/// Exceptions at up to `max_exceptions` distinct points below `point_bound`,
/// with every level drawn from the lattice.
ParametricMeasure random_parametric(Rng& rng, const LatticePtr& lattice, Point point_bound = 4,
                                    std::size_t max_exceptions = 3);

/// Tight parametric measure: residual and default at the bottom.
ParametricMeasure random_tight_parametric(Rng& rng, const LatticePtr& lattice,
                                          Point point_bound = 4, std::size_t max_exceptions = 3);

/// A maxitive measure built from a random point density; values are joins,
/// so the lattice must have binary joins.
TabularMeasure random_tabular(Rng& rng, const LatticePtr& lattice, const FamilyPtr& family);

}  // namespace maxitive
