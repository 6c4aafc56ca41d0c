#pragma once

// Shared fixtures for the test binaries.

#include <functional>
#include <memory>
#include <vector>

#include "maxitive/generators.hpp"
#include "maxitive/oracle.hpp"

namespace maxitive::testing {

inline LatticePtr share(Lattice l) { return std::make_shared<const Lattice>(std::move(l)); }
inline FamilyPtr share(SetFamily f) { return std::make_shared<const SetFamily>(std::move(f)); }

inline LatticePtr chain(std::size_t n) { return share(Lattice::chain(n)); }
inline FamilyPtr power_set(std::size_t n) { return share(SetFamily::power_set(n)); }

inline PointSet set_of(std::initializer_list<Point> points) {
  PointSet s = 0;
  for (Point x : points) s |= PointSet{1} << x;
  return s;
}

/// Pavings on 1 to 3 points with at most 8 members.
inline const std::vector<FamilyPtr>& small_pavings() {
  static const std::vector<FamilyPtr> pavings = [] {
    std::vector<FamilyPtr> out;
    for (std::size_t n = 1; n <= 3; ++n) {
      auto some = all_pavings(n, 8);
      out.insert(out.end(), some.begin(), some.end());
    }
    return out;
  }();
  return pavings;
}

/// Chains with 2 to 4 elements and the four-element Boolean lattice.
inline const std::vector<LatticePtr>& small_frames() {
  static const std::vector<LatticePtr> frames = frame_catalog(4);
  return frames;
}

struct CorpusEntry {
  FamilyPtr family;
  LatticePtr lattice;
  std::vector<TabularMeasure> measures;
};

/// Every maxitive measure on every small paving into every small frame.
inline const std::vector<CorpusEntry>& exhaustive_corpus() {
  static const std::vector<CorpusEntry> corpus = [] {
    std::vector<CorpusEntry> out;
    for (const FamilyPtr& family : small_pavings())
      for (const LatticePtr& lattice : small_frames())
        out.push_back({family, lattice, enumerate_maxitive_measures(family, lattice)});
    return out;
  }();
  return corpus;
}

inline void for_each_corpus_measure(const std::function<void(const TabularMeasure&)>& f) {
  for (const CorpusEntry& entry : exhaustive_corpus())
    for (const TabularMeasure& nu : entry.measures) f(nu);
}

/// Frames used for random parametric measures.
inline const std::vector<LatticePtr>& parametric_frames() {
  static const std::vector<LatticePtr> frames = [] {
    std::vector<LatticePtr> out;
    for (std::size_t n = 2; n <= 5; ++n) out.push_back(chain(n));
    out.push_back(share(Lattice::boolean(2)));
    return out;
  }();
  return frames;
}

inline ParametricMeasure random_measure(Rng& rng) {
  const auto& frames = parametric_frames();
  return random_parametric(rng, frames[draw(rng, frames.size())]);
}

}  // namespace maxitive::testing
