// Acceptance run: one PASS/FAIL line per criterion.
//
// usage: acceptance <maxitive binary> <exit-code script> <data directory>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace maxitive;
using namespace maxitive::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Pavings on 1 to 3 points with at most 8 members, valued in chains of 1 to
// 4 elements and the four-element Boolean lattice.
const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<LatticePtr> lattices{chain(1)};
    for (const LatticePtr& l : frame_catalog(4)) lattices.push_back(l);
    std::vector<CorpusEntry> out;
    for (const FamilyPtr& family : small_pavings())
      for (const LatticePtr& lattice : lattices)
        out.push_back({family, lattice, enumerate_maxitive_measures(family, lattice)});
    return out;
  }();
  return entries;
}

std::size_t corpus_size() {
  std::size_t n = 0;
  for (const CorpusEntry& e : corpus()) n += e.measures.size();
  return n;
}

std::vector<ParametricMeasure> random_parametrics(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  std::vector<ParametricMeasure> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_measure(rng));
  return out;
}

Outcome criterion1() {
  const auto start = Clock::now();
  std::vector<Lattice> posets{Lattice::chain(1), Lattice::chain(7), Lattice::boolean(2),
                              Lattice::diamond(), Lattice::pentagon(), Lattice::grid(2, 3)};
  Rng rng(101);
  while (posets.size() < 250) posets.push_back(random_poset(rng, 1 + draw(rng, 7)));
  std::size_t pairs = 0;
  std::size_t bad = 0;
  for (const Lattice& l : posets)
    for (Element y = 0; y < l.size(); ++y)
      for (Element x = 0; x < l.size(); ++x) {
        ++pairs;
        bad += l.way_above(y, x) != l.leq(x, y);
      }
  const double t = seconds_since(start);
  std::ostringstream s;
  s << posets.size() << " posets, " << pairs << " pairs, " << bad << " mismatches, " << t << " s";
  return {bad == 0 && t < 10.0, s.str()};
}

Outcome criterion2() {
  const auto start = Clock::now();
  std::size_t bad = 0;
  for (const CorpusEntry& e : corpus())
    for (const TabularMeasure& nu : e.measures) {
      const IdealFamily ideals = to_canonical_ideals(nu);
      if (!is_right_continuous(ideals).ok || !(from_ideals(ideals).measure == nu)) ++bad;
    }
  const double t = seconds_since(start);
  std::ostringstream s;
  s << corpus_size() << " measures, " << bad << " failures, " << t << " s";
  return {bad == 0 && t < 60.0, s.str()};
}

Outcome criterion3() {
  std::size_t extensions = 0;
  std::size_t bad = 0;
  for (const CorpusEntry& e : corpus())
    for (const TabularMeasure& nu : e.measures) {
      const TabularMeasure star = extend_to_estar(nu);
      const std::vector<TabularMeasure> all = enumerate_extensions(nu);
      extensions += all.size();
      bool found = false;
      for (const TabularMeasure& mu : all) {
        bad += !pointwise_leq(mu, star);
        found = found || mu == star;
      }
      bad += !found;
    }
  std::ostringstream s;
  s << corpus_size() << " measures, " << extensions << " extensions, " << bad << " violations";
  return {bad == 0, s.str()};
}

Outcome criterion4() {
  std::size_t bad = 0;
  std::size_t without_density = 0;
  for (const CorpusEntry& e : corpus())
    for (const TabularMeasure& nu : e.measures) {
      const DensityDiagnosis d = has_density(nu);
      bad += !d.agree();
      without_density += !d.verdict();
    }
  const auto random = random_parametrics(202, 1500);
  std::size_t with = 0;
  for (const ParametricMeasure& nu : random) {
    const DensityDiagnosis d = has_density(nu);
    bad += !d.agree();
    with += d.verdict();
  }
  std::ostringstream s;
  s << corpus_size() << " finite + " << random.size() << " parametric (" << with
    << " with a density), " << bad << " disagreements, " << without_density
    << " finite measures without a density";
  return {bad == 0 && without_density == 0, s.str()};
}

Outcome criterion5() {
  std::size_t sets = 0;
  std::size_t bad = 0;
  for (const CorpusEntry& e : corpus())
    for (const TabularMeasure& nu : e.measures) {
      const TabularMeasure reg = regular_part(nu);
      const TabularMeasure res = residual_part(nu);
      for (std::size_t i = 0; i < nu.family().size(); ++i) {
        ++sets;
        bad += nu.at(i) != nu.lattice().join(reg.at(i), res.at(i));
      }
    }
  for (const ParametricMeasure& nu : random_parametrics(303, 1500)) {
    const ParametricMeasure reg = regular_part(nu);
    const ParametricMeasure res = residual_part(nu);
    std::vector<CodedSet> probes = representative_sets(nu.support());
    for (const CodedSet& g : coded_sets_in_window(6)) probes.push_back(g);
    for (const CodedSet& g : probes) {
      ++sets;
      bad += nu(g) != nu.lattice().join(reg(g), res(g));
    }
  }
  std::ostringstream s;
  s << sets << " set evaluations, " << bad << " mismatches";
  return {bad == 0, s.str()};
}

Outcome criterion6() {
  const auto start = Clock::now();
  std::size_t measures = 0;
  std::size_t candidates = 0;
  std::size_t bad = 0;
  for (const CorpusEntry& e : corpus()) {
    if (!is_boolean_algebra(*e.family)) continue;
    for (const TabularMeasure& nu : e.measures) {
      ++measures;
      for (Part part : {Part::residual, Part::singular, Part::regular}) {
        const ExtremalityResult r = verify_extremality(nu, part, e.measures);
        candidates += r.candidates;
        bad += !r.ok;
      }
    }
  }
  const double t = seconds_since(start);
  std::ostringstream s;
  s << measures << " measures on Boolean algebras, " << candidates << " comparisons, " << bad
    << " counterexamples, " << t << " s";
  return {bad == 0 && t < 300.0, s.str()};
}

Outcome criterion7() {
  std::size_t checked = 0;
  std::size_t topology = 0;
  std::size_t bad = 0;
  auto tally = [&](const std::vector<RuleResult>& results, bool finite) {
    for (const RuleResult& r : results) {
      if (r.rule <= 8 && !r.applicable) ++bad;
      if (!r.applicable) continue;
      ++checked;
      if (finite && r.rule >= 9) ++topology;
      bad += !r.passed;
    }
  };
  Rng rng(404);
  for (int i = 0; i < 1200; ++i) {
    const ParametricMeasure nu = random_measure(rng);
    const ParametricMeasure tau = random_parametric(rng, nu.lattice_ptr());
    tally(check_calculus_rules(nu, tau), false);
  }
  for (const CorpusEntry& e : corpus()) {
    const bool is_top = is_topology(*e.family);
    for (const TabularMeasure& nu : e.measures)
      for (const TabularMeasure& tau : e.measures) {
        const auto results = check_calculus_rules(nu, tau);
        for (const RuleResult& r : results)
          if (r.rule >= 9 && r.applicable != is_top) ++bad;
        tally(results, true);
      }
  }
  std::ostringstream s;
  s << checked << " rule evaluations (" << topology << " topology rules), " << bad << " failures";
  return {bad == 0, s.str()};
}

Outcome criterion8() {
  std::size_t queries = 0;
  std::size_t bad = 0;
  std::size_t unstable = 0;
  for (const ParametricMeasure& nu : random_parametrics(505, 600)) {
    try {
      const StableWindow window(nu, default_window(nu));
      const ParametricMeasure reg = regular_part(nu);
      const ParametricMeasure res = residual_part(nu);
      const ParametricMeasure sing = singular_part(nu);
      for (const CodedSet& g : representative_sets(nu.support())) {
        queries += 4;
        bad += window.evaluate(WindowQuery::extension, g) != extend_star(nu, g);
        bad += window.evaluate(WindowQuery::regular, g) != reg(g);
        bad += window.evaluate(WindowQuery::residual, g) != res(g);
        bad += window.evaluate(WindowQuery::singular, g) != sing(g);
      }
      queries += 2;
      bad += (window.tightness_meet() == nu.lattice().bottom()) != is_tight(nu);
      bad += window.completely_maxitive() != has_density(nu).completely_maxitive;
    } catch (const StabilizationFailure&) {
      ++unstable;
    }
  }
  std::ostringstream s;
  s << "600 measures, " << queries << " queries at two windows, " << bad << " disagreements, "
    << unstable << " stabilization failures";
  return {bad == 0 && unstable == 0, s.str()};
}

Outcome criterion9() {
  Rng rng(606);
  std::size_t tight = 0;
  std::size_t loose = 0;
  std::size_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const LatticePtr& l = parametric_frames()[draw(rng, parametric_frames().size())];
    const ParametricMeasure nu = random_tight_parametric(rng, l);
    ++tight;
    bad += !is_tight(nu) || !has_density(nu).verdict();
  }
  for (const ParametricMeasure& nu : random_parametrics(607, 2000)) {
    if (nu.lattice().leq(nu.residual(), nu.default_level())) continue;
    ++loose;
    bad += has_density(nu).verdict();
  }
  std::ostringstream s;
  s << tight << " tight measures, " << loose << " with residual above the default, " << bad
    << " mismatches";
  return {bad == 0 && loose > 0, s.str()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion10(const std::string& tool, const std::string& script, const std::string& data) {
  const std::string dir = "acceptance_fuzz";
  std::filesystem::create_directories(dir);
  const std::string base = "\"" + tool + "\" fuzz --count 100 --seed 7 --out ";
  const int a = std::system((base + dir + "/first.json 2>" + dir + "/first.txt").c_str());
  const int b = std::system((base + dir + "/second.json 2>" + dir + "/second.txt").c_str());
  const std::string r1 = read_file(dir + "/first.json");
  const std::string r2 = read_file(dir + "/second.json");
  const bool same = !r1.empty() && r1 == r2 && read_file(dir + "/first.txt") == read_file(dir + "/second.txt");
  const int codes = std::system(("\"" + script + "\" \"" + tool + "\" \"" + data + "\" >" + dir + "/exit_codes.txt").c_str());
  std::ostringstream s;
  s << "fuzz reports " << (same ? "identical" : "differ") << " (" << r1.size() << " bytes, exit "
    << a << "/" << b << "), exit-code script " << (codes == 0 ? "passed" : "failed");
  return {same && a == 0 && b == 0 && codes == 0, s.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: acceptance <maxitive binary> <exit-code script> <data directory>\n";
    return 2;
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"way-above equals the order on small posets", criterion1},
      {"ideal representation round trip", criterion2},
      {"maximal extension dominates every extension", criterion3},
      {"complete maxitivity, inner continuity and density agree", criterion4},
      {"decomposition identity", criterion5},
      {"residual minimality and singular maximality", criterion6},
      {"calculus rules", criterion7},
      {"closed forms agree with the window oracle", criterion8},
      {"tight measures have densities", criterion9},
      {"fuzz determinism and exit codes", [&] { return criterion10(argv[1], argv[2], argv[3]); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
