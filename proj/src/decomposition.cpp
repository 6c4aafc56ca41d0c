#include "maxitive/decomposition.hpp"

#include <algorithm>

namespace maxitive {

namespace {

using Kind = MeasureError::Kind;

ElementSet bit(Element x) { return ElementSet{1} << x; }

Element infimum_or_throw(const Lattice& l, ElementSet s, const std::string& context) {
  if (s == 0) throw MeasureError(Kind::empty_superset_family, "empty meet in " + context);
  auto inf = l.infimum(s);
  if (!inf) throw MeasureError(Kind::missing_bound, "no infimum in " + context);
  return *inf;
}

void assert_identity(bool holds, const std::string& what) {
  if (!holds) throw MeasureError(Kind::equivalence_violation, what + " does not hold");
}

void require_boolean(const SetFamily& family) {
  if (!is_boolean_algebra(family)) {
    throw MeasureError(Kind::not_boolean_algebra, "the family is not a Boolean algebra");
  }
}

void require_tabular_gates(const TabularMeasure& nu) {
  require_frame(nu.lattice());
  require_paving(nu.family());
}

}  // namespace

// ---------------------------------------------------------------------------

TabularMeasure regular_part(const TabularMeasure& nu) {
  require_tabular_gates(nu);
  const Lattice& l = nu.lattice();
  const auto table = extension_table(nu);
  TabularMeasure regular = TabularMeasure::from_function(nu.lattice_ptr(), nu.family_ptr(), [&](PointSet g) {
    Element acc = l.bottom();
    for (PointSet k = g;; k = (k - 1) & g) {
      acc = l.join(acc, table.at(k).value());
      if (k == 0) break;
    }
    return acc;
  });
  assert_identity(check_density(regular, density_candidate(nu)).ok, "density of the regular part");
  return regular;
}

ParametricMeasure regular_part(const ParametricMeasure& nu) {
  require_frame(nu.lattice());
  ParametricMeasure regular(nu.lattice_ptr(), nu.exceptions(), nu.default_level(),
                            nu.lattice().bottom());
  assert_identity(check_density(regular, density_candidate(nu)).ok, "density of the regular part");
  return regular;
}

TabularMeasure residual_part(const TabularMeasure& nu) {
  const TabularMeasure regular = regular_part(nu);
  const Lattice& l = nu.lattice();
  const SetFamily& fam = nu.family();
  TabularMeasure residual = TabularMeasure::from_function(nu.lattice_ptr(), nu.family_ptr(), [&](PointSet g) {
    ElementSet good = 0;
    for (Element t = 0; t < l.size(); ++t) {
      bool ok = true;
      for (std::size_t h = 0; h < fam.size() && ok; ++h) {
        if (!is_subset(fam.member(h), g)) continue;
        ok = l.leq(nu.at(h), l.join(regular.at(h), t));
      }
      if (ok) good |= bit(t);
    }
    return infimum_or_throw(l, good, "residual at " + format_point_set(g));
  });
  assert_identity(same_values(nu, join(regular, residual)), "decomposition identity");
  return residual;
}

ParametricMeasure residual_part(const ParametricMeasure& nu) {
  const ParametricMeasure regular = regular_part(nu);
  const Lattice& l = nu.lattice();
  auto value = [&](const CodedSet& g) {
    const std::vector<Point> support = merge_support(nu.support(), g.exceptions());
    const std::vector<CodedSet> inside = representative_subsets(g, support);
    ElementSet good = 0;
    for (Element t = 0; t < l.size(); ++t) {
      const bool ok = std::all_of(inside.begin(), inside.end(), [&](const CodedSet& h) {
        return l.leq(nu(h), l.join(regular(h), t));
      });
      if (ok) good |= bit(t);
    }
    return infimum_or_throw(l, good, "residual at " + g.to_string());
  };
  ParametricMeasure residual = fit_parametric(nu.lattice_ptr(), nu.support(), value);
  assert_identity(same_values(nu, join(regular, residual)), "decomposition identity");
  return residual;
}

TabularMeasure singular_part(const TabularMeasure& nu) {
  require_boolean(nu.family());
  require_tabular_gates(nu);
  const Lattice& l = nu.lattice();
  const std::vector<PointSet> compact_closed = derive_families(nu.family()).compact_closed;
  TabularMeasure singular = TabularMeasure::from_function(nu.lattice_ptr(), nu.family_ptr(), [&](PointSet g) {
    ElementSet values = 0;
    for (PointSet h : compact_closed)
      if (is_subset(h, g)) values |= bit(nu(g & ~h));
    return infimum_or_throw(l, values, "singular part at " + format_point_set(g));
  });
  assert_identity(same_values(nu, join(regular_part(nu), singular)), "singular decomposition identity");
  return singular;
}

ParametricMeasure singular_part(const ParametricMeasure& nu) {
  require_frame(nu.lattice());
  const Lattice& l = nu.lattice();
  ParametricMeasure singular(nu.lattice_ptr(), {}, l.bottom(),
                             l.join(nu.residual(), nu.default_level()));
  assert_identity(same_values(nu, join(regular_part(nu), singular)), "singular decomposition identity");
  return singular;
}

bool is_singular(const TabularMeasure& nu) {
  const Lattice& l = nu.lattice();
  for (PointSet h : derive_families(nu.family()).compact_closed)
    if (extend_star(nu, h) != l.bottom()) return false;
  return true;
}

bool is_singular(const ParametricMeasure& nu) {
  const Lattice& l = nu.lattice();
  for (const CodedSet& h : representative_sets(nu.support()))
    if (in_compact_closed(CofiniteAlgebra{}, h) && extend_star(nu, h) != l.bottom()) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::string to_string(Part part) {
  switch (part) {
    case Part::regular: return "regular";
    case Part::residual: return "residual";
    case Part::singular: return "singular";
  }
  return "";
}

std::optional<Part> parse_part(const std::string& name) {
  for (Part p : {Part::regular, Part::residual, Part::singular})
    if (to_string(p) == name) return p;
  return std::nullopt;
}

Decomposition decompose(const Measure& nu, const std::set<Part>& parts) {
  return std::visit(
      [&](const auto& m) {
        Decomposition d;
        if (parts.count(Part::regular)) d.regular = Measure(regular_part(m));
        if (parts.count(Part::residual)) d.residual = Measure(residual_part(m));
        if (parts.count(Part::singular)) d.singular = Measure(singular_part(m));
        return d;
      },
      nu);
}

// ---------------------------------------------------------------------------
// Calculus rules

std::string rule_statement(int rule) {
  switch (rule) {
    case 1: return "nu = reg(nu) + res(nu)";
    case 2: return "nu = reg(nu) iff res(nu) = 0";
    case 3: return "reg(reg(nu)) = reg(nu)";
    case 4: return "reg(nu + tau) = reg(nu) + reg(tau)";
    case 5: return "(nu + tau)* = nu* + tau*";
    case 6: return "res(res(nu)) = res(nu)";
    case 7: return "res(nu + tau) <= res(nu) + res(tau)";
    case 8: return "res(reg(nu)) = 0";
    case 9: return "reg(nu*) = reg(nu)*";
    case 10: return "res(nu*) <= res(nu)*";
    default: return "";
  }
}

namespace {

TabularMeasure zero_like(const TabularMeasure& nu) {
  return TabularMeasure::zero(nu.lattice_ptr(), nu.family_ptr());
}

ParametricMeasure zero_like(const ParametricMeasure& nu) { return ParametricMeasure::zero(nu.lattice_ptr()); }

template <class M>
std::string diff_witness(const M& a, const M& b) {
  return first_difference(a, b).value_or("");
}

std::string leq_witness(const TabularMeasure& a, const TabularMeasure& b) {
  for (std::size_t i = 0; i < a.values().size(); ++i)
    if (!a.lattice().leq(a.at(i), b.at(i))) return format_point_set(a.family().member(i));
  return "";
}

std::string leq_witness(const ParametricMeasure& a, const ParametricMeasure& b) {
  for (const CodedSet& g : comparison_sets(a, b))
    if (!a.lattice().leq(a(g), b(g))) return g.to_string();
  return "";
}

std::string extension_witness(const TabularMeasure& nu, const TabularMeasure& tau) {
  const TabularMeasure both = join(nu, tau);
  const Lattice& l = nu.lattice();
  for (PointSet a : derive_families(nu.family()).estar) {
    if (extend_star(both, a) != l.join(extend_star(nu, a), extend_star(tau, a))) {
      return format_point_set(a);
    }
  }
  return "";
}

std::string extension_witness(const ParametricMeasure& nu, const ParametricMeasure& tau) {
  const ParametricMeasure both = join(nu, tau);
  const Lattice& l = nu.lattice();
  std::vector<CodedSet> sets = comparison_sets(nu, tau);
  const Point window = std::min<Point>(fresh_point(merge_support(nu.support(), tau.support())) + 2, 10);
  for (CodedSet& g : finite_sets_in_window(window)) sets.push_back(std::move(g));
  for (const CodedSet& a : sets) {
    if (extend_star(both, a) != l.join(extend_star(nu, a), extend_star(tau, a))) return a.to_string();
  }
  return "";
}

std::optional<std::string> topology_rule(const TabularMeasure& nu, int rule) {
  if (!is_topology(nu.family())) return std::nullopt;
  const TabularMeasure star = extend_to_estar(nu);
  if (rule == 9) return diff_witness(regular_part(star), extend_to_estar(regular_part(nu)));
  return leq_witness(residual_part(star), extend_to_estar(residual_part(nu)));
}

std::optional<std::string> topology_rule(const ParametricMeasure&, int) { return std::nullopt; }

template <class M>
RuleResult evaluate_rule(int rule, const M& nu, const M& tau) {
  RuleResult r;
  r.rule = rule;
  r.statement = rule_statement(rule);
  std::string witness;
  switch (rule) {
    case 1:
      witness = diff_witness(nu, join(regular_part(nu), residual_part(nu)));
      break;
    case 2: {
      const bool regular = same_values(nu, regular_part(nu));
      const bool zero = is_zero(residual_part(nu));
      if (regular != zero) witness = regular ? "nu is regular, residual nonzero" : "residual zero, nu not regular";
      break;
    }
    case 3:
      witness = diff_witness(regular_part(regular_part(nu)), regular_part(nu));
      break;
    case 4:
      witness = diff_witness(regular_part(join(nu, tau)), join(regular_part(nu), regular_part(tau)));
      break;
    case 5:
      witness = extension_witness(nu, tau);
      break;
    case 6:
      witness = diff_witness(residual_part(residual_part(nu)), residual_part(nu));
      break;
    case 7:
      witness = leq_witness(residual_part(join(nu, tau)), join(residual_part(nu), residual_part(tau)));
      break;
    case 8:
      witness = diff_witness(residual_part(regular_part(nu)), zero_like(nu));
      break;
    case 9:
    case 10: {
      auto result = topology_rule(nu, rule);
      if (!result) {
        r.applicable = false;
        return r;
      }
      witness = *result;
      break;
    }
    default:
      throw std::invalid_argument("unknown rule " + std::to_string(rule));
  }
  r.passed = witness.empty();
  r.witness = witness;
  return r;
}

template <class M>
std::vector<RuleResult> evaluate_rules(const M& nu, const M& tau, const std::set<int>& rules) {
  require_same_model(nu, tau);
  std::vector<RuleResult> out;
  for (int rule = 1; rule <= 10; ++rule) {
    if (!rules.empty() && !rules.count(rule)) continue;
    out.push_back(evaluate_rule(rule, nu, tau));
  }
  return out;
}

}  // namespace

std::vector<RuleResult> check_calculus_rules(const Measure& nu, const Measure& tau,
                                             const std::set<int>& rules) {
  for (int rule : rules) {
    if (rule < 1 || rule > 10) throw std::invalid_argument("unknown rule " + std::to_string(rule));
  }
  if (nu.index() != tau.index()) {
    throw MeasureError(Kind::model_mismatch, "measures live on different ground models");
  }
  if (const auto* a = std::get_if<TabularMeasure>(&nu)) {
    return evaluate_rules(*a, std::get<TabularMeasure>(tau), rules);
  }
  return evaluate_rules(std::get<ParametricMeasure>(nu), std::get<ParametricMeasure>(tau), rules);
}

DensityCorollaries check_density_corollaries(const Measure& nu) {
  return std::visit(
      [](const auto& m) {
        DensityCorollaries c;
        c.has_density = has_density(m).verdict();
        c.equals_regular = same_values(m, regular_part(m));
        c.residual_zero = is_zero(residual_part(m));
        bool boolean = true;
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, TabularMeasure>) {
          boolean = is_boolean_algebra(m.family());
        }
        if (boolean && is_tight(m)) c.tight_has_density = has_density(m).verdict();
        return c;
      },
      nu);
}

}  // namespace maxitive
