#pragma once

// Regular, residual and singular parts of a maxitive measure, and the
// calculus laws relating them.
//
// All operations require the values to form a locally continuous frame and,
// for tabular measures, the family to be a paving.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "maxitive/measures.hpp"

namespace maxitive {

/// Largest measure below nu that has a density: the join of nu* over the
/// compact subsets.
TabularMeasure regular_part(const TabularMeasure& nu);
ParametricMeasure regular_part(const ParametricMeasure& nu);

/// Least t-indexed remainder with nu = regular \/ residual.
TabularMeasure residual_part(const TabularMeasure& nu);
ParametricMeasure residual_part(const ParametricMeasure& nu);

/// nu_s(G) = inf over compact-closed H inside G of nu(G \ H). Requires the
/// family to be a Boolean algebra (MeasureError(not_boolean_algebra)).
TabularMeasure singular_part(const TabularMeasure& nu);
ParametricMeasure singular_part(const ParametricMeasure& nu);

/// nu* vanishes on every compact-closed set.
bool is_singular(const TabularMeasure& nu);
bool is_singular(const ParametricMeasure& nu);

enum class Part { regular, residual, singular };

std::string to_string(Part part);
std::optional<Part> parse_part(const std::string& name);

struct Decomposition {
  std::optional<Measure> regular;
  std::optional<Measure> residual;
  std::optional<Measure> singular;
};

Decomposition decompose(const Measure& nu, const std::set<Part>& parts);

struct RuleResult {
  int rule = 0;
  std::string statement;
  bool applicable = true;
  bool passed = true;
  std::string witness;
};

/// Rules 1 to 8 hold for every pair of measures on the same model; rules 9
/// and 10 apply when the family is a topology (finite model only).
std::string rule_statement(int rule);

/// Evaluates the requested rules (all when `rules` is empty). Throws
/// MeasureError(model_mismatch | lattice_mismatch) when nu and tau are not on
/// the same model.
std::vector<RuleResult> check_calculus_rules(const Measure& nu, const Measure& tau,
                                             const std::set<int>& rules = {});

struct DensityCorollaries {
  bool has_density = false;
  bool equals_regular = false;
  bool residual_zero = false;
  /// Only evaluated on Boolean algebras where nu is tight.
  std::optional<bool> tight_has_density;

  bool consistent() const noexcept {
    return has_density == equals_regular && equals_regular == residual_zero &&
           tight_has_density.value_or(true);
  }
};

DensityCorollaries check_density_corollaries(const Measure& nu);

}  // namespace maxitive
