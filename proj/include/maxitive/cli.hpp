#pragma once

// Instance documents and the validate / decompose / laws / fuzz commands.
//
// Commands return a report document and a one-line summary; printing is left
// to the caller.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "maxitive/decomposition.hpp"
#include "maxitive/oracle.hpp"

namespace maxitive::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;

/// Malformed document or usage: exit status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MeasureSpec {
  enum class Kind { tabular, parametric };
  Kind kind = Kind::tabular;
  std::vector<std::pair<PointSet, Element>> values;
  std::map<Point, Element> exceptions;
  Element default_level = 0;
  Element residual = 0;
};

/// A document whose references all resolve. Nothing mathematical has been
/// checked yet: the relation may fail to be an order and the family may fail
/// to be a paving.
struct InstanceDocument {
  std::vector<std::string> elements;
  std::vector<std::pair<Element, Element>> leq;
  bool cofinite = false;
  std::size_t points = 0;
  std::vector<PointSet> paving;
  std::vector<std::pair<std::string, MeasureSpec>> measures;
  std::optional<std::uint64_t> seed;
  /// Extra sets to tabulate in decomposition reports of the cofinite model.
  std::vector<CodedSet> sets;
};

InstanceDocument parse_instance(const json& doc);
/// Reads and parses a file; InputError when it is missing or malformed.
InstanceDocument load_instance(const std::string& path);
json to_json(const InstanceDocument& doc);

/// Document for measures that already exist; all share one lattice and model.
InstanceDocument document_of(const std::vector<std::pair<std::string, Measure>>& measures,
                             std::optional<std::uint64_t> seed = std::nullopt);

struct Instance {
  LatticePtr lattice;
  /// Null on the cofinite model.
  FamilyPtr family;
  std::vector<std::pair<std::string, Measure>> measures;
};

/// Throws OrderError, SpaceError or MeasureError when the document does not
/// describe a poset, a paving and maxitive measures.
Instance build_instance(const InstanceDocument& doc);

struct CommandResult {
  int exit_code = kExitOk;
  json report;
  std::string summary;
};

/// How much structure validate demands of the value poset.
enum class Level { poset, lattice, domain, frame };

std::optional<Level> parse_level(const std::string& name);

CommandResult cmd_validate(const InstanceDocument& doc, Level level = Level::frame);

struct DecomposeOptions {
  /// All measures when empty.
  std::string measure;
  std::set<Part> parts{Part::regular, Part::residual, Part::singular};
  /// Window of the cofinite oracle cross-check; 0 picks default_window.
  Point window = 0;
};

CommandResult cmd_decompose(const InstanceDocument& doc, const DecomposeOptions& options = {});

struct LawsOptions {
  /// All rules when empty.
  std::set<int> rules;
};

CommandResult cmd_laws(const InstanceDocument& doc, const LawsOptions& options = {});

struct FuzzOptions {
  enum class Model { both, finite, cofinite };
  std::size_t count = 100;
  std::uint64_t seed = 0;
  Model model = Model::both;
  Point window = 0;
  EnumerationBudget budget;
};

std::optional<FuzzOptions::Model> parse_model(const std::string& name);

CommandResult cmd_fuzz(const FuzzOptions& options);

}  // namespace maxitive::cli
