// maxitive: command-line front end.
//
// Exit status: 0 success, 1 validation failure or law counterexample,
// 2 malformed input or usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "maxitive/cli.hpp"

namespace {

using namespace maxitive;
using namespace maxitive::cli;

std::set<int> parse_rules(const std::string& text) {
  std::set<int> rules;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int rule = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      rules.insert(rule);
    } catch (const std::exception&) {
      throw InputError("--rules: '" + item + "' is not a rule number");
    }
  }
  return rules;
}

std::set<Part> parse_parts(const std::string& text) {
  std::set<Part> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto part = parse_part(item);
    if (!part) throw InputError("--parts: unknown part '" + item + "'");
    parts.insert(*part);
  }
  if (parts.empty()) throw InputError("--parts: no parts given");
  return parts;
}

int emit(const CommandResult& result, const std::string& out) {
  const std::string text = result.report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out);
    if (!file) {
      std::cerr << "error: cannot write " << out << "\n";
      return kExitInput;
    }
    file << text;
  }
  std::cerr << result.summary << "\n";
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maxitive measures on finite and cofinite models"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  app.add_option("--out", out, "Write the report here instead of standard output");

  std::string path;
  auto* validate = app.add_subcommand("validate", "Check the lattice, paving and measures");
  validate->add_option("instance", path, "Instance document")->required();
  std::string level = "frame";
  validate->add_option("--level", level, "poset, lattice, domain or frame");

  auto* decompose = app.add_subcommand("decompose", "Regular, residual and singular parts");
  decompose->add_option("instance", path, "Instance document")->required();
  std::string measure;
  std::string parts = "regular,residual,singular";
  Point window = 0;
  decompose->add_option("--measure", measure, "Only this measure");
  decompose->add_option("--parts", parts, "Comma-separated parts");
  decompose->add_option("--window", window, "Window of the cofinite cross-check");

  auto* laws = app.add_subcommand("laws", "Calculus rules and the density laws");
  laws->add_option("instance", path, "Instance document")->required();
  std::string rules;
  laws->add_option("--rules", rules, "Comma-separated rule numbers");

  auto* fuzz = app.add_subcommand("fuzz", "Random instances against the oracles");
  FuzzOptions fuzz_options;
  std::string model = "both";
  fuzz->add_option("--count", fuzz_options.count, "Number of instances");
  fuzz->add_option("--seed", fuzz_options.seed, "Seed of the instance stream");
  fuzz->add_option("--model", model, "finite, cofinite or both");
  fuzz->add_option("--window", fuzz_options.window, "Window of the cofinite oracle");
  fuzz->add_option("--budget-points", fuzz_options.budget.max_points, "Largest ground set");
  fuzz->add_option("--budget-paving", fuzz_options.budget.max_paving, "Largest paving");
  fuzz->add_option("--budget-lattice", fuzz_options.budget.max_lattice, "Largest lattice");
  fuzz->add_option("--budget-window", fuzz_options.budget.max_window, "Largest oracle window");
  fuzz->add_option("--budget-instances", fuzz_options.budget.instance_cap, "Largest --count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*validate) {
      const auto lvl = parse_level(level);
      if (!lvl) throw InputError("--level: unknown level '" + level + "'");
      return emit(cmd_validate(load_instance(path), *lvl), out);
    }
    if (*decompose) {
      DecomposeOptions options;
      options.measure = measure;
      options.parts = parse_parts(parts);
      options.window = window;
      return emit(cmd_decompose(load_instance(path), options), out);
    }
    if (*laws) {
      LawsOptions options;
      if (!rules.empty()) options.rules = parse_rules(rules);
      return emit(cmd_laws(load_instance(path), options), out);
    }
    const auto m = parse_model(model);
    if (!m) throw InputError("--model: unknown model '" + model + "'");
    fuzz_options.model = *m;
    return emit(cmd_fuzz(fuzz_options), out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: budget exceeded: " << e.what() << "\n";
    return kExitInput;
  }
}
