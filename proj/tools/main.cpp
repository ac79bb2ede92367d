#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fixlab/scenario.hpp"

namespace {

// Artifact directory resolution: --out wins, then $FIXLAB_OUT, then
// out/<scenario-name> under the working directory.
std::filesystem::path resolve_out_dir(const std::string& cli_out,
                                      const std::string& scenario_name) {
  if (!cli_out.empty()) return cli_out;
  if (const char* env = std::getenv("FIXLAB_OUT"); env && *env) return env;
  return std::filesystem::path("out") / scenario_name;
}

int execute_verb(fixlab::Task verb, const std::string& file,
                 const std::string& cli_out) {
  fixlab::Scenario scenario = fixlab::load_scenario(file);
  if (scenario.task != verb) {
    std::cerr << "error: scenario '" << scenario.name << "' declares task '"
              << fixlab::to_string(scenario.task) << "'; invoke that verb"
              << std::endl;
    return 1;
  }
  const std::filesystem::path out_dir =
      resolve_out_dir(cli_out, scenario.name);
  const fixlab::SummaryReport report = fixlab::execute(scenario, out_dir);

  std::cout << "scenario  " << report.scenario_name << "\n";
  std::cout << "task      " << fixlab::to_string(report.task) << "\n";
  std::cout << "status    " << report.status << "\n";
  for (const auto& [name, value] : report.metrics) {
    std::cout << "metric    " << name << " = " << value << "\n";
  }
  for (const auto& [name, outcome] : report.checks) {
    std::cout << "check     " << name << ": " << fixlab::to_string(outcome)
              << "\n";
  }
  for (const auto& skipped : report.skipped_classes) {
    std::cout << "skipped   " << fixlab::to_string(skipped.class_id) << " ("
              << skipped.reason << ")\n";
  }
  std::cout << "artifacts " << out_dir.string() << std::endl;
  return report.all_checks_passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixed-point iteration laboratory"};
  app.require_subcommand(1);

  std::string file;
  std::string out;

  CLI::App* run = app.add_subcommand("run", "iterate a map from a start point");
  CLI::App* classify =
      app.add_subcommand("classify", "check contraction classes empirically");
  CLI::App* uniqueness = app.add_subcommand(
      "uniqueness", "compare limits across many start points");
  for (CLI::App* sub : {run, classify, uniqueness}) {
    sub->add_option("scenario", file, "scenario file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out,
                    "artifact directory (default: $FIXLAB_OUT or "
                    "out/<scenario-name>)");
  }
  CLI::App* list_maps =
      app.add_subcommand("list-maps", "describe the map catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_maps->parsed()) {
      std::cout << fixlab::list_maps_text();
      return 0;
    }
    fixlab::Task verb = fixlab::Task::run;
    if (classify->parsed()) verb = fixlab::Task::classify;
    if (uniqueness->parsed()) verb = fixlab::Task::uniqueness;
    return execute_verb(verb, file, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
