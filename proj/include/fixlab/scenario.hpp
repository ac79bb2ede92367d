#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fixlab/classify.hpp"
#include "fixlab/iterate.hpp"

namespace fixlab {

enum class Task { run, classify, uniqueness };

// A fully resolved experiment description: one space, one map, one task, one
// seed. load_scenario fills every default, so two scenarios compare equal iff
// they describe the same experiment.
struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 0;
  Task task = Task::run;
  SpaceDescriptor space;
  MappingSpec map;

  // run
  std::optional<std::vector<double>> x0;  // absent: sampled from sub-seed "x0"
  StoppingConfig stopping;

  // classify. An empty class list means "the full catalog": execution
  // resolves all six families against the map, reporting the modulus
  // families with no cataloged default as skipped.
  std::vector<ClassSpec> classes;
  std::size_t pair_count = 1000;
  double min_separation = kDefaultMinSeparation;
  double slack = kDefaultSlack;

  // uniqueness
  std::size_t start_count = 10;
  double uniqueness_tol = 1e-6;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Flat key = value text with [space]/[map]/[run]/[classify]/[uniqueness]
// sections and '#' comments. Diagnostics carry the file name and line number;
// unknown map kinds and incomplete task parameters are reported distinctly.
Scenario load_scenario(const std::filesystem::path& file);
Scenario parse_scenario(const std::string& text, const std::string& origin);

// Canonical text form with every effective value spelled out;
// parse_scenario(write_scenario(s)) == s.
std::string write_scenario(const Scenario& scenario);

enum class CheckOutcome { pass, fail, skipped };

// Post-run invariant checks plus headline numbers for one executed scenario.
struct SummaryReport {
  std::string scenario_name;
  Task task = Task::run;
  std::string status;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, CheckOutcome>> checks;
  std::vector<SkippedClass> skipped_classes;
  double duration_seconds = 0.0;

  bool all_checks_passed() const;
};

// Runs the scenario's task and writes its artifacts into out_dir:
// summary.json always; trace.jsonl for run; certificates.json for classify.
// Expected non-convergence (status max_iter/diverged) is still task success;
// failure is reserved for invariant-check failures and operational errors.
SummaryReport execute(const Scenario& scenario,
                      const std::filesystem::path& out_dir);

// Catalog table for the list-maps verb.
std::string list_maps_text();

std::string_view to_string(Task task);
std::optional<Task> task_from(std::string_view name);
std::string_view to_string(CheckOutcome outcome);

}  // namespace fixlab
