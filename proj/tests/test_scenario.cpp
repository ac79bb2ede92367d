#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "fixlab/scenario.hpp"

using namespace fixlab;
namespace fs = std::filesystem;

namespace {

fs::path test_root() {
  static const fs::path root = [] {
    const auto p = fs::temp_directory_path() / "fixlab-scenario-tests";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return root;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(static_cast<bool>(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Parsing must fail and the diagnostic must carry every given fragment
// (origin:line prefixes included).
void expect_parse_error(const std::string& text,
                        const std::vector<std::string>& fragments) {
  try {
    parse_scenario(text, "test.cfg");
    FAIL_CHECK("expected a parse error for:\n" << text);
  } catch (const std::exception& e) {
    const std::string what = e.what();
    for (const auto& fragment : fragments) {
      CAPTURE(what);
      CAPTURE(fragment);
      CHECK(what.find(fragment) != std::string::npos);
    }
  }
}

}  // namespace

TEST_CASE("a minimal scenario fills every default") {
  const auto sc = parse_scenario("task = run\n[map]\nkind = identity\n", "t");
  CHECK(sc.name == "scenario");
  CHECK(sc.seed == 0);
  CHECK(sc.task == Task::run);
  CHECK(sc.space == SpaceDescriptor{});
  CHECK(sc.map == MappingSpec::identity());
  CHECK(!sc.x0.has_value());
  CHECK(sc.stopping == StoppingConfig{});
  CHECK(sc.classes.empty());
  CHECK(sc.pair_count == 1000);
  CHECK(sc.min_separation == kDefaultMinSeparation);
  CHECK(sc.slack == kDefaultSlack);
  CHECK(sc.start_count == 10);
  CHECK(sc.uniqueness_tol == 1e-6);
}

TEST_CASE("comments, blank lines and spacing are tolerated") {
  const std::string text =
      "# experiment header\n"
      "name = spaced-out   # trailing comment\n"
      "task = run\n"
      "\n"
      "[space]\n"
      "  dim   =  2  \n"
      "[map]\n"
      "kind = rotation\n"
      "theta = 0.25\n";
  const auto sc = parse_scenario(text, "t");
  CHECK(sc.name == "spaced-out");
  CHECK(sc.space.dim == 2);
  CHECK(sc.map.kind == MapKind::rotation);
  CHECK(sc.map.theta == 0.25);
}

TEST_CASE("diagnostics name the file and line") {
  expect_parse_error("task = run\n[map]\nkind = warp\n",
                     {"test.cfg:3:", "unknown map kind 'warp'", "known kinds"});
  expect_parse_error("[maps]\n", {"test.cfg:1:", "unknown section [maps]"});
  expect_parse_error("task = run\njust words\n",
                     {"test.cfg:2:", "expected key = value"});
  expect_parse_error("volume = 11\n", {"test.cfg:1:", "unknown top-level key"});
  expect_parse_error("task = dance\n", {"test.cfg:1:", "unknown task 'dance'"});
  expect_parse_error("task = run\n[run]\neps = fast\n",
                     {"test.cfg:3:", "eps", "expected a number"});
  expect_parse_error("task = run\n[space]\nnorm = 3\n",
                     {"test.cfg:3:", "norm", "expected 1, 2 or inf"});
}

TEST_CASE("incomplete or inconsistent experiments are refused") {
  // rotation demands a plane
  expect_parse_error(
      "task = run\n[space]\ndim = 3\n[map]\nkind = rotation\n",
      {"rotation map needs dim = 2", "dim = 3"});
  // affine shift must match the space dimension
  expect_parse_error(
      "task = run\n[space]\ndim = 3\n[map]\nkind = affine-contraction\n"
      "shift = 1 2\n",
      {"shift has 2 entries", "dim = 3"});
  // x0 must live in the space
  expect_parse_error(
      "task = run\n[space]\nnonnegative = true\n[map]\nkind = identity\n"
      "[run]\nx0 = -1\n",
      {"x0 lies outside the space"});
  expect_parse_error(
      "task = run\n[map]\nkind = identity\n[run]\nx0 = 1 2\n",
      {"x0 has 2 entries", "dim = 1"});
  // malformed stopping configuration caught by semantic validation
  expect_parse_error(
      "task = run\n[map]\nkind = identity\n[run]\neps = 0\n", {"eps"});

  // class list problems
  expect_parse_error(
      "task = classify\n[map]\nkind = identity\n[classify]\n"
      "classes = banach frobnitz\n",
      {"test.cfg:5:", "unknown class 'frobnitz'", "known classes"});
  expect_parse_error(
      "task = classify\n[map]\nkind = identity\n[classify]\n"
      "classes = banach banach\n",
      {"class 'banach' listed twice"});
  // a modulus family with no cataloged default needs an explicit modulus
  expect_parse_error(
      "task = classify\n[space]\ndim = 2\n[map]\nkind = rotation\n"
      "[classify]\nclasses = rakotch\n",
      {"class 'rakotch' requires a modulus", "rotation",
       "add modulus.rakotch"});
  expect_parse_error(
      "task = classify\n[map]\nkind = affine-contraction\nalpha = 0.5\n"
      "[classify]\nclasses = banach\nmodulus.banach = linear 0.5\n",
      {"modulus.banach", "not in the classes list"});
  expect_parse_error(
      "task = classify\n[map]\nkind = affine-contraction\nalpha = 0.5\n"
      "[classify]\nclasses = banach\nhorizon = 4\n",
      {"horizon given but 'asymptotic' is not in the classes list"});
  expect_parse_error(
      "task = classify\n[map]\nkind = affine-contraction\nalpha = 0.5\n"
      "[classify]\nclasses = asymptotic\nhorizon = 0\n",
      {"test.cfg:7:", "horizon must be >= 1"});
  // malformed modulus values
  expect_parse_error(
      "task = classify\n[space]\ndim = 2\n[map]\nkind = rotation\n"
      "[classify]\nclasses = rakotch\nmodulus.rakotch = linear\n",
      {"modulus.rakotch"});
  expect_parse_error(
      "task = classify\n[space]\ndim = 2\n[map]\nkind = rotation\n"
      "[classify]\nclasses = rakotch\nmodulus.rakotch = saturating 0.5\n",
      {"saturating modulus takes no parameter"});
}

TEST_CASE("explicit class lists resolve moduli and horizons") {
  const std::string text =
      "task = classify\n"
      "[space]\n"
      "dim = 2\n"
      "ball_radius = 1\n"
      "[map]\n"
      "kind = rotation\n"
      "theta = 0.5\n"
      "[classify]\n"
      "classes = strict rakotch asymptotic\n"
      "modulus.rakotch = linear 0.25\n"
      "modulus.asymptotic = power-family 0.5\n"
      "horizon = 4\n";
  const auto sc = parse_scenario(text, "t");
  REQUIRE(sc.classes.size() == 3);
  CHECK(sc.classes[0].class_id == ContractionClass::strict);
  CHECK(!sc.classes[0].modulus.has_value());
  CHECK(sc.classes[1].class_id == ContractionClass::rakotch);
  CHECK(sc.classes[1].modulus == ModulusSpec::linear(0.25));
  CHECK(sc.classes[2].class_id == ContractionClass::asymptotic);
  CHECK(sc.classes[2].modulus == ModulusSpec::power_family(0.5));
  CHECK(sc.classes[2].horizon == 4);

  // defaults from the catalog when no override is given
  const auto damped = parse_scenario(
      "task = classify\n[space]\ndim = 4\nball_radius = 1\n"
      "nonnegative = true\n[map]\nkind = shift-damping\n"
      "[classify]\nclasses = boyd-wong\n",
      "t");
  REQUIRE(damped.classes.size() == 1);
  CHECK(damped.classes[0].modulus == ModulusSpec::linear(4.0 / 5.0));
}

TEST_CASE("canonical writing round-trips") {
  // a scenario exercising every optional field
  const std::string text =
      "name = everything\n"
      "seed = 99\n"
      "task = classify\n"
      "[space]\n"
      "dim = 2\n"
      "norm = inf\n"
      "ball_radius = 2.5\n"
      "nonnegative = true\n"
      "[map]\n"
      "kind = affine-contraction\n"
      "alpha = 0.75\n"
      "shift = 0.1 0.2\n"
      "[run]\n"
      "x0 = 1 0.5\n"
      "eps = 1e-9\n"
      "max_iter = 777\n"
      "divergence_radius = 123.5\n"
      "rate_window = 8\n"
      "store_stride = 3\n"
      "[classify]\n"
      "classes = banach asymptotic\n"
      "horizon = 5\n"
      "pair_count = 42\n"
      "min_separation = 0.125\n"
      "slack = 1e-10\n"
      "[uniqueness]\n"
      "start_count = 7\n"
      "tol = 1e-5\n";
  const auto sc = parse_scenario(text, "t");
  const auto again = parse_scenario(write_scenario(sc), "canonical");
  CHECK(again == sc);
  CHECK(write_scenario(again) == write_scenario(sc));
}

TEST_CASE("shipped scenario files load and round-trip") {
  const fs::path dir{FIXLAB_SCENARIO_DIR};
  REQUIRE(fs::is_directory(dir));
  std::set<std::string> names;
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".cfg") continue;
    ++count;
    CAPTURE(entry.path().filename().string());
    const auto sc = load_scenario(entry.path());
    names.insert(sc.name);
    const auto again = parse_scenario(write_scenario(sc), "canonical");
    CHECK(again == sc);
  }
  CHECK(count == 10);
  CHECK(names.size() == 10);  // distinct experiment names
  CHECK(names.count("l2-damping-run") == 1);
  CHECK(names.count("rotation-classify") == 1);
}

TEST_CASE("loading a missing file points at the path") {
  try {
    load_scenario(test_root() / "absent.cfg");
    FAIL_CHECK("expected an error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("absent.cfg") != std::string::npos);
  }
}

TEST_CASE("executing a run scenario writes its artifacts") {
  const std::string text =
      "name = fast-sat\n"
      "seed = 3\n"
      "task = run\n"
      "[space]\n"
      "dim = 1\n"
      "ball_radius = 10\n"
      "nonnegative = true\n"
      "[map]\n"
      "kind = saturating\n"
      "[run]\n"
      "x0 = 9\n"
      "eps = 1e-3\n"
      "max_iter = 2000\n"
      "store_stride = 50\n";
  const auto sc = parse_scenario(text, "t");
  const auto out = test_root() / "fast-sat";
  const auto report = execute(sc, out);

  CHECK(report.scenario_name == "fast-sat");
  CHECK(report.task == Task::run);
  CHECK(report.status == "converged");
  CHECK(report.all_checks_passed());
  CHECK(report.skipped_classes.empty());
  CHECK(fs::exists(out / "summary.json"));
  CHECK(fs::exists(out / "trace.jsonl"));

  const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(summary.at("scenario") == "fast-sat");
  CHECK(summary.at("task") == "run");
  CHECK(summary.at("status") == "converged");
  CHECK(summary.at("checks").at("tail-bound-within-eps") == "pass");
  CHECK(summary.at("checks").at("steps-nonincreasing") == "pass");
  CHECK(summary.at("checks").at("final-in-domain") == "pass");
  CHECK(summary.at("metrics").at("tail-bound").get<double>() <= 1e-3);
  CHECK(summary.at("result").at("status") == "converged");
  CHECK(summary.at("duration_seconds").get<double>() >= 0.0);

  // the trace is line-delimited JSON with one record per step
  const auto trace_text = slurp(out / "trace.jsonl");
  std::istringstream lines(trace_text);
  std::string line;
  std::size_t records = 0;
  while (std::getline(lines, line)) {
    const auto rec = nlohmann::json::parse(line);
    CHECK(rec.at("n").get<std::size_t>() == records);
    CHECK(rec.contains("step_distance"));
    ++records;
  }
  CHECK(static_cast<double>(records) ==
        summary.at("metrics").at("iterations").get<double>());
}

TEST_CASE("executing a classify scenario reports skips for the full catalog") {
  const std::string text =
      "name = spin\n"
      "seed = 11\n"
      "task = classify\n"
      "[space]\n"
      "dim = 2\n"
      "ball_radius = 1\n"
      "[map]\n"
      "kind = rotation\n"
      "theta = 0.7\n"
      "[classify]\n"
      "pair_count = 200\n"
      "min_separation = 0.8\n";
  const auto sc = parse_scenario(text, "t");
  const auto out = test_root() / "spin";
  const auto report = execute(sc, out);

  CHECK(report.status == "violations");
  CHECK(report.all_checks_passed());
  REQUIRE(report.skipped_classes.size() == 3);
  for (const auto& skip : report.skipped_classes) {
    CHECK(skip.reason.find("no default modulus") != std::string::npos);
  }
  CHECK(fs::exists(out / "certificates.json"));

  const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(summary.at("skipped_classes").size() == 3);
  CHECK(summary.at("metrics").contains("max-ratio.banach"));
  CHECK(summary.at("metrics").contains("max-ratio.generalized-strict"));
  CHECK(!summary.at("metrics").contains("max-ratio.rakotch"));
  CHECK(summary.at("checks").at("witness-verdict-agreement") == "pass");
  CHECK(summary.at("checks").at("witness-cap") == "pass");
  CHECK(summary.at("checks").at("banach-implies-strict") == "pass");

  const auto certs = nlohmann::json::parse(slurp(out / "certificates.json"));
  REQUIRE(certs.is_array());
  REQUIRE(certs.size() == 3);
  for (const auto& cert : certs) {
    CHECK(cert.at("verdict") == "violated");
    CHECK(cert.at("pairs_tested").get<std::size_t>() == 200);
    CHECK(!cert.at("witnesses").empty());
  }
}

TEST_CASE("executing a uniqueness scenario") {
  const std::string text =
      "name = still\n"
      "seed = 29\n"
      "task = uniqueness\n"
      "[space]\n"
      "dim = 2\n"
      "ball_radius = 1\n"
      "[map]\n"
      "kind = identity\n"
      "[uniqueness]\n"
      "start_count = 4\n"
      "tol = 1e-6\n";
  const auto sc = parse_scenario(text, "t");
  const auto out = test_root() / "still";
  const auto report = execute(sc, out);

  CHECK(report.status == "distinct");  // every start is already fixed
  CHECK(report.all_checks_passed());
  const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(summary.at("metrics").at("runs").get<double>() == 4.0);
  CHECK(summary.at("metrics").at("converged-runs").get<double>() == 4.0);
  CHECK(summary.at("result").at("verdict") == "distinct");
  CHECK(summary.at("result").at("runs").size() == 4);
  CHECK(summary.at("checks").at("verdict-consistent") == "pass");
  CHECK(summary.at("checks").at("finals-in-domain") == "pass");
}

TEST_CASE("re-executing a scenario reproduces its artifacts byte for byte") {
  const std::string run_text =
      "name = rerun\nseed = 5\ntask = run\n"
      "[space]\ndim = 6\nball_radius = 1\nnonnegative = true\n"
      "[map]\nkind = shift-damping\n"
      "[run]\neps = 1e-7\nmax_iter = 1000\nstore_stride = 10\n";
  const auto run_sc = parse_scenario(run_text, "t");
  execute(run_sc, test_root() / "rerun-a");
  execute(run_sc, test_root() / "rerun-b");
  CHECK(slurp(test_root() / "rerun-a" / "trace.jsonl") ==
        slurp(test_root() / "rerun-b" / "trace.jsonl"));

  const std::string cls_text =
      "name = recls\nseed = 23\ntask = classify\n"
      "[space]\ndim = 3\n"
      "[map]\nkind = affine-contraction\nalpha = 0.5\nshift = 0.25 -0.5 1.5\n"
      "[classify]\npair_count = 500\nmin_separation = 0.01\nslack = 1e-9\n";
  const auto cls_sc = parse_scenario(cls_text, "t");
  const auto ra = execute(cls_sc, test_root() / "recls-a");
  execute(cls_sc, test_root() / "recls-b");
  CHECK(ra.status == "all-consistent");
  CHECK(slurp(test_root() / "recls-a" / "certificates.json") ==
        slurp(test_root() / "recls-b" / "certificates.json"));
}

TEST_CASE("map catalog listing") {
  const auto text = list_maps_text();
  for (const char* name :
       {"affine-contraction", "shift-damping", "saturating", "exp-drift",
        "rotation", "identity"}) {
    CHECK(text.find(name) != std::string::npos);
  }
  CHECK(text.find("strictly nonexpansive") != std::string::npos);
  CHECK(list_maps_text() == text);
}

TEST_CASE("task and outcome names") {
  for (Task t : {Task::run, Task::classify, Task::uniqueness}) {
    CHECK(task_from(to_string(t)) == t);
  }
  CHECK(!task_from("stroll"));
  CHECK(to_string(CheckOutcome::pass) == "pass");
  CHECK(to_string(CheckOutcome::fail) == "fail");
  CHECK(to_string(CheckOutcome::skipped) == "skipped");
}
