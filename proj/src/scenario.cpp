#include "fixlab/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fixlab/rng.hpp"
#include "fixlab/serialize.hpp"

namespace fixlab {

namespace {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// text helpers

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> words;
  std::istringstream in(s);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

[[noreturn]] void fail_at(const std::string& origin, std::size_t line,
                          const std::string& message) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " +
                           message);
}

[[noreturn]] void fail(const std::string& origin, const std::string& message) {
  throw std::runtime_error(origin + ": " + message);
}

double parse_double(const std::string& origin, std::size_t line,
                    const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    fail_at(origin, line, key + ": expected a number, got '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& origin, std::size_t line,
                        const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing text");
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    fail_at(origin, line,
            key + ": expected a nonnegative integer, got '" + value + "'");
  }
}

std::size_t parse_size(const std::string& origin, std::size_t line,
                       const std::string& key, const std::string& value) {
  return static_cast<std::size_t>(parse_u64(origin, line, key, value));
}

bool parse_bool(const std::string& origin, std::size_t line,
                const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  fail_at(origin, line, key + ": expected true or false, got '" + value + "'");
}

std::vector<double> parse_vector(const std::string& origin, std::size_t line,
                                 const std::string& key,
                                 const std::string& value) {
  std::vector<double> out;
  for (const std::string& w : split_words(value)) {
    out.push_back(parse_double(origin, line, key, w));
  }
  return out;
}

std::string known_map_kinds() {
  std::string out;
  for (const CatalogEntry& e : catalog()) {
    if (!out.empty()) out += ", ";
    out += e.name;
  }
  return out;
}

std::string known_classes() {
  std::string out;
  for (ContractionClass c :
       {ContractionClass::banach, ContractionClass::rakotch,
        ContractionClass::boyd_wong, ContractionClass::asymptotic,
        ContractionClass::strict, ContractionClass::generalized_strict}) {
    if (!out.empty()) out += ", ";
    out += std::string(to_string(c));
  }
  return out;
}

bool class_needs_modulus(ContractionClass c) {
  return c == ContractionClass::rakotch || c == ContractionClass::boyd_wong ||
         c == ContractionClass::asymptotic;
}

ModulusSpec parse_modulus(const std::string& origin, std::size_t line,
                          const std::string& key, const std::string& value) {
  const std::vector<std::string> words = split_words(value);
  if (words.empty()) fail_at(origin, line, key + ": empty modulus");
  if (words[0] == "saturating") {
    if (words.size() != 1) {
      fail_at(origin, line, key + ": the saturating modulus takes no parameter");
    }
    return ModulusSpec::saturating();
  }
  if (words[0] == "linear" || words[0] == "power-family") {
    if (words.size() != 2) {
      fail_at(origin, line,
              key + ": modulus '" + words[0] + "' needs exactly one alpha");
    }
    const double alpha = parse_double(origin, line, key, words[1]);
    try {
      return words[0] == "linear" ? ModulusSpec::linear(alpha)
                                  : ModulusSpec::power_family(alpha);
    } catch (const std::exception& e) {
      fail_at(origin, line, key + ": " + e.what());
    }
  }
  fail_at(origin, line,
          key + ": unknown modulus '" + words[0] +
              "'; known moduli: linear, saturating, power-family");
}

std::string format_double(double v) { return ordered_json(v).dump(); }

std::string format_vector(const std::vector<double>& v) {
  std::string out;
  for (double c : v) {
    if (!out.empty()) out += ' ';
    out += format_double(c);
  }
  return out;
}

// Resolves "the full catalog" for a classify scenario with no explicit class
// list: every family runs, except modulus families with no cataloged default
// for this map, which are reported as skipped.
std::pair<std::vector<ClassSpec>, std::vector<SkippedClass>>
resolve_catalog_classes(const MappingSpec& map, const SpaceDescriptor& space) {
  std::vector<ClassSpec> specs;
  std::vector<SkippedClass> skipped;
  for (ContractionClass c :
       {ContractionClass::banach, ContractionClass::rakotch,
        ContractionClass::boyd_wong, ContractionClass::asymptotic,
        ContractionClass::strict, ContractionClass::generalized_strict}) {
    ClassSpec spec;
    spec.class_id = c;
    if (class_needs_modulus(c)) {
      std::optional<ModulusSpec> modulus = default_modulus(map, space, c);
      if (!modulus) {
        skipped.push_back(SkippedClass{
            c, "no default modulus for map '" +
                   std::string(to_string(map.kind)) + "' on this space"});
        continue;
      }
      spec.modulus = modulus;
      if (c == ContractionClass::asymptotic) spec.horizon = kDefaultHorizon;
    }
    specs.push_back(std::move(spec));
  }
  return {std::move(specs), std::move(skipped)};
}

enum class Section { top, space, map, run, classify, uniqueness };

}  // namespace

// ---------------------------------------------------------------------------
// parsing

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  Scenario sc;
  Section section = Section::top;

  // Deferred until the map and space are known.
  std::vector<std::pair<std::string, std::size_t>> class_names;
  std::map<std::string, std::pair<ModulusSpec, std::size_t>> modulus_overrides;
  std::optional<std::pair<std::size_t, std::size_t>> horizon;  // value, line

  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail_at(origin, line_no, "unterminated section");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name == "space") section = Section::space;
      else if (name == "map") section = Section::map;
      else if (name == "run") section = Section::run;
      else if (name == "classify") section = Section::classify;
      else if (name == "uniqueness") section = Section::uniqueness;
      else fail_at(origin, line_no, "unknown section [" + name + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail_at(origin, line_no, "expected key = value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail_at(origin, line_no, "empty key");

    switch (section) {
      case Section::top:
        if (key == "name") sc.name = value;
        else if (key == "seed") sc.seed = parse_u64(origin, line_no, key, value);
        else if (key == "task") {
          std::optional<Task> t = task_from(value);
          if (!t) {
            fail_at(origin, line_no,
                    "unknown task '" + value +
                        "'; known tasks: run, classify, uniqueness");
          }
          sc.task = *t;
        } else {
          fail_at(origin, line_no, "unknown top-level key '" + key + "'");
        }
        break;

      case Section::space:
        if (key == "dim") sc.space.dim = parse_size(origin, line_no, key, value);
        else if (key == "norm") {
          if (value == "1") sc.space.norm = Norm::l1;
          else if (value == "2") sc.space.norm = Norm::l2;
          else if (value == "inf") sc.space.norm = Norm::linf;
          else fail_at(origin, line_no,
                       "norm: expected 1, 2 or inf, got '" + value + "'");
        } else if (key == "ball_radius") {
          sc.space.ball_radius = parse_double(origin, line_no, key, value);
        } else if (key == "nonnegative") {
          sc.space.nonnegative = parse_bool(origin, line_no, key, value);
        } else {
          fail_at(origin, line_no, "unknown [space] key '" + key + "'");
        }
        break;

      case Section::map:
        if (key == "kind") {
          std::optional<MapKind> k = map_kind_from(value);
          if (!k) {
            fail_at(origin, line_no,
                    "unknown map kind '" + value +
                        "'; known kinds: " + known_map_kinds());
          }
          sc.map.kind = *k;
        } else if (key == "alpha") {
          sc.map.alpha = parse_double(origin, line_no, key, value);
        } else if (key == "shift") {
          sc.map.shift = parse_vector(origin, line_no, key, value);
        } else if (key == "theta") {
          sc.map.theta = parse_double(origin, line_no, key, value);
        } else {
          fail_at(origin, line_no, "unknown [map] key '" + key + "'");
        }
        break;

      case Section::run:
        if (key == "x0") sc.x0 = parse_vector(origin, line_no, key, value);
        else if (key == "eps") {
          sc.stopping.eps = parse_double(origin, line_no, key, value);
        } else if (key == "max_iter") {
          sc.stopping.max_iter = parse_size(origin, line_no, key, value);
        } else if (key == "divergence_radius") {
          sc.stopping.divergence_radius =
              parse_double(origin, line_no, key, value);
        } else if (key == "rate_window") {
          sc.stopping.rate_window = parse_size(origin, line_no, key, value);
        } else if (key == "store_stride") {
          sc.stopping.store_stride = parse_size(origin, line_no, key, value);
        } else {
          fail_at(origin, line_no, "unknown [run] key '" + key + "'");
        }
        break;

      case Section::classify:
        if (key == "classes") {
          for (const std::string& w : split_words(value)) {
            class_names.emplace_back(w, line_no);
          }
        } else if (key.starts_with("modulus.")) {
          const std::string cls = key.substr(8);
          modulus_overrides.insert_or_assign(
              cls, std::make_pair(parse_modulus(origin, line_no, key, value),
                                  line_no));
        } else if (key == "horizon") {
          horizon = {parse_size(origin, line_no, key, value), line_no};
        } else if (key == "pair_count") {
          sc.pair_count = parse_size(origin, line_no, key, value);
        } else if (key == "min_separation") {
          sc.min_separation = parse_double(origin, line_no, key, value);
        } else if (key == "slack") {
          sc.slack = parse_double(origin, line_no, key, value);
        } else {
          fail_at(origin, line_no, "unknown [classify] key '" + key + "'");
        }
        break;

      case Section::uniqueness:
        if (key == "start_count") {
          sc.start_count = parse_size(origin, line_no, key, value);
        } else if (key == "tol") {
          sc.uniqueness_tol = parse_double(origin, line_no, key, value);
        } else {
          fail_at(origin, line_no, "unknown [uniqueness] key '" + key + "'");
        }
        break;
    }
  }

  // Semantic validation, now that every section is in.
  try {
    validate(sc.space);
    validate(sc.map);
    validate(sc.stopping);
  } catch (const std::invalid_argument& e) {
    fail(origin, e.what());
  }
  if (sc.map.kind == MapKind::rotation && sc.space.dim != 2) {
    fail(origin, "the rotation map needs dim = 2, but the space has dim = " +
                     std::to_string(sc.space.dim));
  }
  if (sc.map.kind == MapKind::affine_contraction && !sc.map.shift.empty() &&
      sc.map.shift.size() != sc.space.dim) {
    fail(origin, "shift has " + std::to_string(sc.map.shift.size()) +
                     " entries but the space has dim = " +
                     std::to_string(sc.space.dim));
  }
  if (sc.x0) {
    if (sc.x0->size() != sc.space.dim) {
      fail(origin, "x0 has " + std::to_string(sc.x0->size()) +
                       " entries but the space has dim = " +
                       std::to_string(sc.space.dim));
    }
    if (!contains(sc.space, Point(*sc.x0))) {
      fail(origin, "x0 lies outside the space");
    }
  }

  // Resolve the explicit class list.
  for (const auto& [name, line] : class_names) {
    std::optional<ContractionClass> c = contraction_class_from(name);
    if (!c) {
      fail_at(origin, line,
              "unknown class '" + name + "'; known classes: " +
                  known_classes());
    }
    for (const ClassSpec& prev : sc.classes) {
      if (prev.class_id == *c) {
        fail_at(origin, line, "class '" + name + "' listed twice");
      }
    }
    ClassSpec spec;
    spec.class_id = *c;
    if (class_needs_modulus(*c)) {
      if (auto it = modulus_overrides.find(name); it != modulus_overrides.end()) {
        spec.modulus = it->second.first;
        modulus_overrides.erase(it);
      } else {
        spec.modulus = default_modulus(sc.map, sc.space, *c);
        if (!spec.modulus) {
          fail_at(origin, line,
                  "class '" + name + "' requires a modulus: none cataloged "
                  "for map '" + std::string(to_string(sc.map.kind)) +
                  "' on this space (add modulus." + name +
                  " = <kind> [alpha])");
        }
      }
      if (*c == ContractionClass::asymptotic) {
        spec.horizon = horizon ? horizon->first : kDefaultHorizon;
        if (spec.horizon == 0) {
          fail_at(origin, horizon->second, "horizon must be >= 1");
        }
        horizon.reset();
      }
    }
    sc.classes.push_back(std::move(spec));
  }
  if (!modulus_overrides.empty()) {
    const auto& [cls, entry] = *modulus_overrides.begin();
    fail_at(origin, entry.second,
            "modulus." + cls + " given but '" + cls +
                "' is not in the classes list (or takes no modulus)");
  }
  if (horizon) {
    fail_at(origin, horizon->second,
            "horizon given but 'asymptotic' is not in the classes list");
  }

  return sc;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw std::runtime_error("cannot open scenario file: " + file.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), file.string());
}

// ---------------------------------------------------------------------------
// canonical writer

std::string write_scenario(const Scenario& scenario) {
  std::ostringstream out;
  out << "name = " << scenario.name << "\n";
  out << "seed = " << scenario.seed << "\n";
  out << "task = " << to_string(scenario.task) << "\n";

  out << "\n[space]\n";
  out << "dim = " << scenario.space.dim << "\n";
  out << "norm = " << to_string(scenario.space.norm) << "\n";
  if (scenario.space.ball_radius) {
    out << "ball_radius = " << format_double(*scenario.space.ball_radius)
        << "\n";
  }
  out << "nonnegative = " << (scenario.space.nonnegative ? "true" : "false")
      << "\n";

  out << "\n[map]\n";
  out << "kind = " << to_string(scenario.map.kind) << "\n";
  out << "alpha = " << format_double(scenario.map.alpha) << "\n";
  if (!scenario.map.shift.empty()) {
    out << "shift = " << format_vector(scenario.map.shift) << "\n";
  }
  out << "theta = " << format_double(scenario.map.theta) << "\n";

  out << "\n[run]\n";
  if (scenario.x0) out << "x0 = " << format_vector(*scenario.x0) << "\n";
  out << "eps = " << format_double(scenario.stopping.eps) << "\n";
  out << "max_iter = " << scenario.stopping.max_iter << "\n";
  if (scenario.stopping.divergence_radius) {
    out << "divergence_radius = "
        << format_double(*scenario.stopping.divergence_radius) << "\n";
  }
  out << "rate_window = " << scenario.stopping.rate_window << "\n";
  out << "store_stride = " << scenario.stopping.store_stride << "\n";

  out << "\n[classify]\n";
  if (!scenario.classes.empty()) {
    out << "classes =";
    for (const ClassSpec& spec : scenario.classes) {
      out << " " << to_string(spec.class_id);
    }
    out << "\n";
    for (const ClassSpec& spec : scenario.classes) {
      if (!spec.modulus) continue;
      out << "modulus." << to_string(spec.class_id) << " = ";
      switch (spec.modulus->kind) {
        case ModulusKind::linear:
          out << "linear " << format_double(spec.modulus->alpha);
          break;
        case ModulusKind::saturating:
          out << "saturating";
          break;
        case ModulusKind::power_family:
          out << "power-family " << format_double(spec.modulus->alpha);
          break;
      }
      out << "\n";
      if (spec.class_id == ContractionClass::asymptotic && spec.horizon) {
        out << "horizon = " << *spec.horizon << "\n";
      }
    }
  }
  out << "pair_count = " << scenario.pair_count << "\n";
  out << "min_separation = " << format_double(scenario.min_separation) << "\n";
  out << "slack = " << format_double(scenario.slack) << "\n";

  out << "\n[uniqueness]\n";
  out << "start_count = " << scenario.start_count << "\n";
  out << "tol = " << format_double(scenario.uniqueness_tol) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// execution

bool SummaryReport::all_checks_passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const auto& c) {
    return c.second == CheckOutcome::fail;
  });
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

ordered_json summary_to_json(const SummaryReport& report,
                             const ordered_json& result) {
  ordered_json j;
  j["scenario"] = report.scenario_name;
  j["task"] = std::string(to_string(report.task));
  j["status"] = report.status;
  ordered_json metrics;
  for (const auto& [k, v] : report.metrics) metrics[k] = v;
  j["metrics"] = std::move(metrics);
  ordered_json checks;
  for (const auto& [k, v] : report.checks) checks[k] = std::string(to_string(v));
  j["checks"] = std::move(checks);
  ordered_json skipped = ordered_json::array();
  for (const SkippedClass& s : report.skipped_classes) {
    ordered_json entry;
    entry["class"] = std::string(to_string(s.class_id));
    entry["reason"] = s.reason;
    skipped.push_back(std::move(entry));
  }
  j["skipped_classes"] = std::move(skipped);
  j["result"] = result;
  j["duration_seconds"] = report.duration_seconds;
  return j;
}

CheckOutcome outcome_of(bool ok) {
  return ok ? CheckOutcome::pass : CheckOutcome::fail;
}

}  // namespace

SummaryReport execute(const Scenario& scenario,
                      const std::filesystem::path& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  validate(scenario.space);
  validate(scenario.map);
  std::filesystem::create_directories(out_dir);

  SummaryReport report;
  report.scenario_name = scenario.name;
  report.task = scenario.task;
  ordered_json result;

  switch (scenario.task) {
    case Task::run: {
      const Point x0 =
          scenario.x0
              ? Point(*scenario.x0)
              : sample(scenario.space, 1, derive_seed(scenario.seed, "x0"))[0];
      RunResult r = run(scenario.map, scenario.space, x0, scenario.stopping);
      const IterationReport& ir = r.report;

      report.status = std::string(to_string(ir.status));
      report.metrics.emplace_back("iterations",
                                  static_cast<double>(ir.iterations));
      if (!r.trace.step_distance.empty()) {
        report.metrics.emplace_back("final-step-distance",
                                    r.trace.step_distance.back());
      }
      if (ir.estimated_rate) {
        report.metrics.emplace_back("estimated-rate", *ir.estimated_rate);
      }
      if (ir.tail_bound) {
        report.metrics.emplace_back("tail-bound", *ir.tail_bound);
      }

      // Converged runs must have certified the target accuracy.
      report.checks.emplace_back(
          "tail-bound-within-eps",
          ir.status == RunStatus::converged
              ? outcome_of(ir.tail_bound &&
                           *ir.tail_bound <= scenario.stopping.eps)
              : CheckOutcome::skipped);
      // Maps that strictly shrink distances must produce nonincreasing
      // step distances (up to rounding).
      if (catalog_entry(scenario.map.kind).strictly_nonexpansive) {
        bool monotone = true;
        const auto& sd = r.trace.step_distance;
        for (std::size_t i = 0; i + 1 < sd.size(); ++i) {
          if (sd[i + 1] > sd[i] * (1.0 + 1e-12)) monotone = false;
        }
        report.checks.emplace_back("steps-nonincreasing", outcome_of(monotone));
      } else {
        report.checks.emplace_back("steps-nonincreasing",
                                   CheckOutcome::skipped);
      }
      report.checks.emplace_back(
          "final-in-domain",
          outcome_of(contains(scenario.space, ir.final_point)));

      std::ostringstream trace_text;
      write_trace_jsonl(trace_text, r.trace);
      write_file(out_dir / "trace.jsonl", trace_text.str());
      result = to_json(ir);
      break;
    }

    case Task::classify: {
      std::vector<ClassSpec> specs = scenario.classes;
      if (specs.empty()) {
        auto resolved = resolve_catalog_classes(scenario.map, scenario.space);
        specs = std::move(resolved.first);
        report.skipped_classes = std::move(resolved.second);
      }
      PairSet pairs =
          sample_pairs(scenario.space, scenario.pair_count,
                       derive_seed(scenario.seed, "pairs"),
                       scenario.min_separation);
      std::vector<ContractionCertificate> certs;
      certs.reserve(specs.size());
      for (const ClassSpec& spec : specs) {
        certs.push_back(check_class(scenario.map, spec, pairs, scenario.slack));
      }

      std::size_t violated = 0;
      for (const ContractionCertificate& c : certs) {
        if (c.verdict == Verdict::violated) ++violated;
      }
      report.status = violated == 0 ? "all-consistent" : "violations";
      report.metrics.emplace_back("pairs",
                                  static_cast<double>(pairs.pairs.size()));
      for (const ContractionCertificate& c : certs) {
        report.metrics.emplace_back(
            "max-ratio." + std::string(to_string(c.class_id)), c.max_ratio);
      }

      bool agree = true;
      bool capped = true;
      for (const ContractionCertificate& c : certs) {
        agree = agree &&
                ((c.verdict == Verdict::violated) == !c.witnesses.empty());
        capped = capped && c.witnesses.size() <= kMaxWitnesses;
      }
      report.checks.emplace_back("witness-verdict-agreement",
                                 outcome_of(agree));
      report.checks.emplace_back("witness-cap", outcome_of(capped));
      // A map consistent with the uniform-factor family on this sample can
      // never refute plain strict decrease on the same sample.
      const auto find = [&](ContractionClass cl) -> const ContractionCertificate* {
        for (const auto& c : certs) {
          if (c.class_id == cl) return &c;
        }
        return nullptr;
      };
      const ContractionCertificate* banach = find(ContractionClass::banach);
      const ContractionCertificate* strict = find(ContractionClass::strict);
      report.checks.emplace_back(
          "banach-implies-strict",
          banach && strict
              ? outcome_of(banach->verdict == Verdict::violated ||
                           strict->verdict == Verdict::consistent)
              : CheckOutcome::skipped);

      std::ostringstream cert_text;
      write_certificates_json(cert_text, certs);
      write_file(out_dir / "certificates.json", cert_text.str());
      result = nullptr;
      break;
    }

    case Task::uniqueness: {
      const std::vector<Point> starts =
          sample(scenario.space, scenario.start_count,
                 derive_seed(scenario.seed, "starts"));
      UniquenessReport u =
          multi_start_uniqueness(scenario.map, scenario.space, starts,
                                 scenario.stopping, scenario.uniqueness_tol);

      report.status = std::string(to_string(u.verdict));
      std::size_t converged = 0;
      for (const IterationReport& ir : u.runs) {
        if (ir.status == RunStatus::converged) ++converged;
      }
      report.metrics.emplace_back("runs", static_cast<double>(u.runs.size()));
      report.metrics.emplace_back("converged-runs",
                                  static_cast<double>(converged));
      report.metrics.emplace_back("max-pairwise-distance",
                                  u.max_pairwise_distance);

      const UniquenessVerdict expected =
          converged < u.runs.size()
              ? UniquenessVerdict::inconclusive
              : (u.max_pairwise_distance <= scenario.uniqueness_tol
                     ? UniquenessVerdict::unique
                     : UniquenessVerdict::distinct);
      report.checks.emplace_back("verdict-consistent",
                                 outcome_of(u.verdict == expected));
      bool finals_ok = true;
      for (const IterationReport& ir : u.runs) {
        finals_ok = finals_ok && contains(scenario.space, ir.final_point);
      }
      report.checks.emplace_back("finals-in-domain", outcome_of(finals_ok));

      result["verdict"] = std::string(to_string(u.verdict));
      result["max_pairwise_distance"] = u.max_pairwise_distance;
      ordered_json runs = ordered_json::array();
      for (const IterationReport& ir : u.runs) runs.push_back(to_json(ir));
      result["runs"] = std::move(runs);
      break;
    }
  }

  const auto t1 = std::chrono::steady_clock::now();
  report.duration_seconds =
      std::chrono::duration<double>(t1 - t0).count();
  write_file(out_dir / "summary.json",
             summary_to_json(report, result).dump(2) + "\n");
  return report;
}

// ---------------------------------------------------------------------------
// misc

std::string list_maps_text() {
  std::ostringstream out;
  for (const CatalogEntry& e : catalog()) {
    out << e.name << "\n";
    out << "  params:      " << e.params << "\n";
    out << "  domain:      " << e.domain << "\n";
    out << "  closed form: " << (e.has_closed_form ? "yes" : "no") << "\n";
    out << "  strictly nonexpansive: "
        << (e.strictly_nonexpansive ? "yes" : "no") << "\n";
    out << "  " << e.note << "\n";
  }
  return out.str();
}

std::string_view to_string(Task task) {
  switch (task) {
    case Task::run: return "run";
    case Task::classify: return "classify";
    case Task::uniqueness: return "uniqueness";
  }
  return "unknown";
}

std::optional<Task> task_from(std::string_view name) {
  if (name == "run") return Task::run;
  if (name == "classify") return Task::classify;
  if (name == "uniqueness") return Task::uniqueness;
  return std::nullopt;
}

std::string_view to_string(CheckOutcome outcome) {
  switch (outcome) {
    case CheckOutcome::pass: return "pass";
    case CheckOutcome::fail: return "fail";
    case CheckOutcome::skipped: return "skipped";
  }
  return "unknown";
}

}  // namespace fixlab
