#include "fixlab/iterate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace fixlab {

namespace {

// The engine declares convergence only when the geometric tail bound is
// under this fraction of eps.  The windowed rate estimate can run slightly
// below the true decay for mappings whose per-step ratio is still rising
// toward its limit, which makes the raw bound undershoot the true distance
// to the limit by a few percent; the factor-of-two margin absorbs that.
constexpr double kTailMargin = 0.5;

std::size_t resolve_stride(const StoppingConfig& config,
                           const SpaceDescriptor& space) {
  if (config.store_stride > 0) return config.store_stride;
  const double coords = (static_cast<double>(config.max_iter) + 1.0) *
                        static_cast<double>(space.dim);
  constexpr double kMaxStoredCoords = 1e7;
  if (coords <= kMaxStoredCoords) return 1;
  return static_cast<std::size_t>(std::ceil(coords / kMaxStoredCoords));
}

// Max ratio over the last `window` consecutive steps, or nullopt when any
// of them is unavailable (too early, or a denominator at the noise floor).
std::optional<double> windowed_rate(const OrbitTrace& trace,
                                    std::size_t window) {
  const std::size_t m = trace.steps();
  if (m < window + 1) return std::nullopt;
  double worst = 0.0;
  for (std::size_t i = m - 1 - window; i < m - 1; ++i) {
    std::optional<double> r = trace.ratio(i);
    if (!r) return std::nullopt;
    worst = std::max(worst, *r);
  }
  return worst;
}

}  // namespace

void validate(const StoppingConfig& config) {
  if (!(config.eps > 0.0) || !std::isfinite(config.eps)) {
    throw std::invalid_argument("stopping: eps must be finite and > 0");
  }
  if (config.max_iter == 0) {
    throw std::invalid_argument("stopping: max_iter must be >= 1");
  }
  if (config.divergence_radius &&
      (!(*config.divergence_radius > 0.0) ||
       !std::isfinite(*config.divergence_radius))) {
    throw std::invalid_argument(
        "stopping: divergence_radius must be finite and > 0");
  }
  if (config.rate_window < 2) {
    throw std::invalid_argument("stopping: rate_window must be >= 2");
  }
  if (config.cycle_window != 0) {
    throw std::invalid_argument(
        "stopping: cycle detection is reserved; cycle_window must be 0");
  }
}

std::optional<double> OrbitTrace::ratio(std::size_t n) const {
  if (n + 1 >= step_distance.size()) return std::nullopt;
  if (step_distance[n] <= kRatioFloor) return std::nullopt;
  return step_distance[n + 1] / step_distance[n];
}

std::optional<double> OrbitTrace::gap(std::size_t n) const {
  if (n + 1 >= step_distance.size()) return std::nullopt;
  const double hi = std::max(step_distance[n], step_distance[n + 1]);
  if (hi <= 0.0) return std::nullopt;
  return 1.0 - step_distance[n + 1] / hi;
}

std::optional<Point> OrbitTrace::point_at(std::size_t n) const {
  if (point_stride == 0 || n % point_stride != 0) return std::nullopt;
  const std::size_t slot = n / point_stride;
  if (slot >= stored_points.size()) return std::nullopt;
  return stored_points[slot];
}

RunResult run(const MappingSpec& map, const SpaceDescriptor& space,
              const Point& x0, const StoppingConfig& config) {
  validate(map);
  validate(space);
  validate(config);
  if (x0.dim() != space.dim) {
    throw std::invalid_argument("run: x0 dimension does not match the space");
  }
  if (!contains(space, x0)) {
    throw std::invalid_argument("run: x0 lies outside the domain");
  }

  const double radius =
      config.divergence_radius
          ? *config.divergence_radius
          : 1e6 * (1.0 + distance(space, x0, apply(map, x0)));

  OrbitTrace trace;
  trace.point_stride = resolve_stride(config, space);
  trace.step_distance.reserve(std::min<std::size_t>(config.max_iter, 1 << 20));
  trace.stored_points.push_back(x0);

  RunStatus status = RunStatus::max_iter;
  Point x = x0;
  std::size_t iterations = 0;
  bool hit_zero = false;

  for (std::size_t n = 0; n < config.max_iter; ++n) {
    Point next = apply(map, x);
    if (!contains(space, next)) {
      throw std::domain_error("run: iterate " + std::to_string(n + 1) +
                              " left the domain; the map is not a self-map "
                              "of this space");
    }
    const double sd = distance(space, x, next);
    trace.step_distance.push_back(sd);
    x = std::move(next);
    iterations = n + 1;
    if (iterations % trace.point_stride == 0) trace.stored_points.push_back(x);

    if (distance(space, x, x0) > radius) {
      status = RunStatus::diverged;
      break;
    }
    if (sd == 0.0) {
      // Exact fixed point reached: the orbit is constant from here on.
      status = RunStatus::converged;
      hit_zero = true;
      break;
    }
    std::optional<double> rate = windowed_rate(trace, config.rate_window);
    if (rate && *rate < 1.0) {
      const double bound = sd / (1.0 - *rate);
      if (bound <= config.eps * kTailMargin) {
        status = RunStatus::converged;
        break;
      }
    }
  }

  IterationReport report{status, iterations, x, std::nullopt, std::nullopt,
                         std::nullopt};
  if (hit_zero) {
    report.tail_bound = 0.0;
  } else if (std::optional<double> rate =
                 windowed_rate(trace, config.rate_window)) {
    if (*rate <= 1.0) report.estimated_rate = rate;
    if (*rate < 1.0) {
      report.tail_bound = trace.step_distance.back() / (1.0 - *rate);
    }
  }
  if (status == RunStatus::converged) report.limit_proxy = x;
  return RunResult{std::move(report), std::move(trace)};
}

std::optional<double> tail_bound(const OrbitTrace& trace, std::size_t at,
                                 std::size_t window) {
  if (window == 0) {
    throw std::invalid_argument("tail_bound: window must be >= 1");
  }
  if (at >= trace.steps()) {
    throw std::out_of_range("tail_bound: step index out of range");
  }
  if (trace.step_distance[at] == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = at; i < at + window; ++i) {
    std::optional<double> r = trace.ratio(i);
    if (!r) return std::nullopt;
    worst = std::max(worst, *r);
  }
  if (worst >= 1.0) return std::nullopt;
  return trace.step_distance[at] / (1.0 - worst);
}

double boundedness_transfer_bound(const MappingSpec& map,
                                  const SpaceDescriptor& space, const Point& x,
                                  const Point& x0, double orbit_sup) {
  validate(map);
  validate(space);
  if (!(orbit_sup >= 0.0)) {
    throw std::invalid_argument(
        "boundedness_transfer_bound: orbit_sup must be >= 0");
  }
  const double head = std::max({distance(space, x, x0),
                                distance(space, apply(map, x), x),
                                distance(space, apply(map, x0), x0)});
  return head + orbit_sup + distance(space, x0, x);
}

std::vector<double> monotone_max_series(const OrbitTrace& trace,
                                        const Point& limit_proxy,
                                        const SpaceDescriptor& space) {
  if (trace.point_stride != 1) {
    throw std::invalid_argument(
        "monotone_max_series: requires a trace stored at every step");
  }
  const std::size_t points = trace.stored_points.size();
  std::vector<double> series;
  if (points < 2) return series;
  series.reserve(points - 1);
  for (std::size_t n = 1; n < points; ++n) {
    const double to_limit =
        distance(space, trace.stored_points[n], limit_proxy);
    series.push_back(std::max(to_limit, trace.step_distance[n - 1]));
  }
  return series;
}

UniquenessReport multi_start_uniqueness(const MappingSpec& map,
                                        const SpaceDescriptor& space,
                                        std::span<const Point> starts,
                                        const StoppingConfig& config,
                                        double tol) {
  if (starts.empty()) {
    throw std::invalid_argument("multi_start_uniqueness: no starting points");
  }
  if (!(tol >= 0.0)) {
    throw std::invalid_argument("multi_start_uniqueness: tol must be >= 0");
  }

  UniquenessReport report;
  report.max_pairwise_distance = 0.0;
  std::vector<Point> finals;
  finals.reserve(starts.size());
  bool all_converged = true;
  for (const Point& s : starts) {
    RunResult r = run(map, space, s, config);
    all_converged = all_converged && r.report.status == RunStatus::converged;
    finals.push_back(r.report.final_point);
    report.runs.push_back(std::move(r.report));
  }
  for (std::size_t i = 0; i < finals.size(); ++i) {
    for (std::size_t j = i + 1; j < finals.size(); ++j) {
      report.max_pairwise_distance =
          std::max(report.max_pairwise_distance,
                   distance(space, finals[i], finals[j]));
    }
  }
  if (!all_converged) {
    report.verdict = UniquenessVerdict::inconclusive;
  } else if (report.max_pairwise_distance <= tol) {
    report.verdict = UniquenessVerdict::unique;
  } else {
    report.verdict = UniquenessVerdict::distinct;
  }
  return report;
}

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::converged: return "converged";
    case RunStatus::max_iter: return "max-iter";
    case RunStatus::diverged: return "diverged";
  }
  return "unknown";
}

std::string_view to_string(UniquenessVerdict v) {
  switch (v) {
    case UniquenessVerdict::unique: return "unique";
    case UniquenessVerdict::distinct: return "distinct";
    case UniquenessVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

}  // namespace fixlab
