#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fixlab/mapping.hpp"
#include "fixlab/metric.hpp"

namespace fixlab {

// Step ratios with a denominator below this floor are meaningless noise and
// reported as absent.
inline constexpr double kRatioFloor = 1e-14;

struct StoppingConfig {
  double eps = 1e-8;
  std::size_t max_iter = 10000;
  // Absent: defaults to 1e6 * (1 + d(x0, Tx0)) at run start.
  std::optional<double> divergence_radius;
  std::size_t rate_window = 16;  // >= 2
  // Reserved. No cycle detection is performed: strict step decrease precludes
  // cycles for the catalog's strictly nonexpansive maps, and the ratio test
  // already refuses to certify orbits that stop contracting.
  std::size_t cycle_window = 0;
  // Orbit points are stored at indices divisible by the stride; 0 selects
  // a stride that keeps dim * max_iter / stride <= 1e7 stored coordinates.
  std::size_t store_stride = 0;

  friend bool operator==(const StoppingConfig&, const StoppingConfig&) = default;
};

void validate(const StoppingConfig& config);

enum class RunStatus { converged, max_iter, diverged };

// Recorded orbit diagnostics. step_distance[n] = d(x_n, x_{n+1}) for every
// step taken; points are subsampled by point_stride.
struct OrbitTrace {
  std::vector<double> step_distance;
  std::vector<Point> stored_points;  // stored_points[i] is x_{i*point_stride}
  std::size_t point_stride = 1;

  std::size_t steps() const { return step_distance.size(); }

  // r_n = d(x_{n+1},x_{n+2}) / d(x_n,x_{n+1}); absent when the denominator is
  // below kRatioFloor or the next step is unrecorded.
  std::optional<double> ratio(std::size_t n) const;

  // Per-step analogue of a uniform strictness gap:
  //   g_n = 1 - d(Tx_n,Tx_{n+1}) / max{d(x_n,x_{n+1}), d(x_n,Tx_n), d(x_{n+1},Tx_{n+1})}
  // which reduces to 1 - sd_{n+1}/max(sd_n, sd_{n+1}) along an orbit.
  std::optional<double> gap(std::size_t n) const;

  // The stored orbit point x_n, when the stride kept it.
  std::optional<Point> point_at(std::size_t n) const;
};

struct IterationReport {
  RunStatus status = RunStatus::max_iter;
  std::size_t iterations = 0;  // applications of T performed
  Point final_point;
  std::optional<double> estimated_rate;  // windowed max ratio, when in [0,1]
  std::optional<double> tail_bound;      // d(x_n,x_{n+1})/(1-r̂), when r̂ < 1
  std::optional<Point> limit_proxy;      // final iterate, converged runs only
};

struct RunResult {
  IterationReport report;
  OrbitTrace trace;
};

// Picard iteration x_{n+1} = T(x_n) from x0 (which must lie in the space).
// Convergence is declared only through the windowed-ratio tail bound: with
// r̂ = max of the last rate_window ratios, the run converges only if r̂ < 1
// and d(x_n,x_{n+1})/(1-r̂) <= eps — in fact the engine waits for the bound
// to clear eps with a factor-two margin, since the windowed estimate can
// trail a still-rising ratio sequence. Convergence is never declared on raw
// step size, so slowly drifting orbits with ratios -> 1 are correctly
// refused. Divergence is declared when d(x_n, x0) exceeds the divergence
// radius; otherwise the run stops at max_iter.
RunResult run(const MappingSpec& map, const SpaceDescriptor& space,
              const Point& x0, const StoppingConfig& config);

// Geometric tail estimate at a recorded step: with r̂ = max of the ratios
// r_at .. r_{at+window-1}, returns d(x_at,x_{at+1})/(1-r̂). Returns 0 when the
// step distance at `at` is exactly 0 (orbit landed on a fixed point), and
// nullopt when r̂ >= 1 or a ratio in the window is unavailable. The estimate
// bounds the true distance-to-limit only when r̂ dominates all later ratios.
std::optional<double> tail_bound(const OrbitTrace& trace, std::size_t at,
                                 std::size_t window);

// Orbit-boundedness transfer: given sup_n d(T^n x0, x0) <= orbit_sup for a
// reference point x0, every iterate from x satisfies d(T^n x, x) <= B with
//   B = max{d(x,x0), d(Tx,x), d(Tx0,x0)} + orbit_sup + d(x0,x).
double boundedness_transfer_bound(const MappingSpec& map,
                                  const SpaceDescriptor& space, const Point& x,
                                  const Point& x0, double orbit_sup);

// M_n = max{d(x_n, limit_proxy), d(x_n, x_{n-1})} for n = 1..N over the
// stored orbit. Requires point_stride == 1 (std::invalid_argument otherwise).
// For maps that strictly shrink the three-term max, M is nonincreasing.
std::vector<double> monotone_max_series(const OrbitTrace& trace,
                                        const Point& limit_proxy,
                                        const SpaceDescriptor& space);

enum class UniquenessVerdict { unique, distinct, inconclusive };

struct UniquenessReport {
  UniquenessVerdict verdict = UniquenessVerdict::inconclusive;
  double max_pairwise_distance = 0.0;  // over the runs' final points
  std::vector<IterationReport> runs;
};

// Runs the engine from every start. unique: all runs converged and the final
// points lie pairwise within tol. distinct: all converged but some pair is
// farther than tol. inconclusive: some run failed to converge. Empty starts
// are rejected.
UniquenessReport multi_start_uniqueness(const MappingSpec& map,
                                        const SpaceDescriptor& space,
                                        std::span<const Point> starts,
                                        const StoppingConfig& config,
                                        double tol);

std::string_view to_string(RunStatus status);
std::string_view to_string(UniquenessVerdict verdict);

}  // namespace fixlab
