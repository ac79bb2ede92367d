#include "fixlab/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fixlab/rng.hpp"

namespace fixlab {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  for (double c : coords_) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("Point: coordinates must be finite");
    }
  }
}

Point Point::zeros(std::size_t dim) {
  return Point(std::vector<double>(dim, 0.0));
}

void validate(const SpaceDescriptor& space) {
  if (space.dim == 0) {
    throw std::invalid_argument("SpaceDescriptor: dim must be positive");
  }
  if (space.ball_radius && !(*space.ball_radius > 0.0 &&
                             std::isfinite(*space.ball_radius))) {
    throw std::invalid_argument("SpaceDescriptor: ball_radius must be finite and > 0");
  }
}

namespace {

void require_dim(const SpaceDescriptor& space, const Point& x, const char* what) {
  if (x.dim() != space.dim) {
    throw std::invalid_argument(std::string(what) + ": point dimension " +
                                std::to_string(x.dim()) +
                                " does not match space dimension " +
                                std::to_string(space.dim));
  }
}

double accumulate_norm(const SpaceDescriptor& space, const Point& a,
                       const Point* b) {
  double sum = 0.0;
  double sup = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = std::abs(b ? a[i] - (*b)[i] : a[i]);
    switch (space.norm) {
      case Norm::l1: sum += d; break;
      case Norm::l2: sum += d * d; break;
      case Norm::linf: sup = std::max(sup, d); break;
    }
  }
  switch (space.norm) {
    case Norm::l1: return sum;
    case Norm::l2: return std::sqrt(sum);
    case Norm::linf: return sup;
  }
  return 0.0;
}

}  // namespace

double norm_of(const SpaceDescriptor& space, const Point& x) {
  require_dim(space, x, "norm_of");
  return accumulate_norm(space, x, nullptr);
}

double distance(const SpaceDescriptor& space, const Point& a, const Point& b) {
  require_dim(space, a, "distance");
  require_dim(space, b, "distance");
  return accumulate_norm(space, a, &b);
}

bool contains(const SpaceDescriptor& space, const Point& x) {
  require_dim(space, x, "contains");
  if (space.nonnegative) {
    for (std::size_t i = 0; i < x.dim(); ++i) {
      if (x[i] < 0.0) return false;
    }
  }
  if (space.ball_radius) {
    if (accumulate_norm(space, x, nullptr) > *space.ball_radius) return false;
  }
  return true;
}

namespace {

constexpr std::size_t kRejectionBudget = 1'000'000;

}  // namespace

namespace detail {

// Candidate-draw budget for rejection from the bounding box. When the
// ball-to-box volume ratio makes even one acceptance within the budget
// unlikely (high dimension), skip straight to the radial fallback.
std::size_t rejection_budget(const SpaceDescriptor& space) {
  if (!space.ball_radius || space.norm == Norm::linf) return kRejectionBudget;
  const double d = static_cast<double>(space.dim);
  double log_ratio = 0.0;  // log(vol(ball)/vol(box)); orthant cuts cancel
  switch (space.norm) {
    case Norm::l2:
      log_ratio = 0.5 * d * std::log(std::numbers::pi) - d * std::log(2.0) -
                  std::lgamma(0.5 * d + 1.0);
      break;
    case Norm::l1:
      log_ratio = -std::lgamma(d + 1.0);
      break;
    case Norm::linf:
      break;
  }
  if (std::exp(log_ratio) * static_cast<double>(kRejectionBudget) < 1.0) {
    return 0;
  }
  return kRejectionBudget;
}

}  // namespace detail

namespace {

Point radial_fallback(const SpaceDescriptor& space, Rng& rng) {
  const double radius = *space.ball_radius;
  std::vector<double> dir(space.dim);
  double dir_norm = 0.0;
  do {
    for (auto& c : dir) {
      c = rng.normal();
      if (space.nonnegative) c = std::abs(c);
    }
    dir_norm = accumulate_norm(space, Point(dir), nullptr);
  } while (dir_norm == 0.0);
  const double r =
      radius * std::pow(rng.uniform01(), 1.0 / static_cast<double>(space.dim));
  std::vector<double> coords(space.dim);
  for (std::size_t i = 0; i < space.dim; ++i) coords[i] = dir[i] * (r / dir_norm);
  Point p{std::move(coords)};
  // Rounding can land a hair outside the ball; nudge inward until membership
  // holds exactly.
  for (int guard = 0; guard < 64 && !contains(space, p); ++guard) {
    std::vector<double> shrunk = p.coords();
    for (auto& c : shrunk) c *= 1.0 - 0x1.0p-44;
    p = Point{std::move(shrunk)};
  }
  if (!contains(space, p)) {
    throw std::logic_error("sample: radial fallback failed to enter the set");
  }
  return p;
}

}  // namespace

namespace detail {

// Shared by sample() and pair sampling; budget is the remaining rejection
// allowance for the whole call.
Point draw_point(const SpaceDescriptor& space, Rng& rng, std::size_t& budget) {
  const bool bounded = space.ball_radius.has_value();
  const double half = bounded ? *space.ball_radius : 1.0;
  const double lo = space.nonnegative ? 0.0 : -half;
  std::vector<double> coords(space.dim);
  if (!bounded) {
    for (auto& c : coords) c = rng.uniform(lo, half);
    return Point{std::move(coords)};
  }
  while (budget > 0) {
    --budget;
    for (auto& c : coords) c = rng.uniform(lo, half);
    Point candidate{std::move(coords)};
    if (contains(space, candidate)) return candidate;
    coords = std::vector<double>(space.dim);
  }
  return radial_fallback(space, rng);
}

}  // namespace detail

std::vector<Point> sample(const SpaceDescriptor& space, std::size_t count,
                          std::uint64_t seed) {
  validate(space);
  if (count == 0) {
    throw std::invalid_argument("sample: count must be positive");
  }
  Rng rng(seed);
  std::size_t budget = detail::rejection_budget(space);
  std::vector<Point> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    points.push_back(detail::draw_point(space, rng, budget));
  }
  return points;
}

std::string_view to_string(Norm norm) {
  switch (norm) {
    case Norm::l1: return "1";
    case Norm::l2: return "2";
    case Norm::linf: return "inf";
  }
  return "?";
}

}  // namespace fixlab
