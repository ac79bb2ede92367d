#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace fixlab {

// A point of R^d. Coordinates are validated finite on construction; the
// invariant dim() == coords().size() holds by representation.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);  // throws on non-finite entries

  static Point zeros(std::size_t dim);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

enum class Norm { l1, l2, linf };

// Finite-dimensional host space: R^dim under an l1/l2/linf metric, optionally
// cut down to the closed p-norm ball of ball_radius and/or the nonnegative
// orthant. The truncated sequence-space example is dim-dimensional l2 with
// ball_radius = 1 and nonnegative = true.
struct SpaceDescriptor {
  std::size_t dim = 1;
  Norm norm = Norm::l2;
  std::optional<double> ball_radius;  // requires > 0 when present
  bool nonnegative = false;

  friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;
};

// Throws std::invalid_argument when the descriptor is malformed.
void validate(const SpaceDescriptor& space);

double norm_of(const SpaceDescriptor& space, const Point& x);
double distance(const SpaceDescriptor& space, const Point& a, const Point& b);

// Exact membership: norm bound and sign constraints with no tolerance.
bool contains(const SpaceDescriptor& space, const Point& x);

// count points inside the space, deterministic per seed (bit-reproducible).
// Bounded sets draw by rejection from the bounding box under a shared
// per-call attempt budget, falling back to radial scaling (uniform direction,
// radius R*u^(1/dim)) once the budget is spent or provably hopeless.
// Unbounded coordinates are drawn uniformly from the unit box.
std::vector<Point> sample(const SpaceDescriptor& space, std::size_t count,
                          std::uint64_t seed);

std::string_view to_string(Norm norm);

class Rng;

namespace detail {

// Sampling primitives shared with pair sampling. budget is the remaining
// rejection allowance for the call; draw_point decrements it and falls back
// to radial scaling once it reaches zero.
std::size_t rejection_budget(const SpaceDescriptor& space);
Point draw_point(const SpaceDescriptor& space, Rng& rng, std::size_t& budget);

}  // namespace detail

}  // namespace fixlab
