#include "fixlab/mapping.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fixlab {

MappingSpec MappingSpec::affine(double alpha, std::vector<double> shift) {
  MappingSpec m;
  m.kind = MapKind::affine_contraction;
  m.alpha = alpha;
  m.shift = std::move(shift);
  validate(m);
  return m;
}

MappingSpec MappingSpec::shift_damping() {
  MappingSpec m;
  m.kind = MapKind::shift_damping;
  return m;
}

MappingSpec MappingSpec::saturating() {
  MappingSpec m;
  m.kind = MapKind::saturating;
  return m;
}

MappingSpec MappingSpec::exp_drift() {
  MappingSpec m;
  m.kind = MapKind::exp_drift;
  return m;
}

MappingSpec MappingSpec::rotation(double theta) {
  MappingSpec m;
  m.kind = MapKind::rotation;
  m.theta = theta;
  validate(m);
  return m;
}

MappingSpec MappingSpec::identity() { return MappingSpec{}; }

void validate(const MappingSpec& map) {
  switch (map.kind) {
    case MapKind::affine_contraction:
      if (!(map.alpha > 0.0 && map.alpha < 1.0)) {
        throw std::invalid_argument(
            "affine-contraction: alpha must lie strictly in (0,1)");
      }
      for (double s : map.shift) {
        if (!std::isfinite(s)) {
          throw std::invalid_argument("affine-contraction: shift must be finite");
        }
      }
      break;
    case MapKind::rotation:
      if (!std::isfinite(map.theta)) {
        throw std::invalid_argument("rotation: theta must be finite");
      }
      break;
    default:
      break;
  }
}

namespace {

void require_nonnegative(const Point& x, const char* name) {
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (x[i] < 0.0) {
      throw std::invalid_argument(std::string(name) +
                                  ": point outside the nonnegative orthant");
    }
  }
}

}  // namespace

Point apply(const MappingSpec& map, const Point& x) {
  validate(map);
  std::vector<double> y(x.dim());
  switch (map.kind) {
    case MapKind::identity:
      return x;
    case MapKind::affine_contraction: {
      if (!map.shift.empty() && map.shift.size() != x.dim()) {
        throw std::invalid_argument(
            "affine-contraction: shift dimension does not match the point");
      }
      for (std::size_t i = 0; i < x.dim(); ++i) {
        y[i] = map.alpha * x[i];
        if (!map.shift.empty()) y[i] += map.shift[i];
      }
      break;
    }
    case MapKind::shift_damping: {
      // 1-based component k is damped by k/(k+1).
      for (std::size_t i = 0; i < x.dim(); ++i) {
        y[i] = x[i] * (static_cast<double>(i + 1) / static_cast<double>(i + 2));
      }
      break;
    }
    case MapKind::saturating: {
      require_nonnegative(x, "saturating");
      for (std::size_t i = 0; i < x.dim(); ++i) y[i] = x[i] / (1.0 + x[i]);
      break;
    }
    case MapKind::exp_drift: {
      require_nonnegative(x, "exp-drift");
      for (std::size_t i = 0; i < x.dim(); ++i) y[i] = x[i] + std::exp(-x[i]);
      break;
    }
    case MapKind::rotation: {
      if (x.dim() != 2) {
        throw std::invalid_argument("rotation: requires dimension 2");
      }
      const double c = std::cos(map.theta);
      const double s = std::sin(map.theta);
      y[0] = c * x[0] - s * x[1];
      y[1] = s * x[0] + c * x[1];
      break;
    }
  }
  return Point{std::move(y)};
}

Point apply_n(const MappingSpec& map, const Point& x, std::size_t n) {
  Point y = x;
  for (std::size_t i = 0; i < n; ++i) y = apply(map, y);
  return y;
}

std::optional<Point> closed_form(const MappingSpec& map, const Point& x,
                                 std::size_t n) {
  validate(map);
  const double nd = static_cast<double>(n);
  std::vector<double> y(x.dim());
  switch (map.kind) {
    case MapKind::shift_damping: {
      for (std::size_t i = 0; i < x.dim(); ++i) {
        const double rho =
            static_cast<double>(i + 1) / static_cast<double>(i + 2);
        y[i] = x[i] * std::pow(rho, nd);
      }
      return Point{std::move(y)};
    }
    case MapKind::saturating: {
      require_nonnegative(x, "saturating");
      for (std::size_t i = 0; i < x.dim(); ++i) y[i] = x[i] / (1.0 + nd * x[i]);
      return Point{std::move(y)};
    }
    case MapKind::affine_contraction: {
      if (!map.shift.empty() && map.shift.size() != x.dim()) {
        throw std::invalid_argument(
            "affine-contraction: shift dimension does not match the point");
      }
      const double an = std::pow(map.alpha, nd);
      const double geom = (1.0 - an) / (1.0 - map.alpha);
      for (std::size_t i = 0; i < x.dim(); ++i) {
        y[i] = an * x[i];
        if (!map.shift.empty()) y[i] += geom * map.shift[i];
      }
      return Point{std::move(y)};
    }
    default:
      return std::nullopt;
  }
}

ModulusSpec ModulusSpec::linear(double alpha) {
  ModulusSpec m{ModulusKind::linear, alpha};
  validate(m);
  return m;
}

ModulusSpec ModulusSpec::saturating() {
  return ModulusSpec{ModulusKind::saturating, 0.0};
}

ModulusSpec ModulusSpec::power_family(double alpha) {
  ModulusSpec m{ModulusKind::power_family, alpha};
  validate(m);
  return m;
}

void validate(const ModulusSpec& modulus) {
  switch (modulus.kind) {
    case ModulusKind::linear:
    case ModulusKind::power_family:
      // Keeps 0 <= psi(t) < t for t > 0 (n >= 1 iterates for the family).
      if (!(modulus.alpha >= 0.0 && modulus.alpha < 1.0)) {
        throw std::invalid_argument("modulus: alpha must lie in [0,1)");
      }
      break;
    case ModulusKind::saturating:
      break;
  }
}

double evaluate_modulus(const ModulusSpec& modulus, double t,
                        std::optional<std::size_t> n) {
  validate(modulus);
  if (!(t >= 0.0)) {
    throw std::invalid_argument("evaluate_modulus: t must be >= 0");
  }
  switch (modulus.kind) {
    case ModulusKind::linear:
      return modulus.alpha * t;
    case ModulusKind::saturating:
      return t / (1.0 + t);
    case ModulusKind::power_family:
      if (!n) {
        throw std::invalid_argument(
            "evaluate_modulus: power-family requires the iterate count n");
      }
      return std::pow(modulus.alpha, static_cast<double>(*n)) * t;
  }
  return 0.0;
}

namespace {

constexpr std::array<CatalogEntry, 6> kCatalog{{
    {MapKind::affine_contraction, "affine-contraction",
     "alpha in (0,1); optional shift vector", "all of R^d", true, true,
     "linear contraction with factor alpha; fixed point shift/(1-alpha)"},
    {MapKind::shift_damping, "shift-damping", "none",
     "nonnegative orthant of the unit l2 ball", true, true,
     "diagonal damping x_k -> k/(k+1)*x_k; unique fixed point at the origin"},
    {MapKind::saturating, "saturating", "none", "nonnegative orthant", true,
     true, "x -> x/(1+x) per coordinate; fixed point 0, approached like 1/n"},
    {MapKind::exp_drift, "exp-drift", "none", "nonnegative orthant", false,
     true, "x -> x + exp(-x); no fixed point, orbit grows like log n"},
    {MapKind::rotation, "rotation", "theta in radians", "R^2 (norm balls ok)",
     false, false, "isometry; nonexpansive but never strictly so"},
    {MapKind::identity, "identity", "none", "all of R^d", false, false,
     "every point is fixed; degenerate reference case"},
}};

}  // namespace

std::span<const CatalogEntry> catalog() { return kCatalog; }

const CatalogEntry& catalog_entry(MapKind kind) {
  for (const auto& e : kCatalog) {
    if (e.kind == kind) return e;
  }
  throw std::logic_error("catalog_entry: unknown kind");
}

std::string_view to_string(MapKind kind) { return catalog_entry(kind).name; }

std::optional<MapKind> map_kind_from(std::string_view name) {
  for (const auto& e : kCatalog) {
    if (e.name == name) return e.kind;
  }
  return std::nullopt;
}

}  // namespace fixlab
