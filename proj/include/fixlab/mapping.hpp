#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fixlab/metric.hpp"

namespace fixlab {

// Closed catalog of self-maps the laboratory studies.
//
//   affine-contraction  T(x) = alpha*x + shift          alpha in (0,1)
//   shift-damping       T(x)_k = k/(k+1) * x_k          (1-based k)
//   saturating          T(x)_i = x_i / (1 + x_i)        x_i >= 0
//   exp-drift           T(x)_i = x_i + exp(-x_i)        x_i >= 0
//   rotation            plane rotation by theta         dim == 2
//   identity            T(x) = x
enum class MapKind {
  affine_contraction,
  shift_damping,
  saturating,
  exp_drift,
  rotation,
  identity,
};

struct MappingSpec {
  MapKind kind = MapKind::identity;
  double alpha = 0.5;          // affine-contraction factor
  std::vector<double> shift;   // affine-contraction offset; empty = origin
  double theta = 0.0;          // rotation angle, radians

  static MappingSpec affine(double alpha, std::vector<double> shift = {});
  static MappingSpec shift_damping();
  static MappingSpec saturating();
  static MappingSpec exp_drift();
  static MappingSpec rotation(double theta);
  static MappingSpec identity();

  friend bool operator==(const MappingSpec&, const MappingSpec&) = default;
};

void validate(const MappingSpec& map);

// One application of T. Throws std::invalid_argument when x is outside the
// map's natural domain (negative coordinates for saturating/exp-drift,
// dim != 2 for rotation, shift/dim mismatch for affine-contraction).
Point apply(const MappingSpec& map, const Point& x);

// n-fold application by direct iteration; n = 0 returns x.
Point apply_n(const MappingSpec& map, const Point& x, std::size_t n);

// Analytic n-th iterate where one exists, computed with per-component power
// functions rather than repeated multiplication:
//   shift-damping       x_k * (k/(k+1))^n
//   saturating          x_i / (1 + n*x_i)
//   affine-contraction  alpha^n*x + (1-alpha^n)/(1-alpha)*shift
// Other kinds return nullopt.
std::optional<Point> closed_form(const MappingSpec& map, const Point& x,
                                 std::size_t n);

// Comparison moduli psi with 0 <= psi(t) < t for t > 0 (enforced on the
// parameters at validation):
//   linear         psi(t) = alpha*t            alpha in [0,1)
//   saturating     psi(t) = t/(1+t)
//   power-family   psi_n(t) = alpha^n * t      alpha in [0,1), needs n
enum class ModulusKind { linear, saturating, power_family };

struct ModulusSpec {
  ModulusKind kind = ModulusKind::linear;
  double alpha = 0.5;

  static ModulusSpec linear(double alpha);
  static ModulusSpec saturating();
  static ModulusSpec power_family(double alpha);

  friend bool operator==(const ModulusSpec&, const ModulusSpec&) = default;
};

void validate(const ModulusSpec& modulus);

// psi(t), or psi_n(t) for the power family. t must be >= 0; n is required
// exactly when kind == power_family (std::invalid_argument otherwise).
double evaluate_modulus(const ModulusSpec& modulus, double t,
                        std::optional<std::size_t> n = std::nullopt);

struct CatalogEntry {
  MapKind kind;
  std::string_view name;
  std::string_view params;
  std::string_view domain;
  bool has_closed_form;
  // Known to satisfy d(Tx,Ty) < d(x,y) for x != y on the natural domain;
  // drives which run diagnostics are applicable.
  bool strictly_nonexpansive;
  std::string_view note;
};

std::span<const CatalogEntry> catalog();
const CatalogEntry& catalog_entry(MapKind kind);

std::string_view to_string(MapKind kind);
std::optional<MapKind> map_kind_from(std::string_view name);

}  // namespace fixlab
