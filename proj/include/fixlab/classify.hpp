#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fixlab/mapping.hpp"
#include "fixlab/metric.hpp"

namespace fixlab {

// Contraction-type families ordered from strongest to weakest hypothesis.
// banach/strict/generalized_strict compare d(Tx,Ty) against d(x,y) (or the
// three-term max); rakotch/boyd_wong/asymptotic compare against a modulus.
// Rakotch's alpha(t)*t and Boyd-Wong's psi(t) are mechanically the same
// right-hand side here (psi(t) = alpha(t)*t); only the reading differs.
enum class ContractionClass {
  banach,
  rakotch,
  boyd_wong,
  asymptotic,
  strict,
  generalized_strict,
};

struct ClassSpec {
  ContractionClass class_id = ContractionClass::strict;
  std::optional<ModulusSpec> modulus;     // required for rakotch/boyd_wong/asymptotic
  std::optional<std::size_t> horizon;     // required for asymptotic; iterate count n

  friend bool operator==(const ClassSpec&, const ClassSpec&) = default;
};

enum class Verdict { consistent, violated };

struct Witness {
  Point x;
  Point y;
  double lhs = 0.0;
  double rhs = 0.0;
};

// Empirical evidence for one class on one sampled pair set. "consistent"
// means no sampled pair refutes the class inequality at the given slack; it
// is never a proof. max_ratio is the largest observed lhs/rhs over pairs with
// rhs > 0 (for banach this is the estimated contraction factor).
struct ContractionCertificate {
  ContractionClass class_id = ContractionClass::strict;
  std::size_t pairs_tested = 0;
  double max_ratio = 0.0;
  Verdict verdict = Verdict::consistent;
  std::vector<Witness> witnesses;  // first violations, capped at kMaxWitnesses
  std::uint64_t seed = 0;
  double slack = 0.0;
};

inline constexpr std::size_t kMaxWitnesses = 16;
inline constexpr double kDefaultMinSeparation = 1e-9;
inline constexpr double kDefaultSlack = 1e-12;
inline constexpr std::size_t kDefaultHorizon = 8;

// Pairs drawn for certification, kept together with the space and the seed so
// a certificate is self-describing.
struct PairSet {
  SpaceDescriptor space;
  std::uint64_t seed = 0;
  double min_separation = kDefaultMinSeparation;
  std::vector<std::pair<Point, Point>> pairs;
};

// count pairs with distance >= min_separation, deterministic per seed.
// Throws std::invalid_argument when the separation is impossible (exceeds the
// set diameter) and std::runtime_error when it is merely unreachable within
// the per-pair redraw budget.
PairSet sample_pairs(const SpaceDescriptor& space, std::size_t count,
                     std::uint64_t seed,
                     double min_separation = kDefaultMinSeparation);

// Evaluates the class inequality on every pair. Strict families (banach,
// strict, generalized_strict) require lhs < rhs - slack*rhs per pair;
// modulus families require lhs <= rhs + slack*rhs. slack is relative.
ContractionCertificate check_class(const MappingSpec& map,
                                   const ClassSpec& spec, const PairSet& pairs,
                                   double slack = kDefaultSlack);

struct SkippedClass {
  ContractionClass class_id = ContractionClass::rakotch;
  std::string reason;

  friend bool operator==(const SkippedClass&, const SkippedClass&) = default;
};

struct ClassificationReport {
  std::vector<ContractionCertificate> certificates;
  std::vector<SkippedClass> skipped;
};

// Runs every class against one shared pair sample. Modulus families run only
// when a default modulus is cataloged for the map (see default_modulus);
// otherwise they are reported as skipped.
ClassificationReport classify_all(const MappingSpec& map,
                                  const SpaceDescriptor& space,
                                  std::size_t count, std::uint64_t seed);

// Cataloged modulus for (map, class) when a sound one is known:
//   affine-contraction  linear(alpha), power_family(alpha)
//   shift-damping       linear(d/(d+1)), power_family(d/(d+1)) on dim d
//   saturating          saturating modulus (rakotch/boyd_wong only)
std::optional<ModulusSpec> default_modulus(const MappingSpec& map,
                                           const SpaceDescriptor& space,
                                           ContractionClass class_id);

std::string_view to_string(ContractionClass class_id);
std::optional<ContractionClass> contraction_class_from(std::string_view name);
std::string_view to_string(Verdict verdict);

}  // namespace fixlab
