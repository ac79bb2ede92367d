#include "fixlab/classify.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <utility>

#include "fixlab/rng.hpp"

namespace fixlab {

namespace {

constexpr std::size_t kMaxPairAttempts = 10'000;

constexpr std::array<ContractionClass, 6> kAllClasses{
    ContractionClass::banach,     ContractionClass::rakotch,
    ContractionClass::boyd_wong,  ContractionClass::asymptotic,
    ContractionClass::strict,     ContractionClass::generalized_strict,
};

bool needs_modulus(ContractionClass c) {
  return c == ContractionClass::rakotch || c == ContractionClass::boyd_wong ||
         c == ContractionClass::asymptotic;
}

}  // namespace

PairSet sample_pairs(const SpaceDescriptor& space, std::size_t count,
                     std::uint64_t seed, double min_separation) {
  validate(space);
  if (!(min_separation >= 0.0)) {
    throw std::invalid_argument("sample_pairs: min_separation must be >= 0");
  }
  if (space.ball_radius && min_separation > 2.0 * *space.ball_radius) {
    throw std::invalid_argument(
        "sample_pairs: min_separation exceeds the diameter of the domain");
  }

  PairSet out;
  out.space = space;
  out.seed = seed;
  out.min_separation = min_separation;
  out.pairs.reserve(count);

  Rng rng(seed);
  std::size_t budget = detail::rejection_budget(space);
  for (std::size_t i = 0; i < count; ++i) {
    bool found = false;
    for (std::size_t attempt = 0; attempt < kMaxPairAttempts; ++attempt) {
      Point x = detail::draw_point(space, rng, budget);
      Point y = detail::draw_point(space, rng, budget);
      if (distance(space, x, y) >= min_separation) {
        out.pairs.emplace_back(std::move(x), std::move(y));
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::runtime_error(
          "sample_pairs: could not find a pair separated by " +
          std::to_string(min_separation) + " after " +
          std::to_string(kMaxPairAttempts) + " attempts");
    }
  }
  return out;
}

ContractionCertificate check_class(const MappingSpec& map,
                                   const ClassSpec& spec, const PairSet& pairs,
                                   double slack) {
  validate(map);
  validate(pairs.space);
  if (!(slack >= 0.0)) {
    throw std::invalid_argument("check_class: slack must be >= 0");
  }
  if (needs_modulus(spec.class_id)) {
    if (!spec.modulus) {
      throw std::invalid_argument("check_class: class '" +
                                  std::string(to_string(spec.class_id)) +
                                  "' requires a modulus");
    }
    validate(*spec.modulus);
  } else if (spec.modulus) {
    throw std::invalid_argument("check_class: class '" +
                                std::string(to_string(spec.class_id)) +
                                "' does not take a modulus");
  }
  if (spec.horizon && spec.class_id != ContractionClass::asymptotic) {
    throw std::invalid_argument(
        "check_class: horizon only applies to the asymptotic family");
  }
  const std::size_t horizon = spec.horizon.value_or(kDefaultHorizon);
  if (spec.class_id == ContractionClass::asymptotic && horizon == 0) {
    throw std::invalid_argument("check_class: horizon must be >= 1");
  }

  ContractionCertificate cert;
  cert.class_id = spec.class_id;
  cert.seed = pairs.seed;
  cert.slack = slack;
  cert.pairs_tested = 0;
  cert.max_ratio = 0.0;
  cert.verdict = Verdict::consistent;

  const SpaceDescriptor& space = pairs.space;

  auto note = [&](const Point& x, const Point& y, double lhs, double rhs,
                  bool violated) {
    if (rhs > 0.0) cert.max_ratio = std::max(cert.max_ratio, lhs / rhs);
    if (violated) {
      cert.verdict = Verdict::violated;
      if (cert.witnesses.size() < kMaxWitnesses) {
        cert.witnesses.push_back(Witness{x, y, lhs, rhs});
      }
    }
  };

  for (const auto& [x, y] : pairs.pairs) {
    const double d0 = distance(space, x, y);
    if (d0 == 0.0) continue;  // every class quantifies over distinct points
    ++cert.pairs_tested;

    switch (spec.class_id) {
      case ContractionClass::banach:
      case ContractionClass::strict: {
        // Evidence of strict decrease on every sampled pair; for the
        // uniform-factor family the max ratio doubles as the estimate of
        // the best admissible factor.
        const double lhs = distance(space, apply(map, x), apply(map, y));
        note(x, y, lhs, d0, !(lhs < d0 - slack * d0));
        break;
      }
      case ContractionClass::generalized_strict: {
        const Point tx = apply(map, x);
        const Point ty = apply(map, y);
        const double lhs = distance(space, tx, ty);
        const double rhs = std::max(
            {d0, distance(space, x, tx), distance(space, y, ty)});
        note(x, y, lhs, rhs, !(lhs < rhs - slack * rhs));
        break;
      }
      case ContractionClass::rakotch:
      case ContractionClass::boyd_wong: {
        const double lhs = distance(space, apply(map, x), apply(map, y));
        const double rhs = evaluate_modulus(*spec.modulus, d0);
        note(x, y, lhs, rhs, !(lhs <= rhs + slack * rhs));
        break;
      }
      case ContractionClass::asymptotic: {
        Point tx = x;
        Point ty = y;
        for (std::size_t n = 1; n <= horizon; ++n) {
          tx = apply(map, tx);
          ty = apply(map, ty);
          const double lhs = distance(space, tx, ty);
          const double rhs = evaluate_modulus(*spec.modulus, d0, n);
          note(x, y, lhs, rhs, !(lhs <= rhs + slack * rhs));
        }
        break;
      }
    }
  }
  return cert;
}

std::optional<ModulusSpec> default_modulus(const MappingSpec& map,
                                           const SpaceDescriptor& space,
                                           ContractionClass class_id) {
  if (!needs_modulus(class_id)) return std::nullopt;
  const bool power = class_id == ContractionClass::asymptotic;
  switch (map.kind) {
    case MapKind::affine_contraction:
      return power ? ModulusSpec::power_family(map.alpha)
                   : ModulusSpec::linear(map.alpha);
    case MapKind::shift_damping: {
      // The slowest coordinate dominates: factor dim/(dim+1).
      const double factor = static_cast<double>(space.dim) /
                            static_cast<double>(space.dim + 1);
      return power ? ModulusSpec::power_family(factor)
                   : ModulusSpec::linear(factor);
    }
    case MapKind::saturating:
      // The per-coordinate bound t -> t/(1+t) survives aggregation only in
      // one dimension; in higher dimensions no member of the modulus
      // catalog dominates the map.
      if (space.dim == 1 && !power) return ModulusSpec::saturating();
      return std::nullopt;
    case MapKind::exp_drift:
    case MapKind::rotation:
    case MapKind::identity:
      return std::nullopt;
  }
  return std::nullopt;
}

ClassificationReport classify_all(const MappingSpec& map,
                                  const SpaceDescriptor& space,
                                  std::size_t count, std::uint64_t seed) {
  validate(map);
  validate(space);
  PairSet pairs = sample_pairs(space, count, seed);

  ClassificationReport report;
  for (ContractionClass c : kAllClasses) {
    if (needs_modulus(c)) {
      std::optional<ModulusSpec> modulus = default_modulus(map, space, c);
      if (!modulus) {
        report.skipped.push_back(SkippedClass{
            c, "no default modulus for map '" +
                   std::string(to_string(map.kind)) + "' on this space"});
        continue;
      }
      ClassSpec spec;
      spec.class_id = c;
      spec.modulus = modulus;
      if (c == ContractionClass::asymptotic) spec.horizon = kDefaultHorizon;
      report.certificates.push_back(check_class(map, spec, pairs));
    } else {
      ClassSpec spec;
      spec.class_id = c;
      report.certificates.push_back(check_class(map, spec, pairs));
    }
  }
  return report;
}

std::string_view to_string(ContractionClass c) {
  switch (c) {
    case ContractionClass::banach: return "banach";
    case ContractionClass::rakotch: return "rakotch";
    case ContractionClass::boyd_wong: return "boyd-wong";
    case ContractionClass::asymptotic: return "asymptotic";
    case ContractionClass::strict: return "strict";
    case ContractionClass::generalized_strict: return "generalized-strict";
  }
  return "unknown";
}

std::optional<ContractionClass> contraction_class_from(std::string_view name) {
  for (ContractionClass c : kAllClasses) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  return v == Verdict::consistent ? "consistent" : "violated";
}

}  // namespace fixlab
