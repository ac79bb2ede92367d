#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "fixlab/fputil.hpp"
#include "fixlab/metric.hpp"

using namespace fixlab;

namespace {

SpaceDescriptor make_space(std::size_t dim, Norm norm,
                           std::optional<double> radius = std::nullopt,
                           bool nonnegative = false) {
  SpaceDescriptor s;
  s.dim = dim;
  s.norm = norm;
  s.ball_radius = radius;
  s.nonnegative = nonnegative;
  return s;
}

}  // namespace

TEST_CASE("point construction validates finiteness") {
  CHECK_NOTHROW(Point({1.0, -2.0, 0.0}));
  CHECK_THROWS_AS(Point({1.0, std::numeric_limits<double>::infinity()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Point({std::numeric_limits<double>::quiet_NaN()}),
                  std::invalid_argument);
  CHECK(Point::zeros(3) == Point({0.0, 0.0, 0.0}));
  CHECK(Point::zeros(2).dim() == 2);
}

TEST_CASE("worked distance examples") {
  const auto l2 = make_space(2, Norm::l2);
  CHECK(distance(l2, Point({3.0, 4.0}), Point({0.0, 0.0})) == 5.0);

  const auto l1 = make_space(2, Norm::l1);
  CHECK(norm_of(l1, Point({1.0, -2.0})) == 3.0);
  CHECK(distance(l1, Point({1.0, 1.0}), Point({0.0, -1.0})) == 3.0);

  const auto linf = make_space(3, Norm::linf);
  CHECK(norm_of(linf, Point({1.0, -7.0, 2.0})) == 7.0);
  CHECK(distance(linf, Point({1.0, 0.0, 0.0}), Point({0.0, 0.0, 0.25})) == 1.0);
}

TEST_CASE("dimension mismatches are rejected") {
  const auto space = make_space(2, Norm::l2);
  CHECK_THROWS_AS(distance(space, Point({1.0}), Point({1.0, 2.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(norm_of(space, Point({1.0, 2.0, 3.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(contains(space, Point({1.0})), std::invalid_argument);
}

TEST_CASE("space descriptor validation") {
  CHECK_THROWS_AS(validate(make_space(0, Norm::l2)), std::invalid_argument);
  CHECK_THROWS_AS(validate(make_space(1, Norm::l2, -1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(make_space(1, Norm::l2, 0.0)),
                  std::invalid_argument);
  CHECK_NOTHROW(validate(make_space(3, Norm::linf, 2.5, true)));
}

TEST_CASE("membership is exact, without tolerance") {
  const auto ball = make_space(2, Norm::l2, 1.0);
  // 0.36 + 0.64 sums to exactly 1.0 in binary64.
  CHECK(contains(ball, Point({0.6, 0.8})));
  CHECK(contains(ball, Point({0.0, 1.0})));
  // one ulp on a coordinate can be absorbed when the norm itself rounds, so
  // step far enough out that the computed norm must exceed the radius
  CHECK(!contains(ball, Point({0.6, 0.8 + 1e-8})));
  CHECK(!contains(ball, Point({1.0, 0.1})));

  const auto orthant = make_space(2, Norm::l2, std::nullopt, true);
  CHECK(contains(orthant, Point({0.0, 5.0})));
  CHECK(!contains(orthant, Point({-1e-300, 5.0})));

  const auto box = make_space(2, Norm::linf, 1.0);
  CHECK(contains(box, Point({1.0, -1.0})));
  CHECK(!contains(box, Point({std::nextafter(1.0, 2.0), 0.0})));
}

TEST_CASE("sampling lands inside the set and is reproducible") {
  const std::vector<SpaceDescriptor> spaces = {
      make_space(3, Norm::l2),
      make_space(2, Norm::l2, 1.0),
      make_space(2, Norm::l1, 0.5, true),
      make_space(4, Norm::linf, 2.0),
      make_space(50, Norm::l2, 1.0, true),  // forces the radial fallback
  };
  for (const auto& space : spaces) {
    CAPTURE(space.dim);
    const auto pts = sample(space, 200, 123);
    REQUIRE(pts.size() == 200);
    for (const auto& p : pts) {
      REQUIRE(p.dim() == space.dim);
      REQUIRE(contains(space, p));
    }
    CHECK(sample(space, 200, 123) == pts);      // bit-identical rerun
    CHECK(sample(space, 200, 124) != pts);      // seed actually matters
  }
  CHECK_THROWS_AS(sample(make_space(1, Norm::l2), 0, 1),
                  std::invalid_argument);
}

TEST_CASE("sampling spreads over the set") {
  // Guards against a fallback that collapses to one ray or one octant.
  const auto ball = make_space(2, Norm::l2, 1.0);
  const auto pts = sample(ball, 400, 7);
  int quadrant[4] = {0, 0, 0, 0};
  for (const auto& p : pts) {
    quadrant[(p[0] >= 0 ? 1 : 0) + (p[1] >= 0 ? 2 : 0)]++;
  }
  for (int q : quadrant) CHECK(q > 40);
}

TEST_CASE("metric axioms hold on sampled points") {
  for (Norm norm : {Norm::l1, Norm::l2, Norm::linf}) {
    const auto space = make_space(5, Norm::l2, 3.0);
    auto metric_space = space;
    metric_space.norm = norm;
    const auto pts = sample(metric_space, 60, 99);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(distance(metric_space, pts[i], pts[i]) == 0.0);
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const double dij = distance(metric_space, pts[i], pts[j]);
        CHECK(dij >= 0.0);
        CHECK(dij == distance(metric_space, pts[j], pts[i]));  // symmetric
        for (std::size_t k = 0; k < pts.size(); k += 7) {
          const double dik = distance(metric_space, pts[i], pts[k]);
          const double dkj = distance(metric_space, pts[k], pts[j]);
          CHECK(dij <= dik + dkj + 1e-12 * (1.0 + dik + dkj));
        }
      }
    }
  }
}

TEST_CASE("rejection budget short-circuits only in high dimension") {
  CHECK(detail::rejection_budget(make_space(2, Norm::l2, 1.0)) > 0);
  CHECK(detail::rejection_budget(make_space(3, Norm::l1, 1.0)) > 0);
  CHECK(detail::rejection_budget(make_space(8, Norm::linf, 1.0)) > 0);
  CHECK(detail::rejection_budget(make_space(50, Norm::l2, 1.0)) == 0);
  CHECK(detail::rejection_budget(make_space(40, Norm::l1, 1.0)) == 0);
}

TEST_CASE("ulp distance") {
  CHECK(ulp_distance(1.0, 1.0) == 0);
  CHECK(ulp_distance(1.0, std::nextafter(1.0, 2.0)) == 1);
  CHECK(ulp_distance(std::nextafter(1.0, 0.0), std::nextafter(1.0, 2.0)) == 2);
  CHECK(ulp_distance(-0.0, 0.0) == 0);
  const double tiny = std::numeric_limits<double>::denorm_min();
  CHECK(ulp_distance(-tiny, tiny) == 2);  // crosses zero monotonically
  CHECK(ulp_distance(5.0, 5.0 + 1e-9) > 1000);
}

TEST_CASE("norm names") {
  CHECK(to_string(Norm::l1) == "1");
  CHECK(to_string(Norm::l2) == "2");
  CHECK(to_string(Norm::linf) == "inf");
}
