#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <limits>

namespace fixlab {

// Number of representable doubles between a and b (0 when a == b). Maps each
// finite double onto a monotone integer line, so the result is exact and
// symmetric; Infs and NaNs are not meaningful inputs.
inline std::int64_t ulp_distance(double a, double b) {
  auto ordered = [](double x) {
    auto i = std::bit_cast<std::int64_t>(x);
    return i >= 0 ? i : std::numeric_limits<std::int64_t>::min() - i;
  };
  const std::int64_t ia = ordered(a);
  const std::int64_t ib = ordered(b);
  return ia > ib ? ia - ib : ib - ia;
}

}  // namespace fixlab
