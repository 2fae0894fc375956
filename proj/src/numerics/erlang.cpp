#include "ota/numerics/erlang.hpp"

#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "ota/errors.hpp"

namespace ota {

double erlang_tail(double x, std::size_t shape, double scale) {
  detail::require(shape >= 1, "erlang_tail: shape must be >= 1");
  detail::require(scale > 0.0 && std::isfinite(scale),
                  "erlang_tail: scale must be positive and finite");
  detail::require(x >= 0.0, "erlang_tail: x must be >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(static_cast<double>(shape), x / scale);
}

double erlang_quantile(double p_tail, std::size_t shape, double scale) {
  detail::require(p_tail > 0.0 && p_tail < 1.0,
                  "erlang_quantile: p_tail must lie in (0, 1)");
  detail::require(shape >= 1, "erlang_quantile: shape must be >= 1");
  detail::require(scale > 0.0 && std::isfinite(scale),
                  "erlang_quantile: scale must be positive and finite");

  // Bracket in unit scale, then rescale: the family is closed under scaling.
  double lo = 0.0;
  double hi = static_cast<double>(shape);
  while (erlang_tail(hi, shape, 1.0) > p_tail) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (erlang_tail(mid, shape, 1.0) > p_tail)
      lo = mid;
    else
      hi = mid;
  }
  return scale * 0.5 * (lo + hi);
}

}  // namespace ota
