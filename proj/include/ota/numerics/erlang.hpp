#pragma once

#include <cstddef>

namespace ota {

/// P(S > x) for S ~ Erlang(shape, scale), i.e. a sum of `shape` i.i.d.
/// exponentials of mean `scale`. Regularized upper incomplete gamma Q(shape, x/scale).
double erlang_tail(double x, std::size_t shape, double scale);

/// Inverse of erlang_tail in x: the energy exceeded with probability p_tail.
/// Solved by bracketing bisection; erlang_tail(result) matches p_tail to
/// 1e-9 relative error.
double erlang_quantile(double p_tail, std::size_t shape, double scale);

}  // namespace ota
