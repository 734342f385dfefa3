#pragma once

#include <cstddef>

namespace stochgraph {

/// Riemann zeta(s), s > 1.
double zeta(double s);

/// Hurwitz zeta(s, q) = sum_{k>=0} (k + q)^{-s}, s > 1, q > 0.
double hurwitz_zeta(double s, double q);

/// sum_{k>=m} k^{-s}, accurate for large m (no cancellation).
double power_tail(double s, std::size_t m);

}  // namespace stochgraph
