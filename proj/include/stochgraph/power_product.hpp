#pragma once

#include "stochgraph/rational.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace stochgraph {

/// Rational enclosure [lo, hi] of ln(b) for rational b > 0, from
/// ln b = m ln 2 + 2 atanh(s) with s = (r - 1)/(r + 1), r = b / 2^m in [1, 2),
/// truncating the atanh series after `terms` terms and bounding the rest.
std::pair<Rational, Rational> log_enclosure(const Rational& b, unsigned terms);

/// Formal product of positive rational bases raised to signed 64-bit
/// exponents. Values such as (1 - eps)^(3e16) are never expanded unless the
/// exact result is small; otherwise comparisons use rational log enclosures,
/// which keeps every decision exact.
class PowerProduct {
 public:
  struct Factor {
    Rational base;
    std::int64_t exponent = 0;
  };

  enum class Method { Expanded, LogEnclosure };

  PowerProduct() = default;
  static PowerProduct power(const Rational& base, std::int64_t exponent);

  PowerProduct& operator*=(const PowerProduct& other);
  friend PowerProduct operator*(PowerProduct a, const PowerProduct& b) { return a *= b; }
  PowerProduct inverse() const;
  friend PowerProduct operator/(const PowerProduct& a, const PowerProduct& b) { return a * b.inverse(); }

  const std::vector<Factor>& factors() const { return factors_; }

  /// Rough size of the exact expansion in bits.
  double exact_bits() const;

  /// Exact value when it fits within `max_bits`.
  std::optional<Rational> exact(double max_bits = 2.0e6) const;

  /// Rational enclosure of the natural logarithm of the value.
  std::pair<Rational, Rational> log_enclosure(unsigned terms) const;

  struct Decision {
    int sign = 0;
    Method method = Method::Expanded;
  };
  /// Sign of (value - 1); empty only if the enclosure cannot separate the
  /// value from 1 at the finest series length.
  std::optional<Decision> compare_to_one() const;

 private:
  std::vector<Factor> factors_;
};

/// Sign of a - b (see compare_to_one).
std::optional<PowerProduct::Decision> compare(const PowerProduct& a, const PowerProduct& b);

}  // namespace stochgraph
