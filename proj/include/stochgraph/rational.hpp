#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

namespace stochgraph {

using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal literal such as "0.125" or "2.5e-3".
/// Decimals are converted exactly (0.7 becomes 7/10).
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Shortest round-trip decimal for a double.
std::string to_decimal_string(double x);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

/// Exact binary value of a finite double.
Rational exact_from_double(double x);

Rational pow(const Rational& base, std::uint64_t exponent);

int sign(const Rational& q);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool is_exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool is_exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::is_exact;

/// Arithmetic mode of a computation context.
enum class Mode { Exact, Float };

Mode parse_mode(std::string_view text);
std::string_view to_string(Mode mode);

}  // namespace stochgraph
