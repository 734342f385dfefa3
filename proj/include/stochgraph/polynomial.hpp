#pragma once

#include "stochgraph/rational.hpp"

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace stochgraph {

/// Univariate polynomial with coefficients in ascending powers.
/// The zero polynomial has no coefficients; trailing zeros are trimmed.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

  static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }
  static Polynomial monomial(T c, std::size_t power) {
    std::vector<T> v(power + 1, ScalarTraits<T>::zero());
    v[power] = std::move(c);
    return Polynomial(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<T>& coefficients() const { return coeffs_; }
  T coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : ScalarTraits<T>::zero(); }
  const T& leading() const { return coeffs_.back(); }

  T operator()(const T& x) const {
    T acc = ScalarTraits<T>::zero();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<T> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * T(static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.coeffs_.size(), b.coeffs_.size()), ScalarTraits<T>::zero());
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) r[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) r[k] += b.coeffs_[k];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.coeffs_.size(), b.coeffs_.size()), ScalarTraits<T>::zero());
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) r[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) r[k] -= b.coeffs_[k];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.coeffs_.size() + b.coeffs_.size() - 1, ScalarTraits<T>::zero());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const T& c, const Polynomial& p) {
    std::vector<T> r = p.coeffs_;
    for (auto& x : r) x = x * c;
    return Polynomial(std::move(r));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Reverses coefficients over a fixed length: x^n p(1/x).
  Polynomial reversed(std::size_t n) const {
    std::vector<T> r(n + 1, ScalarTraits<T>::zero());
    for (std::size_t k = 0; k < coeffs_.size() && k <= n; ++k) r[n - k] = coeffs_[k];
    return Polynomial(std::move(r));
  }

  /// Degree after discarding coefficients with |c| <= tol * max|c| (floating inputs only).
  long numerical_degree(double rel_tol) const {
    double scale = 0.0;
    for (const auto& c : coeffs_) scale = std::max(scale, std::abs(to_double(c)));
    for (long k = degree(); k >= 0; --k) {
      if (std::abs(to_double(coeffs_[static_cast<std::size_t>(k)])) > rel_tol * scale) return k;
    }
    return -1;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == ScalarTraits<T>::zero()) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using RationalPolynomial = Polynomial<Rational>;

/// Quotient and remainder of a / b over the rationals.
std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a, const RationalPolynomial& b);

/// Monic greatest common divisor; gcd(0, 0) = 0.
RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b);

RationalPolynomial make_monic(const RationalPolynomial& p);

/// p / gcd(p, p'), monic.
RationalPolynomial square_free_part(const RationalPolynomial& p);

/// Sturm chain of a square-free polynomial, with counting of distinct real
/// roots in half-open intervals (a, b].
class SturmSequence {
 public:
  explicit SturmSequence(const RationalPolynomial& square_free);

  /// Sign variations at x (zeros skipped).
  int variations_at(const Rational& x) const;
  int variations_at_infinity() const;
  /// Number of distinct real roots in (a, b].
  int count_roots(const Rational& a, const Rational& b) const;
  int count_roots_above(const Rational& a) const;

 private:
  std::vector<RationalPolynomial> chain_;
};

/// Newton divided-difference interpolation through (nodes[i], values[i]).
template <class T>
Polynomial<T> interpolate(const std::vector<T>& nodes, const std::vector<T>& values) {
  const std::size_t n = nodes.size();
  std::vector<T> dd = values;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
      if (i == level) break;
    }
  // Horner expansion of the Newton form.
  Polynomial<T> result = Polynomial<T>::constant(dd[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;) {
    Polynomial<T> factor(std::vector<T>{-nodes[k], ScalarTraits<T>::one()});
    result = result * factor + Polynomial<T>::constant(dd[k]);
  }
  return result;
}

/// Elementary symmetric polynomial sigma_k of the given values (k >= 0).
template <class T>
T elementary_symmetric(const std::vector<T>& values, std::size_t k) {
  std::vector<T> e(k + 1, ScalarTraits<T>::zero());
  e[0] = ScalarTraits<T>::one();
  for (const auto& x : values)
    for (std::size_t j = k; j >= 1; --j) {
      e[j] += e[j - 1] * x;
      if (j == 1) break;
    }
  return e[k];
}

}  // namespace stochgraph
