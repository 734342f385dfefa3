#pragma once

#include "stochgraph/digraph.hpp"
#include "stochgraph/polynomial.hpp"

#include <memory>

namespace stochgraph {

/// The Perron root of a rational-weighted digraph as an exact algebraic
/// number. Decisions first try a rigorous rational Collatz-Wielandt bracket
/// [lower, upper]; when that cannot separate, lambda is isolated as the
/// largest real root of det(xI - A) with a Sturm sequence, which also settles
/// exact equalities.
class ExactPerron {
 public:
  explicit ExactPerron(const WeightedDigraph& d);
  ~ExactPerron();
  ExactPerron(ExactPerron&&) noexcept;
  ExactPerron& operator=(ExactPerron&&) noexcept;

  double approx() const { return approx_; }
  const Rational& lower() const { return lower_; }
  const Rational& upper() const { return upper_; }

  /// Sign of h(lambda).
  int sign_of(const RationalPolynomial& h) const;
  /// Sign of lambda - t.
  int compare(const Rational& t) const;
  /// Number of decisions that needed the algebraic fallback.
  std::size_t algebraic_decisions() const { return algebraic_decisions_; }

 private:
  struct Isolation;
  void isolate() const;

  DenseMatrix<Rational> a_;
  double approx_ = 0.0;
  Rational lower_, upper_;
  mutable std::unique_ptr<Isolation> isolation_;
  mutable std::size_t algebraic_decisions_ = 0;
};

/// Enclosure of h over [lo, hi] with lo >= 0, by monotone bounds per term.
std::pair<Rational, Rational> enclose(const RationalPolynomial& h, const Rational& lo, const Rational& hi);

}  // namespace stochgraph
