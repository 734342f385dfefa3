#include "stochgraph/polynomial.hpp"

#include <stdexcept>

namespace stochgraph {

std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {RationalPolynomial{}, a};
  std::vector<Rational> rem = a.coefficients();
  const auto& den = b.coefficients();
  const std::size_t db = den.size() - 1;
  std::vector<Rational> quot(rem.size() - db, Rational(0));
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k] == 0) continue;
    Rational factor = rem[k] / den[db];
    quot[k - db] = factor;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= factor * den[j];
  }
  rem.resize(db);
  return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

RationalPolynomial make_monic(const RationalPolynomial& p) {
  if (p.is_zero()) return p;
  Rational inv = 1 / p.leading();
  return inv * p;
}

RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b) {
  RationalPolynomial x = a;
  RationalPolynomial y = b;
  while (!y.is_zero()) {
    auto r = divmod(x, y).second;
    x = std::move(y);
    y = make_monic(r);
  }
  return make_monic(x);
}

RationalPolynomial square_free_part(const RationalPolynomial& p) {
  if (p.degree() <= 0) return make_monic(p);
  RationalPolynomial g = gcd(p, p.derivative());
  return make_monic(divmod(p, g).first);
}

SturmSequence::SturmSequence(const RationalPolynomial& square_free) {
  if (square_free.is_zero()) throw std::invalid_argument("Sturm sequence of the zero polynomial");
  chain_.push_back(square_free);
  chain_.push_back(square_free.derivative());
  while (!chain_.back().is_zero()) {
    auto r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
    // Positive rescaling keeps signs; monic form keeps coefficients small.
    if (r.is_zero()) break;
    Rational lead = r.leading();
    Rational scale = lead > 0 ? Rational(-1 / lead) : Rational(1 / lead);
    chain_.push_back(scale * r);
  }
  while (!chain_.empty() && chain_.back().is_zero()) chain_.pop_back();
}

int SturmSequence::variations_at(const Rational& x) const {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain_) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::variations_at_infinity() const {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain_) {
    int s = sgn(p.leading());
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::count_roots(const Rational& a, const Rational& b) const {
  if (!(a < b)) return 0;
  return variations_at(a) - variations_at(b);
}

int SturmSequence::count_roots_above(const Rational& a) const { return variations_at(a) - variations_at_infinity(); }

}  // namespace stochgraph
