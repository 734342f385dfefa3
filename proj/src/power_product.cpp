#include "stochgraph/power_product.hpp"

#include <cmath>
#include <stdexcept>

namespace stochgraph {

namespace {

/// Lower bound and remainder bound of atanh(s) for 0 <= s < 1.
std::pair<Rational, Rational> atanh_enclosure(const Rational& s, unsigned terms) {
  Rational s2 = s * s;
  Rational power = s;
  Rational sum(0);
  for (unsigned j = 0; j < terms; ++j) {
    sum += power / Rational(2 * j + 1);
    power *= s2;
  }
  // Remaining terms are bounded by s^{2K+1}/((2K+1)(1 - s^2)).
  Rational tail = power / (Rational(2 * terms + 1) * (1 - s2));
  return {sum, sum + tail};
}

}  // namespace

std::pair<Rational, Rational> log_enclosure(const Rational& b, unsigned terms) {
  if (sgn(b) <= 0) throw std::domain_error("log of a nonpositive rational");
  long m = static_cast<long>(mpz_sizeinbase(b.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(b.get_den_mpz_t(), 2));
  Rational r = b;
  if (m >= 0) {
    mpq_div_2exp(r.get_mpq_t(), b.get_mpq_t(), static_cast<mp_bitcnt_t>(m));
  } else {
    mpq_mul_2exp(r.get_mpq_t(), b.get_mpq_t(), static_cast<mp_bitcnt_t>(-m));
  }
  if (r < 1) {
    r *= 2;
    --m;
  }
  auto [r_lo, r_hi] = atanh_enclosure((r - 1) / (r + 1), terms);
  auto [two_lo, two_hi] = atanh_enclosure(Rational(1, 3), terms);
  // ln 2 = 2 atanh(1/3), ln r = 2 atanh(s).
  Rational mq(m);
  Rational lo = 2 * r_lo + (m >= 0 ? mq * 2 * two_lo : mq * 2 * two_hi);
  Rational hi = 2 * r_hi + (m >= 0 ? mq * 2 * two_hi : mq * 2 * two_lo);
  return {lo, hi};
}

PowerProduct PowerProduct::power(const Rational& base, std::int64_t exponent) {
  if (sgn(base) <= 0) throw std::domain_error("PowerProduct bases must be positive");
  PowerProduct p;
  if (exponent != 0 && base != 1) p.factors_.push_back({base, exponent});
  return p;
}

PowerProduct& PowerProduct::operator*=(const PowerProduct& other) {
  for (const auto& f : other.factors_) {
    bool merged = false;
    for (auto& mine : factors_) {
      if (mine.base == f.base) {
        mine.exponent += f.exponent;
        merged = true;
        break;
      }
    }
    if (!merged) factors_.push_back(f);
  }
  std::erase_if(factors_, [](const Factor& f) { return f.exponent == 0; });
  return *this;
}

PowerProduct PowerProduct::inverse() const {
  PowerProduct p = *this;
  for (auto& f : p.factors_) f.exponent = -f.exponent;
  return p;
}

double PowerProduct::exact_bits() const {
  double bits = 0.0;
  for (const auto& f : factors_) {
    double size = static_cast<double>(mpz_sizeinbase(f.base.get_num_mpz_t(), 2) +
                                      mpz_sizeinbase(f.base.get_den_mpz_t(), 2));
    bits += size * std::abs(static_cast<double>(f.exponent));
  }
  return bits;
}

std::optional<Rational> PowerProduct::exact(double max_bits) const {
  if (exact_bits() > max_bits) return std::nullopt;
  Rational value(1);
  for (const auto& f : factors_) {
    Rational term = pow(f.base, static_cast<std::uint64_t>(std::llabs(f.exponent)));
    if (f.exponent > 0) {
      value *= term;
    } else {
      value /= term;
    }
  }
  return value;
}

std::pair<Rational, Rational> PowerProduct::log_enclosure(unsigned terms) const {
  Rational lo(0), hi(0);
  for (const auto& f : factors_) {
    auto [l, h] = stochgraph::log_enclosure(f.base, terms);
    Rational e(static_cast<long>(f.exponent));
    if (f.exponent > 0) {
      lo += e * l;
      hi += e * h;
    } else {
      lo += e * h;
      hi += e * l;
    }
  }
  return {lo, hi};
}

std::optional<PowerProduct::Decision> PowerProduct::compare_to_one() const {
  if (factors_.empty()) return Decision{0, Method::Expanded};
  if (auto v = exact()) return Decision{sgn(*v - 1), Method::Expanded};
  for (unsigned terms = 4; terms <= 512; terms *= 2) {
    auto [lo, hi] = log_enclosure(terms);
    if (sgn(lo) > 0) return Decision{1, Method::LogEnclosure};
    if (sgn(hi) < 0) return Decision{-1, Method::LogEnclosure};
  }
  return std::nullopt;
}

std::optional<PowerProduct::Decision> compare(const PowerProduct& a, const PowerProduct& b) {
  return (a / b).compare_to_one();
}

}  // namespace stochgraph
