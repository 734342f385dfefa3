#include "stochgraph/perron_number.hpp"

#include "stochgraph/spectral.hpp"

#include <stdexcept>

namespace stochgraph {

struct ExactPerron::Isolation {
  RationalPolynomial q;
  SturmSequence sturm;
  /// lambda is the only root of q in (a, b].
  Rational a, b;
};

ExactPerron::ExactPerron(const WeightedDigraph& d) : a_(d.adjacency<Rational>()) {
  if (!d.is_exact()) throw std::invalid_argument("ExactPerron needs rational weights");
  PerronResult pr = perron_root_report(d);
  approx_ = pr.value;
  std::size_t count = 0;
  auto component = strong_components(d, &count);
  std::vector<Rational> x(d.order());
  for (VertexId v = 0; v < d.order(); ++v) x[v] = exact_from_double(pr.vector[v]);
  std::vector<bool> seen(count, false);
  std::vector<Rational> lo(count), hi(count);
  for (VertexId u = 0; u < d.order(); ++u) {
    Rational ax(0);
    for (const auto& arc : d.out_arcs(u))
      if (component[arc.to] == component[u]) ax += *arc.weight.exact * x[arc.to];
    Rational ratio = ax / x[u];
    std::size_t c = component[u];
    if (!seen[c]) {
      seen[c] = true;
      lo[c] = hi[c] = ratio;
    } else {
      if (ratio < lo[c]) lo[c] = ratio;
      if (ratio > hi[c]) hi[c] = ratio;
    }
  }
  // rho(A) = max over components; each component's bracket is rigorous.
  lower_ = 0;
  upper_ = 0;
  for (std::size_t c = 0; c < count; ++c) {
    if (lo[c] > lower_) lower_ = lo[c];
    if (hi[c] > upper_) upper_ = hi[c];
  }
}

ExactPerron::~ExactPerron() = default;
ExactPerron::ExactPerron(ExactPerron&&) noexcept = default;
ExactPerron& ExactPerron::operator=(ExactPerron&&) noexcept = default;

std::pair<Rational, Rational> enclose(const RationalPolynomial& h, const Rational& lo, const Rational& hi) {
  Rational min(0), max(0);
  Rational lo_power(1), hi_power(1);
  for (const auto& c : h.coefficients()) {
    if (sgn(c) > 0) {
      min += c * lo_power;
      max += c * hi_power;
    } else if (sgn(c) < 0) {
      min += c * hi_power;
      max += c * lo_power;
    }
    lo_power *= lo;
    hi_power *= hi;
  }
  return {min, max};
}

void ExactPerron::isolate() const {
  if (isolation_) return;
  const std::size_t n = a_.size();
  // det(I - zA) at z = 0..n, then det(xI - A) = x^n c(1/x).
  std::vector<Rational> nodes(n + 1), values(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    nodes[j] = Rational(static_cast<long>(j));
    values[j] = determinant(identity_minus(a_, nodes[j]));
  }
  RationalPolynomial p = interpolate(nodes, values).reversed(n);
  RationalPolynomial q = square_free_part(p);
  SturmSequence sturm(q);
  auto iso = std::make_unique<Isolation>(Isolation{std::move(q), std::move(sturm), 0, 0});
  // Every real eigenvalue is <= lambda <= upper, so (a, upper] with a below
  // lambda holds lambda as its largest root.
  iso->b = upper_;
  iso->a = lower_ - (upper_ - lower_) - 1;
  if (iso->sturm.count_roots(iso->a, iso->b) < 1) throw std::logic_error("Perron root not bracketed");
  while (iso->sturm.count_roots(iso->a, iso->b) > 1) {
    Rational mid = (iso->a + iso->b) / 2;
    if (iso->sturm.count_roots(mid, iso->b) >= 1) {
      iso->a = mid;
    } else {
      iso->b = mid;
    }
  }
  isolation_ = std::move(iso);
}

int ExactPerron::sign_of(const RationalPolynomial& h) const {
  if (h.is_zero()) return 0;
  auto [min, max] = enclose(h, lower_, upper_);
  if (sgn(min) > 0) return 1;
  if (sgn(max) < 0) return -1;
  ++algebraic_decisions_;
  isolate();
  Isolation& iso = *isolation_;
  RationalPolynomial common = gcd(iso.q, h);
  if (common.degree() > 0 && SturmSequence(common).count_roots(iso.a, iso.b) > 0) return 0;
  // h(lambda) != 0: shrink (a, b] around lambda until h has no root there.
  SturmSequence h_sturm(square_free_part(h));
  while (h_sturm.count_roots(iso.a, iso.b) > 0) {
    Rational mid = (iso.a + iso.b) / 2;
    if (iso.sturm.count_roots(mid, iso.b) >= 1) {
      iso.a = mid;
    } else {
      iso.b = mid;
    }
  }
  return sgn(h(iso.b));
}

int ExactPerron::compare(const Rational& t) const {
  return sign_of(RationalPolynomial(std::vector<Rational>{-t, Rational(1)}));
}

}  // namespace stochgraph
