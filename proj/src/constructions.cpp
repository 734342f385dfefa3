#include "stochgraph/constructions.hpp"

#include "stochgraph/cycles.hpp"
#include "stochgraph/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace stochgraph {

namespace {

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t add_saturating(std::uint64_t a, std::uint64_t b) { return a > saturated - b ? saturated : a + b; }

}  // namespace

// --- beaded host -----------------------------------------------------------

std::uint64_t BeadedLayout::start(std::size_t k) const {
  std::uint64_t s = 0;
  for (std::size_t j = 1; j < k && s != saturated; ++j) s = add_saturating(s, length(j));
  return s;
}

std::size_t BeadedLayout::block_of(VertexId v) const {
  std::uint64_t s = 0;
  for (std::size_t k = 1;; ++k) {
    s = add_saturating(s, length(k));
    if (v < s) return k;
  }
}

std::size_t BeadedLayout::complete_rows(std::size_t n) const {
  // Block k is complete once its head's forward connector target start(k+1)
  // lies inside the truncation.
  std::uint64_t complete = 0, s = 0;
  for (std::size_t k = 1;; ++k) {
    std::uint64_t next = add_saturating(s, length(k));
    if (next >= n) break;
    complete = next;
    s = next;
  }
  return static_cast<std::size_t>(complete);
}

LengthRule lengths_increasing_then_constant(std::vector<std::uint64_t> prefix, std::optional<std::uint64_t> tail) {
  if (prefix.empty() && !tail) throw ConstructionError("length rule needs a prefix or a tail");
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] == 0) throw ConstructionError("cycle lengths must be positive");
    if (i > 0 && prefix[i] <= prefix[i - 1]) throw ConstructionError("prefix lengths must increase strictly");
  }
  if (!tail) {
    // Keep increasing by one past the prefix.
    return [prefix](std::size_t k) {
      return k <= prefix.size() ? prefix[k - 1] : prefix.back() + (k - prefix.size());
    };
  }
  if (*tail == 0 || (!prefix.empty() && *tail <= prefix.back()))
    throw ConstructionError("tail length must exceed the prefix");
  return [prefix, L = *tail](std::size_t k) { return k <= prefix.size() ? prefix[k - 1] : L; };
}

LengthRule lengths_linear() {
  return [](std::size_t k) { return static_cast<std::uint64_t>(k); };
}

LengthRule lengths_powers_of_two() {
  return [](std::size_t k) { return k >= 63 ? saturated : std::uint64_t{1} << k; };
}

LengthRule lengths_constant(std::uint64_t length) {
  if (length == 0) throw ConstructionError("cycle lengths must be positive");
  return [length](std::size_t) { return length; };
}

namespace {

/// Truncation of the beaded host with arc weight w(k) on gamma_k; each head
/// splits its slack 1 - w(k) over two connectors (vertex 1 has only one).
/// `scale` multiplies every weight.
WeightedDigraph beaded_truncation(const BeadedLayout& layout, const std::function<Rational(std::size_t)>& w,
                                  std::size_t n, const Rational& scale) {
  DigraphBuilder b(n);
  std::uint64_t s = 0;
  std::uint64_t previous_head = 0;
  for (std::size_t k = 1; s < n; ++k) {
    const std::uint64_t len = layout.length(k);
    const std::uint64_t next = add_saturating(s, len);
    Rational weight = w(k);
    if (sgn(weight) <= 0 || weight >= 1) throw ConstructionError("cycle arc weight must lie in (0, 1)");
    for (std::uint64_t i = 0; i < len; ++i) {
      std::uint64_t v = s + i;
      if (v >= n) break;
      std::uint64_t to = i + 1 < len ? v + 1 : s;
      if (to < n) b.arc(v, to, Weight(Rational(scale * weight)));
    }
    // Vertex 1 has one connector and keeps half of its slack.
    Rational connector = (1 - weight) / 2;
    if (k > 1) b.arc(s, previous_head, Weight(Rational(scale * connector)));
    if (next < n) b.arc(s, next, Weight(Rational(scale * connector)));
    previous_head = s;
    s = next;
  }
  return b.build();
}

}  // namespace

TruncationFamily build_prop1(const Prop1Params& params) {
  if (!params.target) throw ConstructionError("prop1 needs target cycle weights");
  BeadedLayout layout{params.length};
  auto weight = [target = params.target, length = params.length](std::size_t k) {
    double c = target(k);
    if (!(c > 0.0) || !(c < 1.0)) throw ConstructionError("prop1 targets must lie in (0, 1)");
    double g = std::pow(c, 1.0 / static_cast<double>(length(k)));
    if (!(g < 1.0)) throw ConstructionError("cycle gain rounds to 1 at k = " + std::to_string(k));
    return exact_from_double(g);
  };
  TruncationFamily f;
  f.name = "prop1";
  f.generator = [layout, weight](std::size_t n) { return beaded_truncation(layout, weight, n, Rational(1)); };
  f.metadata.sct_size = Extent::infinite();
  if (!params.lengths_bounded) f.metadata.ell_max = Extent::infinite();
  f.metadata.ell_min = std::min<std::uint64_t>(params.length(1), 2);
  f.facts.all_ones_pruitt = true;
  f.facts.slack_vertex = 0;
  f.facts.complete_rows = [layout](std::size_t n) { return layout.complete_rows(n); };
  if (params.declared_lambda) {
    f.facts.lambda_exact = *params.declared_lambda;
    f.facts.lambda = params.declared_lambda->get_d();
  }
  f.notes.push_back("beaded host: disjoint cycles in consecutive blocks, heads joined by forward/backward connectors");
  return f;
}

// --- gap targets -----------------------------------------------------------

GapTarget::GapTarget(std::string name, std::function<Rational(std::size_t)> g, std::size_t check_range)
    : name_(std::move(name)), raw_(std::move(g)) {
  Rational previous;
  for (std::size_t n = 1; n <= check_range; ++n) {
    Rational v = raw_(n);
    if (sgn(v) <= 0) throw ConstructionError("gap target must be positive");
    if (v >= 1 || (n > 1 && v >= previous)) normalized_ = true;
    previous = v;
  }
  if (normalized_) {
    // h(n) = min_{m<=n} min(g(m), 1/(m+1)) * (n+2)/(2(n+1)): strictly
    // decreasing, below g, below 1, tending to 0.
    std::vector<Rational> prefix_min;
    Rational running(1);
    for (std::size_t m = 1; m <= check_range; ++m) {
      Rational cap(1, static_cast<unsigned long>(m + 1));
      Rational v = std::min(raw_(m), cap);
      running = std::min(running, v);
      prefix_min.push_back(running);
    }
    auto raw = raw_;
    raw_ = [raw, prefix_min, check_range](std::size_t n) {
      Rational mu;
      if (n <= check_range) {
        mu = prefix_min[n - 1];
      } else {
        // Past the checked range the input is assumed nonincreasing.
        mu = std::min({prefix_min.back(), raw(n), Rational(1, static_cast<unsigned long>(n + 1))});
      }
      return Rational(mu * Rational(static_cast<long>(n + 2), static_cast<unsigned long>(2 * (n + 1))));
    };
    note_ = "g replaced by the decreasing minorant min_{m<=n} min(g(m), 1/(m+1)) * (n+2)/(2(n+1))";
  }
}

Rational GapTarget::operator()(std::size_t n) const {
  if (n == 0) throw ConstructionError("gap target is defined for n >= 1");
  return raw_(n);
}

GapTarget gap_power_of_two() {
  return GapTarget("2^-n", [](std::size_t n) {
    Rational r(1);
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(n));
    return r;
  });
}

GapTarget gap_inverse(std::size_t power) {
  return GapTarget("n^-" + std::to_string(power), [power](std::size_t n) {
    return Rational(1) / pow(Rational(static_cast<unsigned long>(n)), power);
  });
}

// --- gap-target hosts ------------------------------------------------------

namespace {

std::function<Rational(std::size_t)> corollary1_weight(const GapTarget& g, const LengthRule& length) {
  return [g, length](std::size_t k) {
    std::uint64_t at = std::max<std::uint64_t>(length(k + 1), k);
    if (at > 1'000'000'000ull) throw ConstructionError("gap target argument too large");
    return Rational(1 - g(static_cast<std::size_t>(at)));
  };
}

}  // namespace

TruncationFamily build_corollary1(const GapTarget& g, const Corollary1Params& params) {
  BeadedLayout layout{params.length};
  auto weight = corollary1_weight(g, params.length);
  TruncationFamily f;
  f.name = "corollary1";
  f.generator = [layout, weight](std::size_t n) { return beaded_truncation(layout, weight, n, Rational(1)); };
  f.metadata.sct_size = Extent::infinite();
  if (!params.lengths_bounded) f.metadata.ell_max = Extent::infinite();
  f.metadata.ell_min = std::min<std::uint64_t>(params.length(1), 2);
  f.facts.all_ones_pruitt = true;
  f.facts.slack_vertex = 0;
  f.facts.complete_rows = [layout](std::size_t n) { return layout.complete_rows(n); };
  // Gains 1 - g(.) tend to 1 and rows are at most 1.
  f.facts.lambda_exact = Rational(1);
  f.facts.lambda = 1.0;
  if (g.normalized()) f.notes.push_back(g.normalization_note());
  return f;
}

std::size_t corollary1_horizon(const Corollary1Params& params, std::size_t n) {
  BeadedLayout layout{params.length};
  // A block k with l_k <= n whose weight argument max(l_{k+1}, k) exceeds n.
  for (std::size_t k = 1; k <= n + 1; ++k) {
    if (params.length(k) <= n && std::max<std::uint64_t>(params.length(k + 1), k) > n)
      return layout.order_through(k);
  }
  return 0;
}

Theorem2Fast build_theorem2_fast(const GapTarget& g, const Corollary1Params& params) {
  Theorem2Fast t;
  t.base = build_corollary1(g, params);
  const std::size_t ell_min = static_cast<std::size_t>(std::min<std::uint64_t>(params.length(1), 2));
  Rational c = g(1);
  for (std::size_t n = 2; n <= ell_min; ++n) c = std::min(c, g(n));
  c /= 2;
  t.c = c;
  BeadedLayout layout{params.length};
  auto weight = corollary1_weight(g, params.length);
  t.params = params;
  t.cycle_weight = weight;
  TruncationFamily f;
  f.name = "theorem2-fast";
  f.generator = [layout, weight, c](std::size_t n) { return beaded_truncation(layout, weight, n, c); };
  f.metadata = t.base.metadata;
  f.facts.all_ones_pruitt = true;
  f.facts.slack_vertex = 0;
  f.facts.complete_rows = t.base.facts.complete_rows;
  f.facts.lambda_exact = c;
  f.facts.lambda = c.get_d();
  f.notes = t.base.notes;
  f.notes.push_back("M = cS with c = " + to_string(c));
  t.family = std::move(f);

  // Re-verify the all-ones certificate of M on the complete rows of a
  // truncation holding several blocks.
  const std::size_t n = std::max<std::size_t>(layout.order_through(6), 8);
  WeightedDigraph d = truncate(t.family, n);
  const std::size_t rows = layout.complete_rows(n);
  std::optional<VertexId> strict;
  for (VertexId u = 0; u < rows; ++u) {
    Rational out = d.out_weight<Rational>(u);
    if (out > c) throw ConstructionError("all-ones certificate fails at row " + std::to_string(u + 1));
    if (out < c && !strict) strict = u;
  }
  if (!strict) throw ConstructionError("all-ones certificate has no strict row");
  t.certificate.xi.assign(d.order(), 1.0);
  t.certificate.exact_xi = std::vector<Rational>(d.order(), Rational(1));
  t.certificate.strict_vertex = *strict;
  t.certificate.scope = "presentation";
  t.certificate.verified_rows = rows;
  return t;
}

LambdaLowerBound theorem2_lambda_n_lower_bound(const Theorem2Fast& t, std::size_t n) {
  // gamma_k with l_k <= n sits in some order-n principal submatrix, so its
  // gain c * w(k) bounds lambda_n(M) from below.
  LambdaLowerBound r;
  BeadedLayout layout{t.params.length};
  std::optional<std::size_t> best_k;
  Rational best;
  for (std::size_t k = 1; k <= n + 1; ++k) {
    if (t.params.length(k) > n) continue;
    Rational gain = t.c * t.cycle_weight(k);
    if (!best_k || gain > best) {
      best = gain;
      best_k = k;
    }
  }
  if (!best_k) return r;
  const std::uint64_t len = t.params.length(*best_k);
  const std::uint64_t s = layout.start(*best_k);
  Cycle c;
  for (std::uint64_t i = 0; i < len; ++i) c.vertices.push_back(static_cast<VertexId>(s + i));
  c.weight = std::pow(best.get_d(), static_cast<double>(len));
  if (len <= 64) c.exact_weight = pow(best, len);
  r.value = best.get_d();
  r.exact = best;
  r.witness = std::move(c);
  return r;
}

// --- long-cycle family ----------------------------------------------------

EpsilonSchedule epsilon_power_of_four(std::size_t k_max) {
  return EpsilonSchedule{"4^-k",
                         [](std::size_t k) {
                           Rational r(1);
                           mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(2 * k));
                           return r;
                         },
                         k_max};
}

namespace {

Rational two_power(std::size_t k) {
  Rational r(1);
  mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
  return r;
}

std::string method_name(PowerProduct::Method m) {
  return m == PowerProduct::Method::Expanded ? "expanded" : "log-enclosure";
}

struct Prop2Weights {
  std::vector<Rational> eps;             // eps[k], k >= 1
  std::vector<std::uint64_t> length;     // length[k] = l_k
  std::size_t k_max = 0;

  /// Block of 1-based vertex v >= 2: the k with l_{k-1} < v <= l_k.
  std::size_t block(std::uint64_t v) const {
    auto it = std::lower_bound(length.begin() + 1, length.end(), v);
    return static_cast<std::size_t>(it - length.begin());
  }

  WeightedDigraph truncation(std::size_t n, bool with_extension) const {
    if (n > length[k_max]) throw ConstructionError("prop2 truncation beyond the last constructed cycle");
    DigraphBuilder b(n);
    b.arc(0, 0, Weight(Rational(1 - eps[1])));
    if (n >= 2 && k_max >= 2) b.arc(0, 1, Weight(Rational(eps[2] / two_power(2))));
    for (std::uint64_t v = 2; v <= n; ++v) {
      std::size_t j = block(v);
      Rational main = 1 - eps[j];
      if (v < length[j]) {
        if (v + 1 <= n) b.arc(v - 1, v, Weight(main));
        if (with_extension) b.arc(v - 1, 0, Weight(eps[j]));
      } else {
        b.arc(v - 1, 0, Weight(main));
        if (j < k_max && v + 1 <= n) b.arc(v - 1, v, Weight(Rational(eps[j + 1] / two_power(j + 1))));
      }
    }
    return b.build();
  }
};

}  // namespace

Prop2Construction build_prop2(const EpsilonSchedule& schedule) {
  if (schedule.k_max < 1) throw ConstructionError("prop2 needs k_max >= 1");
  auto w = std::make_shared<Prop2Weights>();
  w->k_max = schedule.k_max;
  w->eps.assign(schedule.k_max + 2, Rational(0));
  w->length.assign(schedule.k_max + 1, 0);
  for (std::size_t k = 1; k <= schedule.k_max + 1; ++k) {
    Rational e = schedule.eps(k);
    if (sgn(e) <= 0 || e >= Rational(1, 2)) throw ConstructionError("eps_k must lie in (0, 1/2)");
    if (k > 1 && e >= w->eps[k - 1]) throw ConstructionError("eps_k must decrease strictly");
    w->eps[k] = e;
  }

  Prop2Construction out;
  out.schedule = schedule;
  const auto& eps = w->eps;
  w->length[1] = 1;
  std::uint64_t total = 1;  // L_{k-1}
  {
    Prop2Cycle c;
    c.k = 1;
    c.length = 1;
    c.eps = eps[1];
    c.inequality_holds = true;
    c.inequality_method = "vacuous";
    c.weight = PowerProduct::power(1 - eps[1], 1);
    c.gain_bound_holds = (1 - eps[1]) >= (1 - 2 * eps[1]);
    c.gain_bound_method = "expanded";
    auto [lo, hi] = c.weight.log_enclosure(64);
    c.log_gain = {lo.get_d(), hi.get_d()};
    out.cycles.push_back(std::move(c));
  }
  for (std::size_t k = 2; k <= schedule.k_max; ++k) {
    const Rational& e = eps[k];
    Rational grow = (1 - e) / (1 - 2 * e);
    Rational shrink = two_power(k) * (1 - e) / e;
    std::uint64_t ell = total + 1;
    std::optional<PowerProduct::Decision> decision;
    for (;;) {
      PowerProduct ratio = PowerProduct::power(grow, static_cast<std::int64_t>(ell)) /
                           PowerProduct::power(shrink, static_cast<std::int64_t>(total));
      decision = ratio.compare_to_one();
      if (decision && decision->sign > 0) break;
      if (ell > (std::uint64_t{1} << 61)) throw ConstructionError("no admissible cycle length found");
      ell *= 2;
    }
    w->length[k] = ell;
    Prop2Cycle c;
    c.k = k;
    c.length = ell;
    c.previous_total = total;
    c.eps = e;
    c.inequality_holds = true;
    c.inequality_method = method_name(decision->method);

    // S(gamma_k) = prod_{j=2}^{k} eps_j/2^j * prod_{j=2}^{k-1} (1-eps_j)^{l_j - l_{j-1} - 1}
    //              * (1-eps_k)^{l_k - l_{k-1}}.
    PowerProduct weight;
    for (std::size_t j = 2; j <= k; ++j) weight *= PowerProduct::power(eps[j] / two_power(j), 1);
    for (std::size_t j = 2; j < k; ++j)
      weight *= PowerProduct::power(1 - eps[j], static_cast<std::int64_t>(w->length[j] - w->length[j - 1] - 1));
    weight *= PowerProduct::power(1 - e, static_cast<std::int64_t>(ell - w->length[k - 1]));
    c.weight = weight;
    auto gain_check = (weight / PowerProduct::power(1 - 2 * e, static_cast<std::int64_t>(ell))).compare_to_one();
    c.gain_bound_holds = gain_check && gain_check->sign >= 0;
    c.gain_bound_method = gain_check ? method_name(gain_check->method) : "undecided";
    auto [lo, hi] = weight.log_enclosure(64);
    Rational len(static_cast<unsigned long>(ell));
    c.log_gain = {Rational(lo / len).get_d(), Rational(hi / len).get_d()};
    out.cycles.push_back(std::move(c));
    total = add_saturating(total, ell);
  }

  // Out-weights within Gamma, per vertex class.
  bool all_strict = true;
  auto add_class = [&](std::string what, std::size_t k, Rational value) {
    Rational bound = 1 - eps[k] / 2;
    all_strict = all_strict && value < 1;
    out.out_weights.push_back({std::move(what), k, std::move(value), std::move(bound)});
  };
  add_class("vertex 1", 1, schedule.k_max >= 2 ? Rational(1 - eps[1] + eps[2] / two_power(2)) : Rational(1 - eps[1]));
  for (std::size_t k = 2; k <= schedule.k_max; ++k) {
    if (w->length[k] - w->length[k - 1] >= 2) add_class("interior of block " + std::to_string(k), k, 1 - eps[k]);
    Rational endpoint = 1 - eps[k];
    if (k < schedule.k_max) endpoint += eps[k + 1] / two_power(k + 1);
    add_class("endpoint l_" + std::to_string(k), k, endpoint);
  }
  out.gamma_tag = all_strict ? WeightingTag::StrictlySubstochastic : WeightingTag::NotSubstochastic;

  auto metadata = [] {
    StructuralMetadata m;
    m.transversal = std::vector<VertexId>{0};
    m.sct_size = Extent::finite(1);
    m.ell_max = Extent::infinite();
    m.ell_min = 1;
    return m;
  }();
  out.family.name = "prop2";
  out.family.generator = [w](std::size_t n) { return w->truncation(n, true); };
  out.family.metadata = metadata;
  out.family.notes.push_back("extension: each interior vertex's arc back to vertex 1 carries its slack eps_k");
  out.gamma_family.name = "prop2-gamma";
  out.gamma_family.generator = [w](std::size_t n) { return w->truncation(n, false); };
  out.gamma_family.metadata = metadata;
  return out;
}

// --- Example 1 ---------------------------------------------------------------

Example1Params example1_geometric(const Rational& q, const Rational& a) {
  if (sgn(q) <= 0 || q >= 1) throw ConstructionError("geometric ratio must lie in (0, 1)");
  Example1Params p;
  p.a = a;
  p.name = "example1-geometric";
  p.exact_f = [q](std::size_t n) { return Rational((1 - q) * pow(q, n - 1)); };
  p.f = [q](std::size_t n) { return (1 - q.get_d()) * std::pow(q.get_d(), static_cast<double>(n - 1)); };
  p.tail = [q](std::size_t m) { return std::pow(q.get_d(), static_cast<double>(m)); };
  return p;
}

Example1Params example1_power(double eps, const Rational& a) {
  if (!(eps > 0.0)) throw ConstructionError("eps must be positive");
  Example1Params p;
  p.a = a;
  p.name = "example1-power";
  const double s = 1.0 + eps;
  const double norm = zeta(s);
  p.f = [s, norm](std::size_t n) { return std::pow(static_cast<double>(n), -s) / norm; };
  p.tail = [s, norm](std::size_t m) { return hurwitz_zeta(s, static_cast<double>(m + 1)) / norm; };
  // f_k^{1/k} -> 1, so the intrinsic spectral radius is 1.
  p.declared_lambda = 1.0;
  return p;
}

TruncationFamily build_example1(const Example1Params& params) {
  if (sgn(params.a) <= 0 || params.a >= 1) throw ConstructionError("a must lie in (0, 1)");
  if (!params.exact_f && !(params.f && params.tail)) throw ConstructionError("example1 needs f and its tails");
  TruncationFamily fam;
  fam.name = params.name;
  fam.generator = [params](std::size_t n) {
    DigraphBuilder b(n);
    if (params.exact_f) {
      std::vector<Rational> tail(n + 1);
      tail[0] = 1;
      for (std::size_t m = 1; m <= n; ++m) {
        Rational f = params.exact_f(m);
        if (sgn(f) <= 0) throw ConstructionError("f_n must be positive");
        tail[m] = tail[m - 1] - f;
        if (sgn(tail[m]) < 0) throw ConstructionError("partial sums of f exceed 1");
      }
      b.arc(0, 0, Weight(Rational(params.a * params.exact_f(1))));
      for (std::size_t v = 2; v <= n; ++v) {
        if (sgn(tail[v - 1]) <= 0) throw ConstructionError("partial sums of f reach 1");
        b.arc(v - 2, v - 1, Weight(Rational(tail[v - 1] / tail[v - 2])));
        b.arc(v - 1, 0, Weight(Rational(params.exact_f(v) / tail[v - 1])));
      }
    } else {
      b.arc(0, 0, Weight(params.a.get_d() * params.f(1)));
      double previous = 1.0;
      for (std::size_t v = 2; v <= n; ++v) {
        double t = params.tail(v - 1);
        if (!(t > 0.0)) throw ConstructionError("partial sums of f reach 1");
        b.arc(v - 2, v - 1, Weight(t / previous));
        b.arc(v - 1, 0, Weight(params.f(v) / t));
        previous = t;
      }
    }
    return b.build();
  };
  fam.metadata.transversal = std::vector<VertexId>{0};
  fam.metadata.sct_size = Extent::finite(1);
  fam.metadata.ell_max = Extent::infinite();
  fam.metadata.ell_min = 1;
  fam.facts.return_vertex = 0;
  fam.facts.slack_vertex = 0;
  fam.facts.complete_rows = [](std::size_t n) { return n - 1; };
  fam.facts.closed_form_omega = [params](std::size_t n) { return example1_omega(params, n); };
  if (params.declared_lambda) {
    fam.facts.lambda = *params.declared_lambda;
    if (params.exact_f) {
      fam.facts.lambda_exact = exact_from_double(*params.declared_lambda);
      fam.facts.all_ones_pruitt = *params.declared_lambda == 1.0;
    }
  }
  return fam;
}

double example1_omega(const Example1Params& params, std::size_t n) {
  auto f = [&](std::size_t k) { return params.exact_f ? params.exact_f(k).get_d() : params.f(k); };
  double best = params.a.get_d() * f(1);
  for (std::size_t k = 2; k <= n; ++k) best = std::max(best, std::exp(std::log(f(k)) / static_cast<double>(k)));
  return best;
}

// --- Example 2 ---------------------------------------------------------------

TruncationFamily build_example2(const Example2Params& params) {
  TruncationFamily fam;
  fam.name = "example2";
  fam.metadata.transversal = std::vector<VertexId>{0};
  fam.metadata.sct_size = Extent::finite(1);
  fam.metadata.ell_max = Extent::finite(2);
  fam.metadata.ell_min = 2;
  fam.facts.return_vertex = 0;
  if (params.exponent) {
    const double p = *params.exponent;
    if (!(p > 0.5)) throw ConstructionError("a_k = k^-p is square-summable only for p > 1/2");
    fam.generator = [p](std::size_t n) {
      DigraphBuilder b(n);
      for (std::size_t v = 1; v < n; ++v) {
        Weight a(std::pow(static_cast<double>(v), -p));
        b.arc(0, v, a);
        b.arc(v, 0, a);
      }
      return b.build();
    };
    fam.facts.lambda = std::sqrt(zeta(2.0 * p));
    fam.facts.closed_form_ladder = [p](std::size_t n) { return example2_b(p, n); };
    fam.notes.push_back("a_k = k^-" + to_decimal_string(p));
    return fam;
  }
  if (params.prefix.empty()) throw ConstructionError("example2 needs an exponent or a prefix");
  std::vector<Rational> a = params.prefix;
  for (const auto& x : a)
    if (sgn(x) <= 0) throw ConstructionError("a_k must be positive");
  if (params.sorted) std::sort(a.begin(), a.end(), [](const Rational& x, const Rational& y) { return x > y; });
  fam.finite_order = a.size() + 1;
  fam.generator = [a](std::size_t n) {
    DigraphBuilder b(n);
    for (std::size_t v = 1; v < n; ++v) {
      b.arc(0, v, Weight(a[v - 1]));
      b.arc(v, 0, Weight(a[v - 1]));
    }
    return b.build();
  };
  Rational b2(0);
  for (const auto& x : a) b2 += x * x;
  fam.facts.lambda = std::sqrt(b2.get_d());
  fam.facts.closed_form_ladder = [a](std::size_t n) {
    Rational s(0);
    for (std::size_t k = 1; k < n && k <= a.size(); ++k) s += a[k - 1] * a[k - 1];
    return std::sqrt(s.get_d());
  };
  return fam;
}

double example2_b(double exponent, std::size_t n) {
  if (n <= 1) return 0.0;
  const double s = 2.0 * exponent;
  return std::sqrt(zeta(s) - hurwitz_zeta(s, static_cast<double>(n)));
}

double example2_gap(double exponent, std::size_t n) {
  const double s = 2.0 * exponent;
  const double b = std::sqrt(zeta(s));
  return hurwitz_zeta(s, static_cast<double>(std::max<std::size_t>(n, 1))) / (b + example2_b(exponent, n));
}

}  // namespace stochgraph
