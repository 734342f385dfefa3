#include "stochgraph/classification.hpp"

#include "stochgraph/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace stochgraph {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Transient:
      return "Transient";
    case Verdict::Recurrent:
      return "Recurrent";
    case Verdict::Unknown:
      break;
  }
  return "Unknown";
}

std::string_view to_string(Confidence c) { return c == Confidence::Certified ? "certified" : "numerical"; }

namespace {

/// Index of the strict row, or -1 when some row violates or none is strict.
template <class T>
long check_rows(const WeightedDigraph& d, const std::vector<T>& xi, const T& lambda, double tol) {
  long strict = -1;
  for (VertexId u = 0; u < d.order(); ++u) {
    if (!(xi[u] > 0)) return -1;
    T ax = ScalarTraits<T>::zero();
    for (const auto& arc : d.out_arcs(u)) ax += arc.weight.as<T>() * xi[arc.to];
    T rhs = lambda * xi[u];
    if constexpr (is_exact_v<T>) {
      if (ax > rhs) return -1;
      if (ax < rhs && strict < 0) strict = static_cast<long>(u);
    } else {
      double slack = tol * std::abs(rhs);
      if (ax > rhs + slack) return -1;
      if (ax < rhs - slack && strict < 0) strict = static_cast<long>(u);
    }
  }
  return strict;
}

/// xi(v0) = 1 and (A xi)(v) = lambda xi(v) for v != v0.
template <class T>
std::optional<std::vector<T>> balanced_vector(const WeightedDigraph& d, const T& lambda, VertexId v0) {
  const std::size_t n = d.order();
  if (n == 1) return std::vector<T>{ScalarTraits<T>::one()};
  DenseMatrix<T> m(n - 1);
  std::vector<T> rhs(n - 1, ScalarTraits<T>::zero());
  auto index = [&](VertexId v) { return v < v0 ? v : v - 1; };
  for (VertexId u = 0; u < n; ++u) {
    if (u == v0) continue;
    m(index(u), index(u)) = lambda;
    for (const auto& arc : d.out_arcs(u)) {
      if (arc.to == v0) {
        rhs[index(u)] += arc.weight.as<T>();
      } else {
        m(index(u), index(arc.to)) -= arc.weight.as<T>();
      }
    }
  }
  auto sol = solve(std::move(m), std::move(rhs));
  if (!sol) return std::nullopt;
  std::vector<T> xi(n);
  for (VertexId v = 0; v < n; ++v) xi[v] = v == v0 ? ScalarTraits<T>::one() : (*sol)[index(v)];
  return xi;
}

}  // namespace

std::optional<PruittCertificate> pruitt_certificate(const WeightedDigraph& d, double lambda, double tol) {
  if (!(lambda > 0.0)) throw std::invalid_argument("pruitt_certificate needs lambda > 0");
  const std::size_t n = d.order();
  auto accept = [&](std::vector<double> xi) -> std::optional<PruittCertificate> {
    long strict = check_rows(d, xi, lambda, tol);
    if (strict < 0) return std::nullopt;
    PruittCertificate c;
    c.xi = std::move(xi);
    c.strict_vertex = static_cast<VertexId>(strict);
    return c;
  };
  if (auto c = accept(std::vector<double>(n, 1.0))) return c;
  WeightedDigraph fd = d.floating();
  for (VertexId v0 = 0; v0 < std::min<std::size_t>(n, 64); ++v0) {
    if (auto xi = balanced_vector<double>(fd, lambda, v0))
      if (auto c = accept(*xi)) return c;
  }
  // x <- (A + lambda I) x / (2 lambda), renormalised.
  CsrMatrix a = CsrMatrix::from_digraph(d);
  std::vector<double> x(n, 1.0), y;
  for (int it = 0; it < 5000; ++it) {
    matvec_serial(a, x, y, lambda);
    double top = *std::max_element(y.begin(), y.end());
    if (!(top > 0.0)) break;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / top;
    if (it % 100 == 99)
      if (auto c = accept(x)) return c;
  }
  return std::nullopt;
}

std::optional<PruittCertificate> pruitt_certificate(const WeightedDigraph& d, const Rational& lambda) {
  if (sgn(lambda) <= 0) throw std::invalid_argument("pruitt_certificate needs lambda > 0");
  if (!d.is_exact()) throw std::invalid_argument("exact Pruitt search needs rational weights");
  const std::size_t n = d.order();
  auto accept = [&](std::vector<Rational> xi) -> std::optional<PruittCertificate> {
    VertexId strict = 0;
    if (!verify_pruitt(d, xi, lambda, &strict)) return std::nullopt;
    PruittCertificate c;
    for (const auto& q : xi) c.xi.push_back(q.get_d());
    c.exact_xi = std::move(xi);
    c.strict_vertex = strict;
    return c;
  };
  if (auto c = accept(std::vector<Rational>(n, Rational(1)))) return c;
  for (VertexId v0 = 0; v0 < n; ++v0) {
    if (auto xi = balanced_vector<Rational>(d, lambda, v0))
      if (auto c = accept(*xi)) return c;
  }
  return std::nullopt;
}

bool verify_pruitt(const WeightedDigraph& d, const std::vector<Rational>& xi, const Rational& lambda,
                   VertexId* strict) {
  if (xi.size() != d.order()) return false;
  long s = check_rows(d, xi, lambda, 0.0);
  if (s < 0) return false;
  if (strict) *strict = static_cast<VertexId>(s);
  return true;
}

WeightedDigraph similarity_scale(const WeightedDigraph& d, const std::vector<double>& xi, double lambda) {
  if (xi.size() != d.order()) throw std::invalid_argument("xi has the wrong length");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  for (double x : xi)
    if (!(x > 0.0)) throw std::invalid_argument("xi must be positive");
  return d.reweighted([&](const Arc& arc) { return Weight(arc.weight.value * xi[arc.to] / (lambda * xi[arc.from])); });
}

WeightedDigraph similarity_scale(const WeightedDigraph& d, const std::vector<Rational>& xi, const Rational& lambda) {
  if (xi.size() != d.order()) throw std::invalid_argument("xi has the wrong length");
  if (sgn(lambda) <= 0) throw std::invalid_argument("lambda must be positive");
  for (const auto& x : xi)
    if (sgn(x) <= 0) throw std::invalid_argument("xi must be positive");
  return d.reweighted([&](const Arc& arc) {
    return Weight(Rational(arc.weight.as<Rational>() * xi[arc.to] / (lambda * xi[arc.from])));
  });
}

bool cyr_criterion(const StructuralMetadata& metadata) {
  auto sct = metadata.effective_sct_size();
  if (!sct || !metadata.ell_max) throw MetadataError("Cyr criterion needs declared |sct| and l_max");
  return sct->is_finite() && metadata.ell_max->is_finite();
}

namespace {

std::vector<std::size_t> ladder_grid(std::size_t n_max) {
  std::vector<std::size_t> grid;
  for (std::size_t n = 1; n < n_max; n = std::max(n + 1, n * 2)) grid.push_back(n);
  grid.push_back(n_max);
  return grid;
}

/// G_P computed exactly when affordable.
std::optional<Rational> exact_green_sum(const WeightedDigraph& d, VertexId v, const Rational& lambda, std::size_t p) {
  if (!d.is_exact() || d.order() * p > 200'000 || d.arc_count() * p > 400'000) return std::nullopt;
  std::vector<Rational> x(d.order(), Rational(0)), y(d.order());
  x[v] = 1;
  Rational total(1);
  for (std::size_t q = 1; q <= p; ++q) {
    for (VertexId u = 0; u < d.order(); ++u) {
      Rational acc(0);
      for (const auto& arc : d.out_arcs(u)) acc += *arc.weight.exact * x[arc.to];
      y[u] = acc / lambda;
    }
    x.swap(y);
    total += x[v];
  }
  return total;
}

}  // namespace

RecurrenceVerdict classify(const TruncationFamily& f, const ClassifyOptions& options) {
  RecurrenceVerdict result;
  const auto& meta = f.metadata;
  if (f.facts.lambda) {
    result.lambda = *f.facts.lambda;
    result.lambda_method = "closed-form";
  }

  auto sct = meta.effective_sct_size();
  if (sct && meta.ell_max) {
    if (cyr_criterion(meta)) {
      result.verdict = Verdict::Recurrent;
      result.confidence = Confidence::Certified;
      result.evidence = CyrStructural{*sct, *meta.ell_max};
      result.notes.push_back("finite cycle transversal and bounded cycle lengths: no transient weighting exists");
      return result;
    }
    result.notes.push_back("structural criterion fails (|sct| = " + sct->to_string() +
                           ", l_max = " + meta.ell_max->to_string() + "); transient weightings exist");
  }

  const std::size_t n_top = f.finite_order ? *f.finite_order : options.n_max;
  if (f.facts.lambda) {
    result.lambda = *f.facts.lambda;
    result.lambda_method = "closed-form";
  } else if (f.finite_order) {
    result.lambda = perron_root(truncate(f, *f.finite_order));
    result.lambda_method = "finite";
  } else {
    LadderOptions lo;
    lo.exec = options.exec;
    auto spectrum = lambda_ladder(f, ladder_grid(options.n_max), lo);
    result.lambda = spectrum.limit_estimate;
    result.lambda_method = std::string(to_string(spectrum.limit_method));
  }

  if (f.facts.all_ones_pruitt && f.facts.lambda_exact) {
    WeightedDigraph d = truncate(f, n_top);
    std::size_t rows = f.facts.complete_rows ? f.facts.complete_rows(n_top) : (f.finite_order ? d.order() : 0);
    const Rational& lambda = *f.facts.lambda_exact;
    bool ok = d.is_exact() && rows > 0;
    std::optional<VertexId> strict;
    for (VertexId u = 0; ok && u < rows; ++u) {
      Rational out = d.out_weight<Rational>(u);
      if (out > lambda) ok = false;
      if (out < lambda && !strict) strict = u;
    }
    if (ok && strict && (!f.facts.slack_vertex || *strict == *f.facts.slack_vertex)) {
      PruittCertificate c;
      c.xi.assign(d.order(), 1.0);
      c.exact_xi = std::vector<Rational>(d.order(), Rational(1));
      c.strict_vertex = *strict;
      c.scope = "presentation";
      c.verified_rows = rows;
      result.verdict = Verdict::Transient;
      result.confidence = Confidence::Certified;
      result.evidence = std::move(c);
      result.lambda = lambda.get_d();
      result.lambda_method = "closed-form";
      result.notes.push_back("all-ones Pruitt vector of the presentation; complete rows 1.." + std::to_string(rows) +
                             " re-verified exactly");
      return result;
    }
    result.notes.push_back("declared all-ones Pruitt certificate failed re-verification");
  }

  if (!(result.lambda > 0.0)) {
    result.notes.push_back("lambda is zero; Green series undefined");
    return result;
  }
  const VertexId v = options.vertex.value_or(f.facts.return_vertex);
  WeightedDigraph d = truncate(f, n_top);
  if (v >= d.order()) throw std::invalid_argument("return vertex outside the truncation");
  const std::size_t p = std::max<std::size_t>(options.p_max, 10);
  auto sums = green_partial_sums(CsrMatrix::from_digraph(d), v, result.lambda, p, options.exec);

  DivergingSeries series;
  series.vertex = v;
  series.n = d.order();
  for (std::size_t q = 1; q <= p; q *= 10) series.partial_sums.emplace_back(q, sums[q]);
  series.partial_sums.emplace_back(p, sums[p]);
  const std::size_t p0 = p / 10;
  const auto pm = static_cast<std::size_t>(std::llround(static_cast<double>(p) / std::sqrt(10.0)));
  series.growth_factor = sums[p] / sums[p0];
  double slope_early = (sums[pm] - sums[p0]) / static_cast<double>(pm - p0);
  double slope_late = (sums[p] - sums[pm]) / static_cast<double>(p - pm);
  series.slope_ratio = slope_early > 0.0 ? slope_late / slope_early : 0.0;
  if (f.facts.lambda_exact) series.exact_last = exact_green_sum(d, v, *f.facts.lambda_exact, p);

  if (series.growth_factor > options.divergence_factor && series.slope_ratio >= options.slope_retention) {
    series.trend = "unbounded";
    result.verdict = Verdict::Recurrent;
    result.confidence = Confidence::Numerical;
    result.evidence = std::move(series);
    return result;
  }
  series.trend = series.growth_factor < 1.0 + 1e-9 ? "bounded" : "inconclusive";
  result.notes.push_back("partial sums " + series.trend + " without a presentation-level certificate");
  result.evidence = std::move(series);
  return result;
}

}  // namespace stochgraph
