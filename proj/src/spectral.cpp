#include "stochgraph/spectral.hpp"

#include "stochgraph/perron_number.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace stochgraph {

namespace {

/// Greedy cycle transversal of the component, or
/// empty when it would exceed `cap`.
std::vector<std::size_t> small_transversal(const WeightedDigraph& component, std::size_t cap) {
  std::vector<bool> allowed(component.order(), true);
  std::vector<std::size_t> picked;
  while (auto c = shortest_cycle(component, allowed)) {
    if (picked.size() == cap) return {};
    // The highest out-degree vertex on the cycle tends to cover most cycles.
    VertexId best = c->front();
    std::size_t best_degree = 0;
    for (VertexId v : *c) {
      std::size_t degree = component.out_arcs(v).size();
      if (degree > best_degree) {
        best_degree = degree;
        best = v;
      }
    }
    allowed[best] = false;
    picked.push_back(best);
  }
  return picked;
}

/// Perron data of a small dense nonnegative irreducible matrix.
std::pair<double, std::vector<double>> dense_perron(const std::vector<std::vector<double>>& k) {
  const std::size_t m = k.size();
  std::vector<double> x(m, 1.0), y(m);
  double value = 0.0;
  for (int it = 0; it < 20000; ++it) {
    double lo = INFINITY, hi = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double acc = x[i];
      for (std::size_t j = 0; j < m; ++j) acc += k[i][j] * x[j];
      y[i] = acc;
      lo = std::min(lo, acc / x[i]);
      hi = std::max(hi, acc / x[i]);
    }
    double top = *std::max_element(y.begin(), y.end());
    for (std::size_t i = 0; i < m; ++i) x[i] = y[i] / top;
    value = 0.5 * (lo + hi) - 1.0;
    if (hi - lo <= 1e-15 * (1.0 + value)) break;
  }
  return {value, x};
}

/// Perron vector of a strong component through its reduction onto a cycle
/// transversal W: with R = V \ W acyclic, lambda is the t with
/// rho(K(t)) = 1 where K(t) = A_WW/t + A_WR/t (I - A_RR/t)^{-1} A_RW/t.
std::optional<std::vector<double>> transversal_perron_vector(const WeightedDigraph& comp, double lo, double hi) {
  const std::size_t n = comp.order();
  auto w_set = small_transversal(comp, 32);
  if (w_set.empty()) return std::nullopt;
  // Reverse topological order of R (sinks of A_RR first).
  std::vector<bool> removed(n, false);
  for (auto w : w_set) removed[w] = true;
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& arc : comp.arcs())
    if (!removed[arc.from] && !removed[arc.to]) ++indegree[arc.to];
  std::vector<VertexId> order;
  for (VertexId v = 0; v < n; ++v)
    if (!removed[v] && indegree[v] == 0) order.push_back(v);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const auto& arc : comp.out_arcs(order[i]))
      if (!removed[arc.to] && --indegree[arc.to] == 0) order.push_back(arc.to);
  std::reverse(order.begin(), order.end());

  const std::size_t m = w_set.size();
  // u^{(j)} = (I - A_RR/t)^{-1} A_{R,w_j}/t, stored densely over V.
  auto reduce = [&](double t, std::vector<std::vector<double>>* columns) {
    std::vector<std::vector<double>> k(m, std::vector<double>(m, 0.0));
    std::vector<double> u(n);
    for (std::size_t j = 0; j < m; ++j) {
      VertexId target = w_set[j];
      std::fill(u.begin(), u.end(), 0.0);
      for (VertexId r : order) {
        double acc = 0.0;
        for (const auto& arc : comp.out_arcs(r)) {
          if (arc.to == target) {
            acc += arc.weight.value / t;
          } else if (!removed[arc.to]) {
            acc += arc.weight.value / t * u[arc.to];
          }
        }
        u[r] = acc;
      }
      for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (const auto& arc : comp.out_arcs(w_set[i])) {
          if (arc.to == target) {
            acc += arc.weight.value / t;
          } else if (!removed[arc.to]) {
            acc += arc.weight.value / t * u[arc.to];
          }
        }
        k[i][j] = acc;
      }
      if (columns) (*columns)[j] = u;
    }
    return k;
  };

  if (!(lo > 0.0) || !(hi >= lo)) return std::nullopt;
  double a = lo, b = hi;
  for (int it = 0; it < 200 && b - a > 1e-17 * b; ++it) {
    double mid = 0.5 * (a + b);
    double rho = dense_perron(reduce(mid, nullptr)).first;
    // rho(K(t)) decreases in t and equals 1 at lambda.
    if (rho > 1.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  double t = 0.5 * (a + b);
  std::vector<std::vector<double>> columns(m);
  auto [rho, xw] = dense_perron(reduce(t, &columns));
  (void)rho;
  std::vector<double> x(n, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    x[w_set[j]] = xw[j];
    for (VertexId r : order) x[r] += columns[j][r] * xw[j];
  }
  double top = *std::max_element(x.begin(), x.end());
  if (!(top > 0.0)) return std::nullopt;
  for (auto& v : x) {
    v /= top;
    if (!(v > 0.0)) return std::nullopt;
  }
  return x;
}

struct ComponentResult {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t iterations = 0;
  bool converged = true;
  std::vector<double> vector;
};

ComponentResult component_perron(const WeightedDigraph& d, const std::vector<VertexId>& members,
                                 const PerronOptions& options) {
  ComponentResult r;
  CsrMatrix a = CsrMatrix::from_digraph(d, members);
  const std::size_t n = members.size();
  double sigma = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t k = a.offsets[i]; k < a.offsets[i + 1]; ++k) row += a.values[k];
    sigma = std::max(sigma, row);
  }
  std::vector<double> x(n, 1.0), ax(n);
  bool restarted = false;
  const std::size_t slow_after = std::min<std::size_t>(options.max_iterations, 2000);
  for (std::size_t it = 0;; ++it) {
    matvec(a, x, ax, 0.0, options.exec);
    RatioBounds cw = ratio_bounds(x, ax, options.exec);
    r.lower = std::max(cw.min, 0.0);
    r.upper = cw.max;
    r.iterations = it;
    if (r.upper - r.lower <= options.tol * r.upper) break;
    if (it >= options.max_iterations) {
      r.converged = false;
      break;
    }
    if (options.accelerate && !restarted && it == slow_after) {
      restarted = true;
      WeightedDigraph comp = d.induced(members);
      if (auto warm = transversal_perron_vector(comp, r.lower, r.upper)) {
        x = std::move(*warm);
        continue;
      }
    }
    double top = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ax[i] += sigma * x[i];
      top = std::max(top, ax[i]);
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = ax[i] / top;
  }
  r.vector = std::move(x);
  return r;
}

}  // namespace

PerronResult perron_root_report(const WeightedDigraph& d, const PerronOptions& options) {
  PerronResult result;
  if (d.order() == 0) throw SpectralError("perron_root needs at least one vertex");
  std::size_t count = 0;
  auto component = strong_components(d, &count);
  std::vector<std::vector<VertexId>> members(count);
  for (VertexId v = 0; v < d.order(); ++v) members[component[v]].push_back(v);
  result.vector.assign(d.order(), 1.0);
  for (const auto& group : members) {
    double lo, hi;
    if (group.size() == 1) {
      auto loop = d.weight(group[0], group[0]);
      lo = hi = loop ? loop->value : 0.0;
    } else {
      auto r = component_perron(d, group, options);
      lo = r.lower;
      hi = r.upper;
      result.iterations += r.iterations;
      result.converged = result.converged && r.converged;
      for (std::size_t i = 0; i < group.size(); ++i) result.vector[group[i]] = r.vector[i];
    }
    result.lower = std::max(result.lower, lo);
    result.upper = std::max(result.upper, hi);
  }
  result.value = 0.5 * (result.lower + result.upper);
  return result;
}

double perron_root(const WeightedDigraph& d, double tol) {
  PerronOptions options;
  options.tol = tol;
  return perron_root_report(d, options).value;
}

template <class T>
Polynomial<T> coates_charpoly(const WeightedDigraph& d, std::size_t max_unions) {
  std::vector<CycleUnion> unions;
  try {
    unions = enumerate_cycle_unions(d, max_unions);
  } catch (const BudgetExceeded&) {
    throw CoatesBudgetExceeded("Coates expansion exceeded " + std::to_string(max_unions) + " cycle unions",
                               max_unions);
  }
  std::vector<T> coeffs(d.order() + 1, ScalarTraits<T>::zero());
  coeffs[0] = ScalarTraits<T>::one();
  for (const auto& u : unions) {
    T weight = ScalarTraits<T>::one();
    for (const auto& c : u.cycles) {
      for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        weight *= d.weight(c.vertices[i], c.vertices[(i + 1) % c.vertices.size()])->template as<T>();
      }
    }
    if (u.count() % 2 == 1) {
      coeffs[u.total_length()] -= weight;
    } else {
      coeffs[u.total_length()] += weight;
    }
  }
  return Polynomial<T>(std::move(coeffs));
}

template <class T>
T det_I_minus_z(const WeightedDigraph& d, const T& z) {
  return determinant(identity_minus(d.adjacency<T>(), z));
}

template <class T>
Polynomial<T> elimination_charpoly(const WeightedDigraph& d) {
  const std::size_t n = d.order();
  const DenseMatrix<T> a = d.adjacency<T>();
  std::vector<T> nodes(n + 1), values(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    if constexpr (is_exact_v<T>) {
      nodes[j] = T(static_cast<long>(j));
    } else {
      nodes[j] = std::cos(std::numbers::pi * (2.0 * static_cast<double>(j) + 1.0) / (2.0 * static_cast<double>(n + 1)));
    }
    values[j] = determinant(identity_minus(a, nodes[j]));
  }
  return interpolate(nodes, values);
}

long nonzero_eigenvalue_count(const Polynomial<double>& charpoly, double rel_tol) {
  return std::max(0L, charpoly.numerical_degree(rel_tol));
}

long nonzero_eigenvalue_count(const RationalPolynomial& charpoly) { return std::max(0L, charpoly.degree()); }

template <class T>
DenseMatrix<T> resolvent(const WeightedDigraph& d) {
  if constexpr (is_exact_v<T>) {
    if (ExactPerron(d).compare(Rational(1)) >= 0) throw SpectralError("resolvent needs Perron root < 1");
  } else {
    auto pr = perron_root_report(d);
    if (pr.lower >= 1.0) throw SpectralError("resolvent needs Perron root < 1");
  }
  auto inv = inverse(identity_minus(d.adjacency<T>(), ScalarTraits<T>::one()));
  if (!inv) throw SpectralError("I - A is singular");
  return *inv;
}

double neumann_partial(const WeightedDigraph& d, VertexId v, std::size_t p_max, Exec exec) {
  if (v >= d.order()) throw SpectralError("vertex out of range");
  return green_partial_sums(CsrMatrix::from_digraph(d), v, 1.0, p_max, exec).back();
}

SpectralReport spectral_report(const WeightedDigraph& d, Mode mode, std::size_t max_unions) {
  SpectralReport r;
  r.mode = mode;
  r.perron_root = perron_root(d);
  if (mode == Mode::Exact) {
    if (!d.is_exact()) throw SpectralError("exact mode needs rational weights");
    try {
      r.exact_charpoly = coates_charpoly<Rational>(d, max_unions);
      r.charpoly_method = "coates";
    } catch (const CoatesBudgetExceeded&) {
      r.exact_charpoly = elimination_charpoly<Rational>(d);
      r.charpoly_method = "elimination";
    }
    std::vector<double> c;
    for (const auto& q : r.exact_charpoly->coefficients()) c.push_back(q.get_d());
    r.charpoly = Polynomial<double>(std::move(c));
    r.nonzero_eig_count = nonzero_eigenvalue_count(*r.exact_charpoly);
    r.exact_det_at_one = det_I_minus<Rational>(d);
    r.det_at_one = r.exact_det_at_one->get_d();
  } else {
    WeightedDigraph fd = d.floating();
    try {
      r.charpoly = coates_charpoly<double>(fd, max_unions);
      r.charpoly_method = "coates";
    } catch (const CoatesBudgetExceeded&) {
      r.charpoly = elimination_charpoly<double>(fd);
      r.charpoly_method = "elimination";
    }
    r.nonzero_eig_count = nonzero_eigenvalue_count(r.charpoly);
    r.det_at_one = det_I_minus<double>(fd);
  }
  return r;
}

std::string_view to_string(LadderMode mode) { return mode == LadderMode::Leading ? "leading" : "sup_exact"; }

std::string_view to_string(LimitMethod method) {
  switch (method) {
    case LimitMethod::ClosedForm:
      return "closed-form";
    case LimitMethod::Extrapolated:
      return "extrapolated";
    case LimitMethod::SupremumOfComputed:
      break;
  }
  return "supremum-of-computed";
}

double sup_principal_perron(const WeightedDigraph& d, std::size_t k, std::size_t budget,
                            const PerronOptions& options) {
  const std::size_t n = d.order();
  if (k == 0 || k > n) throw SpectralError("subset size out of range");
  // Perron roots are monotone under induced subdigraphs, so k = n is direct.
  if (k == n) return perron_root_report(d, options).value;
  std::vector<VertexId> subset(k);
  std::iota(subset.begin(), subset.end(), VertexId{0});
  double best = 0.0;
  std::size_t visited = 0;
  while (true) {
    if (++visited > budget) throw BudgetExceeded("sup_exact subset budget exceeded");
    best = std::max(best, perron_root_report(d.induced(subset), options).value);
    // Next k-combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && subset[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  return best;
}

TruncationSpectrum lambda_ladder(const TruncationFamily& f, const std::vector<std::size_t>& n_values,
                                 const LadderOptions& options) {
  TruncationSpectrum spectrum;
  std::vector<double> values(n_values.size());
  for_each_index(n_values.size(), options.exec, [&](std::size_t i) {
    std::size_t n = n_values[i];
    if (options.mode == LadderMode::Leading) {
      values[i] = perron_root_report(truncate(f, n), options.perron).value;
    } else {
      WeightedDigraph window = truncate(f, n + options.sup_window_extra);
      values[i] = sup_principal_perron(window, std::min(n, window.order()), options.sup_budget, options.perron);
    }
  });
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    spectrum.values[n_values[i]] = values[i];
    spectrum.produced_by[n_values[i]] = options.mode;
  }
  double sup = 0.0;
  for (const auto& [n, v] : spectrum.values) sup = std::max(sup, v);
  if (f.facts.lambda) {
    spectrum.limit_estimate = std::max(*f.facts.lambda, sup);
    spectrum.limit_method = LimitMethod::ClosedForm;
    return spectrum;
  }
  spectrum.limit_estimate = sup;
  if (spectrum.values.size() >= 3) {
    // Aitken extrapolation on the last three ladder points.
    auto it = spectrum.values.end();
    double x3 = (--it)->second, x2 = (--it)->second, x1 = (--it)->second;
    double d1 = x2 - x1, d2 = x3 - x2;
    double denom = d2 - d1;
    if (d1 > 0.0 && d2 > 0.0 && d2 < d1 && denom != 0.0) {
      double extrapolated = x3 - d2 * d2 / denom;
      if (std::isfinite(extrapolated) && extrapolated >= sup) {
        spectrum.limit_estimate = extrapolated;
        spectrum.limit_method = LimitMethod::Extrapolated;
      }
    }
  }
  return spectrum;
}

template Polynomial<double> coates_charpoly<double>(const WeightedDigraph&, std::size_t);
template Polynomial<Rational> coates_charpoly<Rational>(const WeightedDigraph&, std::size_t);
template Polynomial<double> elimination_charpoly<double>(const WeightedDigraph&);
template Polynomial<Rational> elimination_charpoly<Rational>(const WeightedDigraph&);
template double det_I_minus_z<double>(const WeightedDigraph&, const double&);
template Rational det_I_minus_z<Rational>(const WeightedDigraph&, const Rational&);
template DenseMatrix<double> resolvent<double>(const WeightedDigraph&);
template DenseMatrix<Rational> resolvent<Rational>(const WeightedDigraph&);

}  // namespace stochgraph
