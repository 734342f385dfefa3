#include "stochgraph/inequalities.hpp"

#include "stochgraph/perron_number.hpp"
#include "stochgraph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

namespace stochgraph {

void InequalityReport::record(const std::string& instance, const Relation& r) {
  ++comparisons;
  signs.emplace_back(r.name, r.sign);
  if (!min_margin || r.margin < *min_margin) {
    min_margin = r.margin;
    min_margin_relation = r.name;
    if (r.exact_margin)
      min_margin_exact = r.exact_margin->first;
    else
      min_margin_exact.reset();
  }
  if (!r.holds()) {
    Violation v{instance, r.name, r.lhs, r.rhs, r.margin, std::nullopt};
    if (r.exact_margin) v.exact_margin = "[" + to_string(r.exact_margin->first) + ", " + to_string(r.exact_margin->second) + "]";
    violations.push_back(std::move(v));
  }
}

void InequalityReport::merge(const InequalityReport& other) {
  instances_tested += other.instances_tested;
  comparisons += other.comparisons;
  skipped += other.skipped;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  findings.insert(findings.end(), other.findings.begin(), other.findings.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  agreement_checked += other.agreement_checked;
  agreement_failures.insert(agreement_failures.end(), other.agreement_failures.begin(), other.agreement_failures.end());
  if (other.min_margin && (!min_margin || *other.min_margin < *min_margin)) {
    min_margin = other.min_margin;
    min_margin_relation = other.min_margin_relation;
    min_margin_exact = other.min_margin_exact;
  }
}

namespace {

int float_sign(double margin, double lhs, double rhs) {
  const double tol = inequality_float_tol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return margin > tol ? 1 : (margin < -tol ? -1 : 0);
}

/// Perron-root access in the run's arithmetic.
template <class T>
struct Eval;

template <>
struct Eval<Rational> {
  ExactPerron perron;

  explicit Eval(const WeightedDigraph& d) : perron(d) {}
  double lambda() const { return perron.approx(); }
  int lambda_vs_one() const { return perron.compare(Rational(1)); }

  /// Claim h(lambda) >= 0, equivalent to lhs <= rhs.
  Relation claim(std::string name, const RationalPolynomial& h, double lhs, double rhs, bool h_is_margin) const {
    Relation r{std::move(name), lhs, rhs, rhs - lhs, perron.sign_of(h), std::nullopt};
    if (h_is_margin) r.exact_margin = enclose(h, perron.lower(), perron.upper());
    return r;
  }
  static Relation compare(std::string name, const Rational& lhs, const Rational& rhs) {
    Rational m = rhs - lhs;
    return Relation{std::move(name), lhs.get_d(), rhs.get_d(), m.get_d(), sgn(m), std::make_pair(m, m)};
  }
  static Relation equal(std::string name, const Rational& lhs, const Rational& rhs) {
    Rational m = rhs - lhs;
    if (sgn(m) > 0) m = -m;
    return Relation{std::move(name), lhs.get_d(), rhs.get_d(), m.get_d(), sgn(m), std::make_pair(m, m)};
  }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
};

template <>
struct Eval<double> {
  PerronResult report;

  explicit Eval(const WeightedDigraph& d) : report(perron_root_report(d)) {}
  double lambda() const { return report.value; }
  int lambda_vs_one() const { return report.upper < 1.0 ? -1 : (report.lower > 1.0 ? 1 : 0); }

  Relation claim(std::string name, const Polynomial<double>&, double lhs, double rhs, bool) const {
    return compare(std::move(name), lhs, rhs);
  }
  static Relation compare(std::string name, double lhs, double rhs) {
    double m = rhs - lhs;
    return Relation{std::move(name), lhs, rhs, m, float_sign(m, lhs, rhs), std::nullopt};
  }
  static Relation equal(std::string name, double lhs, double rhs) {
    double m = -std::abs(rhs - lhs);
    return Relation{std::move(name), lhs, rhs, m, float_sign(m, lhs, rhs), std::nullopt};
  }
  static bool is_zero(double x) { return std::abs(x) < 1e-14; }
};

template <class T>
T scalar(long v) {
  return T(v);
}

template <class T>
Polynomial<T> mono(T c, std::size_t k) {
  return Polynomial<T>::monomial(std::move(c), k);
}

template <class T>
DenseMatrix<T> green(const WeightedDigraph& d) {
  auto g = inverse(identity_minus(d.adjacency<T>(), ScalarTraits<T>::one()));
  if (!g) throw InequalityError("I - S is singular");
  return *g;
}

template <class T>
T max_diagonal(const DenseMatrix<T>& g) {
  T m = g(0, 0);
  for (std::size_t v = 1; v < g.size(); ++v) m = std::max(m, g(v, v));
  return m;
}

void require_transversal(const WeightedDigraph& d, const TransversalResult& w) {
  if (!is_cycle_transversal(d, w.vertices)) throw InequalityError("vertex set is not a cycle transversal");
}

InequalityReport start(std::string name, Mode mode) {
  InequalityReport r;
  r.name = std::move(name);
  r.mode = mode;
  r.instances_tested = 1;
  return r;
}

void skip(InequalityReport& r, const std::string& instance, const std::string& why) {
  r.instances_tested = 0;
  r.skipped = 1;
  r.notes.push_back((instance.empty() ? "" : instance + ": ") + why);
}

template <class T>
void chain_tail(InequalityReport& rep, const Eval<T>& ev, std::size_t n, const std::string& instance) {
  const double lam = ev.lambda();
  const double nd = static_cast<double>(n);
  Polynomial<T> h = Polynomial<T>::constant(scalar<T>(static_cast<long>(n) - 1)) -
                    mono<T>(scalar<T>(static_cast<long>(n)), 1) + mono<T>(scalar<T>(1), n);
  rep.record(instance, ev.claim("1 - lambda^n <= n(1 - lambda)", h, 1.0 - std::pow(lam, nd), nd * (1.0 - lam), true));
}

template <class T>
InequalityReport boyle_handelman_impl(const WeightedDigraph& d, Mode mode, const std::string& instance, bool full) {
  auto rep = start(full ? "boyle-handelman" : "ksv", mode);
  if (is_acyclic(d) && full) {
    skip(rep, instance, "acyclic: no nonzero eigenvalue");
    return rep;
  }
  Eval<T> ev(d);
  if (ev.lambda_vs_one() > 0) {
    skip(rep, instance, "Perron root exceeds 1");
    return rep;
  }
  const std::size_t n = d.order();
  const T det = det_I_minus<T>(d);
  const double lam = ev.lambda();
  const double detd = to_double(det);
  const T one = scalar<T>(1);
  if (full) {
    Polynomial<T> cp = elimination_charpoly<T>(d);
    const auto r = static_cast<std::size_t>(nonzero_eigenvalue_count(cp));
    const double lr = std::pow(lam, static_cast<double>(r));
    const double ln = std::pow(lam, static_cast<double>(n));
    rep.record(instance, ev.claim("det(I-A) <= 1 - lambda^r", Polynomial<T>::constant(T(one - det)) - mono<T>(one, r),
                                  detd, 1.0 - lr, true));
    rep.record(instance, ev.claim("1 - lambda^r <= 1 - lambda^n", mono<T>(one, r) - mono<T>(one, n), 1.0 - lr, 1.0 - ln,
                                  true));
  } else {
    const double ln = std::pow(lam, static_cast<double>(n));
    rep.record(instance, ev.claim("det(I-A) <= 1 - lambda^n", Polynomial<T>::constant(T(one - det)) - mono<T>(one, n),
                                  detd, 1.0 - ln, true));
  }
  chain_tail(rep, ev, n, instance);
  return rep;
}

template <class T>
InequalityReport lemma_a1_impl(const WeightedDigraph& d, Mode mode, const std::string& instance) {
  auto rep = start("lemma-a1", mode);
  Eval<T> ev(d);
  if (ev.lambda_vs_one() >= 0) {
    skip(rep, instance, "Perron root is not below 1");
    return rep;
  }
  const std::size_t n = d.order();
  const T nn = scalar<T>(static_cast<long>(n));
  const auto g = green<T>(d);
  T trace = scalar<T>(0);
  for (std::size_t v = 0; v < n; ++v) trace += g(v, v);
  const T det = det_I_minus<T>(d);
  const T m = max_diagonal(g);
  const double lam = ev.lambda();
  const T one = scalar<T>(1);
  // (1 - x) tr G - 1 >= 0 at lambda.
  rep.record(instance, ev.claim("1/(1-lambda) <= tr G", Polynomial<T>::constant(T(trace - one)) - mono<T>(trace, 1),
                                1.0 / (1.0 - lam), to_double(trace), false));
  rep.record(instance, Eval<T>::compare("tr G <= n/det(I-S)", trace, T(nn / det)));
  // n M (1 - x) - 1 >= 0 at lambda.
  T nm = nn * m;
  rep.record(instance, ev.claim("1/(n(1-lambda)) <= max G(v,v)", Polynomial<T>::constant(T(nm - one)) - mono<T>(nm, 1),
                                1.0 / (static_cast<double>(n) * (1.0 - lam)), to_double(m), false));
  rep.record(instance, Eval<T>::compare("max G(v,v) <= 1/det(I-S)", m, T(one / det)));
  return rep;
}

template <class T>
std::vector<T> transversal_diagonal(const DenseMatrix<T>& g, const TransversalResult& w) {
  std::vector<T> out;
  for (VertexId v : w.vertices) out.push_back(g(v, v));
  return out;
}

template <class T>
InequalityReport lemma_a2_impl(const WeightedDigraph& d, const TransversalResult& w, Mode mode,
                               const std::string& instance) {
  require_transversal(d, w);
  auto rep = start("lemma-a2", mode);
  Eval<T> ev(d);
  if (ev.lambda_vs_one() >= 0) {
    skip(rep, instance, "Perron root is not below 1");
    return rep;
  }
  const auto g = green<T>(d);
  T bound = scalar<T>(1);
  for (const T& x : transversal_diagonal(g, w)) bound += x - scalar<T>(1);
  for (std::size_t v = 0; v < d.order(); ++v)
    rep.record(instance, Eval<T>::compare("G(v,v) <= 1 + sum_W (G(w,w) - 1)", g(v, v), bound));
  return rep;
}

template <class T>
InequalityReport a1_product_impl(const WeightedDigraph& d, const TransversalResult& w, Mode mode,
                                 const std::string& instance) {
  require_transversal(d, w);
  auto rep = start("a1-product", mode);
  Eval<T> ev(d);
  if (ev.lambda_vs_one() >= 0) {
    skip(rep, instance, "Perron root is not below 1");
    return rep;
  }
  const auto g = green<T>(d);
  T product = scalar<T>(1);
  for (const T& x : transversal_diagonal(g, w)) product *= x;
  const T det = det_I_minus<T>(d);
  rep.record(instance, Eval<T>::compare("1/det(I-S) <= prod_W G(w,w)", T(scalar<T>(1) / det), product));
  rep.record(instance, Eval<T>::compare("max G(v,v) <= prod_W G(w,w)", max_diagonal(g), product));
  return rep;
}

template <class T>
InequalityReport sigma_k_impl(const WeightedDigraph& d, const TransversalResult& w, std::size_t k, Mode mode,
                              const std::string& instance) {
  require_transversal(d, w);
  if (k < 1 || k > w.size()) throw InequalityError("k must lie in 1..|W|");
  auto rep = start("sigma-k", mode);
  Eval<T> ev(d);
  if (ev.lambda_vs_one() >= 0) {
    skip(rep, instance, "Perron root is not below 1");
    return rep;
  }
  const auto g = green<T>(d);
  T sigma = elementary_symmetric(transversal_diagonal(g, w), k);
  rep.record(instance, Eval<T>::compare("max G(v,v) <= sigma_" + std::to_string(k) + "(G(w,w))", max_diagonal(g), sigma));
  return rep;
}

template <class T>
T from_rational(const Rational& q) {
  if constexpr (is_exact_v<T>)
    return q;
  else
    return q.get_d();
}

template <class T>
InequalityReport zeta_impl(const WeightedDigraph& d, VertexId v, const std::vector<Rational>& samples, Mode mode,
                           const std::string& instance) {
  if (v >= d.order()) throw InequalityError("vertex out of range");
  auto rep = start("zeta", mode);
  const auto a = d.adjacency<T>();
  for (const Rational& zq : samples) {
    const T z = from_rational<T>(zq);
    auto m = identity_minus(a, z);
    T det = determinant(m);
    auto g = inverse(m);
    if (Eval<T>::is_zero(det) || !g) {
      rep.notes.push_back(instance + ": I - zS singular at z = " + to_string(zq) + ", sample skipped");
      continue;
    }
    T lhs = (*g)(v, v) * det;
    T rhs = determinant(m.without(v));
    rep.record(instance, Eval<T>::equal("G_z(v,v) det(I-zS) = det(I-zS^(v))", lhs, rhs));
  }
  return rep;
}

template <class T>
InequalityReport prop3_impl(const WeightedDigraph& d, Mode mode, const std::string& instance) {
  auto rep = start("prop3", mode);
  if (is_acyclic(d)) {
    skip(rep, instance, "acyclic");
    return rep;
  }
  Eval<T> ev(d);
  if (ev.lambda_vs_one() >= 0) {
    skip(rep, instance, "Perron root is not below 1");
    return rep;
  }
  const auto w = min_cycle_transversal(d);
  const auto ext = ell_extremes(d);
  if (w.optimality != Optimality::Exact) rep.notes.push_back(instance + ": transversal is an upper bound");
  if (!ext.ell_max_exact) {
    skip(rep, instance, "longest cycle search exhausted its budget");
    return rep;
  }
  const auto g = green<T>(d);
  T product = scalar<T>(1);
  for (const T& x : transversal_diagonal(g, w)) product *= x;
  const T det = det_I_minus<T>(d);
  rep.record(instance, Eval<T>::compare("1/prod_W G(w,w) <= det(I-S)", T(scalar<T>(1) / product), det));
  const T c = scalar<T>(static_cast<long>(w.size() * *ext.ell_max));
  rep.record(instance, ev.claim("det(I-S) <= |sct| l_max (1 - lambda)", Polynomial<T>::constant(T(c - det)) - mono<T>(c, 1),
                                to_double(det), to_double(c) * (1.0 - ev.lambda()), true));
  return rep;
}

std::string set_string(const std::vector<VertexId>& s) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i] + 1;
  out << "}";
  return out.str();
}

/// Calls visit on every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& visit) {
  std::vector<VertexId> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  if (k > n) return;
  for (;;) {
    visit(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

template <class T>
InequalityReport conjecture_impl(const WeightedDigraph& d, Mode mode, const std::string& instance) {
  auto rep = start("conjecture", mode);
  if (is_acyclic(d)) {
    skip(rep, instance, "acyclic");
    return rep;
  }
  if (d.order() > 16) {
    skip(rep, instance, "order too large for transversal enumeration");
    return rep;
  }
  Eval<T> ev(d);
  if (ev.lambda_vs_one() >= 0) {
    skip(rep, instance, "Perron root is not below 1");
    return rep;
  }
  const auto g = green<T>(d);
  const T m = max_diagonal(g);
  std::vector<bool> argmax(d.order());
  std::vector<VertexId> argmax_set;
  for (std::size_t v = 0; v < d.order(); ++v) {
    if constexpr (is_exact_v<T>)
      argmax[v] = g(v, v) == m;
    else
      argmax[v] = g(v, v) >= m * (1.0 - 1e-12);
    if (argmax[v]) argmax_set.push_back(v);
  }
  const std::size_t k = min_cycle_transversal(d).size();
  std::vector<std::vector<VertexId>> minimum;
  auto test = [&](const std::vector<VertexId>& t, const char* kind) {
    ++rep.comparisons;
    if (std::none_of(t.begin(), t.end(), [&](VertexId v) { return argmax[v]; }))
      rep.findings.push_back({instance, std::string(kind) + " transversal " + set_string(t) +
                                            " misses argmax G(v,v) = " + set_string(argmax_set)});
  };
  for_each_subset(d.order(), k, [&](const std::vector<VertexId>& s) {
    if (is_cycle_transversal(d, s)) {
      minimum.push_back(s);
      test(s, "minimum");
    }
  });
  // Size k+1 transversals are inclusion-minimal unless they contain a minimum one.
  for_each_subset(d.order(), k + 1, [&](const std::vector<VertexId>& s) {
    for (const auto& mset : minimum)
      if (std::includes(s.begin(), s.end(), mset.begin(), mset.end())) return;
    if (is_cycle_transversal(d, s)) test(s, "minimal");
  });
  return rep;
}

template <class F>
InequalityReport dispatch(const WeightedDigraph& d, Mode mode, F&& f) {
  if (mode == Mode::Exact) {
    if (!d.is_exact()) throw InequalityError("exact mode needs exact weights");
    return f(Rational{});
  }
  return f(0.0);
}

}  // namespace

InequalityReport check_boyle_handelman(const WeightedDigraph& d, Mode mode, const std::string& instance) {
  return dispatch(d, mode, [&](auto t) { return boyle_handelman_impl<decltype(t)>(d, mode, instance, true); });
}

InequalityReport check_ksv(const WeightedDigraph& d, Mode mode, const std::string& instance) {
  return dispatch(d, mode, [&](auto t) { return boyle_handelman_impl<decltype(t)>(d, mode, instance, false); });
}

InequalityReport check_lemma_a1(const WeightedDigraph& d, Mode mode, const std::string& instance) {
  return dispatch(d, mode, [&](auto t) { return lemma_a1_impl<decltype(t)>(d, mode, instance); });
}

InequalityReport check_lemma_a2(const WeightedDigraph& d, const TransversalResult& w, Mode mode,
                                const std::string& instance) {
  return dispatch(d, mode, [&](auto t) { return lemma_a2_impl<decltype(t)>(d, w, mode, instance); });
}

InequalityReport check_a1_product(const WeightedDigraph& d, const TransversalResult& w, Mode mode,
                                  const std::string& instance) {
  return dispatch(d, mode, [&](auto t) { return a1_product_impl<decltype(t)>(d, w, mode, instance); });
}

InequalityReport check_sigma_k(const WeightedDigraph& d, const TransversalResult& w, std::size_t k, Mode mode,
                               const std::string& instance) {
  return dispatch(d, mode, [&](auto t) { return sigma_k_impl<decltype(t)>(d, w, k, mode, instance); });
}

InequalityReport check_zeta_identity(const WeightedDigraph& d, VertexId v, const std::vector<Rational>& z_samples,
                                     Mode mode, const std::string& instance) {
  return dispatch(d, mode, [&](auto t) { return zeta_impl<decltype(t)>(d, v, z_samples, mode, instance); });
}

InequalityReport check_prop3_chain(const WeightedDigraph& d, Mode mode, const std::string& instance) {
  return dispatch(d, mode, [&](auto t) { return prop3_impl<decltype(t)>(d, mode, instance); });
}

InequalityReport test_max_diag_conjecture(const WeightedDigraph& d, Mode mode, const std::string& instance) {
  return dispatch(d, mode, [&](auto t) { return conjecture_impl<decltype(t)>(d, mode, instance); });
}

namespace {

constexpr std::pair<Suite, std::string_view> suite_names[] = {
    {Suite::BoyleHandelman, "boyle-handelman"}, {Suite::Ksv, "ksv"},       {Suite::LemmaA1, "lemma-a1"},
    {Suite::LemmaA2, "lemma-a2"},               {Suite::A1Product, "a1-product"}, {Suite::SigmaK, "sigma-k"},
    {Suite::Zeta, "zeta"},                      {Suite::Conjecture, "conjecture"}, {Suite::Prop3, "prop3"},
};

}  // namespace

Suite parse_suite(std::string_view name) {
  for (auto [s, n] : suite_names)
    if (n == name) return s;
  throw InequalityError("unknown suite: " + std::string(name));
}

std::string_view to_string(Suite suite) {
  for (auto [s, n] : suite_names)
    if (s == suite) return n;
  return "?";
}

InequalityReport run_suite_instance(Suite suite, const WeightedDigraph& d, Mode mode, const SuiteOptions& options,
                                    const std::string& instance) {
  auto with_transversal = [&](auto&& check) {
    if (is_acyclic(d)) {
      InequalityReport r = start(std::string(to_string(suite)), mode);
      skip(r, instance, "acyclic");
      return r;
    }
    return check(min_cycle_transversal(d));
  };
  switch (suite) {
    case Suite::BoyleHandelman:
      return check_boyle_handelman(d, mode, instance);
    case Suite::Ksv:
      return check_ksv(d, mode, instance);
    case Suite::LemmaA1:
      return check_lemma_a1(d, mode, instance);
    case Suite::LemmaA2:
      return with_transversal([&](const TransversalResult& w) { return check_lemma_a2(d, w, mode, instance); });
    case Suite::A1Product:
      return with_transversal([&](const TransversalResult& w) { return check_a1_product(d, w, mode, instance); });
    case Suite::SigmaK:
      return with_transversal([&](const TransversalResult& w) {
        auto r = check_sigma_k(d, w, 1, mode, instance);
        for (std::size_t k = 2; k <= w.size(); ++k) {
          auto more = check_sigma_k(d, w, k, mode, instance);
          more.instances_tested = 0;
          r.merge(more);
        }
        return r;
      });
    case Suite::Zeta: {
      auto r = check_zeta_identity(d, 0, options.z_samples, mode, instance);
      for (VertexId v = 1; v < d.order(); ++v) {
        auto more = check_zeta_identity(d, v, options.z_samples, mode, instance);
        more.instances_tested = 0;
        r.merge(more);
      }
      return r;
    }
    case Suite::Conjecture: {
      // Proved lemmas ride along: their violations fail the run, while
      // conjecture misses are findings.
      auto r = test_max_diag_conjecture(d, mode, instance);
      if (r.skipped) return r;
      auto w = min_cycle_transversal(d);
      for (auto part : {check_lemma_a2(d, w, mode, instance), check_a1_product(d, w, mode, instance)}) {
        part.instances_tested = 0;
        part.skipped = 0;
        r.merge(part);
      }
      return r;
    }
    case Suite::Prop3:
      return check_prop3_chain(d, mode, instance);
  }
  throw InequalityError("unknown suite");
}

InequalityReport run_suite(Suite suite, const SuiteOptions& options) {
  std::vector<InequalityReport> parts(options.count);
  std::vector<std::string> agreement(options.count);
  const bool compare_float = options.mode == Mode::Exact;
  for_each_index(options.count, options.exec, [&](std::size_t i) {
    WeightedDigraph d = random_instance(options.instances, i);
    const std::string id = "#" + std::to_string(i) + ":" + fingerprint(d);
    InequalityReport r;
    try {
      r = run_suite_instance(suite, d, options.mode, options, id);
    } catch (const std::exception& e) {
      r = start(std::string(to_string(suite)), options.mode);
      skip(r, id, std::string("error: ") + e.what());
    }
    if (compare_float && i < options.agreement_instances && !r.skipped) {
      r.agreement_checked = 1;
      try {
        InequalityReport f = run_suite_instance(suite, d, Mode::Float, options, id);
        bool ok = f.signs.size() == r.signs.size();
        for (std::size_t j = 0; ok && j < f.signs.size(); ++j)
          ok = f.signs[j].first == r.signs[j].first && f.signs[j].second * r.signs[j].second >= 0;
        if (!ok) r.agreement_failures.push_back(id);
      } catch (const std::exception& e) {
        r.agreement_failures.push_back(id + " (float run failed: " + e.what() + ")");
      }
    }
    r.signs.clear();
    parts[i] = std::move(r);
  });
  InequalityReport out;
  out.name = std::string(to_string(suite));
  out.mode = options.mode;
  for (const auto& p : parts) out.merge(p);
  return out;
}

}  // namespace stochgraph
