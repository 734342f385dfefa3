#pragma once

#include "stochgraph/cycles.hpp"
#include "stochgraph/digraph.hpp"
#include "stochgraph/family.hpp"
#include "stochgraph/kernels.hpp"
#include "stochgraph/polynomial.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stochgraph {

struct PerronOptions {
  /// Relative width of the Collatz-Wielandt bracket on exit.
  double tol = 1e-12;
  std::size_t max_iterations = 100'000;
  /// Restart slow components from a transversal-reduced Perron vector.
  bool accelerate = true;
  Exec exec = Exec::Serial;
};

struct PerronResult {
  /// Midpoint of the bracket.
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t iterations = 0;
  bool converged = true;
  /// Per strong component, that component's Perron vector (max entry 1).
  std::vector<double> vector;
};

/// Spectral radius of the weighted adjacency matrix by power iteration on
/// A + sigma I from the all-ones vector, per strong component.
PerronResult perron_root_report(const WeightedDigraph& d, const PerronOptions& options = {});
double perron_root(const WeightedDigraph& d, double tol = 1e-12);

class SpectralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Budget exhaustion while expanding unions; the partial sum is a
/// diagnostic only and never a valid polynomial.
class CoatesBudgetExceeded : public BudgetExceeded {
 public:
  CoatesBudgetExceeded(const std::string& what, std::size_t unions_seen)
      : BudgetExceeded(what), unions_seen(unions_seen) {}
  std::size_t unions_seen;
};

/// det(I - zA) = 1 + sum_U (-1)^{n(U)} S(U) z^{l(U)} over unions of disjoint cycles.
template <class T>
Polynomial<T> coates_charpoly(const WeightedDigraph& d, std::size_t max_unions = 1'000'000);

/// det(I - zA) by evaluating determinants at order+1 nodes and interpolating.
template <class T>
Polynomial<T> elimination_charpoly(const WeightedDigraph& d);

template <class T>
T det_I_minus_z(const WeightedDigraph& d, const T& z);

template <class T>
T det_I_minus(const WeightedDigraph& d) {
  return det_I_minus_z<T>(d, ScalarTraits<T>::one());
}

/// r: number of nonzero eigenvalues, the degree of det(I - zA). Floating
/// coefficients below rel_tol times the largest are treated as zero.
long nonzero_eigenvalue_count(const Polynomial<double>& charpoly, double rel_tol = 1e-9);
long nonzero_eigenvalue_count(const RationalPolynomial& charpoly);

/// (I - A)^{-1}. Throws SpectralError unless the Perron root is below 1.
template <class T>
DenseMatrix<T> resolvent(const WeightedDigraph& d);

template <class T>
T resolvent_diag(const WeightedDigraph& d, VertexId v) {
  return resolvent<T>(d)(v, v);
}

/// sum_{p<=P} A^p(v,v).
double neumann_partial(const WeightedDigraph& d, VertexId v, std::size_t p_max, Exec exec = Exec::Serial);

struct SpectralReport {
  double perron_root = 0.0;
  Mode mode = Mode::Float;
  std::string charpoly_method;
  Polynomial<double> charpoly;
  std::optional<RationalPolynomial> exact_charpoly;
  long nonzero_eig_count = 0;
  double det_at_one = 0.0;
  std::optional<Rational> exact_det_at_one;
};

/// Coates expansion when it fits the union budget, elimination otherwise.
SpectralReport spectral_report(const WeightedDigraph& d, Mode mode, std::size_t max_unions = 200'000);

enum class LadderMode { Leading, SupExact };
enum class LimitMethod { ClosedForm, Extrapolated, SupremumOfComputed };

std::string_view to_string(LadderMode mode);
std::string_view to_string(LimitMethod method);

struct TruncationSpectrum {
  std::map<std::size_t, double> values;
  std::map<std::size_t, LadderMode> produced_by;
  double limit_estimate = 0.0;
  LimitMethod limit_method = LimitMethod::SupremumOfComputed;
};

struct LadderOptions {
  LadderMode mode = LadderMode::Leading;
  /// SupExact searches order-n induced subdigraphs of truncate(f, window)
  /// with window = n + sup_window_extra.
  std::size_t sup_window_extra = 4;
  std::size_t sup_budget = 200'000;
  PerronOptions perron;
  Exec exec = Exec::Serial;
};

/// lambda_n over the requested n. Leading mode uses truncate(f, n) (or the
/// declared closed form when present and `prefer_closed_form`).
TruncationSpectrum lambda_ladder(const TruncationFamily& f, const std::vector<std::size_t>& n_values,
                                 const LadderOptions& options = {});

/// Largest Perron root among induced subdigraphs of d on exactly k vertices.
double sup_principal_perron(const WeightedDigraph& d, std::size_t k, std::size_t budget,
                            const PerronOptions& options = {});

}  // namespace stochgraph
