#pragma once

#include "stochgraph/cycles.hpp"
#include "stochgraph/digraph.hpp"
#include "stochgraph/kernels.hpp"
#include "stochgraph/random_instances.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stochgraph {

/// Floating relations count as violated only below -tol * max(1, |lhs|, |rhs|).
inline constexpr double inequality_float_tol = 1e-9;

/// One evaluated relation lhs <= rhs.
struct Relation {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs in floating point.
  double margin = 0.0;
  /// Decided sign of rhs - lhs: exact in exact mode, tolerance-banded in float.
  int sign = 0;
  /// Rational enclosure of rhs - lhs (a point when no Perron root is involved).
  std::optional<std::pair<Rational, Rational>> exact_margin;
  bool holds() const { return sign >= 0; }
};

struct Violation {
  std::string instance;
  std::string relation;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  std::optional<std::string> exact_margin;
};

struct Finding {
  std::string instance;
  std::string description;
};

struct InequalityReport {
  std::string name;
  Mode mode = Mode::Exact;
  std::size_t instances_tested = 0;
  std::size_t comparisons = 0;
  std::size_t skipped = 0;
  std::vector<Violation> violations;
  std::optional<double> min_margin;
  std::string min_margin_relation;
  /// Lower end of the exact enclosure of the tightest margin.
  std::optional<Rational> min_margin_exact;
  /// Conjecture counterexamples: reported, never failures.
  std::vector<Finding> findings;
  std::vector<std::string> notes;
  /// Float/exact sign comparison on shared instances (exact-mode suites).
  std::size_t agreement_checked = 0;
  std::vector<std::string> agreement_failures;
  /// Decided sign per relation, in evaluation order (used for agreement).
  std::vector<std::pair<std::string, int>> signs;

  bool passed() const { return violations.empty() && agreement_failures.empty(); }
  void record(const std::string& instance, const Relation& r);
  void merge(const InequalityReport& other);
};

class InequalityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Single-instance checks. Exact mode needs an exact digraph. Preconditions
// that fail (e.g. lambda >= 1) count as skipped, not as violations.

/// det(I-A) <= 1 - lambda^r <= 1 - lambda^n <= n(1 - lambda), r = deg det(I - zA).
InequalityReport check_boyle_handelman(const WeightedDigraph& d, Mode mode, const std::string& instance = "");
/// det(I-A) <= 1 - lambda^n <= n(1 - lambda).
InequalityReport check_ksv(const WeightedDigraph& d, Mode mode, const std::string& instance = "");
/// 1/(1-lambda) <= tr G <= n/det and 1/(n(1-lambda)) <= max G(v,v) <= 1/det, G = (I-S)^{-1}.
InequalityReport check_lemma_a1(const WeightedDigraph& d, Mode mode, const std::string& instance = "");
/// G(v,v) <= 1 + sum_{w in W} (G(w,w) - 1) for every v.
InequalityReport check_lemma_a2(const WeightedDigraph& d, const TransversalResult& w, Mode mode,
                                const std::string& instance = "");
/// 1/det <= prod_W G(w,w) and max_v G(v,v) <= prod_W G(w,w).
InequalityReport check_a1_product(const WeightedDigraph& d, const TransversalResult& w, Mode mode,
                                  const std::string& instance = "");
/// max_v G(v,v) <= sigma_k(G(w_1,w_1), ..., G(w_h,w_h)).
InequalityReport check_sigma_k(const WeightedDigraph& d, const TransversalResult& w, std::size_t k, Mode mode,
                               const std::string& instance = "");
/// (I - zS)^{-1}(v,v) det(I - zS) = det(I - zS^(v)) at each sample.
InequalityReport check_zeta_identity(const WeightedDigraph& d, VertexId v, const std::vector<Rational>& z_samples,
                                     Mode mode, const std::string& instance = "");
/// 1/prod_W G(w,w) <= det(I-S) <= |W| l_max (1 - lambda) with W a minimum transversal.
InequalityReport check_prop3_chain(const WeightedDigraph& d, Mode mode, const std::string& instance = "");
/// Whether argmax_v G(v,v) meets every minimum transversal and every
/// inclusion-minimal transversal one larger. Misses become findings.
InequalityReport test_max_diag_conjecture(const WeightedDigraph& d, Mode mode, const std::string& instance = "");

enum class Suite { BoyleHandelman, Ksv, LemmaA1, LemmaA2, A1Product, SigmaK, Zeta, Conjecture, Prop3 };

Suite parse_suite(std::string_view name);
std::string_view to_string(Suite suite);

struct SuiteOptions {
  std::size_t count = 100;
  RandomSpec instances;
  Mode mode = Mode::Exact;
  Exec exec = Exec::Serial;
  /// In exact mode, also run floating mode on this many leading instances
  /// and require the decided signs to agree.
  std::size_t agreement_instances = 50;
  std::vector<Rational> z_samples{Rational(1, 3), Rational(1, 2), Rational(2)};
};

/// Runs the suite over the seeded instance stream; per-instance reports are
/// merged in index order, so the result does not depend on worker count.
InequalityReport run_suite(Suite suite, const SuiteOptions& options);

/// One instance of a suite (the unit that run_suite distributes).
InequalityReport run_suite_instance(Suite suite, const WeightedDigraph& d, Mode mode, const SuiteOptions& options,
                                    const std::string& instance);

}  // namespace stochgraph
