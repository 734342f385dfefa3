#pragma once

#include "stochgraph/classification.hpp"
#include "stochgraph/cycles.hpp"
#include "stochgraph/family.hpp"
#include "stochgraph/power_product.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace stochgraph {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Beaded host: vertex-disjoint cycles gamma_1, gamma_2, ... laid out in
// consecutive blocks; the head (first vertex) of each block is joined to the
// next head by a forward and a backward connector arc.

/// Cycle length l_k for k >= 1.
using LengthRule = std::function<std::uint64_t(std::size_t)>;

struct BeadedLayout {
  LengthRule length;
  /// First vertex (0-based) of block k, k >= 1.
  std::uint64_t start(std::size_t k) const;
  /// Block containing vertex v.
  std::size_t block_of(VertexId v) const;
  /// Number of leading vertices whose complete out-row lies in {0..n-1}.
  std::size_t complete_rows(std::size_t n) const;
  /// Smallest order containing blocks 1..k entirely.
  std::size_t order_through(std::size_t k) const { return static_cast<std::size_t>(start(k + 1)); }
};

/// Lengths strictly increasing for k <= p, then constant L (p may be 0).
LengthRule lengths_increasing_then_constant(std::vector<std::uint64_t> prefix, std::optional<std::uint64_t> tail);
LengthRule lengths_linear();
LengthRule lengths_powers_of_two();
LengthRule lengths_constant(std::uint64_t length);

struct Prop1Params {
  LengthRule length = lengths_powers_of_two();
  /// Target cycle weights c_k in (0, 1).
  std::function<double(std::size_t)> target;
  /// Declared intrinsic spectral radius (1 when gains tend to 1).
  std::optional<Rational> declared_lambda;
  bool lengths_bounded = false;
};

/// Cycle gamma_k gets arc weight c_k^{1/l_k} (the correctly rounded double,
/// carried exactly), so its gain is c_k^{1/l_k} to one ulp. Each head splits
/// its slack over its connectors; vertex 1 keeps half of its slack.
TruncationFamily build_prop1(const Prop1Params& params);

/// Positive g on n >= 1, strictly decreasing to 0 with g < 1 after
/// normalization.
class GapTarget {
 public:
  GapTarget(std::string name, std::function<Rational(std::size_t)> g, std::size_t check_range = 64);

  Rational operator()(std::size_t n) const;
  const std::string& name() const { return name_; }
  bool normalized() const { return normalized_; }
  const std::string& normalization_note() const { return note_; }
  Rational raw(std::size_t n) const { return raw_(n); }

 private:
  std::string name_;
  std::function<Rational(std::size_t)> raw_;
  bool normalized_ = false;
  std::string note_;
};

GapTarget gap_power_of_two();
GapTarget gap_inverse(std::size_t power);

struct Corollary1Params {
  LengthRule length = lengths_linear();
  /// p: lengths strictly increase while k <= p (infinite when empty).
  bool lengths_bounded = false;
};

/// Cycle gamma_k carries 1 - g(max{l_{k+1}, k}) on every arc.
TruncationFamily build_corollary1(const GapTarget& g, const Corollary1Params& params = {});

/// Order of the truncation that contains every cycle needed to witness
/// 1 - omega(D, n) < g(n) on the gap-target host.
std::size_t corollary1_horizon(const Corollary1Params& params, std::size_t n);

struct Theorem2Fast {
  TruncationFamily family;
  /// The scale c with M = cS.
  Rational c;
  /// The underlying gap-target weighting S.
  TruncationFamily base;
  PruittCertificate certificate;
  Corollary1Params params;
  /// Arc weight of gamma_k in S (before scaling by c).
  std::function<Rational(std::size_t)> cycle_weight;
};

/// M = cS with c = (1/2) min_{n <= l_min} g(n): transient with
/// lambda(M) = c and lambda(M) - lambda_n(M) < g(n).
Theorem2Fast build_theorem2_fast(const GapTarget& g, const Corollary1Params& params = {});

/// Lower bound for lambda_n(S) (supremum over order-n principal
/// submatrices) from the best cycle of length <= n on the host.
struct LambdaLowerBound {
  double value = 0.0;
  /// Gain of the witness cycle in M, exactly.
  std::optional<Rational> exact;
  std::optional<Cycle> witness;
};
LambdaLowerBound theorem2_lambda_n_lower_bound(const Theorem2Fast& t, std::size_t n);

// ---------------------------------------------------------------------------
// Long-cycle family on the Example 1 host (path 1 -> 2 -> ... with arcs (v, 1)),
// whose cycles gamma_k = 1, 2, ..., l_k, 1 are nested. Lengths grow
// astronomically, so the weighting is stored in closed form by blocks.

struct EpsilonSchedule {
  std::string name;
  std::function<Rational(std::size_t)> eps;
  /// k_max: number of cycles built.
  std::size_t k_max = 6;
};

EpsilonSchedule epsilon_power_of_four(std::size_t k_max = 6);

struct Prop2Cycle {
  std::size_t k = 0;
  std::uint64_t length = 0;
  std::uint64_t previous_total = 0;  // L_{k-1}
  Rational eps;
  /// The cycle-gain inequality as a PowerProduct ratio compared with 1; holds only when
  /// rigorously decided. Method: "expanded" (exact product), "log-enclosure"
  /// (rational bounds on the logarithm) or "vacuous" (k = 1).
  bool inequality_holds = false;
  std::string inequality_method;
  /// S(gamma_k) >= (1 - 2 eps_k)^{l_k}.
  bool gain_bound_holds = false;
  std::string gain_bound_method;
  PowerProduct weight;
  /// Enclosure of log S(gamma_k) / l_k (log of the gain).
  std::pair<double, double> log_gain;
};

struct OutWeightClass {
  std::string description;
  std::size_t k = 0;
  Rational out_weight;
  Rational bound;  // 1 - eps_k / 2
};

struct Prop2Construction {
  EpsilonSchedule schedule;
  std::vector<Prop2Cycle> cycles;
  std::vector<OutWeightClass> out_weights;
  WeightingTag gamma_tag = WeightingTag::NotSubstochastic;
  /// Whole Gamma-weighted family plus the uniform slack extension.
  TruncationFamily family;
  /// Family restricted to the arcs of Gamma.
  TruncationFamily gamma_family;
};

Prop2Construction build_prop2(const EpsilonSchedule& schedule);

// ---------------------------------------------------------------------------
// Example 1: path with back arcs, S((1,1)) = a f_1, S((1,2)) = 1 - f_1,
// S((n-1,n)) = T_{n-1}/T_{n-2}, S((n,1)) = f_n / T_{n-1}, T_m = 1 - f_1 - ... - f_m.

struct Example1Params {
  Rational a{1, 2};
  /// Exact f and tails, when the sequence is rational.
  std::function<Rational(std::size_t)> exact_f;
  /// Floating f and tails T_m (computed without cancellation).
  std::function<double(std::size_t)> f;
  std::function<double(std::size_t)> tail;
  std::optional<double> declared_lambda;
  std::string name = "example1";
};

Example1Params example1_geometric(const Rational& q, const Rational& a = Rational(1, 2));
/// f_n = 1 / (a_eps n^{1+eps}).
Example1Params example1_power(double eps, const Rational& a = Rational(1, 2));

TruncationFamily build_example1(const Example1Params& params);

/// omega_S(D, n) in closed form: max(a f_1, max_{2<=k<=n} f_k^{1/k}).
double example1_omega(const Example1Params& params, std::size_t n);

// ---------------------------------------------------------------------------
// Example 2: symmetric star with M(1, k+1) = M(k+1, 1) = a_k.

struct Example2Params {
  /// a_k = k^{-exponent}, or an explicit finite prefix (exact strings).
  std::optional<double> exponent;
  std::vector<Rational> prefix;
  bool sorted = true;
};

TruncationFamily build_example2(const Example2Params& params);

/// b_n for the closed-form sequence: (sum_{k<n} k^{-2 exponent})^{1/2}.
double example2_b(double exponent, std::size_t n);
/// lambda - lambda_n = tail / (b + b_n), with tail = sum_{k>=n} a_k^2.
double example2_gap(double exponent, std::size_t n);

}  // namespace stochgraph
