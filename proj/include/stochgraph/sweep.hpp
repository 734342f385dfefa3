#pragma once

#include "stochgraph/family.hpp"
#include "stochgraph/kernels.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace stochgraph {

struct SweepSpec {
  /// Strictly increasing truncation orders.
  std::vector<std::size_t> n_grid;
  bool lambda = true;
  bool omega = true;
  bool fvs = true;
  Mode mode = Mode::Float;
  std::uint64_t seed = 1;
  Exec exec = Exec::Serial;
  /// Progress lines on standard error.
  bool progress = false;
  /// Largest order solved by branch and bound when no transversal is declared.
  std::size_t fvs_exact_limit = 200;
};

struct SweepRow {
  std::size_t n = 0;
  std::optional<double> lambda_n;
  std::optional<double> omega_n;
  std::optional<double> one_minus_lambda_n;
  std::optional<double> n_one_minus_lambda_n;
  std::optional<double> gap_to_limit;
  std::optional<std::size_t> fvs_size;
  std::string error;
};

struct SweepReport {
  std::string family;
  SweepSpec spec;
  std::vector<SweepRow> rows;
  std::vector<std::string> notes;
};

class SweepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One row per grid order, in grid order. Cell failures are recorded in the
/// row's error column and the sweep continues.
SweepReport run_sweep(const TruncationFamily& f, const SweepSpec& spec);

/// "# stochgraph-sweep v1" header comment, then the fixed column set.
std::string sweep_csv(const SweepReport& report);
nlohmann::json sweep_json(const SweepReport& report);

struct DecayFit {
  double slope = 0.0;
  double slope_ci = 0.0;  // 95% half-width
  double intercept = 0.0;
  /// Coefficient of log log n when the correction term is fitted.
  std::optional<double> log_coefficient;
  std::optional<double> log_coefficient_ci;
  std::size_t points = 0;
  double residual_rms = 0.0;
};

/// Least squares of log gap against log n (plus log log n when
/// `log_correction`) over series[first, last).
DecayFit fit_decay(const std::vector<std::pair<double, double>>& series, std::size_t first, std::size_t last,
                   bool log_correction = false);
DecayFit fit_decay(const std::vector<std::pair<double, double>>& series, bool log_correction = false);

}  // namespace stochgraph
