#include "stochgraph/sweep.hpp"

#include "stochgraph/cycles.hpp"
#include "stochgraph/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <exception>
#include <iostream>
#include <sstream>

namespace stochgraph {

namespace {

std::optional<std::size_t> sweep_fvs(const TruncationFamily& f, const WeightedDigraph& d, const SweepSpec& spec,
                                     std::string& error) {
  if (d.order() <= spec.fvs_exact_limit) {
    auto w = min_cycle_transversal(d);
    if (w.optimality == Optimality::Exact) return w.size();
    error += "fvs: budget exhausted (upper bound " + std::to_string(w.size()) + "); ";
    return std::nullopt;
  }
  // Past the exact limit, a declared transversal of size one is minimum
  // whenever the truncation still has a cycle.
  if (f.metadata.transversal) {
    std::vector<VertexId> w;
    for (VertexId v : *f.metadata.transversal)
      if (v < d.order()) w.push_back(v);
    if (w.size() == 1 && !is_acyclic(d) && is_cycle_transversal(d, w)) return 1;
  }
  error += "fvs: order above the exact limit; ";
  return std::nullopt;
}

std::string cell(const std::optional<double>& x) { return x ? to_decimal_string(*x) : ""; }

nlohmann::json json_cell(const std::optional<double>& x) { return x ? nlohmann::json(*x) : nlohmann::json(nullptr); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

SweepReport run_sweep(const TruncationFamily& f, const SweepSpec& spec) {
  for (std::size_t i = 0; i < spec.n_grid.size(); ++i) {
    if (spec.n_grid[i] == 0) throw SweepError("grid orders must be positive");
    if (i > 0 && spec.n_grid[i] <= spec.n_grid[i - 1]) throw SweepError("grid must increase strictly");
  }
  SweepReport report;
  report.family = f.name;
  report.spec = spec;
  report.rows.resize(spec.n_grid.size());
  if (spec.omega && !f.facts.closed_form_omega) report.notes.push_back("omega_n computed on leading truncations");

  for_each_index(spec.n_grid.size(), spec.exec, [&](std::size_t i) {
    SweepRow& row = report.rows[i];
    row.n = spec.n_grid[i];
    const std::size_t n = row.n;
    std::optional<WeightedDigraph> d;
    auto truncation = [&]() -> const WeightedDigraph& {
      if (!d) d = truncate(f, n);
      return *d;
    };
    if (spec.lambda) {
      try {
        row.lambda_n = f.facts.closed_form_ladder ? f.facts.closed_form_ladder(n) : perron_root(truncation());
        row.one_minus_lambda_n = 1.0 - *row.lambda_n;
        row.n_one_minus_lambda_n = static_cast<double>(n) * *row.one_minus_lambda_n;
        if (f.facts.lambda) row.gap_to_limit = *f.facts.lambda - *row.lambda_n;
      } catch (const std::exception& e) {
        row.error += std::string("lambda: ") + e.what() + "; ";
      }
    }
    if (spec.omega) {
      try {
        row.omega_n = f.facts.closed_form_omega ? f.facts.closed_form_omega(n)
                                                : omega(truncation(), n, false).gain();
      } catch (const std::exception& e) {
        row.error += std::string("omega: ") + e.what() + "; ";
      }
    }
    if (spec.fvs) {
      try {
        row.fvs_size = sweep_fvs(f, truncation(), spec, row.error);
      } catch (const std::exception& e) {
        row.error += std::string("fvs: ") + e.what() + "; ";
      }
    }
    if (row.error.size() >= 2) row.error.resize(row.error.size() - 2);
    if (spec.progress) {
#pragma omp critical(sweep_progress)
      std::cerr << "[sweep] " << f.name << " n=" << n << " done\n";
    }
  });
  return report;
}

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "# stochgraph-sweep v1\n";
  out << "# family=" << report.family << " mode=" << to_string(report.spec.mode) << " seed=" << report.spec.seed
      << "\n";
  out << "n,lambda_n,omega_n,one_minus_lambda_n,n_one_minus_lambda_n,gap_to_limit,fvs_size,error\n";
  for (const auto& r : report.rows) {
    out << r.n << ',' << cell(r.lambda_n) << ',' << cell(r.omega_n) << ',' << cell(r.one_minus_lambda_n) << ','
        << cell(r.n_one_minus_lambda_n) << ',' << cell(r.gap_to_limit) << ','
        << (r.fvs_size ? std::to_string(*r.fvs_size) : "") << ',' << csv_escape(r.error) << '\n';
  }
  return out.str();
}

nlohmann::json sweep_json(const SweepReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"lambda_n", json_cell(r.lambda_n)},
                    {"omega_n", json_cell(r.omega_n)},
                    {"one_minus_lambda_n", json_cell(r.one_minus_lambda_n)},
                    {"n_one_minus_lambda_n", json_cell(r.n_one_minus_lambda_n)},
                    {"gap_to_limit", json_cell(r.gap_to_limit)},
                    {"fvs_size", r.fvs_size ? nlohmann::json(*r.fvs_size) : nlohmann::json(nullptr)},
                    {"error", r.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.error)}});
  }
  return {{"format", "stochgraph-sweep"},
          {"version", 1},
          {"family", report.family},
          {"mode", std::string(to_string(report.spec.mode))},
          {"seed", report.spec.seed},
          {"notes", report.notes},
          {"rows", rows}};
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& series, std::size_t first, std::size_t last,
                   bool log_correction) {
  if (last > series.size() || first >= last) throw SweepError("fit window out of range");
  const std::size_t m = last - first;
  const std::size_t p = log_correction ? 3 : 2;
  if (m < 3) throw SweepError("fit needs at least 3 points");
  Eigen::MatrixXd x(m, p);
  Eigen::VectorXd y(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto [n, gap] = series[first + i];
    if (!(gap > 0.0)) throw SweepError("nonpositive gap at n = " + to_decimal_string(n));
    if (!(n > 1.0)) throw SweepError("fit needs n > 1");
    const auto r = static_cast<Eigen::Index>(i);
    x(r, 0) = 1.0;
    x(r, 1) = std::log(n);
    if (log_correction) x(r, 2) = std::log(std::log(n));
    y(r) = std::log(gap);
  }
  Eigen::VectorXd beta = x.colPivHouseholderQr().solve(y);
  Eigen::VectorXd resid = y - x * beta;
  const double rss = resid.squaredNorm();
  DecayFit fit;
  fit.points = m;
  fit.intercept = beta(0);
  fit.slope = beta(1);
  fit.residual_rms = std::sqrt(rss / static_cast<double>(m));
  Eigen::VectorXd se = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(p), std::numeric_limits<double>::infinity());
  if (m > p) {
    const double sigma2 = rss / static_cast<double>(m - p);
    Eigen::MatrixXd cov = sigma2 * (x.transpose() * x).inverse();
    se = cov.diagonal().cwiseSqrt();
  }
  fit.slope_ci = 1.96 * se(1);
  if (log_correction) {
    fit.log_coefficient = beta(2);
    fit.log_coefficient_ci = 1.96 * se(2);
  }
  return fit;
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& series, bool log_correction) {
  return fit_decay(series, 0, series.size(), log_correction);
}

}  // namespace stochgraph
