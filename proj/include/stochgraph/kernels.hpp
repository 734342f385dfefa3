#pragma once

#include "stochgraph/digraph.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace stochgraph {

/// Compressed sparse rows of a weighted adjacency matrix (double view).
struct CsrMatrix {
  std::size_t rows = 0;
  std::vector<std::size_t> offsets{0};
  std::vector<std::size_t> columns;
  std::vector<double> values;

  static CsrMatrix from_digraph(const WeightedDigraph& d);
  /// Restriction to `members` (relabelled by position).
  static CsrMatrix from_digraph(const WeightedDigraph& d, const std::vector<VertexId>& members);
  std::size_t nonzeros() const { return values.size(); }
};

/// Execution policy for the numeric kernels. The serial path is the
/// reference implementation; the parallel path must agree with it bitwise
/// for matvec (rows are independent) and to rounding for reductions.
enum class Exec { Serial, Parallel };

/// y = (A + shift I) x
void matvec(const CsrMatrix& a, const std::vector<double>& x, std::vector<double>& y, double shift, Exec exec);
void matvec_serial(const CsrMatrix& a, const std::vector<double>& x, std::vector<double>& y, double shift);
void matvec_parallel(const CsrMatrix& a, const std::vector<double>& x, std::vector<double>& y, double shift);

/// Collatz-Wielandt ratios: min and max of y_i / x_i over rows (x > 0).
struct RatioBounds {
  double min = 0.0;
  double max = 0.0;
};
RatioBounds ratio_bounds(const std::vector<double>& x, const std::vector<double>& y, Exec exec);

/// Partial sums G_p = sum_{q<=p} (A/lambda)^q (v,v) for p = 0..p_max, via
/// repeated matvec on the column e_v.
std::vector<double> green_partial_sums(const CsrMatrix& a, std::size_t v, double lambda, std::size_t p_max,
                                       Exec exec);

/// Runs body(i) for i in [0, count), statically scheduled under OpenMP
/// when exec is Parallel.
void for_each_index(std::size_t count, Exec exec, const std::function<void(std::size_t)>& body);

/// Worker count seen by Parallel execution.
int parallel_workers();

}  // namespace stochgraph
