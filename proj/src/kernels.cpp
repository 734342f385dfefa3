#include "stochgraph/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <limits>

namespace stochgraph {

CsrMatrix CsrMatrix::from_digraph(const WeightedDigraph& d) {
  CsrMatrix m;
  m.rows = d.order();
  m.offsets.reserve(d.order() + 1);
  m.columns.reserve(d.arc_count());
  m.values.reserve(d.arc_count());
  for (VertexId u = 0; u < d.order(); ++u) {
    for (const auto& arc : d.out_arcs(u)) {
      m.columns.push_back(arc.to);
      m.values.push_back(arc.weight.value);
    }
    m.offsets.push_back(m.columns.size());
  }
  return m;
}

CsrMatrix CsrMatrix::from_digraph(const WeightedDigraph& d, const std::vector<VertexId>& members) {
  constexpr std::size_t absent = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> position(d.order(), absent);
  for (std::size_t i = 0; i < members.size(); ++i) position[members[i]] = i;
  CsrMatrix m;
  m.rows = members.size();
  for (VertexId u : members) {
    for (const auto& arc : d.out_arcs(u)) {
      if (position[arc.to] == absent) continue;
      m.columns.push_back(position[arc.to]);
      m.values.push_back(arc.weight.value);
    }
    m.offsets.push_back(m.columns.size());
  }
  return m;
}

void matvec_serial(const CsrMatrix& a, const std::vector<double>& x, std::vector<double>& y, double shift) {
  y.resize(a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    double acc = shift * x[i];
    for (std::size_t k = a.offsets[i]; k < a.offsets[i + 1]; ++k) acc += a.values[k] * x[a.columns[k]];
    y[i] = acc;
  }
}

void matvec_parallel(const CsrMatrix& a, const std::vector<double>& x, std::vector<double>& y, double shift) {
  y.resize(a.rows);
  const auto rows = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    double acc = shift * x[i];
    for (std::size_t k = a.offsets[i]; k < a.offsets[i + 1]; ++k) acc += a.values[k] * x[a.columns[k]];
    y[i] = acc;
  }
}

void matvec(const CsrMatrix& a, const std::vector<double>& x, std::vector<double>& y, double shift, Exec exec) {
  // Small systems are not worth a parallel region.
  if (exec == Exec::Parallel && a.nonzeros() > 20000) {
    matvec_parallel(a, x, y, shift);
  } else {
    matvec_serial(a, x, y, shift);
  }
}

RatioBounds ratio_bounds(const std::vector<double>& x, const std::vector<double>& y, Exec exec) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  if (exec == Exec::Parallel && n > 20000) {
#pragma omp parallel for reduction(min : lo) reduction(max : hi) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      double r = y[i] / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      double r = y[i] / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  return {lo, hi};
}

std::vector<double> green_partial_sums(const CsrMatrix& a, std::size_t v, double lambda, std::size_t p_max,
                                       Exec exec) {
  // (A^p)(v,v) = e_v^T A^p e_v; iterate the column x_p = A^p e_v.
  std::vector<double> x(a.rows, 0.0), y;
  x[v] = 1.0;
  std::vector<double> sums;
  sums.reserve(p_max + 1);
  double total = 1.0;
  sums.push_back(total);
  const double scale = 1.0 / lambda;
  // Column iteration needs A x with x a column vector: (A^p e_v)_i.
  for (std::size_t p = 1; p <= p_max; ++p) {
    matvec(a, x, y, 0.0, exec);
    for (auto& value : y) value *= scale;
    x.swap(y);
    total += x[v];
    sums.push_back(total);
  }
  return sums;
}

void for_each_index(std::size_t count, Exec exec, const std::function<void(std::size_t)>& body) {
  const auto n = static_cast<std::ptrdiff_t>(count);
  if (exec == Exec::Parallel) {
    // Exceptions cannot cross the parallel region; keep the first and rethrow.
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(stochgraph_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
  }
}

int parallel_workers() { return omp_get_max_threads(); }

}  // namespace stochgraph
