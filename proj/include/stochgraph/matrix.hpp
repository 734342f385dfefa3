#pragma once

#include "stochgraph/rational.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stochgraph {

/// Row-major dense square matrix.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, ScalarTraits<T>::zero()) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarTraits<T>::one();
    return m;
  }

  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  /// Principal submatrix with row/column v removed.
  DenseMatrix without(std::size_t v) const {
    DenseMatrix m(n_ - 1);
    for (std::size_t i = 0, r = 0; i < n_; ++i) {
      if (i == v) continue;
      for (std::size_t j = 0, c = 0; j < n_; ++j) {
        if (j == v) continue;
        m(r, c++) = (*this)(i, j);
      }
      ++r;
    }
    return m;
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

/// I - z A.
template <class T>
DenseMatrix<T> identity_minus(const DenseMatrix<T>& a, const T& z) {
  DenseMatrix<T> m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = (i == j ? ScalarTraits<T>::one() : ScalarTraits<T>::zero()) - z * a(i, j);
  return m;
}

/// Determinant. Exact scalars use fraction-free Bareiss elimination;
/// doubles use partially pivoted Gaussian elimination.
template <class T>
T determinant(DenseMatrix<T> m) {
  const std::size_t n = m.size();
  if (n == 0) return ScalarTraits<T>::one();
  if constexpr (is_exact_v<T>) {
    T sign = ScalarTraits<T>::one();
    T previous = ScalarTraits<T>::one();
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (m(k, k) == 0) {
        std::size_t p = k + 1;
        while (p < n && m(p, k) == 0) ++p;
        if (p == n) return ScalarTraits<T>::zero();
        for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / previous;
      }
      previous = m(k, k);
    }
    return sign * m(n - 1, n - 1);
  } else {
    T det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
      if (m(p, k) == 0.0) return 0.0;
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
        det = -det;
      }
      det *= m(k, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        T f = m(i, k) / m(k, k);
        if (f == 0.0) continue;
        for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      }
    }
    return det;
  }
}

/// Inverse by Gauss-Jordan elimination; empty optional when singular.
template <class T>
std::optional<DenseMatrix<T>> inverse(DenseMatrix<T> m) {
  const std::size_t n = m.size();
  DenseMatrix<T> inv = DenseMatrix<T>::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    if constexpr (is_exact_v<T>) {
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return std::nullopt;
    } else {
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
      if (m(p, k) == 0.0) return std::nullopt;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(k, j), m(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    }
    T pivot = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      T f = m(i, k);
      if (f == ScalarTraits<T>::zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

/// Solves m x = b; empty optional when singular.
template <class T>
std::optional<std::vector<T>> solve(DenseMatrix<T> m, std::vector<T> b) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    if constexpr (is_exact_v<T>) {
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return std::nullopt;
    } else {
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
      if (m(p, k) == 0.0) return std::nullopt;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      T f = m(i, k) / m(k, k);
      if (f == ScalarTraits<T>::zero()) continue;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<T> x(n, ScalarTraits<T>::zero());
  for (std::size_t k = n; k-- > 0;) {
    T acc = b[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= m(k, j) * x[j];
    x[k] = acc / m(k, k);
  }
  return x;
}

}  // namespace stochgraph
