#pragma once

#include "stochgraph/matrix.hpp"
#include "stochgraph/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stochgraph {

/// 0-based vertex index; files and CLI output use 1-based ids.
using VertexId = std::size_t;

/// Arc weight carried in both arithmetic modes. `exact` is present when the
/// weight is a known rational; `value` is always its double view.
struct Weight {
  double value = 0.0;
  std::optional<Rational> exact;

  Weight() = default;
  Weight(const Rational& q) : value(q.get_d()), exact(q) {}  // NOLINT(implicit)
  explicit Weight(double x) : value(x) {}

  template <class T>
  T as() const {
    if constexpr (is_exact_v<T>) {
      if (!exact) throw std::logic_error("exact arithmetic requested on a floating-only weight");
      return *exact;
    } else {
      return value;
    }
  }
};

struct Arc {
  VertexId from = 0;
  VertexId to = 0;
  Weight weight;
};

class DigraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite digraph with positive arc weights. Loops are allowed; multiple arcs
/// are not. Immutable once built; arcs are stored sorted by (from, to).
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  /// Validates and sorts the arcs. Throws DigraphError on duplicates,
  /// out-of-range endpoints or non-positive weights.
  WeightedDigraph(std::size_t order, std::vector<Arc> arcs);

  std::size_t order() const { return order_; }
  std::size_t arc_count() const { return arcs_.size(); }
  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const Arc> out_arcs(VertexId v) const {
    return std::span<const Arc>(arcs_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
  }
  std::optional<Weight> weight(VertexId u, VertexId v) const;
  bool has_arc(VertexId u, VertexId v) const { return weight(u, v).has_value(); }
  bool has_loop(VertexId v) const { return has_arc(v, v); }
  /// True when every arc carries an exact rational weight.
  bool is_exact() const { return exact_; }

  template <class T>
  DenseMatrix<T> adjacency() const {
    DenseMatrix<T> a(order_);
    for (const auto& arc : arcs_) a(arc.from, arc.to) = arc.weight.as<T>();
    return a;
  }

  template <class T>
  T out_weight(VertexId v) const {
    T total = ScalarTraits<T>::zero();
    for (const auto& arc : out_arcs(v)) total += arc.weight.as<T>();
    return total;
  }

  /// Induced subdigraph on `keep` (in the given order, relabelled 0..k-1).
  WeightedDigraph induced(std::span<const VertexId> keep) const;
  /// Induced subdigraph on the complement of `removed`, with the kept
  /// vertices' original ids.
  std::pair<WeightedDigraph, std::vector<VertexId>> without(const std::vector<bool>& removed) const;
  /// Same shape, weights replaced by f(arc).
  template <class F>
  WeightedDigraph reweighted(F&& f) const {
    std::vector<Arc> out(arcs_.begin(), arcs_.end());
    for (auto& arc : out) arc.weight = f(arc);
    return WeightedDigraph(order_, std::move(out));
  }
  /// Drops exact weights, keeping only the double view.
  WeightedDigraph floating() const;

  friend bool operator==(const WeightedDigraph& a, const WeightedDigraph& b);

 private:
  std::size_t order_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> offsets_{0};
  bool exact_ = true;
};

/// Accumulates arcs (set semantics: a repeated arc overwrites).
class DigraphBuilder {
 public:
  explicit DigraphBuilder(std::size_t order) : order_(order) {}
  DigraphBuilder& arc(VertexId u, VertexId v, Weight w);
  std::size_t order() const { return order_; }
  WeightedDigraph build() const;

 private:
  std::size_t order_;
  std::map<std::pair<VertexId, VertexId>, Weight> arcs_;
};

enum class WeightingTag { Stochastic, TruthlySubstochastic, StrictlySubstochastic, Substochastic, NotSubstochastic };

std::string_view to_string(WeightingTag tag);

struct WeightingClass {
  WeightingTag tag = WeightingTag::NotSubstochastic;
  /// Certifying vertex: a slack vertex for Truthly/Strictly, an overweight
  /// vertex for NotSubstochastic.
  std::optional<VertexId> witness;
  /// Tag implication along Strictly => Truthly => Substochastic.
  bool satisfies(WeightingTag weaker) const;
};

/// Strongest weighting class. Exact digraphs compare out-weights exactly;
/// otherwise doubles are compared with tolerance `tau` (default strict).
WeightingClass classify_weighting(const WeightedDigraph& d, double tau = 0.0);

bool is_strongly_connected(const WeightedDigraph& d);

/// Strong component id per vertex (ids in reverse topological order of the
/// condensation, as produced by Tarjan's algorithm).
std::vector<std::size_t> strong_components(const WeightedDigraph& d, std::size_t* count = nullptr);

/// True when the digraph has no cycle (loops count as cycles).
bool is_acyclic(const WeightedDigraph& d);

}  // namespace stochgraph
