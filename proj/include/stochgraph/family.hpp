#pragma once

#include "stochgraph/digraph.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace stochgraph {

/// A finite count or infinity.
class Extent {
 public:
  static Extent finite(std::size_t n) { return Extent(n); }
  static Extent infinite() { return Extent(); }
  bool is_finite() const { return value_.has_value(); }
  std::size_t value() const { return value_.value(); }
  std::string to_string() const { return value_ ? std::to_string(*value_) : "inf"; }
  friend bool operator==(const Extent&, const Extent&) = default;

 private:
  Extent() = default;
  explicit Extent(std::size_t n) : value_(n) {}
  std::optional<std::size_t> value_;
};

/// Declared structural facts about the infinite digraph.
struct StructuralMetadata {
  /// A finite cycle transversal (0-based ids), when one is declared.
  std::optional<std::vector<VertexId>> transversal;
  /// |sct(D)|; defaults to the declared transversal size when absent.
  std::optional<Extent> sct_size;
  std::optional<Extent> ell_max;
  std::optional<std::size_t> ell_min;

  std::optional<Extent> effective_sct_size() const {
    if (sct_size) return sct_size;
    if (transversal) return Extent::finite(transversal->size());
    return std::nullopt;
  }
};

/// Facts about the infinite weighted presentation that truncations cannot
/// reveal on their own.
struct PresentationFacts {
  /// Closed-form intrinsic spectral radius lambda(M).
  std::optional<double> lambda;
  std::optional<Rational> lambda_exact;
  /// Closed-form lambda of the leading truncation of order n.
  std::function<double(std::size_t)> closed_form_ladder;
  /// Closed-form omega_S(D, n) over the whole infinite digraph.
  std::function<double(std::size_t)> closed_form_omega;
  /// Builder-guaranteed Pruitt certificate with xi = all-ones: every row sum
  /// of the infinite matrix is <= lambda, strictly at `slack_vertex`.
  bool all_ones_pruitt = false;
  std::optional<VertexId> slack_vertex;
  /// Number of leading vertices whose complete out-row lies inside truncation n.
  std::function<std::size_t(std::size_t)> complete_rows;
  VertexId return_vertex = 0;
};

class FamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finitely presented infinite weighted digraph: generator(n) is the
/// induced subdigraph on the first n vertices of a fixed enumeration.
/// Families with `finite_order` are finite digraphs; truncations beyond that
/// order return the whole digraph.
struct TruncationFamily {
  std::string name;
  std::function<WeightedDigraph(std::size_t)> generator;
  StructuralMetadata metadata;
  PresentationFacts facts;
  std::optional<std::size_t> finite_order;
  /// Human-readable record of parameter normalizations made by a builder.
  std::vector<std::string> notes;
};

/// Induced subdigraph on vertices {1..n}. Throws FamilyError for n = 0 or a
/// failing generator.
WeightedDigraph truncate(const TruncationFamily& f, std::size_t n);

struct MetadataViolation {
  std::size_t n = 0;
  std::string what;
  std::string detail;
};

/// Checks declared transversal and ell_max against every truncation n <= n_max.
std::vector<MetadataViolation> validate_metadata(const TruncationFamily& f, std::size_t n_max);

/// Sizes n < n_max at which truncate(f, n) is not the principal truncation of
/// truncate(f, n + 1).
std::vector<std::size_t> check_nesting(const TruncationFamily& f, std::size_t n_max);

}  // namespace stochgraph
