#pragma once

#include "stochgraph/digraph.hpp"
#include "stochgraph/family.hpp"
#include "stochgraph/kernels.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace stochgraph {

enum class Verdict { Transient, Recurrent, Unknown };
enum class Confidence { Certified, Numerical };

std::string_view to_string(Verdict v);
std::string_view to_string(Confidence c);

/// Positive xi with A xi <= lambda xi entrywise, strict at `strict_vertex`.
struct PruittCertificate {
  std::vector<double> xi;
  std::optional<std::vector<Rational>> exact_xi;
  VertexId strict_vertex = 0;
  /// "presentation" for a certificate of the infinite matrix, "truncation"
  /// for one that only holds on a finite truncation.
  std::string scope = "truncation";
  /// Leading rows re-verified (presentation scope).
  std::size_t verified_rows = 0;
};

struct DivergingSeries {
  VertexId vertex = 0;
  std::size_t n = 0;
  /// (P, G_P) samples on the largest truncation.
  std::vector<std::pair<std::size_t, double>> partial_sums;
  /// Exact G_P at the largest P when computable in rationals.
  std::optional<Rational> exact_last;
  double growth_factor = 0.0;
  double slope_ratio = 0.0;
  std::string trend;
};

struct CyrStructural {
  Extent sct_size = Extent::infinite();
  Extent ell_max = Extent::infinite();
};

struct RecurrenceVerdict {
  Verdict verdict = Verdict::Unknown;
  Confidence confidence = Confidence::Numerical;
  std::variant<std::monostate, PruittCertificate, DivergingSeries, CyrStructural> evidence;
  double lambda = 0.0;
  std::string lambda_method;
  std::vector<std::string> notes;
};

/// Search for a Pruitt vector at lambda: all-ones first, then the solution of
/// (A xi)(v) = lambda xi(v) off one designated vertex, then a damped power
/// iteration. Floating checks use relative tolerance `tol`.
std::optional<PruittCertificate> pruitt_certificate(const WeightedDigraph& d, double lambda, double tol = 1e-12);
/// Exact variant: every returned vector re-verifies in rational arithmetic.
std::optional<PruittCertificate> pruitt_certificate(const WeightedDigraph& d, const Rational& lambda);

/// True when A xi <= lambda xi with at least one strict row.
bool verify_pruitt(const WeightedDigraph& d, const std::vector<Rational>& xi, const Rational& lambda,
                   VertexId* strict = nullptr);

/// w'(u,v) = w(u,v) xi(v) / (lambda xi(u)).
WeightedDigraph similarity_scale(const WeightedDigraph& d, const std::vector<double>& xi, double lambda);
WeightedDigraph similarity_scale(const WeightedDigraph& d, const std::vector<Rational>& xi, const Rational& lambda);

class MetadataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// T(D) is empty iff |sct| and l_max are both finite. Throws MetadataError
/// when either fact is undeclared.
bool cyr_criterion(const StructuralMetadata& metadata);

struct ClassifyOptions {
  std::size_t n_max = 200;
  std::size_t p_max = 2000;
  std::optional<VertexId> vertex;
  /// Growth of G_P over the last decade of P that counts as divergence.
  double divergence_factor = 3.0;
  /// The later half-decade slope must keep this fraction of the earlier one.
  double slope_retention = 0.5;
  Exec exec = Exec::Serial;
};

RecurrenceVerdict classify(const TruncationFamily& f, const ClassifyOptions& options = {});

}  // namespace stochgraph
