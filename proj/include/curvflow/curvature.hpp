#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvflow/calculus.hpp"
#include "curvflow/graph.hpp"

namespace curvflow {

/// Dimension parameter n of CD(K,n): a positive real or infinity.
class Dimension {
 public:
  static Dimension infinite() { return Dimension(); }
  /// Throws Error unless n > 0 and finite.
  static Dimension finite(double n);
  /// Accepts a positive number or "inf"/"infinity".
  static Dimension parse(const std::string& text);

  bool is_infinite() const noexcept { return infinite_; }
  /// n for finite dimensions, +infinity otherwise.
  double value() const noexcept;
  /// 1/n, zero for infinite dimension.
  double inverse() const noexcept { return infinite_ ? 0.0 : 1.0 / value_; }
  std::string to_string() const;

  friend bool operator==(const Dimension&, const Dimension&) = default;

 private:
  Dimension() = default;
  bool infinite_ = true;
  double value_ = 0.0;
};

/// Smallest eigenvalue ≥ −kPsdRelativeSlack·max(1, ‖M‖) counts as PSD.
inline constexpr double kPsdRelativeSlack = 1e-11;

struct CdCheck {
  bool holds = true;
  double min_eigenvalue = 0.0;
  /// Eigenvector of the most negative eigenvalue, lifted to the graph; only
  /// present when the check fails.
  std::optional<VertexFunction> witness;
};

/// Tests Γ₂f(x) ≥ (1/n)(Δf(x))² + KΓf(x) for all f, i.e. positive
/// semidefiniteness of A − K·B − (1/n)ccᵀ on the local coordinates.
CdCheck cd_check(const Graph& g, Vertex x, double k, const Dimension& n);
CdCheck cd_check(const Graph& g, const LocalForms& forms, double k, const Dimension& n);

struct CurvatureResult {
  enum class Kind {
    kFinite,
    kVacuous,    ///< no neighbours: every K works, optimal_k = +inf
    kUnbounded,  ///< fails for every K, optimal_k = −inf
  };

  Vertex vertex = 0;
  Dimension dimension = Dimension::infinite();
  Kind kind = Kind::kFinite;
  double optimal_k = 0.0;
  /// Near-minimizing direction: zero at the vertex, supported on B₂(vertex),
  /// scaled to Γw(vertex) = 1 when that is possible.
  VertexFunction witness;
};

/// Absolute accuracy of the optimal curvature bisection.
inline constexpr double kCurvatureTolerance = 1e-10;

/// sup{K : CD(K,n) holds at x}, by bisection on K with a PSD test per step.
CurvatureResult curvature_at(const Graph& g, Vertex x, const Dimension& n);
CurvatureResult curvature_at(const Graph& g, const LocalForms& forms, const Dimension& n);

struct CurvatureReport {
  Dimension dimension = Dimension::infinite();
  std::vector<CurvatureResult> vertices;
  /// min over vertices of optimal_k: the best K with CD(K,n) globally.
  double global_k = 0.0;
};

CurvatureReport curvature_function(const Graph& g, const Dimension& n);
CurvatureReport curvature_function(const Graph& g, const std::vector<LocalForms>& forms,
                                   const Dimension& n);

std::vector<LocalForms> all_local_forms(const Graph& g);

/// Smallest n (to within `tolerance`) with CD(k, n) at every vertex, found by
/// bisection; the returned value always satisfies the condition. nullopt when
/// no n ≤ n_max works.
std::optional<double> minimal_dimension(const Graph& g, double k = 0.0, double tolerance = 1e-3,
                                        double n_max = 1e8);

}  // namespace curvflow
