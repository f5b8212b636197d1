#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "curvflow/graph.hpp"

namespace curvflow {

/// A real-valued function on the vertices of a graph, stored by vertex index.
/// Entries are always finite.
class VertexFunction {
 public:
  VertexFunction() = default;
  explicit VertexFunction(std::vector<double> values);
  static VertexFunction constant(std::size_t n, double c);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](Vertex x) const { return values_[x]; }
  std::span<const double> values() const noexcept { return values_; }

  double sup_norm() const;
  double max() const;
  double min() const;

  friend bool operator==(const VertexFunction&, const VertexFunction&) = default;

 private:
  std::vector<double> values_;
};

VertexFunction operator+(const VertexFunction& f, const VertexFunction& h);
VertexFunction operator-(const VertexFunction& f, const VertexFunction& h);
VertexFunction operator+(const VertexFunction& f, double c);
VertexFunction operator*(double s, const VertexFunction& f);
/// Pointwise product.
VertexFunction operator*(const VertexFunction& f, const VertexFunction& h);

/// (Δf)(x) = Σ_y q(x,y)(f(y) − f(x)).
VertexFunction laplacian(const Graph& g, const VertexFunction& f);

/// Γ_k(f,h) evaluated by the recursion Γ_0(f,h) = fh,
/// 2Γ_{k+1}(f,h) = ΔΓ_k(f,h) − Γ_k(f,Δh) − Γ_k(Δf,h).
/// Cost grows like 3^k; k <= 2 is what the rest of the library uses.
VertexFunction gamma_bilinear(const Graph& g, int k, const VertexFunction& f,
                              const VertexFunction& h);

VertexFunction gamma(const Graph& g, const VertexFunction& f);
VertexFunction gamma2(const Graph& g, const VertexFunction& f);

/// Γ(f,h)(x) = ½ Σ_y q(x,y)(f(y) − f(x))(h(y) − h(x)). Agrees with the
/// k = 1 recursion for any rates, reversible or not.
VertexFunction gamma_closed_form(const Graph& g, const VertexFunction& f,
                                 const VertexFunction& h);

/// Quadratic forms of Γ₂, Γ and the linear functional Δ at one vertex, written
/// in the coordinates f(y), y ∈ B₂(center) \ {center}, with f(center) = 0.
struct LocalForms {
  Vertex center = 0;
  std::vector<Vertex> coordinates;
  Eigen::MatrixXd gamma2;  ///< A: vᵀAv = Γ₂f_v(center), symmetrized
  Eigen::MatrixXd gamma;   ///< B: vᵀBv = Γf_v(center)
  Eigen::VectorXd laplacian;  ///< c: cᵀv = Δf_v(center)

  std::size_t dimension() const noexcept { return coordinates.size(); }
  /// Extends coordinate vector v to a function on g: v on the coordinates,
  /// zero at the center and outside B₂(center).
  VertexFunction lift(std::size_t graph_size, const Eigen::VectorXd& v) const;
};

/// Assembles the forms on the induced subgraph of B₂(x) by running the Γ
/// recursion on coordinate indicator functions. Γ₂ at x only reads values on
/// B₂(x), so the restriction is exact.
LocalForms local_forms(const Graph& g, Vertex x);

}  // namespace curvflow
