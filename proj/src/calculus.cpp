#include "curvflow/calculus.hpp"

#include <algorithm>
#include <cmath>

#include "curvflow/error.hpp"

namespace curvflow {

VertexFunction::VertexFunction(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("vertex function entries must be finite");
  }
}

VertexFunction VertexFunction::constant(std::size_t n, double c) {
  return VertexFunction(std::vector<double>(n, c));
}

double VertexFunction::sup_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

double VertexFunction::max() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

double VertexFunction::min() const {
  return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}

namespace {

void require_same_size(const VertexFunction& f, const VertexFunction& h) {
  if (f.size() != h.size()) throw DomainError("vertex functions have different domains");
}

void require_domain(const Graph& g, const VertexFunction& f) {
  if (f.size() != g.size()) {
    throw DomainError("vertex function has " + std::to_string(f.size()) +
                      " entries, graph has " + std::to_string(g.size()) + " vertices");
  }
}

template <class Op>
VertexFunction zip(const VertexFunction& f, const VertexFunction& h, Op op) {
  require_same_size(f, h);
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = op(f[i], h[i]);
  return VertexFunction(std::move(out));
}

}  // namespace

VertexFunction operator+(const VertexFunction& f, const VertexFunction& h) {
  return zip(f, h, std::plus<>{});
}
VertexFunction operator-(const VertexFunction& f, const VertexFunction& h) {
  return zip(f, h, std::minus<>{});
}
VertexFunction operator*(const VertexFunction& f, const VertexFunction& h) {
  return zip(f, h, std::multiplies<>{});
}
VertexFunction operator+(const VertexFunction& f, double c) {
  std::vector<double> out(f.values().begin(), f.values().end());
  for (double& v : out) v += c;
  return VertexFunction(std::move(out));
}
VertexFunction operator*(double s, const VertexFunction& f) {
  std::vector<double> out(f.values().begin(), f.values().end());
  for (double& v : out) v *= s;
  return VertexFunction(std::move(out));
}

VertexFunction laplacian(const Graph& g, const VertexFunction& f) {
  require_domain(g, f);
  std::vector<double> out(g.size(), 0.0);
  for (Vertex x = 0; x < g.size(); ++x) {
    double s = 0.0;
    for (const auto& a : g.out_arcs(x)) s += a.rate * (f[a.to] - f[x]);
    out[x] = s;
  }
  return VertexFunction(std::move(out));
}

VertexFunction gamma_bilinear(const Graph& g, int k, const VertexFunction& f,
                              const VertexFunction& h) {
  require_domain(g, f);
  require_domain(g, h);
  if (k < 0) throw Error("gamma order must be nonnegative");
  if (k == 0) return f * h;
  VertexFunction df = laplacian(g, f);
  VertexFunction dh = laplacian(g, h);
  VertexFunction total = laplacian(g, gamma_bilinear(g, k - 1, f, h)) -
                         gamma_bilinear(g, k - 1, f, dh) - gamma_bilinear(g, k - 1, df, h);
  return 0.5 * total;
}

VertexFunction gamma(const Graph& g, const VertexFunction& f) {
  return gamma_bilinear(g, 1, f, f);
}

VertexFunction gamma2(const Graph& g, const VertexFunction& f) {
  return gamma_bilinear(g, 2, f, f);
}

VertexFunction gamma_closed_form(const Graph& g, const VertexFunction& f,
                                 const VertexFunction& h) {
  require_domain(g, f);
  require_domain(g, h);
  std::vector<double> out(g.size(), 0.0);
  for (Vertex x = 0; x < g.size(); ++x) {
    double s = 0.0;
    for (const auto& a : g.out_arcs(x)) s += a.rate * (f[a.to] - f[x]) * (h[a.to] - h[x]);
    out[x] = 0.5 * s;
  }
  return VertexFunction(std::move(out));
}

VertexFunction LocalForms::lift(std::size_t graph_size, const Eigen::VectorXd& v) const {
  std::vector<double> out(graph_size, 0.0);
  for (std::size_t i = 0; i < coordinates.size(); ++i) out[coordinates[i]] = v(static_cast<Eigen::Index>(i));
  return VertexFunction(std::move(out));
}

LocalForms local_forms(const Graph& g, Vertex x) {
  if (x >= g.size()) throw Error("unknown vertex index");
  LocalForms forms;
  forms.center = x;

  // Local vertex 0 is the center, the rest are the coordinates in index order.
  std::vector<Vertex> keep{x};
  for (Vertex y : ball(g, x, 2)) {
    if (y != x) forms.coordinates.push_back(y);
  }
  keep.insert(keep.end(), forms.coordinates.begin(), forms.coordinates.end());
  const Graph local = induced_subgraph(g, keep);

  const auto m = static_cast<Eigen::Index>(forms.coordinates.size());
  forms.gamma2 = Eigen::MatrixXd::Zero(m, m);
  forms.gamma = Eigen::MatrixXd::Zero(m, m);
  forms.laplacian = Eigen::VectorXd::Zero(m);

  std::vector<VertexFunction> basis;
  basis.reserve(forms.coordinates.size());
  for (std::size_t i = 0; i < forms.coordinates.size(); ++i) {
    std::vector<double> e(local.size(), 0.0);
    e[i + 1] = 1.0;
    basis.emplace_back(std::move(e));
  }

  for (Eigen::Index i = 0; i < m; ++i) {
    forms.laplacian(i) = laplacian(local, basis[i])[0];
    for (Eigen::Index j = i; j < m; ++j) {
      forms.gamma(i, j) = forms.gamma(j, i) = gamma_bilinear(local, 1, basis[i], basis[j])[0];
      // Symmetric part (M + Mᵀ)/2 of the raw bilinear assembly.
      double a_ij = gamma_bilinear(local, 2, basis[i], basis[j])[0];
      double a_ji = gamma_bilinear(local, 2, basis[j], basis[i])[0];
      forms.gamma2(i, j) = forms.gamma2(j, i) = 0.5 * (a_ij + a_ji);
    }
  }
  return forms;
}

}  // namespace curvflow
