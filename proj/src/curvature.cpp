#include "curvflow/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "curvflow/error.hpp"

namespace curvflow {

Dimension Dimension::finite(double n) {
  if (!(n > 0.0) || !std::isfinite(n)) throw Error("dimension must be a positive finite number");
  Dimension d;
  d.infinite_ = false;
  d.value_ = n;
  return d;
}

Dimension Dimension::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF") return infinite();
  std::size_t used = 0;
  double n = 0.0;
  try {
    n = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error("invalid dimension '" + text + "'");
  }
  if (used != text.size()) throw Error("invalid dimension '" + text + "'");
  return finite(n);
}

double Dimension::value() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

std::string Dimension::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream out;
  out.precision(17);
  out << value_;
  return out.str();
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd curvature_form(const LocalForms& forms, double k, const Dimension& n) {
  return forms.gamma2 - k * forms.gamma -
         n.inverse() * forms.laplacian * forms.laplacian.transpose();
}

double psd_threshold(const Eigen::VectorXd& eigenvalues) {
  double norm = eigenvalues.cwiseAbs().maxCoeff();
  return -kPsdRelativeSlack * std::max(1.0, norm);
}

bool is_psd(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) >= psd_threshold(es.eigenvalues());
}

}  // namespace

CdCheck cd_check(const Graph& g, const LocalForms& forms, double k, const Dimension& n) {
  CdCheck result;
  if (forms.dimension() == 0) return result;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(curvature_form(forms, k, n));
  result.min_eigenvalue = es.eigenvalues()(0);
  result.holds = result.min_eigenvalue >= psd_threshold(es.eigenvalues());
  if (!result.holds) result.witness = forms.lift(g.size(), es.eigenvectors().col(0));
  return result;
}

CdCheck cd_check(const Graph& g, Vertex x, double k, const Dimension& n) {
  return cd_check(g, local_forms(g, x), k, n);
}

CurvatureResult curvature_at(const Graph& g, const LocalForms& forms, const Dimension& n) {
  CurvatureResult result;
  result.vertex = forms.center;
  result.dimension = n;
  result.witness = VertexFunction::constant(g.size(), 0.0);

  const auto m = forms.gamma.rows();
  if (m == 0) {
    result.kind = CurvatureResult::Kind::kVacuous;
    result.optimal_k = kInf;
    return result;
  }
  const Eigen::MatrixXd reduced = curvature_form(forms, 0.0, n);  // A − (1/n)ccᵀ
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gamma_es(forms.gamma);
  const double gamma_norm = gamma_es.eigenvalues().cwiseAbs().maxCoeff();

  if (gamma_norm == 0.0) {
    // Γ vanishes identically at x; the K term drops out.
    if (is_psd(reduced)) {
      result.kind = CurvatureResult::Kind::kVacuous;
      result.optimal_k = kInf;
    } else {
      result.kind = CurvatureResult::Kind::kUnbounded;
      result.optimal_k = -kInf;
    }
    return result;
  }

  // On ker(B) the condition does not involve K at all.
  const double kernel_cut = 1e-12 * gamma_norm;
  std::vector<Eigen::Index> kernel_cols;
  double smallest_positive = kInf;
  for (Eigen::Index i = 0; i < m; ++i) {
    double lambda = gamma_es.eigenvalues()(i);
    if (lambda <= kernel_cut) {
      kernel_cols.push_back(i);
    } else {
      smallest_positive = std::min(smallest_positive, lambda);
    }
  }
  auto unbounded = [&](const Eigen::VectorXd& direction) {
    result.kind = CurvatureResult::Kind::kUnbounded;
    result.optimal_k = -kInf;
    result.witness = forms.lift(g.size(), direction);
    return result;
  };
  if (!kernel_cols.empty()) {
    Eigen::MatrixXd basis(m, static_cast<Eigen::Index>(kernel_cols.size()));
    for (std::size_t j = 0; j < kernel_cols.size(); ++j) {
      basis.col(static_cast<Eigen::Index>(j)) = gamma_es.eigenvectors().col(kernel_cols[j]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> kernel_es(basis.transpose() * reduced * basis);
    if (kernel_es.eigenvalues()(0) < psd_threshold(kernel_es.eigenvalues())) {
      return unbounded(basis * kernel_es.eigenvectors().col(0));
    }
  }

  auto holds = [&](double k) { return is_psd(curvature_form(forms, k, n)); };

  const double a_norm = forms.gamma2.cwiseAbs().maxCoeff() * static_cast<double>(m);
  const double c_norm = forms.laplacian.squaredNorm() * n.inverse();
  double lo = -(a_norm + c_norm) / smallest_positive;
  double step = std::max(1.0, std::abs(lo));
  while (!holds(lo)) {
    lo -= step;
    step *= 2.0;
    if (lo < -1e15) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(curvature_form(forms, lo, n));
      return unbounded(es.eigenvectors().col(0));
    }
  }
  double hi = lo + 1.0;
  step = 1.0;
  while (holds(hi)) {
    lo = hi;
    step *= 2.0;
    hi = lo + step;
  }
  for (int iter = 0; iter < 400 && hi - lo > kCurvatureTolerance; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (holds(mid) ? lo : hi) = mid;
  }

  result.kind = CurvatureResult::Kind::kFinite;
  result.optimal_k = lo;

  // Most negative direction just past the optimum; its Γ-normalization has
  // Γ₂ − (1/n)(Δ)² − K·Γ below hi − lo.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(curvature_form(forms, hi, n));
  Eigen::VectorXd v = es.eigenvectors().col(0);
  double gamma_value = v.dot(forms.gamma * v);
  if (gamma_value > 1e-14 * gamma_norm) v /= std::sqrt(gamma_value);
  result.witness = forms.lift(g.size(), v);
  return result;
}

CurvatureResult curvature_at(const Graph& g, Vertex x, const Dimension& n) {
  return curvature_at(g, local_forms(g, x), n);
}

std::vector<LocalForms> all_local_forms(const Graph& g) {
  std::vector<LocalForms> forms;
  forms.reserve(g.size());
  for (Vertex x = 0; x < g.size(); ++x) forms.push_back(local_forms(g, x));
  return forms;
}

CurvatureReport curvature_function(const Graph& g, const std::vector<LocalForms>& forms,
                                   const Dimension& n) {
  CurvatureReport report;
  report.dimension = n;
  report.global_k = kInf;
  for (const LocalForms& f : forms) {
    report.vertices.push_back(curvature_at(g, f, n));
    report.global_k = std::min(report.global_k, report.vertices.back().optimal_k);
  }
  return report;
}

CurvatureReport curvature_function(const Graph& g, const Dimension& n) {
  return curvature_function(g, all_local_forms(g), n);
}

std::optional<double> minimal_dimension(const Graph& g, double k, double tolerance,
                                        double n_max) {
  const auto forms = all_local_forms(g);
  auto holds = [&](double n) {
    const Dimension dim = Dimension::finite(n);
    return std::all_of(forms.begin(), forms.end(),
                       [&](const LocalForms& f) { return cd_check(g, f, k, dim).holds; });
  };
  double hi = 1.0;
  while (!holds(hi)) {
    hi *= 2.0;
    if (hi > n_max) return std::nullopt;
  }
  double lo = hi == 1.0 ? 0.0 : hi / 2.0;
  while (hi - lo > tolerance) {
    double mid = 0.5 * (lo + hi);
    (holds(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace curvflow
