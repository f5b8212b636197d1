#include <doctest.h>

#include <cmath>
#include <random>

#include "curvflow/curvature.hpp"
#include "curvflow/error.hpp"
#include "curvflow/generators.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace curvflow;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Scaled copy of g with every rate multiplied by s.
Graph scaled(const Graph& g, double s) {
  auto edges = g.edges();
  for (auto& e : edges) e.rate *= s;
  return Graph(g.vertex_ids(), edges);
}

double cd_residual(const Graph& g, Vertex x, const VertexFunction& f, double k, const Dimension& n) {
  const double lap = laplacian(g, f)[x];
  return gamma2(g, f)[x] - n.inverse() * lap * lap - k * gamma(g, f)[x];
}

}  // namespace

TEST_CASE("dimension parsing") {
  CHECK(Dimension::parse("inf").is_infinite());
  CHECK(Dimension::parse("infinity").is_infinite());
  CHECK(Dimension::parse("32").value() == 32.0);
  CHECK(Dimension::parse("2.5").inverse() == 0.4);
  CHECK_THROWS_AS(Dimension::parse("0"), Error);
  CHECK_THROWS_AS(Dimension::parse("-1"), Error);
  CHECK_THROWS_AS(Dimension::parse("abc"), Error);
  CHECK_THROWS_AS(Dimension::finite(std::nan("")), Error);
}

TEST_CASE("two-vertex graph: optimal curvature 2 - 2/n") {
  Graph g = fixtures::two_vertex();
  for (double n : {0.5, 1.0, 2.0, 4.0, 32.0, 1e6}) {
    for (Vertex x : {Vertex{0}, Vertex{1}}) {
      auto r = curvature_at(g, x, Dimension::finite(n));
      CHECK(r.kind == CurvatureResult::Kind::kFinite);
      CHECK(std::abs(r.optimal_k - (2.0 - 2.0 / n)) <= 1e-9);
    }
  }
  CHECK(curvature_at(g, 0, Dimension::infinite()).optimal_k == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("three-vertex chain with eps has curvature at least 1/4 at n = 32") {
  for (double eps : {1.0, 0.1, 0.01}) {
    CurvatureReport report = curvature_function(g_eps(eps), Dimension::finite(32));
    for (const auto& r : report.vertices) CHECK(r.optimal_k >= 0.25 - 1e-8);
    CHECK(report.global_k >= 0.25 - 1e-8);
  }
}

TEST_CASE("remark graph curvature at infinite dimension") {
  // Hand expansion at vertex 2 with f(1) = a, f(3) = b, f(2) = 0:
  // Gamma f = a^2/2 + 5b^2/2 and Gamma_2 f = a^2/2 + 5ab + 35b^2/4, so the
  // optimal K solves det(A - K B) = 0 with A = [[1/2, 5/2], [5/2, 35/4]],
  // B = diag(1/2, 5/2).
  const double k2 = (5.625 - std::sqrt(41.015625)) / 2.5;
  Graph g = remark_graph();
  LocalForms forms = local_forms(g, 1);
  REQUIRE(forms.dimension() == 2);
  Eigen::Matrix2d a;
  a << 0.5, 2.5, 2.5, 8.75;
  Eigen::Matrix2d b = Eigen::Vector2d(0.5, 2.5).asDiagonal();
  Eigen::Matrix2d perm = Eigen::Matrix2d::Identity();
  if (forms.coordinates[0] != 0) perm << 0, 1, 1, 0;
  CHECK((forms.gamma2 - perm * a * perm).norm() < 1e-12);
  CHECK((forms.gamma - perm * b * perm).norm() < 1e-12);

  CurvatureReport report = curvature_function(g, Dimension::infinite());
  CHECK(report.vertices[0].optimal_k == doctest::Approx(0.0).scale(1).epsilon(1e-8));
  CHECK(report.vertices[1].optimal_k == doctest::Approx(k2).epsilon(1e-9));
  CHECK(report.vertices[2].optimal_k == doctest::Approx(7.5).epsilon(1e-9));
  CHECK(report.global_k == doctest::Approx(k2).epsilon(1e-9));

  CHECK(cd_check(g, 0, 0.0, Dimension::infinite()).holds);
  CHECK(cd_check(g, 2, 0.0, Dimension::infinite()).holds);
  CHECK_FALSE(cd_check(g, 1, 0.0, Dimension::infinite()).holds);
  auto fail = cd_check(g, 0, 0.01, Dimension::infinite());
  CHECK_FALSE(fail.holds);
  REQUIRE(fail.witness.has_value());
  CHECK(cd_residual(g, 0, *fail.witness, 0.01, Dimension::infinite()) < 0.0);
}

TEST_CASE("isolated vertices are vacuous") {
  Graph g({"a", "b"}, {});
  CHECK(cd_check(g, 0, 1e6, Dimension::finite(1)).holds);
  auto r = curvature_at(g, 0, Dimension::infinite());
  CHECK(r.kind == CurvatureResult::Kind::kVacuous);
  CHECK(r.optimal_k == kInf);
}

TEST_CASE("disjoint union matches the single edge") {
  Graph g({"a", "b", "c", "d"}, {{"a", "b", 1.0}, {"b", "a", 1.0}, {"c", "d", 1.0}, {"d", "c", 1.0}});
  auto report = curvature_function(g, Dimension::finite(4));
  const double single = curvature_at(fixtures::two_vertex(), 0, Dimension::finite(4)).optimal_k;
  for (const auto& r : report.vertices) CHECK(r.optimal_k == single);
}

TEST_CASE("bracketing, witness and monotonicity in n") {
  std::mt19937_64 rng(43);
  const std::vector<Dimension> dims{Dimension::finite(1), Dimension::finite(3),
                                    Dimension::finite(32), Dimension::infinite()};
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = fixtures::random_graph(rng, 3 + trial % 5, 0.3, trial % 2 == 0);
    const Vertex x = static_cast<Vertex>(trial) % g.size();
    double previous = -kInf;
    for (const auto& n : dims) {
      auto r = curvature_at(g, x, n);
      if (r.kind != CurvatureResult::Kind::kFinite) continue;
      CHECK(cd_check(g, x, r.optimal_k - 1e-8, n).holds);
      CHECK_FALSE(cd_check(g, x, r.optimal_k + 1e-6, n).holds);
      CHECK(r.witness[x] == 0.0);
      const double gw = gamma(g, r.witness)[x];
      if (gw > 0) {
        CHECK(gw == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(cd_residual(g, x, r.witness, r.optimal_k, n) <= 1e-8);
      }
      CHECK(r.optimal_k >= previous - 1e-9);
      previous = r.optimal_k;
    }
  }
}

TEST_CASE("random sampling never contradicts a passing check") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = fixtures::random_graph(rng, 4 + trial % 4, 0.3, trial % 2 == 0);
    const Vertex x = 0;
    const Dimension n = trial % 3 == 0 ? Dimension::infinite() : Dimension::finite(2.0 + trial);
    const double k = curvature_at(g, x, n).optimal_k - 1e-9;
    REQUIRE(cd_check(g, x, k, n).holds);
    for (int s = 0; s < 1000; ++s) {
      VertexFunction f = fixtures::random_function(rng, g.size());
      const double lap = laplacian(g, f)[x];
      const double g2 = gamma2(g, f)[x], gm = gamma(g, f)[x];
      const double scale = std::abs(g2) + n.inverse() * lap * lap + std::abs(k) * gm;
      CHECK(cd_residual(g, x, f, k, n) >= -1e-9 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("curvature scales linearly with the rates") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> lambda(0.1, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = fixtures::random_graph(rng, 3 + trial % 4, 0.3, trial % 2 == 0);
    const double s = lambda(rng);
    const Dimension n = trial % 2 ? Dimension::infinite() : Dimension::finite(1.0 + trial % 7);
    const Vertex x = static_cast<Vertex>(trial) % g.size();
    auto base = curvature_at(g, x, n);
    auto big = curvature_at(scaled(g, s), x, n);
    CHECK(base.kind == big.kind);
    if (base.kind == CurvatureResult::Kind::kFinite) {
      CHECK(std::abs(big.optimal_k - s * base.optimal_k) <= 1e-8 * std::max(1.0, s));
    }
  }
}

TEST_CASE("bisection agrees with the brute-force minimizer") {
  for (const auto& fx : fixtures::small_graphs()) {
    for (double n : {2.0, 32.0, kInf}) {
      for (Vertex x = 0; x < fx.graph.size(); ++x) {
        if (ball(fx.graph, x, 2).size() > 5) continue;
        auto r = curvature_at(fx.graph, x, std::isfinite(n) ? Dimension::finite(n) : Dimension::infinite());
        auto brute = oracle::brute_force_curvature(fx.graph, x, n);
        if (!brute) {
          CHECK(r.kind == CurvatureResult::Kind::kVacuous);
          continue;
        }
        INFO(fx.name << " x=" << x << " n=" << n);
        CHECK(std::abs(r.optimal_k - *brute) <= 1e-6);
      }
    }
  }
}

TEST_CASE("minimal dimension") {
  auto cycle = minimal_dimension(cycle_graph(12));
  REQUIRE(cycle.has_value());
  CHECK(*cycle >= 2.0 - 1e-9);
  CHECK(*cycle <= 2.0 + 1e-3);
  CHECK(curvature_function(cycle_graph(12), Dimension::finite(*cycle)).global_k >= -1e-8);

  auto edge = minimal_dimension(fixtures::two_vertex());
  REQUIRE(edge.has_value());
  CHECK(*edge == doctest::Approx(1.0).epsilon(1e-3));

  CHECK_FALSE(minimal_dimension(remark_graph()).has_value());
}
