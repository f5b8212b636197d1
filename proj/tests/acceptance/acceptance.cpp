// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "curvflow/curvature.hpp"
#include "curvflow/evolution.hpp"
#include "curvflow/generators.hpp"
#include "curvflow/theorems.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace curvflow;

namespace {

struct Result {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Result()> check;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Eigen::VectorXd vec(const VertexFunction& f) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(f.size()));
  for (Vertex x = 0; x < f.size(); ++x) v(static_cast<Eigen::Index>(x)) = f[x];
  return v;
}

Result remark_curvature() {
  const double k = curvature_function(remark_graph(), Dimension::infinite()).global_k;
  return {std::abs(k) <= 1e-8, "global K(inf) = " + fmt(k) + ", required 0 +- 1e-8"};
}

Result g_eps_curvature() {
  double worst = std::numeric_limits<double>::infinity();
  for (double eps : {1.0, 0.1, 0.01}) {
    for (const auto& r : curvature_function(g_eps(eps), Dimension::finite(32)).vertices) {
      worst = std::min(worst, r.optimal_k);
    }
  }
  return {worst >= 0.25 - 1e-8, "min over eps, x of K(x, 32) = " + fmt(worst) + ", required >= 0.25 - 1e-8"};
}

Result g_eps_measure() {
  double worst = 0.0;
  for (double eps : {1.0, 0.5, 0.1, 0.01}) {
    auto result = reversible_measure(g_eps(eps));
    const auto* m = std::get_if<Measure>(&result);
    if (!m) return {false, "no reversible measure for eps = " + fmt(eps)};
    worst = std::max(worst, std::abs((*m)[0] / (*m)[1] - 4.0 / eps) / (4.0 / eps));
    worst = std::max(worst, std::abs((*m)[1] / (*m)[2] - 4.0) / 4.0);
  }
  return {worst <= 1e-12, "max relative ratio error = " + fmt(worst) + ", required <= 1e-12"};
}

Result remark_gradient_decay() {
  Graph g = remark_graph();
  std::ostringstream detail;
  bool pass = true;
  for (double k : {0.0, 1.0}) {
    int holds = 0, not_met = 0, violated = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (unsigned seed = 1; seed <= 100; ++seed) {
      std::mt19937_64 rng(seed);
      Verdict v = verify_gradient_decay(g, admissible_initial(g, rng), k);
      holds += v.outcome == curvflow::Outcome::kHolds;
      not_met += v.outcome == curvflow::Outcome::kHypothesesNotMet;
      violated += v.outcome == curvflow::Outcome::kViolated;
      if (v.worst_margin) worst = std::min(worst, *v.worst_margin);
      pass = pass && v.holds() && v.worst_margin && *v.worst_margin >= -1e-7;
    }
    detail << "K=" << k << ": " << holds << "/100 hold, " << not_met << " hypotheses-not-met, "
           << violated << " violated, min margin " << fmt(worst) << "; ";
  }
  const double global = curvature_function(g, Dimension::infinite()).global_k;
  detail << "CD(K,inf) holds only for K <= " << fmt(global);
  return {pass, detail.str()};
}

Result li_yau_suite() {
  int total = 0, holds = 0;
  double worst_identity = 0.0;
  std::vector<std::pair<Graph, double>> cases;
  cases.emplace_back(fixtures::two_vertex(), 2.0);
  for (double eps : {1.0, 0.1, 0.01}) cases.emplace_back(g_eps(eps), 32.0);
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& [g, n] = cases[c];
    const int count = c == 0 ? 50 : (c == 1 ? 18 : 16);
    for (int i = 0; i < count; ++i) {
      std::mt19937_64 rng(1000 * c + static_cast<std::uint64_t>(i));
      Verdict v = verify_li_yau(g, admissible_initial(g, rng), n);
      ++total;
      holds += v.holds();
      worst_identity = std::max(worst_identity, v.details.at("identity_residual"));
    }
  }
  return {holds == total && worst_identity <= 1e-9,
          std::to_string(holds) + "/" + std::to_string(total) + " hold (50 two-vertex, 50 G_eps); max identity residual " +
              fmt(worst_identity)};
}

Result comparison_suites() {
  using Check = std::function<Verdict(const Graph&, std::mt19937_64&)>;
  const std::vector<std::pair<std::string, Check>> suites{
      {"harnack",
       [](const Graph& g, std::mt19937_64& rng) {
         const double n = minimal_dimension(g, 0.0, 1e-3, 1e6).value_or(1e6);
         return verify_harnack(g, admissible_initial(g, rng), n);
       }},
      {"hamilton",
       [](const Graph& g, std::mt19937_64& rng) {
         return verify_hamilton(g, admissible_initial(g, rng, 0.9, true), std::nullopt);
       }},
      {"hamilton-harnack",
       [](const Graph& g, std::mt19937_64& rng) {
         return verify_hamilton_harnack(g, admissible_initial(g, rng, 0.9, true));
       }},
      {"l1", [](const Graph& g, std::mt19937_64& rng) { return verify_l1_comparison(g, admissible_initial(g, rng)); }},
      {"semigroup",
       [](const Graph& g, std::mt19937_64& rng) { return verify_semigroup_comparison(g, admissible_initial(g, rng)); }},
  };
  std::ostringstream detail;
  bool pass = true;
  for (std::size_t s = 0; s < suites.size(); ++s) {
    std::mt19937_64 rng(77 + s);
    int verified = 0, violations = 0, attempts = 0;
    while (verified < 50 && attempts < 500) {
      ++attempts;
      Graph g = fixtures::random_nonnegatively_curved(rng);
      Verdict v = suites[s].second(g, rng);
      if (!v.hypotheses.all_met()) continue;
      ++verified;
      violations += v.outcome == curvflow::Outcome::kViolated;
    }
    pass = pass && verified == 50 && violations == 0;
    detail << suites[s].first << " " << violations << " violations/" << verified << "; ";
  }
  return {pass, detail.str()};
}

Result volume_doubling() {
  Graph g = cycle_graph(400);
  auto n = minimal_dimension(g, 0.0, 1e-3);
  if (!n) return {false, "no finite dimension with CD(0,n)"};
  Verdict v = verify_volume_doubling(g, *n);
  return {v.holds() && v.instances > 0,
          "n = " + fmt(*n) + ", verdict " + to_string(v.outcome) + ", " + std::to_string(v.instances) +
              " admissible (x,r), worst margin " + fmt(v.worst_margin.value_or(NAN))};
}

Result oracle_equivalences() {
  double worst_curv = 0.0;
  int compared = 0;
  for (const auto& fx : fixtures::small_graphs()) {
    for (double n : {2.0, 32.0, std::numeric_limits<double>::infinity()}) {
      const Dimension dim = std::isfinite(n) ? Dimension::finite(n) : Dimension::infinite();
      for (Vertex x = 0; x < fx.graph.size(); ++x) {
        if (ball(fx.graph, x, 2).size() > 5) continue;
        auto brute = oracle::brute_force_curvature(fx.graph, x, n);
        if (!brute) continue;
        worst_curv = std::max(worst_curv, std::abs(curvature_at(fx.graph, x, dim).optimal_k - *brute));
        ++compared;
      }
    }
  }
  Graph k2 = fixtures::two_vertex();
  VertexFunction u0({0.0, 0.5});
  const Eigen::MatrixXd q = oracle::generator(k2);
  const Eigen::VectorXd reference =
      oracle::rk4([&](const Eigen::VectorXd& u) { return oracle::flow_field(q, u); }, vec(u0), 1.0, 1e-6);
  const double flow_err = (vec(nonlinear_flow(k2, u0, 1.0).state) - reference).cwiseAbs().maxCoeff();
  double heat_err = 0.0;
  for (double t : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    VertexFunction p = heat_semigroup(k2, VertexFunction({0.0, 1.0}), t);
    const double e = std::exp(-2.0 * t);
    heat_err = std::max({heat_err, std::abs(p[0] - (0.5 - 0.5 * e)), std::abs(p[1] - (0.5 + 0.5 * e))});
  }
  return {worst_curv <= 1e-6 && flow_err <= 1e-7 && heat_err <= 1e-9,
          "(a) " + std::to_string(compared) + " vertices, max |K - brute| = " + fmt(worst_curv) +
              "; (b) flow vs RK4 = " + fmt(flow_err) + "; (c) heat vs closed form = " + fmt(heat_err)};
}

Result structural_suites() {
  std::mt19937_64 rng(4242);
  constexpr int kCases = 200;
  int fail_recursion = 0, fail_translation = 0, fail_nonneg = 0, fail_scaling = 0, fail_semigroup = 0,
      fail_gating = 0;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); };
  for (int i = 0; i < kCases; ++i) {
    Graph g = fixtures::random_graph(rng, 2 + i % 7, 0.3, i % 2 == 0);
    VertexFunction f = fixtures::random_function(rng, g.size());
    VertexFunction h = fixtures::random_function(rng, g.size());
    VertexFunction lhs = 2.0 * gamma_bilinear(g, 1, f, h);
    VertexFunction rhs = laplacian(g, f * h) - f * laplacian(g, h) - h * laplacian(g, f);
    VertexFunction rec = gamma(g, f), closed = gamma_closed_form(g, f, f);
    VertexFunction shifted = f + 2.5;
    VertexFunction g1 = gamma(g, shifted), s0 = gamma2(g, f), s1 = gamma2(g, shifted);
    VertexFunction l0 = laplacian(g, f), l1 = laplacian(g, shifted);
    for (Vertex x = 0; x < g.size(); ++x) {
      fail_recursion += rel(lhs[x], rhs[x]) > 1e-12 || rel(rec[x], closed[x]) > 1e-12;
      fail_nonneg += rec[x] < 0.0 || closed[x] < 0.0;
      fail_translation += rel(l0[x], l1[x]) > 1e-11 || rel(rec[x], g1[x]) > 1e-10 || rel(s0[x], s1[x]) > 1e-9;
    }

    const double lambda = 0.25 + 0.05 * i;
    auto edges = g.edges();
    for (auto& e : edges) e.rate *= lambda;
    Graph big(g.vertex_ids(), edges);
    const Vertex x = static_cast<Vertex>(i) % g.size();
    const Dimension n = i % 2 ? Dimension::infinite() : Dimension::finite(3.0);
    auto a = curvature_at(g, x, n), b = curvature_at(big, x, n);
    if (a.kind != b.kind ||
        (a.kind == CurvatureResult::Kind::kFinite && std::abs(b.optimal_k - lambda * a.optimal_k) > 1e-8 * std::max(1.0, lambda))) {
      ++fail_scaling;
    }

    VertexFunction u0 = admissible_initial(g, rng, 0.5);
    SolverConfig cfg;
    FlowOutcome whole = nonlinear_flow(g, u0, 1.5, cfg);
    FlowOutcome half = nonlinear_flow(g, nonlinear_flow(g, u0, 0.7, cfg).state, 0.8, cfg);
    fail_semigroup += !whole.completed() ||
                      (whole.state - half.state).sup_norm() > 5.0 * cfg.rel_tol * std::max(1.0, whole.state.sup_norm());

    VertexFunction steep = admissible_initial(g, rng, 2.0 + i % 5);
    Verdict v = verify_hamilton(g, steep + (-steep.max()), std::nullopt, {0.1, 1.0});
    Verdict w = verify_gradient_decay(g, steep, std::nullopt, {0.1, 1.0});
    fail_gating += v.outcome != curvflow::Outcome::kHypothesesNotMet || w.outcome != curvflow::Outcome::kHypothesesNotMet;
  }
  const int failures = fail_recursion + fail_translation + fail_nonneg + fail_scaling + fail_semigroup + fail_gating;
  std::ostringstream d;
  d << kCases << " cases each; failures: recursion " << fail_recursion << ", translation " << fail_translation
    << ", gamma>=0 " << fail_nonneg << ", rate scaling " << fail_scaling << ", semigroup law " << fail_semigroup
    << ", gating " << fail_gating;
  return {failures == 0, d.str()};
}

Result blow_up() {
  Graph g = remark_graph();
  int completed = 0, blew_up = 0, other = 0, non_finite = 0, admissible = 0;
  for (unsigned seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    VertexFunction u0 = admissible_initial(g, rng, 50.0 + 100.0 * seed);
    admissible += gamma(g, u0).sup_norm() <= constants(g).q_min / 2.0;
    FlowTrace trace = flow_trace(g, u0, {0.0, 0.1, 1.0, 10.0});
    for (const auto& s : trace.states) {
      for (double v : s.values()) non_finite += !std::isfinite(v);
    }
    if (trace.status.completed()) ++completed;
    else if (trace.status.kind == FlowStatus::Kind::kBlewUp) ++blew_up;
    else ++other;
  }
  return {non_finite == 0 && other == 0 && admissible == 0,
          std::to_string(completed) + " completed, " + std::to_string(blew_up) + " blew up, " + std::to_string(other) +
              " other, " + std::to_string(non_finite) + " non-finite entries"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "remark-graph optimal curvature", 1.0, remark_curvature},
      {2, "G_eps curvature at n = 32", 1.0, g_eps_curvature},
      {3, "G_eps measure ratios", 1.0, g_eps_measure},
      {4, "remark-graph gradient decay suite", 30.0, remark_gradient_decay},
      {5, "Li-Yau suite", 60.0, li_yau_suite},
      {6, "Harnack/Hamilton/l1/semigroup suites", 120.0, comparison_suites},
      {7, "volume doubling on the 400-cycle", 120.0, volume_doubling},
      {8, "oracle equivalences", 60.0, oracle_equivalences},
      {9, "structural property suites", 120.0, structural_suites},
      {10, "blow-up handling", 60.0, blow_up},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result o = c.check();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && seconds < c.budget_seconds;
    failed += !pass;
    std::printf("%s [%d] %s: %s (%.2f s, budget %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), seconds, c.budget_seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
