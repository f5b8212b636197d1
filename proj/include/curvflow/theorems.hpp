#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "curvflow/calculus.hpp"
#include "curvflow/curvature.hpp"
#include "curvflow/evolution.hpp"
#include "curvflow/graph.hpp"

namespace curvflow {

/// Hypotheses of one check. Optional flags are present exactly when the
/// checked statement needs them.
struct Hypotheses {
  double required_k = 0.0;
  Dimension required_n = Dimension::infinite();
  bool curvature_verified = false;
  double global_k = 0.0;  ///< optimal global K found at required_n

  std::optional<bool> gradient_bound_ok;  ///< ‖Γu₀‖∞ ≤ q_min/2
  double gradient_sup = 0.0;
  double gradient_limit = 0.0;

  std::optional<bool> reversibility_ok;
  std::optional<bool> sign_ok;           ///< u₀ ≤ 0
  std::optional<bool> ordering_ok;       ///< h ≥ f
  std::optional<bool> bidirectional_ok;  ///< q(x,y) > 0 for all x ~ y
  std::optional<bool> dimension_ok;      ///< finite n (≥ 2 for volume doubling)
  std::optional<bool> degree_ratio_ok;   ///< D/q_min ≥ 2
  std::optional<bool> radius_ok;         ///< some admissible radius exists

  /// When true the curvature flag is reported but not required.
  bool curvature_informational = false;

  bool all_met() const;
};

enum class Outcome { kHolds, kViolated, kHypothesesNotMet, kVacuous };

std::string to_string(Outcome outcome);

/// Where the worst margin was found.
struct Witness {
  std::optional<Vertex> x;
  std::optional<Vertex> y;
  std::optional<double> t;
  std::optional<double> t2;
  std::optional<std::size_t> radius;
  std::string quantity;  ///< which inequality of the check produced it
};

struct Verdict {
  std::string theorem;
  Hypotheses hypotheses;
  Outcome outcome = Outcome::kHypothesesNotMet;
  /// min over instances of (bound − quantity); nullopt when nothing was checked.
  std::optional<double> worst_margin;
  Witness witness;
  double tolerance = 0.0;
  std::size_t instances = 0;
  std::map<std::string, double> details;
  std::vector<std::string> notes;

  bool holds() const noexcept { return outcome == Outcome::kHolds; }
};

/// 40 geometric points in [1e-3, 10].
std::vector<double> default_time_grid();
std::vector<double> geometric_grid(double first, double last, std::size_t count);

/// Base tolerance added to the solver allowance 10·rel_tol·scale.
inline constexpr double kBaseTolerance = 1e-7;
/// Slack when comparing a computed optimal curvature against a required K.
inline constexpr double kCurvatureSlack = 1e-8;

struct DecayOptions {
  /// Check the decay rate without requiring CD(K,∞) at that rate; the
  /// curvature flag is still computed and reported.
  bool rate_claim = false;
};

/// ‖Γu_t‖∞ ≤ e^{−2Kt}‖Γu₀‖∞ and |u_t(y) − u_t(x)| ≤ 1 for x ~ y.
/// K defaults to max(0, global optimal K at n = ∞).
Verdict verify_gradient_decay(const Graph& g, const VertexFunction& u0, std::optional<double> k,
                              const std::vector<double>& grid = default_time_grid(),
                              const SolverConfig& cfg = {}, DecayOptions options = {});

/// L_t h ≥ L_t f for h ≥ f.
Verdict verify_monotonicity(const Graph& g, const VertexFunction& f, const VertexFunction& h,
                            const std::vector<double>& grid = default_time_grid(),
                            const SolverConfig& cfg = {});

/// P_t e^{αu₀} ≥ e^{αu_t} at alpha_hi and ≤ at alpha_lo.
Verdict verify_semigroup_comparison(const Graph& g, const VertexFunction& u0,
                                    double alpha_hi = 1.60, double alpha_lo = 0.76,
                                    const std::vector<double>& grid = default_time_grid(),
                                    const SolverConfig& cfg = {});

/// t ↦ ‖e^{αu_t}‖₁ nonincreasing at alpha_hi and nondecreasing at alpha_lo.
Verdict verify_l1_comparison(const Graph& g, const VertexFunction& u0,
                             double alpha_hi = 1.0986122886681098, double alpha_lo = 1.0,
                             const std::vector<double>& grid = default_time_grid(),
                             const SolverConfig& cfg = {});

/// −Δu_t ≤ n/(2t), plus the identity Γu_t − ∂_t u_t = −Δu_t.
Verdict verify_li_yau(const Graph& g, const VertexFunction& u0, double n,
                      const std::vector<double>& grid = default_time_grid(),
                      const SolverConfig& cfg = {});

/// Default (T₁, T₂) pairs: all ordered pairs from 10 geometric times in [1e-2, 10].
std::vector<std::pair<double, double>> default_time_pairs();

/// u_{T₁}(x) − u_{T₂}(y) ≤ (n/2)log(T₂/T₁) + 2d(x,y)²/(q_min(T₂ − T₁)).
/// Empty `pairs` means every ordered pair of vertices (including x = y).
Verdict verify_harnack(const Graph& g, const VertexFunction& u0, double n,
                       std::vector<std::pair<Vertex, Vertex>> pairs = {},
                       std::vector<std::pair<double, double>> time_pairs = default_time_pairs(),
                       const SolverConfig& cfg = {});

/// (e^{2Kt} − 1)/(2K), or t for K = 0.
double hamilton_phi(double k, double t);

/// Γu_t ≤ −u_t/φ(t) for u₀ ≤ 0. K defaults to max(0, global optimal K).
Verdict verify_hamilton(const Graph& g, const VertexFunction& u0, std::optional<double> k,
                        const std::vector<double>& grid = default_time_grid(),
                        const SolverConfig& cfg = {});

/// |√(−u_t(y)) − √(−u_t(x))| ≤ d(x,y)/√(2t q_min).
Verdict verify_hamilton_harnack(const Graph& g, const VertexFunction& u0,
                                const std::vector<double>& grid = default_time_grid(),
                                const SolverConfig& cfg = {});

/// (ΔP_t u₀)² ≤ (n/2t)(P_tΓu₀ − ΓP_t u₀).
Verdict verify_linear_gradient_bound(const Graph& g, const VertexFunction& u0, double n,
                                     const std::vector<double>& grid = default_time_grid(),
                                     const SolverConfig& cfg = {});

/// m(B_{2r}(x))/m(B_r(x)) ≤ (9n√(D/q_min))^{3n} for r ≥ 4n²D/q_min. A pair
/// (x, r) is admissible when r meets the threshold and 2r ≤ ecc(x); with no
/// admissible pair the outcome is kVacuous.
Verdict verify_volume_doubling(const Graph& g, double n, const SolverConfig& cfg = {});

/// Second smallest eigenvalue of −Δ, symmetrized through the reversible
/// measure. Throws DisconnectedError or Error for non-reversible graphs.
double spectral_gap(const Graph& g);

/// Random u₀ with ‖Γu₀‖∞ = fraction·q_min/2; with `nonpositive` it is shifted
/// so that max u₀ = 0.
VertexFunction admissible_initial(const Graph& g, std::mt19937_64& rng, double fraction = 0.9,
                                  bool nonpositive = false);

/// Stable JSON rendering of a verdict.
std::string verdict_to_json(const Graph& g, const Verdict& v);

}  // namespace curvflow
