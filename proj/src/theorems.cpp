#include "curvflow/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <limits>
#include <tuple>

#include "curvflow/error.hpp"

namespace curvflow {

bool Hypotheses::all_met() const {
  if (!curvature_informational && !curvature_verified) return false;
  for (const auto& flag : {gradient_bound_ok, reversibility_ok, sign_ok, ordering_ok,
                           bidirectional_ok, dimension_ok, degree_ratio_ok}) {
    if (flag && !*flag) return false;
  }
  return true;
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kHolds: return "yes";
    case Outcome::kViolated: return "no";
    case Outcome::kHypothesesNotMet: return "hypotheses-not-met";
    case Outcome::kVacuous: return "vacuous";
  }
  return "unknown";
}

std::vector<double> geometric_grid(double first, double last, std::size_t count) {
  if (!(first > 0.0) || !(last > first) || count < 2) throw Error("invalid geometric grid");
  std::vector<double> grid(count);
  const double ratio = std::log(last / first) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = first * std::exp(ratio * static_cast<double>(i));
  grid.back() = last;
  return grid;
}

std::vector<double> default_time_grid() { return geometric_grid(1e-3, 10.0, 40); }

std::vector<std::pair<double, double>> default_time_pairs() {
  auto times = geometric_grid(1e-2, 10.0, 10);
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t j = i + 1; j < times.size(); ++j) pairs.emplace_back(times[i], times[j]);
  }
  return pairs;
}

double hamilton_phi(double k, double t) {
  if (k == 0.0) return t;
  return std::expm1(2.0 * k * t) / (2.0 * k);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kRefinementRounds = 3;

void require_domain(const Graph& g, const VertexFunction& f) {
  if (f.size() != g.size()) throw DomainError("vertex function does not match graph");
}

void require_positive_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw Error("empty time grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i]) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw Error("check times must be positive and strictly increasing");
    }
  }
}

void check_gradient(const Graph& g, const VertexFunction& u0, Hypotheses& hyp) {
  const GraphConstants c = constants(g);
  hyp.gradient_sup = gamma(g, u0).sup_norm();
  hyp.gradient_limit = c.q_min / 2.0;
  // Equality is admissible; the relative slack only absorbs rounding.
  hyp.gradient_bound_ok = hyp.gradient_sup <= hyp.gradient_limit * (1.0 + 1e-12);
}

void check_curvature(const Graph& g, double k, const Dimension& n, Hypotheses& hyp) {
  hyp.required_k = k;
  hyp.required_n = n;
  hyp.global_k = curvature_function(g, n).global_k;
  hyp.curvature_verified = k >= 0.0 && hyp.global_k >= k - kCurvatureSlack;
}

// K used when the caller leaves it open: the best nonnegative K available.
double default_rate(const Graph& g) {
  double global = curvature_function(g, Dimension::infinite()).global_k;
  if (!std::isfinite(global)) return global > 0 ? 0.0 : 0.0;
  return std::max(0.0, global);
}

class MarginTracker {
 public:
  void add(double margin, double scale, const Witness& w) {
    ++count_;
    scale_ = std::max(scale_, std::abs(scale));
    if (!worst_ || margin < *worst_ || (margin == *worst_ && key(w) < key(witness_))) {
      worst_ = margin;
      witness_ = w;
    }
  }
  std::optional<double> worst() const { return worst_; }
  const Witness& witness() const { return witness_; }
  double scale() const { return scale_; }
  std::size_t count() const { return count_; }

 private:
  using Key = std::tuple<double, double, std::size_t, std::size_t, std::size_t>;
  static Key key(const Witness& w) {
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    return std::make_tuple(w.t.value_or(-1.0), w.t2.value_or(-1.0), w.x.value_or(none),
                           w.y.value_or(none), w.radius.value_or(none));
  }
  std::optional<double> worst_;
  Witness witness_;
  double scale_ = 0.0;
  std::size_t count_ = 0;
};

Witness at(std::optional<Vertex> x, double t, std::string quantity) {
  Witness w;
  w.x = x;
  w.t = t;
  w.quantity = std::move(quantity);
  return w;
}

void finalize(Verdict& v, const MarginTracker& tracker, const SolverConfig& cfg,
              bool flow_incomplete) {
  v.worst_margin = tracker.worst();
  v.witness = tracker.witness();
  v.instances = tracker.count();
  v.tolerance = kBaseTolerance + 10.0 * cfg.rel_tol * tracker.scale();
  if (!v.hypotheses.all_met()) {
    v.outcome = Outcome::kHypothesesNotMet;
    return;
  }
  if (flow_incomplete) {
    v.notes.push_back("flow stopped before the last check time");
    v.outcome = Outcome::kViolated;
    return;
  }
  if (!v.worst_margin) {
    v.outcome = Outcome::kVacuous;
    return;
  }
  v.outcome = *v.worst_margin >= -v.tolerance ? Outcome::kHolds : Outcome::kViolated;
}

// One linear or nonlinear flow started from a fixed function.
struct FlowSpec {
  bool nonlinear;
  VertexFunction initial;
};

struct Samples {
  std::vector<double> times;
  std::vector<std::vector<VertexFunction>> states;  // states[i][flow]
  std::vector<bool> completed;                      // per flow
};

Samples sample(const Graph& g, const std::vector<FlowSpec>& flows, std::vector<double> times,
               const SolverConfig& cfg) {
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  std::vector<double> grid{0.0};
  grid.insert(grid.end(), times.begin(), times.end());

  Samples s;
  std::vector<FlowTrace> traces;
  std::size_t reached = times.size();
  for (const FlowSpec& f : flows) {
    traces.push_back(f.nonlinear ? flow_trace(g, f.initial, grid, cfg)
                                 : heat_trace(g, f.initial, grid, cfg));
    s.completed.push_back(traces.back().status.completed());
    reached = std::min(reached, traces.back().times.size() - 1);
  }
  for (std::size_t i = 0; i < reached; ++i) {
    s.times.push_back(times[i]);
    std::vector<VertexFunction> row;
    for (const auto& tr : traces) row.push_back(tr.states[i + 1]);
    s.states.push_back(std::move(row));
  }
  return s;
}

using Evaluate = std::function<void(double, const std::vector<VertexFunction>&, MarginTracker&)>;

// Evaluates on the grid, then bisects (geometrically) around the worst time.
// Returns the completion flags of the flows on the base grid.
std::vector<bool> scan(const Graph& g, const std::vector<FlowSpec>& flows,
                       const std::vector<double>& grid, const SolverConfig& cfg,
                       MarginTracker& tracker, const Evaluate& evaluate) {
  Samples base = sample(g, flows, grid, cfg);
  std::vector<double> seen;
  for (std::size_t i = 0; i < base.times.size(); ++i) {
    evaluate(base.times[i], base.states[i], tracker);
    seen.push_back(base.times[i]);
  }
  for (int round = 0; round < kRefinementRounds && tracker.witness().t && seen.size() > 1;
       ++round) {
    const double worst_t = *tracker.witness().t;
    auto it = std::lower_bound(seen.begin(), seen.end(), worst_t);
    if (it == seen.end() || *it != worst_t) break;
    std::vector<double> extra;
    if (it != seen.begin()) extra.push_back(std::sqrt(*std::prev(it) * worst_t));
    if (std::next(it) != seen.end()) extra.push_back(std::sqrt(*std::next(it) * worst_t));
    extra.erase(std::remove_if(extra.begin(), extra.end(),
                               [&](double t) { return std::binary_search(seen.begin(), seen.end(), t); }),
                extra.end());
    if (extra.empty()) break;
    Samples more = sample(g, flows, extra, cfg);
    for (std::size_t i = 0; i < more.times.size(); ++i) {
      evaluate(more.times[i], more.states[i], tracker);
      seen.insert(std::upper_bound(seen.begin(), seen.end(), more.times[i]), more.times[i]);
    }
  }
  return base.completed;
}

VertexFunction exp_of(double alpha, const VertexFunction& u) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::exp(alpha * u[i]);
  return VertexFunction(std::move(out));
}

std::vector<std::pair<Vertex, Vertex>> adjacent_pairs(const Graph& g) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex x = 0; x < g.size(); ++x) {
    for (Vertex y : g.neighbors(x)) {
      if (x < y) pairs.emplace_back(x, y);
    }
  }
  return pairs;
}

}  // namespace

Verdict verify_gradient_decay(const Graph& g, const VertexFunction& u0, std::optional<double> k,
                              const std::vector<double>& grid, const SolverConfig& cfg,
                              DecayOptions options) {
  require_domain(g, u0);
  require_positive_grid(grid);
  Verdict v;
  v.theorem = "gradient";
  const double rate = k ? *k : default_rate(g);
  check_gradient(g, u0, v.hypotheses);
  if (options.rate_claim) {
    check_curvature(g, rate, Dimension::infinite(), v.hypotheses);
    v.hypotheses.curvature_informational = true;
    v.notes.push_back("decay rate checked as a claim; CD(K,inf) at that rate not required");
  } else {
    check_curvature(g, rate, Dimension::infinite(), v.hypotheses);
  }
  v.details["rate"] = rate;

  const double g0 = v.hypotheses.gradient_sup;
  const auto edges = adjacent_pairs(g);
  MarginTracker tracker;
  auto completed = scan(g, {{true, u0}}, grid, cfg, tracker,
                        [&](double t, const std::vector<VertexFunction>& s, MarginTracker& tr) {
                          const VertexFunction& u = s[0];
                          VertexFunction gu = gamma(g, u);
                          Vertex arg = 0;
                          for (Vertex x = 1; x < g.size(); ++x) {
                            if (gu[x] > gu[arg]) arg = x;
                          }
                          tr.add(std::exp(-2.0 * rate * t) * g0 - gu[arg], std::max(g0, gu[arg]),
                                 at(arg, t, "gradient decay"));
                          for (auto [x, y] : edges) {
                            Witness w = at(x, t, "edge difference");
                            w.y = y;
                            tr.add(1.0 - std::abs(u[y] - u[x]), std::max(std::abs(u[x]), std::abs(u[y])), w);
                          }
                        });
  finalize(v, tracker, cfg, !completed[0]);
  return v;
}

Verdict verify_monotonicity(const Graph& g, const VertexFunction& f, const VertexFunction& h,
                            const std::vector<double>& grid, const SolverConfig& cfg) {
  require_domain(g, f);
  require_domain(g, h);
  require_positive_grid(grid);
  Verdict v;
  v.theorem = "monotone";
  check_gradient(g, f, v.hypotheses);
  check_curvature(g, 0.0, Dimension::infinite(), v.hypotheses);
  bool ordered = true;
  for (Vertex x = 0; x < g.size(); ++x) ordered = ordered && h[x] >= f[x];
  v.hypotheses.ordering_ok = ordered;

  MarginTracker tracker;
  auto completed = scan(g, {{true, f}, {true, h}}, grid, cfg, tracker,
                        [&](double t, const std::vector<VertexFunction>& s, MarginTracker& tr) {
                          for (Vertex x = 0; x < g.size(); ++x) {
                            tr.add(s[1][x] - s[0][x], std::max(std::abs(s[0][x]), std::abs(s[1][x])),
                                   at(x, t, "L_t h - L_t f"));
                          }
                        });
  if (!completed[1]) v.notes.push_back("flow of the upper function stopped early; checked while it existed");
  finalize(v, tracker, cfg, !completed[0]);
  return v;
}

Verdict verify_semigroup_comparison(const Graph& g, const VertexFunction& u0, double alpha_hi,
                                    double alpha_lo, const std::vector<double>& grid,
                                    const SolverConfig& cfg) {
  require_domain(g, u0);
  require_positive_grid(grid);
  Verdict v;
  v.theorem = "semigroup";
  check_gradient(g, u0, v.hypotheses);
  check_curvature(g, 0.0, Dimension::infinite(), v.hypotheses);
  v.details["alpha_hi"] = alpha_hi;
  v.details["alpha_lo"] = alpha_lo;
  if (alpha_hi < 1.60 || alpha_lo > 0.76) {
    v.notes.push_back("alpha outside the covered ranges (>= 1.60 and <= 0.76)");
  }

  MarginTracker tracker;
  auto completed = scan(
      g, {{true, u0}, {false, exp_of(alpha_hi, u0)}, {false, exp_of(alpha_lo, u0)}}, grid, cfg,
      tracker, [&](double t, const std::vector<VertexFunction>& s, MarginTracker& tr) {
        for (Vertex x = 0; x < g.size(); ++x) {
          const double lhs_hi = std::exp(alpha_hi * s[0][x]);
          tr.add(s[1][x] - lhs_hi, std::max(std::abs(s[1][x]), lhs_hi),
                 at(x, t, "P_t e^{a u0} - e^{a u_t}, a = alpha_hi"));
          const double lhs_lo = std::exp(alpha_lo * s[0][x]);
          tr.add(lhs_lo - s[2][x], std::max(std::abs(s[2][x]), lhs_lo),
                 at(x, t, "e^{a u_t} - P_t e^{a u0}, a = alpha_lo"));
        }
      });
  finalize(v, tracker, cfg, !completed[0]);
  return v;
}

Verdict verify_l1_comparison(const Graph& g, const VertexFunction& u0, double alpha_hi,
                             double alpha_lo, const std::vector<double>& grid,
                             const SolverConfig& cfg) {
  require_domain(g, u0);
  require_positive_grid(grid);
  Verdict v;
  v.theorem = "l1";
  check_gradient(g, u0, v.hypotheses);
  check_curvature(g, 0.0, Dimension::infinite(), v.hypotheses);
  v.details["alpha_hi"] = alpha_hi;
  v.details["alpha_lo"] = alpha_lo;

  std::optional<Measure> m;
  if (is_connected(g)) {
    auto rev = reversible_measure(g);
    if (auto* measure = std::get_if<Measure>(&rev)) m = *measure;
  } else {
    v.notes.push_back("graph is disconnected; measure is not unique");
  }
  v.hypotheses.reversibility_ok = m.has_value();
  MarginTracker tracker;
  if (!m) {
    finalize(v, tracker, cfg, false);
    return v;
  }

  auto norm = [&](double alpha, const VertexFunction& u) {
    double s = 0.0;
    for (Vertex x = 0; x < g.size(); ++x) s += std::exp(alpha * u[x]) * (*m)[x];
    return s;
  };
  Samples s = sample(g, {{true, u0}}, grid, cfg);
  double prev_t = 0.0;
  double prev_hi = norm(alpha_hi, u0), prev_lo = norm(alpha_lo, u0);
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    const double t = s.times[i];
    const double hi = norm(alpha_hi, s.states[i][0]);
    const double lo = norm(alpha_lo, s.states[i][0]);
    Witness w;
    w.t = t;
    w.t2 = prev_t;
    w.quantity = "decrease of ||e^{a u_t}||_1, a = alpha_hi";
    tracker.add(prev_hi - hi, std::max(prev_hi, hi), w);
    w.quantity = "increase of ||e^{a u_t}||_1, a = alpha_lo";
    tracker.add(lo - prev_lo, std::max(prev_lo, lo), w);
    prev_t = t;
    prev_hi = hi;
    prev_lo = lo;
  }
  finalize(v, tracker, cfg, !s.completed[0]);
  return v;
}

Verdict verify_li_yau(const Graph& g, const VertexFunction& u0, double n,
                      const std::vector<double>& grid, const SolverConfig& cfg) {
  require_domain(g, u0);
  require_positive_grid(grid);
  Verdict v;
  v.theorem = "li-yau";
  check_gradient(g, u0, v.hypotheses);
  v.hypotheses.dimension_ok = std::isfinite(n) && n > 0.0;
  if (*v.hypotheses.dimension_ok) {
    check_curvature(g, 0.0, Dimension::finite(n), v.hypotheses);
  }

  double residual = 0.0;
  MarginTracker tracker;
  auto completed = scan(g, {{true, u0}}, grid, cfg, tracker,
                        [&](double t, const std::vector<VertexFunction>& s, MarginTracker& tr) {
                          const VertexFunction& u = s[0];
                          VertexFunction lap = laplacian(g, u);
                          VertexFunction gu = gamma(g, u);
                          VertexFunction field = nonlinear_field(g, u);
                          for (Vertex x = 0; x < g.size(); ++x) {
                            tr.add(n / (2.0 * t) + lap[x], std::abs(lap[x]), at(x, t, "n/(2t) + Laplacian u_t"));
                            residual = std::max(residual, std::abs(gu[x] - field[x] + lap[x]));
                          }
                        });
  v.details["identity_residual"] = residual;
  finalize(v, tracker, cfg, !completed[0]);
  if (v.outcome == Outcome::kHolds && residual > 1e-9) {
    v.outcome = Outcome::kViolated;
    v.notes.push_back("identity Gamma u - d/dt u = -Laplacian u off by more than 1e-9");
  }
  return v;
}

Verdict verify_harnack(const Graph& g, const VertexFunction& u0, double n,
                       std::vector<std::pair<Vertex, Vertex>> pairs,
                       std::vector<std::pair<double, double>> time_pairs,
                       const SolverConfig& cfg) {
  require_domain(g, u0);
  Verdict v;
  v.theorem = "harnack";
  check_gradient(g, u0, v.hypotheses);
  v.hypotheses.dimension_ok = std::isfinite(n) && n > 0.0;
  if (*v.hypotheses.dimension_ok) check_curvature(g, 0.0, Dimension::finite(n), v.hypotheses);
  const double q_min = constants(g).q_min;

  if (pairs.empty()) {
    for (Vertex x = 0; x < g.size(); ++x) {
      for (Vertex y = 0; y < g.size(); ++y) pairs.emplace_back(x, y);
    }
  }
  std::vector<double> times;
  for (auto [t1, t2] : time_pairs) {
    if (!(t1 > 0.0) || !(t2 > t1)) throw Error("time pairs need 0 < T1 < T2");
    times.push_back(t1);
    times.push_back(t2);
  }
  Samples s = sample(g, {{true, u0}}, times, cfg);
  auto state_at = [&](double t) -> const VertexFunction* {
    auto it = std::lower_bound(s.times.begin(), s.times.end(), t);
    if (it == s.times.end() || *it != t) return nullptr;
    return &s.states[static_cast<std::size_t>(it - s.times.begin())][0];
  };

  std::vector<std::vector<std::size_t>> dist;
  for (Vertex x = 0; x < g.size(); ++x) dist.push_back(distances_from(g, x));

  MarginTracker tracker;
  std::size_t skipped = 0;
  for (auto [t1, t2] : time_pairs) {
    const VertexFunction* u1 = state_at(t1);
    const VertexFunction* u2 = state_at(t2);
    if (!u1 || !u2) continue;
    for (auto [x, y] : pairs) {
      const std::size_t d = dist.at(x).at(y);
      if (d == kUnreachable) {
        ++skipped;
        continue;
      }
      const double dd = static_cast<double>(d);
      const double rhs = 0.5 * n * std::log(t2 / t1) + 2.0 * dd * dd / (q_min * (t2 - t1));
      const double lhs = (*u1)[x] - (*u2)[y];
      Witness w;
      w.x = x;
      w.y = y;
      w.t = t1;
      w.t2 = t2;
      w.quantity = "Harnack bound";
      tracker.add(rhs - lhs, std::max(std::abs((*u1)[x]), std::abs((*u2)[y])), w);
    }
  }
  if (skipped > 0) v.details["disconnected_pairs_skipped"] = static_cast<double>(skipped);
  finalize(v, tracker, cfg, !s.completed[0]);
  return v;
}

Verdict verify_hamilton(const Graph& g, const VertexFunction& u0, std::optional<double> k,
                        const std::vector<double>& grid, const SolverConfig& cfg) {
  require_domain(g, u0);
  require_positive_grid(grid);
  Verdict v;
  v.theorem = "hamilton";
  const double rate = k ? *k : default_rate(g);
  check_gradient(g, u0, v.hypotheses);
  check_curvature(g, rate, Dimension::infinite(), v.hypotheses);
  v.hypotheses.sign_ok = u0.max() <= 0.0;
  v.details["K"] = rate;

  MarginTracker tracker;
  auto completed = scan(g, {{true, u0}}, grid, cfg, tracker,
                        [&](double t, const std::vector<VertexFunction>& s, MarginTracker& tr) {
                          const VertexFunction& u = s[0];
                          VertexFunction gu = gamma(g, u);
                          const double phi = hamilton_phi(rate, t);
                          for (Vertex x = 0; x < g.size(); ++x) {
                            tr.add(-u[x] / phi - gu[x], std::abs(u[x]) / phi + gu[x],
                                   at(x, t, "-u_t/phi(t) - Gamma u_t"));
                          }
                        });
  finalize(v, tracker, cfg, !completed[0]);
  return v;
}

Verdict verify_hamilton_harnack(const Graph& g, const VertexFunction& u0,
                                const std::vector<double>& grid, const SolverConfig& cfg) {
  require_domain(g, u0);
  require_positive_grid(grid);
  Verdict v;
  v.theorem = "hamilton-harnack";
  check_gradient(g, u0, v.hypotheses);
  check_curvature(g, 0.0, Dimension::infinite(), v.hypotheses);
  v.hypotheses.sign_ok = u0.max() <= 0.0;
  bool bidirectional = true;
  for (Vertex x = 0; x < g.size(); ++x) {
    for (const auto& a : g.out_arcs(x)) bidirectional = bidirectional && g.rate(a.to, x) > 0.0;
  }
  v.hypotheses.bidirectional_ok = bidirectional;
  const double q_min = constants(g).q_min;

  std::vector<std::vector<std::size_t>> dist;
  for (Vertex x = 0; x < g.size(); ++x) dist.push_back(distances_from(g, x));

  MarginTracker tracker;
  auto completed = scan(
      g, {{true, u0}}, grid, cfg, tracker,
      [&](double t, const std::vector<VertexFunction>& s, MarginTracker& tr) {
        const VertexFunction& u = s[0];
        const double denom = std::sqrt(2.0 * t * q_min);
        for (Vertex x = 0; x < g.size(); ++x) {
          for (Vertex y = x + 1; y < g.size(); ++y) {
            if (dist[x][y] == kUnreachable) continue;
            const double rx = std::sqrt(std::max(0.0, -u[x]));
            const double ry = std::sqrt(std::max(0.0, -u[y]));
            Witness w = at(x, t, "sqrt(-u) Lipschitz bound");
            w.y = y;
            tr.add(static_cast<double>(dist[x][y]) / denom - std::abs(ry - rx), std::max(rx, ry), w);
          }
        }
      });
  finalize(v, tracker, cfg, !completed[0]);
  return v;
}

Verdict verify_linear_gradient_bound(const Graph& g, const VertexFunction& u0, double n,
                                     const std::vector<double>& grid, const SolverConfig& cfg) {
  require_domain(g, u0);
  require_positive_grid(grid);
  Verdict v;
  v.theorem = "lin-gradient";
  v.hypotheses.dimension_ok = std::isfinite(n) && n > 0.0;
  if (*v.hypotheses.dimension_ok) check_curvature(g, 0.0, Dimension::finite(n), v.hypotheses);

  MarginTracker tracker;
  auto completed = scan(
      g, {{false, u0}, {false, gamma(g, u0)}}, grid, cfg, tracker,
      [&](double t, const std::vector<VertexFunction>& s, MarginTracker& tr) {
        const VertexFunction& pu = s[0];
        const VertexFunction& pgu = s[1];
        VertexFunction gpu = gamma(g, pu);
        VertexFunction lap = laplacian(g, pu);
        const double factor = n / (2.0 * t);
        for (Vertex x = 0; x < g.size(); ++x) {
          const double rhs = factor * (pgu[x] - gpu[x]);
          const double lhs = lap[x] * lap[x];
          tr.add(rhs - lhs, factor * (std::abs(pgu[x]) + std::abs(gpu[x])) + lhs,
                 at(x, t, "(n/2t)(P_t Gamma u0 - Gamma P_t u0) - (Laplacian P_t u0)^2"));
        }
      });
  finalize(v, tracker, cfg, !completed[0] || !completed[1]);
  return v;
}

Verdict verify_volume_doubling(const Graph& g, double n, const SolverConfig& cfg) {
  Verdict v;
  v.theorem = "doubling";
  const GraphConstants c = constants(g);
  auto& hyp = v.hypotheses;
  hyp.dimension_ok = std::isfinite(n) && n >= 2.0;
  hyp.degree_ratio_ok = c.max_degree / c.q_min >= 2.0;
  if (std::isfinite(n) && n > 0.0) check_curvature(g, 0.0, Dimension::finite(n), hyp);

  std::optional<Measure> m;
  if (is_connected(g)) {
    auto rev = reversible_measure(g);
    if (auto* measure = std::get_if<Measure>(&rev)) m = *measure;
  } else {
    v.notes.push_back("graph is disconnected; measure is not unique");
  }
  hyp.reversibility_ok = m.has_value();

  const double ratio_dq = c.max_degree / c.q_min;
  const double threshold = 4.0 * n * n * ratio_dq;
  const double proof_threshold = 4.0 * n * n * std::sqrt(ratio_dq);
  const double log_bound = 3.0 * n * std::log(9.0 * n * std::sqrt(ratio_dq));
  const double bound = log_bound < std::log(std::numeric_limits<double>::max())
                           ? std::exp(log_bound)
                           : std::numeric_limits<double>::max();
  v.details["radius_threshold"] = threshold;
  v.details["proof_radius_threshold"] = proof_threshold;
  v.details["log10_bound"] = log_bound / std::log(10.0);

  MarginTracker tracker;
  std::size_t proof_only = 0;
  if (m) {
    const auto r_min = static_cast<std::size_t>(std::ceil(threshold));
    const auto r_proof = static_cast<std::size_t>(std::ceil(proof_threshold));
    for (Vertex x = 0; x < g.size(); ++x) {
      const std::size_t ecc = eccentricity(g, x);
      for (std::size_t r = std::max<std::size_t>(1, r_proof); 2 * r <= ecc; ++r) {
        if (r < r_min) {
          ++proof_only;
          continue;
        }
        auto small = ball(g, x, r);
        auto large = ball(g, x, 2 * r);
        const double ratio = measure_volume(*m, large) / measure_volume(*m, small);
        Witness w;
        w.x = x;
        w.radius = r;
        w.quantity = "doubling ratio";
        tracker.add(bound - ratio, 0.0, w);
      }
    }
  }
  v.details["proof_radius_only_instances"] = static_cast<double>(proof_only);
  hyp.radius_ok = tracker.count() > 0;

  v.worst_margin = tracker.worst();
  v.witness = tracker.witness();
  v.instances = tracker.count();
  v.tolerance = kBaseTolerance;
  (void)cfg;
  if (!hyp.all_met()) {
    v.outcome = Outcome::kHypothesesNotMet;
  } else if (tracker.count() == 0) {
    v.outcome = Outcome::kVacuous;
    v.notes.push_back("no (x, r) with r >= radius_threshold and 2r <= ecc(x)");
  } else {
    v.outcome = *v.worst_margin >= -v.tolerance ? Outcome::kHolds : Outcome::kViolated;
  }
  return v;
}

double spectral_gap(const Graph& g) {
  auto rev = reversible_measure(g);
  const auto* m = std::get_if<Measure>(&rev);
  if (!m) throw Error("spectral gap needs a reversible graph");
  const auto n = static_cast<Eigen::Index>(g.size());
  if (n < 2) return 0.0;
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (Vertex x = 0; x < g.size(); ++x) {
    const auto i = static_cast<Eigen::Index>(x);
    s(i, i) = g.degree(x);
    for (const auto& a : g.out_arcs(x)) {
      s(i, static_cast<Eigen::Index>(a.to)) = -a.rate * std::sqrt((*m)[x] / (*m)[a.to]);
    }
  }
  s = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(1);
}

VertexFunction admissible_initial(const Graph& g, std::mt19937_64& rng, double fraction,
                                  bool nonpositive) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> raw(g.size());
  for (double& r : raw) r = dist(rng);
  VertexFunction f(std::move(raw));
  const double sup = gamma(g, f).sup_norm();
  if (sup == 0.0) return VertexFunction::constant(g.size(), 0.0);
  const double target = fraction * constants(g).q_min / 2.0;
  VertexFunction u = std::sqrt(target / sup) * f;
  if (nonpositive) u = u + (-u.max());
  return u;
}

namespace {

nlohmann::ordered_json number_or_string(double value) {
  if (std::isfinite(value)) return value;
  return value > 0 ? "inf" : "-inf";
}

}  // namespace

std::string verdict_to_json(const Graph& g, const Verdict& v) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["theorem"] = v.theorem;

  const Hypotheses& h = v.hypotheses;
  ordered_json hyp;
  hyp["curvature_required"] = {{"K", h.required_k}, {"n", h.required_n.to_string()}};
  hyp["curvature_verified"] = {{"ok", h.curvature_verified},
                               {"global_k", number_or_string(h.global_k)},
                               {"required", !h.curvature_informational}};
  if (h.gradient_bound_ok) {
    hyp["gradient_bound_ok"] = *h.gradient_bound_ok;
    hyp["gradient_sup"] = h.gradient_sup;
    hyp["gradient_limit"] = h.gradient_limit;
  }
  auto flag = [&](const char* name, const std::optional<bool>& value) {
    if (value) hyp[name] = *value;
  };
  flag("reversibility_ok", h.reversibility_ok);
  flag("sign_ok", h.sign_ok);
  flag("ordering_ok", h.ordering_ok);
  flag("bidirectional_ok", h.bidirectional_ok);
  flag("dimension_ok", h.dimension_ok);
  flag("degree_ratio_ok", h.degree_ratio_ok);
  flag("radius_ok", h.radius_ok);
  doc["hypotheses"] = std::move(hyp);

  doc["holds"] = to_string(v.outcome);
  doc["worst_margin"] = v.worst_margin ? ordered_json(*v.worst_margin) : ordered_json(nullptr);

  ordered_json w = ordered_json::object();
  if (v.witness.x) w["x"] = g.id(*v.witness.x);
  if (v.witness.y) w["y"] = g.id(*v.witness.y);
  if (v.witness.t) w["t"] = *v.witness.t;
  if (v.witness.t2) w["t2"] = *v.witness.t2;
  if (v.witness.radius) w["radius"] = *v.witness.radius;
  if (!v.witness.quantity.empty()) w["quantity"] = v.witness.quantity;
  doc["witness"] = std::move(w);

  doc["tolerance"] = v.tolerance;
  doc["instances"] = v.instances;
  ordered_json details = ordered_json::object();
  for (const auto& [key, value] : v.details) details[key] = number_or_string(value);
  doc["details"] = std::move(details);
  doc["notes"] = v.notes;
  return doc.dump(2) + "\n";
}

}  // namespace curvflow
