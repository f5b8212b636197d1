#include "curvflow/evolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "curvflow/error.hpp"

namespace curvflow {

void SolverConfig::validate() const {
  for (double v : {rel_tol, abs_tol, max_step, blowup_threshold, min_step}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error("solver settings must be positive and finite");
  }
  if (!(min_step < max_step)) throw Error("min_step must be smaller than max_step");
}

std::string FlowStatus::to_string() const {
  switch (kind) {
    case Kind::kCompleted: return "completed";
    case Kind::kBlewUp: return "blew-up";
    case Kind::kStepUnderflow: return "step-underflow";
  }
  return "unknown";
}

void nonlinear_field(const Graph& g, std::span<const double> u, std::span<double> out) {
  for (Vertex x = 0; x < g.size(); ++x) {
    double s = 0.0;
    for (const auto& a : g.out_arcs(x)) {
      double d = u[a.to] - u[x];
      s += a.rate * (d + 0.5 * d * d);
    }
    out[x] = s;
  }
}

VertexFunction nonlinear_field(const Graph& g, const VertexFunction& u) {
  if (u.size() != g.size()) throw DomainError("vertex function does not match graph");
  std::vector<double> out(g.size());
  nonlinear_field(g, u.values(), out);
  return VertexFunction(std::move(out));
}

namespace {

void linear_field(const Graph& g, std::span<const double> u, std::span<double> out) {
  for (Vertex x = 0; x < g.size(); ++x) {
    double s = 0.0;
    for (const auto& a : g.out_arcs(x)) s += a.rate * (u[a.to] - u[x]);
    out[x] = s;
  }
}

using State = std::vector<double>;
using Field = std::function<void(std::span<const double>, std::span<double>)>;

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension (Hairer–Nørsett–Wanner, DOPRI5 dense output).
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

struct Integration {
  FlowTrace trace;
  double last_time = 0.0;
  State last_state;
};

void check_grid(const std::vector<double>& grid) {
  if (grid.empty() || grid.front() != 0.0) throw Error("time grid must start at 0");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || !(grid[i] > grid[i - 1])) {
      throw Error("non-monotone time grid");
    }
  }
}

double sup_norm(const State& y) {
  double s = 0.0;
  for (double v : y) s = std::max(s, std::abs(v));
  return s;
}

bool all_finite(const State& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

double initial_step(const Field& field, const State& y0, const State& f0, const SolverConfig& cfg) {
  const std::size_t n = y0.size();
  double d0 = 0.0, d1n = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y0[i]);
    d0 += (y0[i] / sc) * (y0[i] / sc);
    d1n += (f0[i] / sc) * (f0[i] / sc);
  }
  d0 = std::sqrt(d0 / n);
  d1n = std::sqrt(d1n / n);
  double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
  h0 = std::min(h0, cfg.max_step);
  State y1(n), f1(n);
  for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
  field(y1, f1);
  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y0[i]);
    d2 += ((f1[i] - f0[i]) / sc) * ((f1[i] - f0[i]) / sc);
  }
  d2 = std::sqrt(d2 / n) / h0;
  double dmax = std::max(d1n, d2);
  double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  double h = std::min({100.0 * h0, h1, cfg.max_step});
  return std::isfinite(h) && h > 0.0 ? h : cfg.max_step;
}

Integration integrate(const Field& field, const State& y0, const std::vector<double>& grid,
                      const SolverConfig& cfg) {
  cfg.validate();
  check_grid(grid);
  const std::size_t n = y0.size();
  Integration out;
  out.trace.times.push_back(0.0);
  out.trace.states.emplace_back(y0);
  out.last_state = y0;
  const double t_end = grid.back();
  if (grid.size() == 1 || n == 0) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
      out.trace.times.push_back(grid[i]);
      out.trace.states.emplace_back(y0);
    }
    out.trace.status = {FlowStatus::Kind::kCompleted, t_end};
    out.last_time = t_end;
    return out;
  }

  State y = y0, ynew(n), yerr(n), tmp(n);
  std::array<State, 7> k;
  for (auto& ki : k) ki.resize(n);
  field(y, k[0]);
  double t = 0.0;
  double h = initial_step(field, y, k[0], cfg);
  bool rejected = false;
  std::size_t next = 1;
  std::size_t steps = 0;
  constexpr std::size_t kMaxSteps = 20'000'000;

  auto stop = [&](FlowStatus::Kind kind) {
    out.trace.status = {kind, t};
    out.last_time = t;
    out.last_state = y;
    return out;
  };

  while (next < grid.size()) {
    if (++steps > kMaxSteps) return stop(FlowStatus::Kind::kStepUnderflow);
    h = std::min(h, cfg.max_step);
    const double remaining = t_end - t;
    bool last = false;
    if (h >= remaining * (1.0 - 1e-12)) {
      h = remaining;
      last = true;
    }
    if (!last && h < cfg.min_step) return stop(FlowStatus::Kind::kStepUnderflow);

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k[0][i];
    field(tmp, k[1]);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k[0][i] + a32 * k[1][i]);
    field(tmp, k[2]);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i]);
    field(tmp, k[3]);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a51 * k[0][i] + a52 * k[1][i] + a53 * k[2][i] + a54 * k[3][i]);
    field(tmp, k[4]);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * k[0][i] + a62 * k[1][i] + a63 * k[2][i] + a64 * k[3][i] +
                           a65 * k[4][i]);
    field(tmp, k[5]);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (a71 * k[0][i] + a73 * k[2][i] + a74 * k[3][i] + a75 * k[4][i] +
                            a76 * k[5][i]);
    field(ynew, k[6]);

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      yerr[i] = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] +
                     e7 * k[6][i]);
      double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (yerr[i] / sc) * (yerr[i] / sc);
    }
    err = std::sqrt(err / n);

    if (!std::isfinite(err) || !all_finite(ynew) || !all_finite(k[6])) {
      h *= 0.2;
      rejected = true;
      continue;
    }
    if (err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      rejected = true;
      continue;
    }

    const double t_new = last ? t_end : t + h;
    if (sup_norm(ynew) > cfg.blowup_threshold) return stop(FlowStatus::Kind::kBlewUp);

    while (next < grid.size() && grid[next] <= t_new) {
      out.trace.times.push_back(grid[next]);
      if (grid[next] == t_new) {
        out.trace.states.emplace_back(ynew);
      } else {
        const double theta = (grid[next] - t) / h;
        const double theta1 = 1.0 - theta;
        State dense(n);
        for (std::size_t i = 0; i < n; ++i) {
          const double diff = ynew[i] - y[i];
          const double bspl = h * k[0][i] - diff;
          const double r4 = diff - h * k[6][i] - bspl;
          const double r5 = h * (d1 * k[0][i] + d3 * k[2][i] + d4 * k[3][i] + d5 * k[4][i] +
                                 d6 * k[5][i] + d7 * k[6][i]);
          dense[i] = y[i] + theta * (diff + theta1 * (bspl + theta * (r4 + theta1 * r5)));
        }
        out.trace.states.emplace_back(std::move(dense));
      }
      ++next;
    }

    t = t_new;
    y.swap(ynew);
    k[0].swap(k[6]);
    double factor = std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
    if (rejected) factor = std::min(factor, 1.0);
    h *= factor;
    rejected = false;
  }
  out.trace.status = {FlowStatus::Kind::kCompleted, t_end};
  out.last_time = t_end;
  out.last_state = y;
  return out;
}

void require_domain(const Graph& g, const VertexFunction& f) {
  if (f.size() != g.size()) throw DomainError("vertex function does not match graph");
}

Field nonlinear_of(const Graph& g) {
  return [&g](std::span<const double> u, std::span<double> out) { nonlinear_field(g, u, out); };
}

Field linear_of(const Graph& g) {
  return [&g](std::span<const double> u, std::span<double> out) { linear_field(g, u, out); };
}

State as_state(const VertexFunction& f) { return State(f.values().begin(), f.values().end()); }

}  // namespace

FlowTrace heat_trace(const Graph& g, const VertexFunction& f, const std::vector<double>& grid,
                     const SolverConfig& cfg) {
  require_domain(g, f);
  return integrate(linear_of(g), as_state(f), grid, cfg).trace;
}

VertexFunction heat_semigroup(const Graph& g, const VertexFunction& f, double t,
                              const SolverConfig& cfg) {
  require_domain(g, f);
  if (!(t >= 0.0)) throw Error("time must be nonnegative");
  if (t == 0.0) return f;
  return heat_trace(g, f, {0.0, t}, cfg).states.back();
}

FlowTrace flow_trace(const Graph& g, const VertexFunction& u0, const std::vector<double>& grid,
                     const SolverConfig& cfg) {
  require_domain(g, u0);
  return integrate(nonlinear_of(g), as_state(u0), grid, cfg).trace;
}

FlowOutcome nonlinear_flow(const Graph& g, const VertexFunction& u0, double t,
                           const SolverConfig& cfg) {
  require_domain(g, u0);
  if (!(t >= 0.0)) throw Error("time must be nonnegative");
  if (t == 0.0) return {{FlowStatus::Kind::kCompleted, 0.0}, 0.0, u0};
  Integration run = integrate(nonlinear_of(g), as_state(u0), {0.0, t}, cfg);
  return {run.trace.status, run.last_time, VertexFunction(std::move(run.last_state))};
}

std::string trace_to_json_lines(const Graph& g, const FlowTrace& trace) {
  std::ostringstream out;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    nlohmann::ordered_json line;
    line["t"] = trace.times[i];
    nlohmann::ordered_json u = nlohmann::ordered_json::object();
    for (Vertex x = 0; x < g.size(); ++x) u[g.id(x)] = trace.states[i][x];
    line["u"] = std::move(u);
    out << line.dump() << '\n';
  }
  nlohmann::ordered_json status;
  status["status"] = trace.status.to_string();
  status["time"] = trace.status.time;
  out << status.dump() << '\n';
  return out.str();
}

std::string trace_to_csv(const Graph& g, const FlowTrace& trace) {
  std::ostringstream out;
  out.precision(17);
  out << "t";
  for (const auto& id : g.vertex_ids()) out << ',' << id;
  out << '\n';
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    out << trace.times[i];
    for (Vertex x = 0; x < g.size(); ++x) out << ',' << trace.states[i][x];
    out << '\n';
  }
  return out.str();
}

}  // namespace curvflow
