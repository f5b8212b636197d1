#pragma once

#include <span>
#include <string>
#include <vector>

#include "curvflow/calculus.hpp"
#include "curvflow/graph.hpp"

namespace curvflow {

/// Step-size control and failure thresholds for the flow integrator.
struct SolverConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double max_step = 0.1;
  double blowup_threshold = 1e8;  ///< sup-norm beyond which the flow counts as blown up
  double min_step = 1e-12;

  /// Throws Error unless every field is positive and min_step < max_step.
  void validate() const;
};

struct FlowStatus {
  enum class Kind { kCompleted, kBlewUp, kStepUnderflow };
  Kind kind = Kind::kCompleted;
  /// Completed: final time. BlewUp: last accepted time whose state stayed
  /// under the threshold (an underestimate of the escape time).
  /// StepUnderflow: time at which the step size fell below min_step.
  double time = 0.0;

  bool completed() const noexcept { return kind == Kind::kCompleted; }
  std::string to_string() const;
};

/// Snapshots of a flow at the requested times. When the flow stops early the
/// trace holds only the grid times reached before the stop.
struct FlowTrace {
  std::vector<double> times;
  std::vector<VertexFunction> states;
  FlowStatus status;
};

/// Result of integrating to a single time. On blow-up, `state` and `time`
/// are the last valid ones.
struct FlowOutcome {
  FlowStatus status;
  double time = 0.0;
  VertexFunction state;

  bool completed() const noexcept { return status.completed(); }
};

/// Right-hand side Δu + Γu of the nonlinear flow, using the closed form of Γ.
void nonlinear_field(const Graph& g, std::span<const double> u, std::span<double> out);
VertexFunction nonlinear_field(const Graph& g, const VertexFunction& u);

/// P_t f. t = 0 returns f unchanged.
VertexFunction heat_semigroup(const Graph& g, const VertexFunction& f, double t,
                              const SolverConfig& cfg = {});
/// P_t f at every grid time (grid increasing, starting at 0).
FlowTrace heat_trace(const Graph& g, const VertexFunction& f, const std::vector<double>& grid,
                     const SolverConfig& cfg = {});

/// L_t u0 for ∂_t u = Δu + Γu.
FlowOutcome nonlinear_flow(const Graph& g, const VertexFunction& u0, double t,
                           const SolverConfig& cfg = {});

/// L_t u0 at each grid time. The grid must be strictly increasing and start
/// at 0; interior times come from the integrator's dense output, the last one
/// is stepped onto exactly.
FlowTrace flow_trace(const Graph& g, const VertexFunction& u0, const std::vector<double>& grid,
                     const SolverConfig& cfg = {});

/// JSON lines {"t": ..., "u": {...}} per snapshot followed by {"status": ...}.
std::string trace_to_json_lines(const Graph& g, const FlowTrace& trace);
/// Header t,<vertex ids...>, one row per snapshot.
std::string trace_to_csv(const Graph& g, const FlowTrace& trace);

}  // namespace curvflow
