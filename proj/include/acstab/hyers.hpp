#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "acstab/bounds.hpp"
#include "acstab/control.hpp"
#include "acstab/model.hpp"

namespace acstab {

/// H(x) = f(2x) - 8 f(x): kills cubic content, maps additive a to -6a.
Evaluable h_transform(const Evaluable& f);
/// G(x) = f(2x) - 2 f(x): kills additive content, maps cubic c to 6c.
Evaluable g_transform(const Evaluable& f);

struct IterationOptions {
  int n_max = 48;
  double tol_abs = 1e-12;
  double tol_rel = 1e-10;
  /// Consecutive gaps that must meet the tolerance.
  int confirm_steps = 3;
  bool stop_on_convergence = true;
  /// Any intermediate evaluation with a larger norm aborts the trace.
  double overflow_limit = 0x1p500;
};

struct IterationTrace {
  std::vector<Point> values;        // values[n], n = 0..N
  std::vector<double> cauchy_gaps;  // |values[n+1] - values[n]|
  bool converged = false;
  /// values.back() when converged; otherwise the iterate right after the
  /// smallest gap, which is the better estimate once float rounding
  /// overtakes the contraction.
  Point final;

  int iterations() const { return static_cast<int>(values.size()) - 1; }
};

/// values[n] = 2^{ln} [f(x / 2^{l(n-l)}) - 8 f(x / 2^{ln})] = 2^{ln} H(x / 2^{ln}).
IterationTrace additive_iterate(const Evaluable& f, const Point& x, Direction l,
                                const IterationOptions& options = {});
/// values[n] = 8^{ln} [f(x / 2^{l(n-l)}) - 2 f(x / 2^{ln})] = 8^{ln} G(x / 2^{ln}).
IterationTrace cubic_iterate(const Evaluable& f, const Point& x, Direction l,
                             const IterationOptions& options = {});

struct RecoveryOptions {
  IterationOptions iteration;
  SeriesOptions series;
  /// nullopt selects the direction from phi (see auto_direction).
  std::optional<Direction> additive_direction;
  std::optional<Direction> cubic_direction;
  std::size_t threads = 1;
};

struct PointRecovery {
  Point x;
  Point additive;  // A(x) = -A_0(x) / 6
  Point cubic;     // C(x) = C_0(x) / 6
  double error = 0.0;      // |f_odd(x) - A(x) - C(x)|
  double raw_error = 0.0;  // |f(x) - A(x) - C(x)|
  double bound = 0.0;      // certified upper value of the combined series
  double additive_error = 0.0;  // |H(x) - A_0(x)|
  double additive_bound = 0.0;
  double cubic_error = 0.0;  // |G(x) - C_0(x)|
  double cubic_bound = 0.0;
  SeriesStatus bound_status = SeriesStatus::converged;
  IterationTrace additive_trace;
  IterationTrace cubic_trace;

  bool within_bound() const {
    return error <= bound && additive_error <= additive_bound && cubic_error <= cubic_bound;
  }
};

struct RecoveryReport {
  ControlFunction phi;
  Direction direction_additive;
  Direction direction_cubic;
  std::vector<PointRecovery> points;  // input order

  std::size_t violations() const;
  bool all_within_bound() const { return violations() == 0; }
  bool all_converged() const;
  double max_error() const;
};

/// Symmetrizes f, runs both iterations per point and certifies each error
/// against the stability series. Throws divergent_series when a component's
/// series cannot converge for the chosen direction.
RecoveryReport recover(const Evaluable& f, std::span<const Point> points, const ControlFunction& phi,
                       const RecoveryOptions& options = {});

struct UniquenessProbe {
  double distance = 0.0;    // |final(n1) - final(n2)|
  double tail_bound = 0.0;  // uniqueness tail at min(n1, n2)
  bool within_tail() const { return distance <= tail_bound; }
};

/// Runs one component of the odd part of f for max(n1, n2) steps without
/// early stopping and compares the two iterates.
UniquenessProbe uniqueness_probe(const Evaluable& f, const Point& x, const ControlFunction& phi,
                                 Direction l, Component component, int n1, int n2,
                                 const IterationOptions& options = {});

}  // namespace acstab
