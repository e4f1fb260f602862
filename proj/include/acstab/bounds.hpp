#pragma once

#include <string_view>

#include "acstab/control.hpp"
#include "acstab/model.hpp"
#include "acstab/point.hpp"

namespace acstab {

/// Iteration sense: +1 rescales arguments by 2^-n (shrinking), -1 by 2^n.
class Direction {
 public:
  explicit Direction(int l);
  static Direction shrinking() { return Direction(1); }
  static Direction growing() { return Direction(-1); }

  int value() const noexcept { return l_; }
  friend bool operator==(Direction, Direction) = default;

 private:
  int l_;
};

enum class Component { additive, cubic };
std::string_view to_string(Component c);

/// Weight base of the series for a component: 2 (additive) or 8 (cubic).
int component_weight(Component c);

enum class SeriesKind { additive, cubic, combined };
enum class SeriesStatus { converged, diverged, inconclusive };
std::string_view to_string(SeriesStatus s);

/// Truncated nonnegative series with a certified remainder: when not
/// diverged, the exact value lies in [partial_sum, partial_sum + tail_bound].
struct SeriesResult {
  double partial_sum = 0.0;
  double tail_bound = 0.0;
  int terms_used = 0;
  SeriesStatus status = SeriesStatus::inconclusive;

  double upper() const { return partial_sum + tail_bound; }
};

struct SeriesOptions {
  double tol = 1e-12;
  int max_terms = 512;
  /// Ratio at or above 1 - divergence_margin counts as non-contracting.
  double divergence_margin = 1e-12;
  int divergence_window = 8;
};

/// Ratio of consecutive terms of the component series for phi and l.
double term_ratio(Component c, const ControlFunction& phi, Direction l);
bool is_admissible(Component c, const ControlFunction& phi, Direction l,
                   const SeriesOptions& options = {});

/// scale * sum_{i >= first_index} w^{il} phi(x / 2^{l(i+l)}, x / 2^{l(i+l)}).
SeriesResult weighted_series(Component c, const ControlFunction& phi, double norm_x, Direction l,
                             int first_index, double scale, const SeriesOptions& options = {});

/// (1/2) sum_{i >= |l-1|/2} w^{il} phi(...) with w = 2 (additive) or 8
/// (cubic); for combined, (1/12) sum (2^{il} + 8^{il}) phi(...).
SeriesResult series_bound(SeriesKind kind, const ControlFunction& phi, const Point& x, Direction l,
                          double tol = 1e-12);
SeriesResult series_bound(SeriesKind kind, const ControlFunction& phi, double norm_x, Direction l,
                          const SeriesOptions& options = {});

/// (1/6) additive(l_additive) + (1/6) cubic(l_cubic); reduces to the
/// combined series when both directions agree.
SeriesResult combined_series_bound(const ControlFunction& phi, double norm_x, Direction l_additive,
                                   Direction l_cubic, const SeriesOptions& options = {});

/// sum_{i >= n + |l-1|/2} w^{il} phi(...): how far two iterates past step n
/// may still differ.
SeriesResult uniqueness_tail(Component c, const ControlFunction& phi, double norm_x, Direction l,
                             int n, const SeriesOptions& options = {});

/// theta/6 [1/|2^p - 2| + 1/|2^p - 8|] |x|^p; rejects p = 1 and p = 3.
double corollary_sum_bound(double theta, double p, double norm_x);
double corollary_sum_bound(double theta, double p, const Point& x);

/// theta/12 [1/|2^p - 2| + 1/|2^p - 8|] |x|^p with p = r + s != 1, 3.
double corollary_product_bound(double theta, double r, double s, double norm_x);
double corollary_product_bound(double theta, double r, double s, const Point& x);

/// Sum of |coefficients| of D_f: 3 + 1 + 12 + 12 + 16 + 16 + 12 + 4.
inline constexpr double kDifferenceOperatorWeight = 76.0;

/// A control function with |D_f(x,y)| <= phi(x,y) for a model made of exact
/// solutions plus noise atoms: Constant(76 eps) for bounded noise,
/// SumOfPowers(76 4^p eps, p) for power noise. Throws no_certified_envelope
/// for even atoms or mixed noise exponents.
ControlFunction certify_phi(const FuncModel& f);

/// Per-component direction for which the series converge: l = +1 when the
/// exponent of phi exceeds 1 (additive) or 3 (cubic), else -1.
Direction auto_direction(const ControlFunction& phi, Component c);

struct ConsistencyReport {
  double closed_form = 0.0;
  double series_value = 0.0;
  double difference = 0.0;
  Direction additive_direction = Direction::growing();
  Direction cubic_direction = Direction::growing();
  SeriesResult additive;
  SeriesResult cubic;
  bool passed = false;
};

/// Closed-form corollary constant against the truncated combined series
/// with per-component directions.
ConsistencyReport consistency_check(double theta, double p, const Point& x, double tol);
ConsistencyReport consistency_check(double theta, double p, double norm_x, double tol);
ConsistencyReport consistency_check_product(double theta, double r, double s, double norm_x,
                                            double tol);

}  // namespace acstab
