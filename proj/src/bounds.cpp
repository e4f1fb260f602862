#include "acstab/bounds.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "acstab/errors.hpp"

namespace acstab {

Direction::Direction(int l) : l_(l) {
  if (l != 1 && l != -1) fail(ErrorCode::invalid_argument, "direction must be +1 or -1, got " + std::to_string(l));
}

std::string_view to_string(Component c) { return c == Component::additive ? "additive" : "cubic"; }

int component_weight(Component c) { return c == Component::additive ? 2 : 8; }

std::string_view to_string(SeriesStatus s) {
  switch (s) {
    case SeriesStatus::converged: return "converged";
    case SeriesStatus::diverged: return "diverged";
    case SeriesStatus::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kInf = std::numeric_limits<double>::infinity();

double log2_weight(Component c) { return c == Component::additive ? 1.0 : 3.0; }

double log2_ratio(Component c, const ControlFunction& phi, Direction l) {
  return l.value() * (log2_weight(c) - phi.scaling_exponent());
}

// Neumaier compensated sum.
struct Accumulator {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v))
      compensation += (sum - t) + v;
    else
      compensation += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + compensation; }
};

void check_exponent(double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) fail(ErrorCode::invalid_argument, "exponent must be finite and >= 0");
  if (p == 1.0 || p == 3.0)
    fail(ErrorCode::excluded_exponent,
         "the closed form requires p != 1, 3 (got p = " + std::to_string(p) + ")");
}

double power(double base, double exponent) { return exponent == 0.0 ? 1.0 : std::pow(base, exponent); }

// 1/|2^p - 2| + 1/|2^p - 8|, with expm1 keeping p near 1 or 3 accurate.
double corollary_bracket(double p) {
  const double a = 2.0 * std::fabs(std::expm1((p - 1.0) * kLn2));
  const double b = 8.0 * std::fabs(std::expm1((p - 3.0) * kLn2));
  return 1.0 / a + 1.0 / b;
}

}  // namespace

double term_ratio(Component c, const ControlFunction& phi, Direction l) {
  return std::exp2(log2_ratio(c, phi, l));
}

bool is_admissible(Component c, const ControlFunction& phi, Direction l, const SeriesOptions& options) {
  return term_ratio(c, phi, l) < 1.0 - options.divergence_margin;
}

SeriesResult weighted_series(Component c, const ControlFunction& phi, double norm_x, Direction l,
                             int first_index, double scale, const SeriesOptions& options) {
  if (!(options.tol > 0.0)) fail(ErrorCode::invalid_argument, "series tolerance must be > 0");
  if (!(scale >= 0.0) || !std::isfinite(scale)) fail(ErrorCode::invalid_argument, "series scale must be >= 0");
  if (!(norm_x >= 0.0) || !std::isfinite(norm_x)) fail(ErrorCode::invalid_argument, "norm must be finite and >= 0");

  const int lv = l.value();
  const double lw = log2_weight(c);
  const double log2_norm = norm_x == 0.0 ? -kInf : std::log2(norm_x);
  const double log2_scale = scale == 0.0 ? -kInf : std::log2(scale);
  const double lr = log2_ratio(c, phi, l);
  const double ratio = std::exp2(lr);
  const bool contracting = ratio < 1.0 - options.divergence_margin;

  // term_i = scale * 2^{lw * i * l} * phi(z_i, z_i),  |z_i| = |x| 2^{-l(i+l)}.
  // Returns the term and a bound on its relative rounding error.
  auto term = [&](int i) -> std::pair<double, double> {
    const double weight_log = lw * i * lv;
    const double phi_log = phi.log2_diagonal(log2_norm - lv * (i + lv));
    const double total = log2_scale + weight_log + phi_log;
    if (total == -kInf) return {0.0, 0.0};
    const double magnitude = std::fabs(log2_scale) + std::fabs(weight_log) + std::fabs(phi_log) + 8.0;
    return {std::exp2(total), magnitude * DBL_EPSILON * kLn2 * 2.0};
  };

  SeriesResult result;
  Accumulator acc;
  double rounding = 0.0;
  int i = first_index;

  if (!contracting) {
    for (int k = 0; k < options.divergence_window; ++k, ++i) {
      const auto [t, rel] = term(i);
      acc.add(t);
      rounding += t * rel;
    }
    result.partial_sum = acc.value();
    result.tail_bound = kInf;
    result.terms_used = options.divergence_window;
    result.status = SeriesStatus::diverged;
    return result;
  }

  const double one_minus_ratio = -std::expm1(lr * kLn2);
  result.status = SeriesStatus::inconclusive;
  for (int k = 0; k < options.max_terms; ++k, ++i) {
    const auto [t, rel] = term(i);
    acc.add(t);
    rounding += t * rel;
    result.terms_used = k + 1;

    const double sum = acc.value();
    const double slack = rounding + 2.0 * DBL_EPSILON * std::fabs(sum);
    const double geometric = t * ratio / one_minus_ratio * (1.0 + rel + 8.0 * DBL_EPSILON);
    result.partial_sum = sum - slack;
    result.tail_bound = geometric + 2.0 * slack;
    if (result.tail_bound <= options.tol * std::max(1.0, sum)) {
      result.status = SeriesStatus::converged;
      break;
    }
  }
  if (result.partial_sum < 0.0) {
    result.tail_bound += result.partial_sum;
    result.partial_sum = 0.0;
  }
  return result;
}

namespace {

SeriesResult component_bound(Component c, const ControlFunction& phi, double norm_x, Direction l,
                             const SeriesOptions& options) {
  const int first = l.value() == -1 ? 1 : 0;  // |l - 1| / 2
  return weighted_series(c, phi, norm_x, l, first, 0.5, options);
}

SeriesStatus worst(SeriesStatus a, SeriesStatus b) {
  if (a == SeriesStatus::diverged || b == SeriesStatus::diverged) return SeriesStatus::diverged;
  if (a == SeriesStatus::inconclusive || b == SeriesStatus::inconclusive) return SeriesStatus::inconclusive;
  return SeriesStatus::converged;
}

SeriesResult combine_sixths(const SeriesResult& a, const SeriesResult& c) {
  SeriesResult r;
  r.partial_sum = (a.partial_sum + c.partial_sum) / 6.0;
  r.tail_bound = (a.tail_bound + c.tail_bound) / 6.0;
  r.tail_bound += 4.0 * DBL_EPSILON * (r.partial_sum + r.tail_bound);
  r.terms_used = a.terms_used + c.terms_used;
  r.status = worst(a.status, c.status);
  return r;
}

}  // namespace

SeriesResult series_bound(SeriesKind kind, const ControlFunction& phi, const Point& x, Direction l,
                          double tol) {
  SeriesOptions options;
  options.tol = tol;
  return series_bound(kind, phi, x.norm(), l, options);
}

SeriesResult series_bound(SeriesKind kind, const ControlFunction& phi, double norm_x, Direction l,
                          const SeriesOptions& options) {
  switch (kind) {
    case SeriesKind::additive: return component_bound(Component::additive, phi, norm_x, l, options);
    case SeriesKind::cubic: return component_bound(Component::cubic, phi, norm_x, l, options);
    case SeriesKind::combined: return combined_series_bound(phi, norm_x, l, l, options);
  }
  fail(ErrorCode::invalid_argument, "unknown series kind");
}

SeriesResult combined_series_bound(const ControlFunction& phi, double norm_x, Direction l_additive,
                                   Direction l_cubic, const SeriesOptions& options) {
  return combine_sixths(component_bound(Component::additive, phi, norm_x, l_additive, options),
                        component_bound(Component::cubic, phi, norm_x, l_cubic, options));
}

SeriesResult uniqueness_tail(Component c, const ControlFunction& phi, double norm_x, Direction l, int n,
                             const SeriesOptions& options) {
  if (n < 0) fail(ErrorCode::invalid_argument, "uniqueness tail index must be >= 0");
  const int first = n + (l.value() == -1 ? 1 : 0);
  return weighted_series(c, phi, norm_x, l, first, 1.0, options);
}

double corollary_sum_bound(double theta, double p, double norm_x) {
  check_exponent(p);
  if (!(theta >= 0.0) || !std::isfinite(theta)) fail(ErrorCode::invalid_argument, "theta must be finite and >= 0");
  if (!(norm_x >= 0.0)) fail(ErrorCode::invalid_argument, "norm must be >= 0");
  return theta / 6.0 * corollary_bracket(p) * power(norm_x, p);
}

double corollary_sum_bound(double theta, double p, const Point& x) {
  return corollary_sum_bound(theta, p, x.norm());
}

double corollary_product_bound(double theta, double r, double s, double norm_x) {
  if (!(r >= 0.0) || !(s >= 0.0)) fail(ErrorCode::invalid_argument, "r and s must be >= 0");
  const double p = r + s;
  check_exponent(p);
  if (!(theta >= 0.0) || !std::isfinite(theta)) fail(ErrorCode::invalid_argument, "theta must be finite and >= 0");
  if (!(norm_x >= 0.0)) fail(ErrorCode::invalid_argument, "norm must be >= 0");
  return theta / 12.0 * corollary_bracket(p) * power(norm_x, p);
}

double corollary_product_bound(double theta, double r, double s, const Point& x) {
  return corollary_product_bound(theta, r, s, x.norm());
}

ControlFunction certify_phi(const FuncModel& f) {
  double bounded = 0.0;
  std::map<double, double> powered;  // exponent -> summed amplitude
  for (const auto& atom : f.atoms()) {
    if (std::holds_alternative<EvenAtom>(atom))
      fail(ErrorCode::no_certified_envelope, "even atoms are not perturbations of a solution");
    if (auto b = std::get_if<BoundedNoiseAtom>(&atom)) bounded += b->epsilon.get_d();
    if (auto p = std::get_if<PowerNoiseAtom>(&atom)) {
      if (p->exponent == 0.0)
        bounded += p->epsilon.get_d();
      else if (sgn(p->epsilon) != 0)
        powered[p->exponent] += p->epsilon.get_d();
    }
  }
  // get_d truncates, so nudge upward to keep the envelope an upper bound.
  auto up = [](double v) { return std::nextafter(std::nextafter(v, kInf), kInf); };
  if (powered.empty()) return ConstantPhi{bounded == 0.0 ? 0.0 : up(kDifferenceOperatorWeight * bounded)};
  if (powered.size() > 1 || bounded > 0.0)
    fail(ErrorCode::no_certified_envelope, "noise atoms with different exponents have no single envelope");
  const auto [p, eps] = *powered.begin();
  return SumOfPowersPhi{up(kDifferenceOperatorWeight * std::pow(4.0, p) * eps), p};
}

Direction auto_direction(const ControlFunction& phi, Component c) {
  const double threshold = c == Component::additive ? 1.0 : 3.0;
  return phi.scaling_exponent() > threshold ? Direction::shrinking() : Direction::growing();
}

namespace {

ConsistencyReport compare(const ControlFunction& phi, double closed_form, double norm_x, double tol) {
  ConsistencyReport report;
  report.closed_form = closed_form;
  report.additive_direction = auto_direction(phi, Component::additive);
  report.cubic_direction = auto_direction(phi, Component::cubic);
  SeriesOptions options;
  options.tol = 1e-13;
  report.additive = series_bound(SeriesKind::additive, phi, norm_x, report.additive_direction, options);
  report.cubic = series_bound(SeriesKind::cubic, phi, norm_x, report.cubic_direction, options);
  const SeriesResult combined = combine_sixths(report.additive, report.cubic);
  report.series_value = combined.upper();
  report.difference = std::fabs(report.series_value - closed_form);
  report.passed = combined.status == SeriesStatus::converged && report.difference <= tol;
  return report;
}

}  // namespace

ConsistencyReport consistency_check(double theta, double p, const Point& x, double tol) {
  return consistency_check(theta, p, x.norm(), tol);
}

ConsistencyReport consistency_check(double theta, double p, double norm_x, double tol) {
  const double closed = corollary_sum_bound(theta, p, norm_x);
  return compare(SumOfPowersPhi{theta, p}, closed, norm_x, tol);
}

ConsistencyReport consistency_check_product(double theta, double r, double s, double norm_x, double tol) {
  const double closed = corollary_product_bound(theta, r, s, norm_x);
  return compare(ProductOfPowersPhi{theta, r, s}, closed, norm_x, tol);
}

}  // namespace acstab
