#include "acstab/hyers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "acstab/errors.hpp"

namespace acstab {

Evaluable h_transform(const Evaluable& f) {
  return Evaluable(f.domain_dim(), f.codomain_dim(),
                   [f](const Point& x) { return f(x.ldexp(1)) - f(x).scaled(8); });
}

Evaluable g_transform(const Evaluable& f) {
  return Evaluable(f.domain_dim(), f.codomain_dim(),
                   [f](const Point& x) { return f(x.ldexp(1)) - f(x).scaled(2); });
}

namespace {

IterationTrace iterate(const Evaluable& f, const Point& x, Direction l, Component c,
                       const IterationOptions& opt) {
  if (opt.n_max < 1) fail(ErrorCode::invalid_argument, "iteration count must be at least 1");
  if (opt.confirm_steps < 1) fail(ErrorCode::invalid_argument, "confirm_steps must be at least 1");
  const int lv = l.value();
  const int weight_bits = c == Component::additive ? 1 : 3;
  const std::int64_t multiplier = c == Component::additive ? 8 : 2;

  auto guarded = [&](const Point& z) {
    Point v = f(z);
    const double n = v.norm();
    if (!(n <= opt.overflow_limit))
      fail(ErrorCode::overflow_guard, std::string(to_string(c)) +
                                          " iteration exceeded the overflow limit at |x| = " +
                                          std::to_string(z.norm()));
    return v;
  };

  IterationTrace trace;
  trace.values.reserve(static_cast<std::size_t>(opt.n_max) + 1);
  int satisfied_run = 0;
  for (int n = 0; n <= opt.n_max; ++n) {
    const Point z = x.ldexp(-lv * n);
    Point t = guarded(z.ldexp(1)) - guarded(z).scaled(multiplier);
    trace.values.push_back(t.ldexp(weight_bits * lv * n));
    if (n == 0) continue;
    const Point& cur = trace.values.back();
    const double gap = (cur - trace.values[trace.values.size() - 2]).norm();
    trace.cauchy_gaps.push_back(gap);
    const bool ok = gap <= std::max(opt.tol_abs, opt.tol_rel * cur.norm());
    satisfied_run = ok ? satisfied_run + 1 : 0;
    if (satisfied_run >= opt.confirm_steps && opt.stop_on_convergence) break;
  }

  trace.converged = satisfied_run >= opt.confirm_steps;
  if (trace.converged) {
    trace.final = trace.values.back();
  } else {
    const auto best = std::min_element(trace.cauchy_gaps.begin(), trace.cauchy_gaps.end());
    trace.final = trace.values[static_cast<std::size_t>(best - trace.cauchy_gaps.begin()) + 1];
  }
  return trace;
}

double distance(const Point& a, const Point& b) { return (a - b).norm(); }

SeriesStatus worse(SeriesStatus a, SeriesStatus b) {
  auto rank = [](SeriesStatus s) {
    return s == SeriesStatus::converged ? 0 : s == SeriesStatus::inconclusive ? 1 : 2;
  };
  return rank(a) >= rank(b) ? a : b;
}

}  // namespace

IterationTrace additive_iterate(const Evaluable& f, const Point& x, Direction l,
                                const IterationOptions& options) {
  return iterate(f, x, l, Component::additive, options);
}

IterationTrace cubic_iterate(const Evaluable& f, const Point& x, Direction l,
                             const IterationOptions& options) {
  return iterate(f, x, l, Component::cubic, options);
}

std::size_t RecoveryReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const PointRecovery& p) { return !p.within_bound(); }));
}

bool RecoveryReport::all_converged() const {
  return std::all_of(points.begin(), points.end(), [](const PointRecovery& p) {
    return p.additive_trace.converged && p.cubic_trace.converged;
  });
}

double RecoveryReport::max_error() const {
  double out = 0.0;
  for (const auto& p : points) out = std::max(out, p.error);
  return out;
}

RecoveryReport recover(const Evaluable& f, std::span<const Point> points, const ControlFunction& phi,
                       const RecoveryOptions& options) {
  const Direction la = options.additive_direction.value_or(auto_direction(phi, Component::additive));
  const Direction lc = options.cubic_direction.value_or(auto_direction(phi, Component::cubic));
  for (auto [c, l] : {std::pair{Component::additive, la}, std::pair{Component::cubic, lc}}) {
    if (!is_admissible(c, phi, l, options.series))
      fail(ErrorCode::divergent_series,
           std::string(to_string(c)) + " stability series diverges for l = " + std::to_string(l.value()) +
               " (control exponent " + std::to_string(phi.scaling_exponent()) + ")");
  }

  const Evaluable odd = odd_part(f);
  const Evaluable h = h_transform(odd);
  const Evaluable g = g_transform(odd);

  auto one = [&](const Point& x) {
    PointRecovery r;
    r.x = x;
    r.additive_trace = additive_iterate(odd, x, la, options.iteration);
    r.cubic_trace = cubic_iterate(odd, x, lc, options.iteration);
    const auto mode = x.mode();
    const Scalar sixth = Scalar::from_integer(1, mode) / Scalar::from_integer(6, mode);
    r.additive = r.additive_trace.final.scaled(-sixth);
    r.cubic = r.cubic_trace.final.scaled(sixth);

    const Point recovered = r.additive + r.cubic;
    r.error = distance(odd(x), recovered);
    r.raw_error = distance(f(x), recovered);
    r.additive_error = distance(h(x), r.additive_trace.final);
    r.cubic_error = distance(g(x), r.cubic_trace.final);

    const double nx = x.norm();
    const SeriesResult sa = series_bound(SeriesKind::additive, phi, nx, la, options.series);
    const SeriesResult sc = series_bound(SeriesKind::cubic, phi, nx, lc, options.series);
    const SeriesResult combined = combined_series_bound(phi, nx, la, lc, options.series);
    r.additive_bound = sa.upper();
    r.cubic_bound = sc.upper();
    r.bound = combined.upper();
    r.bound_status = worse(worse(sa.status, sc.status), combined.status);
    return r;
  };

  RecoveryReport report{phi, la, lc, {}};
  report.points.resize(points.size());
  const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(points.size(), 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < points.size(); ++i) report.points[i] = one(points[i]);
    return report;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::size_t first_error_index = points.size();
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < points.size(); i = next++) {
        try {
          report.points[i] = one(points[i]);
        } catch (...) {
          // Keep the error of the lowest index so failures are reproducible.
          std::lock_guard lock(error_mutex);
          if (i < first_error_index) {
            first_error_index = i;
            first_error = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return report;
}

UniquenessProbe uniqueness_probe(const Evaluable& f, const Point& x, const ControlFunction& phi, Direction l,
                                 Component component, int n1, int n2, const IterationOptions& options) {
  if (n1 == n2) fail(ErrorCode::invalid_argument, "uniqueness probe needs two distinct step counts");
  if (std::min(n1, n2) < 1) fail(ErrorCode::invalid_argument, "uniqueness probe step counts must be >= 1");
  IterationOptions opt = options;
  opt.n_max = std::max(n1, n2);
  opt.stop_on_convergence = false;
  const Evaluable odd = odd_part(f);
  const IterationTrace trace = component == Component::additive ? additive_iterate(odd, x, l, opt)
                                                                 : cubic_iterate(odd, x, l, opt);
  UniquenessProbe probe;
  probe.distance = distance(trace.values[static_cast<std::size_t>(n1)], trace.values[static_cast<std::size_t>(n2)]);
  probe.tail_bound = uniqueness_tail(component, phi, x.norm(), l, std::min(n1, n2)).upper();
  return probe;
}

}  // namespace acstab
