#pragma once

// Independent reference computations. Nothing here calls into the library:
// relations are written out term by term and sums are brute-forced, so an
// error in the library's tables or series code cannot hide in both places.

#include <cmath>
#include <functional>
#include <map>
#include <string>

#include <gmpxx.h>

namespace oracle {

using Q = mpq_class;
using Fn = std::function<Q(const Q&)>;

inline Q D(const Fn& f, const Q& x, const Q& y) {
  return 3 * f(x + 3 * y) - f(3 * x + y) - 12 * (f(x + y) + f(x - y)) + 16 * (f(x) + f(y)) - 12 * f(2 * y) +
         4 * f(2 * x);
}

inline Q additive_relation(const Fn& f, const Q& x, const Q& y) {
  return 3 * f(x + 3 * y) - f(3 * x + y) - 12 * (f(x + y) + f(x - y)) + 24 * f(x) - 8 * f(y);
}

inline Q cubic_relation(const Fn& f, const Q& x, const Q& y) {
  return 3 * f(x + 3 * y) - f(3 * x + y) - 12 * (f(x + y) + f(x - y)) + 48 * f(x) - 80 * f(y);
}

inline Q double_arg(const Fn& f, const Q& x) { return f(4 * x) - 10 * f(2 * x) + 16 * f(x); }

/// LHS - RHS of each step of the additivity derivation, typed in from the
/// printed equations.
inline std::map<std::string, Q> chain(const Fn& f, const Q& x, const Q& y) {
  std::map<std::string, Q> r;
  r["2.5"] = 24 * f(x) - 12 * (f(x + y) + f(x - y));
  r["2.8"] = 3 * f(x + 3 * y) - f(3 * x + y) - 8 * f(y);
  r["2.9"] = f(3 * x) - 3 * f(x);
  r["2.10"] = f(-x) + f(x);
  r["2.11"] = f(2 * x) - 2 * f(x);
  r["2.12"] = 3 * f(4 * x + 2 * y) - f(4 * x - 2 * y) - (24 * (f(x) - f(y)) - 24 * f(x - y) + 8 * f(x + y));
  r["2.13"] = f(2 * x + y) + f(2 * x - y) - (12 * f(x) - 4 * f(x + y) - 4 * f(x - y));
  r["2.14"] = f(x - y) + f(x + y) - (6 * f(x) - 2 * f(x - 2 * y) - 2 * f(x + 2 * y));
  r["2.15"] = -f(x - y) + f(x + y) - (6 * f(y) + 2 * f(2 * x - y) - 2 * f(2 * x + y));
  r["2.16"] = 2 * f(2 * x - y) - (2 * f(2 * x + y) - 6 * f(y) - f(x - y) + f(x + y));
  r["2.17"] = 4 * f(2 * x + y) - (-9 * f(x + y) - 7 * f(x - y) + 24 * f(x) + 6 * f(y));
  r["2.18"] = 7 * f(2 * x - y) - (-4 * f(x + y) - 6 * f(x - y) - 9 * f(y) + 24 * f(x));
  r["2.19"] = f(2 * x + y) + f(2 * x - y) -
              (Q(-79, 28) * f(x + y) - Q(73, 28) * f(x - y) + Q(6, 28) * f(y) + Q(264, 28) * f(x));
  r["2.20"] = -11 * f(x + y) - 13 * f(x - y) - (2 * f(y) - 24 * f(x));
  r["2.21"] = f(4 * x + y) + f(4 * x - y) - (-24 * f(x) + 16 * f(x + y) + 16 * f(x - y));
  r["2.22"] = f(4 * x + y) - f(y) - (12 * f(x) - 4 * f(3 * x + y) + 4 * f(x + y));
  r["2.23"] = f(4 * x + y) + f(4 * x - y) - (24 * f(x) - 4 * (f(3 * x + y) + f(3 * x - y)) + 4 * (f(x + y) + f(x - y)));
  r["2.24"] = f(3 * x + y) + f(x - y) - (12 * f(x) - 4 * f(2 * x + y) + 4 * f(y));
  r["2.25"] = f(3 * x + y) + f(3 * x - y) - (-24 * f(x) + 15 * f(x + y) + 15 * f(x - y));
  r["2.26"] = f(4 * x + y) + f(4 * x - y) - (120 * f(x) - 56 * f(x + y) - 56 * f(x - y));
  r["2.27"] = f(x - y) - (2 * f(x) - f(x + y));
  return r;
}

/// scale * sum_{i >= first} w^{il} phi_diag(|x| / 2^{l(i+l)}) summed term by
/// term in long double until terms stop mattering.
inline long double brute_series(const std::function<long double(long double)>& phi_diag, long double norm_x,
                                int w, int l, int first, long double scale, int max_terms = 4000) {
  long double sum = 0.0L;
  for (int i = first; i < first + max_terms; ++i) {
    const long double weight = std::pow(static_cast<long double>(w), static_cast<long double>(i * l));
    const long double z = norm_x * std::pow(2.0L, -static_cast<long double>(l * (i + l)));
    const long double term = weight * phi_diag(z);
    sum += term;
    if (term == 0.0L || term < sum * 1e-22L) break;
  }
  return scale * sum;
}

/// theta/6 [1/|2^p - 2| + 1/|2^p - 8|] n^p
inline long double corollary_sum(long double theta, long double p, long double n) {
  const long double t = std::pow(2.0L, p);
  return theta / 6 * (1 / std::fabs(t - 2) + 1 / std::fabs(t - 8)) * (p == 0 ? 1.0L : std::pow(n, p));
}

}  // namespace oracle
