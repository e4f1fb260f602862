#include "acstab/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <type_traits>

#include "acstab/errors.hpp"

namespace acstab {

namespace {

struct CubicTerm {
  std::array<std::size_t, 3> index;  // i <= j <= l
  Rational coefficient;
  double coefficient_d;
};

struct QuadraticTerm {
  std::array<std::size_t, 2> index;  // i <= j
  Rational coefficient;
  double coefficient_d;
};

struct NoiseTerm {
  std::uint64_t seed;
  Rational epsilon;
  double exponent;
};

void check_matrix(const Matrix& m, std::size_t rows, std::size_t cols, const char* what) {
  if (m.size() != rows)
    fail(ErrorCode::dimension_mismatch, std::string(what) + ": expected " + std::to_string(rows) +
                                            " rows, got " + std::to_string(m.size()));
  for (const auto& row : m)
    if (row.size() != cols)
      fail(ErrorCode::dimension_mismatch, std::string(what) + ": expected " + std::to_string(cols) +
                                              " columns, got " + std::to_string(row.size()));
}

void check_tensor(const Tensor3& t, std::size_t d) {
  if (t.size() != d) fail(ErrorCode::dimension_mismatch, "cubic tensor: wrong outer size");
  for (const auto& slab : t) check_matrix(slab, d, d, "cubic tensor slab");
}

Tensor3 symmetrize(const Tensor3& t) {
  const std::size_t d = t.size();
  Tensor3 s(d, Matrix(d, std::vector<Rational>(d)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) {
        Rational sum = t[i][j][l] + t[i][l][j] + t[j][i][l] + t[j][l][i] + t[l][i][j] + t[l][j][i];
        s[i][j][l] = sum / 6;
      }
  return s;
}

Matrix symmetrize(const Matrix& q) {
  const std::size_t d = q.size();
  Matrix s(d, std::vector<Rational>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) s[i][j] = (q[i][j] + q[j][i]) / 2;
  return s;
}

}  // namespace

struct FuncModel::Compiled {
  std::size_t d = 0;
  std::size_t m = 0;
  bool has_linear = false;
  Matrix linear;
  std::vector<std::vector<double>> linear_d;
  std::vector<std::vector<CubicTerm>> cubic;          // per output
  std::vector<std::vector<QuadraticTerm>> quadratic;  // per output
  std::vector<NoiseTerm> noise;

  Point evaluate(const Point& x) const;
};

Point FuncModel::Compiled::evaluate(const Point& x) const {
  const ScalarMode mode = x.mode();
  std::vector<Scalar> out;
  out.reserve(m);
  if (mode == ScalarMode::exact) {
    std::vector<Rational> xs(d);
    for (std::size_t i = 0; i < d; ++i) xs[i] = x[i].rational();
    for (std::size_t k = 0; k < m; ++k) {
      Rational acc = 0;
      if (has_linear)
        for (std::size_t j = 0; j < d; ++j)
          if (sgn(linear[k][j]) != 0) acc += linear[k][j] * xs[j];
      for (const auto& t : cubic[k]) acc += t.coefficient * xs[t.index[0]] * xs[t.index[1]] * xs[t.index[2]];
      for (const auto& t : quadratic[k]) acc += t.coefficient * xs[t.index[0]] * xs[t.index[1]];
      out.emplace_back(std::move(acc));
    }
  } else {
    std::vector<double> xs(d);
    for (std::size_t i = 0; i < d; ++i) xs[i] = x[i].floating();
    for (std::size_t k = 0; k < m; ++k) {
      double acc = 0.0;
      if (has_linear)
        for (std::size_t j = 0; j < d; ++j) acc += linear_d[k][j] * xs[j];
      for (const auto& t : cubic[k]) acc += t.coefficient_d * xs[t.index[0]] * xs[t.index[1]] * xs[t.index[2]];
      for (const auto& t : quadratic[k]) acc += t.coefficient_d * xs[t.index[0]] * xs[t.index[1]];
      out.emplace_back(acc);
    }
  }
  Point result(std::move(out), x.norm_kind());
  for (const auto& n : noise) result += noise_eval(n.seed, x, n.epsilon, n.exponent, m);
  return result;
}

FuncModel::FuncModel(std::size_t domain_dim, std::size_t codomain_dim, std::vector<Atom> atoms)
    : domain_dim_(domain_dim), codomain_dim_(codomain_dim), atoms_(std::move(atoms)) {
  if (domain_dim_ == 0 || codomain_dim_ == 0)
    fail(ErrorCode::dimension_mismatch, "model dimensions must be >= 1");
  const std::size_t d = domain_dim_;
  const std::size_t m = codomain_dim_;

  auto c = std::make_shared<Compiled>();
  c->d = d;
  c->m = m;
  c->linear.assign(m, std::vector<Rational>(d));
  std::vector<std::map<std::array<std::size_t, 3>, Rational>> cubic(m);
  std::vector<std::map<std::array<std::size_t, 2>, Rational>> quadratic(m);

  for (auto& atom : atoms_) {
    std::visit(
        [&](auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, LinearAtom>) {
            check_matrix(a.matrix, m, d, "linear atom");
            c->has_linear = true;
            for (std::size_t k = 0; k < m; ++k)
              for (std::size_t j = 0; j < d; ++j) c->linear[k][j] += a.matrix[k][j];
          } else if constexpr (std::is_same_v<T, CubicAtom>) {
            if (a.tensors.size() != m)
              fail(ErrorCode::dimension_mismatch, "cubic atom needs one tensor per output");
            for (auto& t : a.tensors) {
              check_tensor(t, d);
              t = symmetrize(t);
            }
            for (std::size_t k = 0; k < m; ++k) {
              const auto& t = a.tensors[k];
              for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                  for (std::size_t l = 0; l < d; ++l) {
                    std::array<std::size_t, 3> key{i, j, l};
                    std::sort(key.begin(), key.end());
                    cubic[k][key] += t[i][j][l];
                  }
            }
          } else if constexpr (std::is_same_v<T, EvenAtom>) {
            if (a.forms.size() != m)
              fail(ErrorCode::dimension_mismatch, "even atom needs one form per output");
            for (auto& q : a.forms) {
              check_matrix(q, d, d, "even atom form");
              q = symmetrize(q);
            }
            for (std::size_t k = 0; k < m; ++k)
              for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                  quadratic[k][{std::min(i, j), std::max(i, j)}] += a.forms[k][i][j];
          } else if constexpr (std::is_same_v<T, BoundedNoiseAtom>) {
            if (sgn(a.epsilon) < 0) fail(ErrorCode::invalid_argument, "noise amplitude must be >= 0");
            c->noise.push_back({a.seed, a.epsilon, 0.0});
          } else {
            if (sgn(a.epsilon) < 0) fail(ErrorCode::invalid_argument, "noise amplitude must be >= 0");
            if (!(a.exponent >= 0.0) || !std::isfinite(a.exponent))
              fail(ErrorCode::invalid_argument, "noise exponent must be finite and >= 0");
            c->noise.push_back({a.seed, a.epsilon, a.exponent});
          }
        },
        atom);
  }

  c->linear_d.assign(m, std::vector<double>(d));
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < d; ++j) c->linear_d[k][j] = c->linear[k][j].get_d();
  c->cubic.resize(m);
  c->quadratic.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    for (auto& [key, coef] : cubic[k])
      if (sgn(coef) != 0) c->cubic[k].push_back({key, coef, coef.get_d()});
    for (auto& [key, coef] : quadratic[k])
      if (sgn(coef) != 0) c->quadratic[k].push_back({key, coef, coef.get_d()});
  }
  compiled_ = std::move(c);
}

bool FuncModel::has_noise() const { return !compiled_->noise.empty(); }

Point FuncModel::operator()(const Point& x) const {
  if (x.dim() != domain_dim_)
    fail(ErrorCode::dimension_mismatch, "model expects dimension " + std::to_string(domain_dim_) +
                                            ", got " + std::to_string(x.dim()));
  return compiled_->evaluate(x);
}

Point FuncModel::evaluate(const Point& x, ScalarMode mode) const {
  if (x.mode() != mode)
    fail(ErrorCode::mode_mismatch, "point is in " + std::string(to_string(x.mode())) +
                                       " mode but " + std::string(to_string(mode)) + " was requested");
  return (*this)(x);
}

FuncModel FuncModel::plus(const FuncModel& other) const {
  if (other.domain_dim_ != domain_dim_ || other.codomain_dim_ != codomain_dim_)
    fail(ErrorCode::dimension_mismatch, "cannot add models of different shapes");
  std::vector<Atom> atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  return FuncModel(domain_dim_, codomain_dim_, std::move(atoms));
}

Evaluable::Evaluable(std::size_t domain_dim, std::size_t codomain_dim, Fn fn)
    : domain_dim_(domain_dim), codomain_dim_(codomain_dim), fn_(std::move(fn)) {}

Evaluable::Evaluable(const FuncModel& model)
    : domain_dim_(model.domain_dim()),
      codomain_dim_(model.codomain_dim()),
      fn_([model](const Point& x) { return model(x); }) {}

Point Evaluable::operator()(const Point& x) const {
  if (x.dim() != domain_dim_)
    fail(ErrorCode::dimension_mismatch, "function expects dimension " + std::to_string(domain_dim_) +
                                            ", got " + std::to_string(x.dim()));
  return fn_(x);
}

Evaluable odd_part(const Evaluable& f) {
  return Evaluable(f.domain_dim(), f.codomain_dim(), [f](const Point& x) {
    return (f(x) - f(-x)).ldexp(-1);
  });
}

Evaluable linear_combination(const Scalar& alpha, const Evaluable& f, const Scalar& beta,
                             const Evaluable& g) {
  if (f.domain_dim() != g.domain_dim() || f.codomain_dim() != g.codomain_dim())
    fail(ErrorCode::dimension_mismatch, "linear combination of differently shaped functions");
  return Evaluable(f.domain_dim(), f.codomain_dim(), [=](const Point& x) {
    return f(x).scaled(alpha) + g(x).scaled(beta);
  });
}

FuncModel linear_model(Matrix matrix) {
  if (matrix.empty()) fail(ErrorCode::dimension_mismatch, "linear model needs a non-empty matrix");
  const std::size_t m = matrix.size();
  const std::size_t d = matrix.front().size();
  return FuncModel(d, m, {LinearAtom{std::move(matrix)}});
}

FuncModel cubic_model(std::size_t domain_dim, std::vector<Tensor3> tensors) {
  const std::size_t m = tensors.size();
  return FuncModel(domain_dim, m, {CubicAtom{std::move(tensors)}});
}

FuncModel even_model(std::size_t domain_dim, std::vector<Matrix> forms) {
  const std::size_t m = forms.size();
  return FuncModel(domain_dim, m, {EvenAtom{std::move(forms)}});
}

FuncModel scalar_additive_cubic(const Rational& a, const Rational& c) {
  return FuncModel(1, 1, {LinearAtom{{{a}}}, CubicAtom{{Tensor3{{{c}}}}}});
}

}  // namespace acstab
