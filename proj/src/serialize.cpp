#include "acstab/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <type_traits>

#include "acstab/errors.hpp"

namespace acstab {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Json number_json(double value) {
  if (std::isfinite(value)) return value;
  return format_double(value);
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
    return parse_rational(s).get_d();
  }
  fail(ErrorCode::parse_error, "expected a number, got " + j.dump());
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_unsigned()) return Rational(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Rational(std::to_string(j.get<std::int64_t>()));
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(ErrorCode::parse_error, "non-finite rational");
    return rational_from_double(v);
  }
  fail(ErrorCode::parse_error, "expected a rational (string or number), got " + j.dump());
}

Json rational_json(const Rational& value) { return rational_to_string(value); }

Json scalar_json(const Scalar& s) {
  if (s.is_exact()) return rational_to_string(s.rational());
  return number_json(s.floating());
}

Json point_json(const Point& p) {
  Json out = Json::array();
  for (const auto& c : p.coords()) out.push_back(scalar_json(c));
  return out;
}

Json doubles_json(const Point& p) {
  Json out = Json::array();
  for (const auto& c : p.coords()) out.push_back(number_json(c.to_double()));
  return out;
}

Point point_from_json(const Json& j, std::size_t d, ScalarMode mode, NormKind norm) {
  std::vector<Scalar> coords;
  auto push = [&](const Json& c) {
    if (mode == ScalarMode::exact) {
      coords.push_back(Scalar(rational_from_json(c)));
    } else if (c.is_string()) {
      coords.push_back(Scalar(parse_rational(c.get<std::string>()).get_d()));
    } else {
      coords.push_back(Scalar(number_from_json(c)));
    }
  };
  if (j.is_array()) {
    for (const auto& c : j) push(c);
  } else {
    push(j);
  }
  if (coords.size() != d)
    fail(ErrorCode::dimension_mismatch,
         "point " + j.dump() + " has " + std::to_string(coords.size()) + " coordinates, expected " +
             std::to_string(d));
  return Point(std::move(coords), norm);
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(ErrorCode::parse_error, where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(ErrorCode::parse_error, where + ": missing \"" + key + "\"");
  return *it;
}

namespace {

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(rational_json(v));
    out.push_back(std::move(r));
  }
  return out;
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array() || j.size() != rows)
    fail(ErrorCode::dimension_mismatch, where + ": expected " + std::to_string(rows) + " rows");
  Matrix out;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols)
      fail(ErrorCode::dimension_mismatch, where + ": expected rows of length " + std::to_string(cols));
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(rational_from_json(v));
    out.push_back(std::move(r));
  }
  return out;
}

Tensor3 zero_tensor(std::size_t d) {
  return Tensor3(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d, Rational(0))));
}

Matrix zero_matrix(std::size_t d) { return Matrix(d, std::vector<Rational>(d, Rational(0))); }

std::size_t index_in(const Json& j, std::size_t bound, const std::string& where) {
  const auto v = j.get<std::int64_t>();
  if (v < 0 || static_cast<std::size_t>(v) >= bound)
    fail(ErrorCode::dimension_mismatch, where + ": index " + std::to_string(v) + " out of range");
  return static_cast<std::size_t>(v);
}

std::uint64_t seed_from_json(const Json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  fail(ErrorCode::parse_error, "seed must be a nonnegative integer, got " + j.dump());
}

Rational nonnegative(const Json& j, const std::string& where) {
  Rational r = rational_from_json(j);
  if (sgn(r) < 0) fail(ErrorCode::invalid_argument, where + " must be >= 0");
  return r;
}

}  // namespace

Json atom_json(const Atom& atom) {
  return std::visit(
      [](const auto& a) -> Json {
        using T = std::decay_t<decltype(a)>;
        Json out;
        if constexpr (std::is_same_v<T, LinearAtom>) {
          out["kind"] = "linear";
          out["matrix"] = matrix_json(a.matrix);
        } else if constexpr (std::is_same_v<T, CubicAtom>) {
          out["kind"] = "cubic";
          Json ts = Json::array();
          for (const auto& t : a.tensors) {
            Json slab = Json::array();
            for (const auto& m : t) slab.push_back(matrix_json(m));
            ts.push_back(std::move(slab));
          }
          out["tensors"] = std::move(ts);
        } else if constexpr (std::is_same_v<T, EvenAtom>) {
          out["kind"] = "even";
          Json fs = Json::array();
          for (const auto& q : a.forms) fs.push_back(matrix_json(q));
          out["forms"] = std::move(fs);
        } else if constexpr (std::is_same_v<T, BoundedNoiseAtom>) {
          out["kind"] = "bounded_noise";
          out["seed"] = a.seed;
          out["epsilon"] = rational_json(a.epsilon);
        } else {
          out["kind"] = "power_noise";
          out["seed"] = a.seed;
          out["epsilon"] = rational_json(a.epsilon);
          out["exponent"] = a.exponent;
        }
        return out;
      },
      atom);
}

Atom atom_from_json(const Json& j, std::size_t d, std::size_t m) {
  const std::string kind = require(j, "kind", "atom").get<std::string>();
  const std::string where = "atom '" + kind + "'";
  if (kind == "linear") return LinearAtom{matrix_from_json(require(j, "matrix", where), m, d, where)};

  if (kind == "cubic") {
    CubicAtom atom;
    if (j.contains("tensors")) {
      const auto& ts = j.at("tensors");
      if (!ts.is_array() || ts.size() != m)
        fail(ErrorCode::dimension_mismatch, where + ": expected " + std::to_string(m) + " tensors");
      for (const auto& t : ts) {
        if (!t.is_array() || t.size() != d)
          fail(ErrorCode::dimension_mismatch, where + ": tensor slabs must number " + std::to_string(d));
        Tensor3 tensor;
        for (const auto& slab : t) tensor.push_back(matrix_from_json(slab, d, d, where));
        atom.tensors.push_back(std::move(tensor));
      }
    } else {
      atom.tensors.assign(m, zero_tensor(d));
      for (const auto& term : require(j, "terms", where)) {
        const auto k = index_in(term.value("output", Json(0)), m, where);
        const auto& idx = require(term, "indices", where);
        if (!idx.is_array() || idx.size() != 3) fail(ErrorCode::parse_error, where + ": terms need 3 indices");
        atom.tensors[k][index_in(idx[0], d, where)][index_in(idx[1], d, where)][index_in(idx[2], d, where)] +=
            rational_from_json(require(term, "coefficient", where));
      }
    }
    return atom;
  }

  if (kind == "even") {
    EvenAtom atom;
    if (j.contains("forms")) {
      const auto& fs = j.at("forms");
      if (!fs.is_array() || fs.size() != m)
        fail(ErrorCode::dimension_mismatch, where + ": expected " + std::to_string(m) + " forms");
      for (const auto& q : fs) atom.forms.push_back(matrix_from_json(q, d, d, where));
    } else {
      atom.forms.assign(m, zero_matrix(d));
      for (const auto& term : require(j, "terms", where)) {
        const auto k = index_in(term.value("output", Json(0)), m, where);
        const auto& idx = require(term, "indices", where);
        if (!idx.is_array() || idx.size() != 2) fail(ErrorCode::parse_error, where + ": terms need 2 indices");
        atom.forms[k][index_in(idx[0], d, where)][index_in(idx[1], d, where)] +=
            rational_from_json(require(term, "coefficient", where));
      }
    }
    return atom;
  }

  if (kind == "bounded_noise")
    return BoundedNoiseAtom{seed_from_json(require(j, "seed", where)),
                            nonnegative(require(j, "epsilon", where), where + " epsilon")};
  if (kind == "power_noise") {
    const double p = number_from_json(require(j, "exponent", where));
    if (!(p >= 0.0) || !std::isfinite(p)) fail(ErrorCode::invalid_argument, where + ": exponent must be >= 0");
    return PowerNoiseAtom{seed_from_json(require(j, "seed", where)),
                          nonnegative(require(j, "epsilon", where), where + " epsilon"), p};
  }
  fail(ErrorCode::parse_error, "unknown atom kind '" + kind + "'");
}

Json model_json(const FuncModel& f) {
  Json atoms = Json::array();
  for (const auto& a : f.atoms()) atoms.push_back(atom_json(a));
  Json out;
  out["atoms"] = std::move(atoms);
  return out;
}

FuncModel model_from_json(const Json& j, std::size_t d, std::size_t m) {
  std::vector<Atom> atoms;
  for (const auto& a : require(j, "atoms", "model")) atoms.push_back(atom_from_json(a, d, m));
  return FuncModel(d, m, std::move(atoms));
}

Json phi_json(const ControlFunction& phi) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        Json out;
        if constexpr (std::is_same_v<T, ConstantPhi>) {
          out["kind"] = "constant";
          out["c"] = number_json(v.c);
        } else if constexpr (std::is_same_v<T, SumOfPowersPhi>) {
          out["kind"] = "sum_of_powers";
          out["theta"] = number_json(v.theta);
          out["p"] = number_json(v.p);
        } else {
          out["kind"] = "product_of_powers";
          out["theta"] = number_json(v.theta);
          out["r"] = number_json(v.r);
          out["s"] = number_json(v.s);
        }
        return out;
      },
      phi.variant());
}

ControlFunction phi_from_json(const Json& j) {
  const std::string kind = require(j, "kind", "phi").get<std::string>();
  auto num = [&](const char* key) { return number_from_json(require(j, key, "phi '" + kind + "'")); };
  if (kind == "constant") return ConstantPhi{num("c")};
  if (kind == "sum_of_powers") return SumOfPowersPhi{num("theta"), num("p")};
  if (kind == "product_of_powers") return ProductOfPowersPhi{num("theta"), num("r"), num("s")};
  fail(ErrorCode::parse_error, "unknown phi kind '" + kind + "'");
}

namespace {

Json terms_json(const std::vector<RelationTerm>& terms) {
  Json out = Json::array();
  for (const auto& t : terms) {
    Json row;
    row["coefficient"] = rational_json(t.coefficient);
    row["x"] = t.x_coeff;
    row["y"] = t.y_coeff;
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<RelationTerm> terms_from_json(const Json& j, const std::string& where) {
  std::vector<RelationTerm> out;
  for (const auto& row : j)
    out.push_back({rational_from_json(require(row, "coefficient", where)),
                   require(row, "x", where).get<std::int64_t>(), require(row, "y", where).get<std::int64_t>()});
  return out;
}

}  // namespace

Json catalogue_json(const std::vector<ChainIdentity>& catalogue) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["catalogue_version"] = kChainCatalogueVersion;
  Json ids = Json::array();
  for (const auto& c : catalogue) {
    Json row;
    row["id"] = c.id;
    row["lhs"] = terms_json(c.lhs);
    row["rhs"] = terms_json(c.rhs);
    ids.push_back(std::move(row));
  }
  out["identities"] = std::move(ids);
  return out;
}

std::vector<ChainIdentity> catalogue_from_json(const Json& j) {
  std::vector<ChainIdentity> out;
  for (const auto& row : require(j, "identities", "catalogue")) {
    const std::string id = require(row, "id", "catalogue identity").get<std::string>();
    const std::string where = "catalogue identity " + id;
    out.push_back({id, terms_from_json(require(row, "lhs", where), where),
                   terms_from_json(require(row, "rhs", where), where)});
  }
  return out;
}

Json series_json(const SeriesResult& s) {
  Json out;
  out["partial_sum"] = number_json(s.partial_sum);
  out["tail_bound"] = number_json(s.tail_bound);
  out["upper"] = number_json(s.upper());
  out["terms_used"] = s.terms_used;
  out["status"] = std::string(to_string(s.status));
  return out;
}

Json trace_json(const IterationTrace& t) {
  Json out;
  out["iterations"] = t.iterations();
  out["converged"] = t.converged;
  out["final"] = point_json(t.final);
  Json gaps = Json::array();
  for (double g : t.cauchy_gaps) gaps.push_back(number_json(g));
  out["cauchy_gaps"] = std::move(gaps);
  return out;
}

Json recovery_json(const RecoveryReport& report) {
  Json out;
  out["phi"] = phi_json(report.phi);
  out["direction_additive"] = report.direction_additive.value();
  out["direction_cubic"] = report.direction_cubic.value();
  out["point_count"] = report.points.size();
  out["violations"] = report.violations();
  out["all_converged"] = report.all_converged();
  out["max_error"] = number_json(report.max_error());
  Json pts = Json::array();
  for (const auto& p : report.points) {
    Json row;
    // Doubles match the CSV columns; exact runs also carry the rationals.
    row["x"] = doubles_json(p.x);
    row["additive"] = doubles_json(p.additive);
    row["cubic"] = doubles_json(p.cubic);
    if (p.x.mode() == ScalarMode::exact) {
      row["x_exact"] = point_json(p.x);
      row["additive_exact"] = point_json(p.additive);
      row["cubic_exact"] = point_json(p.cubic);
    }
    row["error"] = number_json(p.error);
    row["raw_error"] = number_json(p.raw_error);
    row["bound"] = number_json(p.bound);
    row["additive_error"] = number_json(p.additive_error);
    row["additive_bound"] = number_json(p.additive_bound);
    row["cubic_error"] = number_json(p.cubic_error);
    row["cubic_bound"] = number_json(p.cubic_bound);
    row["bound_status"] = std::string(to_string(p.bound_status));
    row["within_bound"] = p.within_bound();
    row["additive_trace"] = trace_json(p.additive_trace);
    row["cubic_trace"] = trace_json(p.cubic_trace);
    pts.push_back(std::move(row));
  }
  out["points"] = std::move(pts);
  return out;
}

void write_recovery_csv(std::ostream& out, const RecoveryReport& report) {
  const std::size_t d = report.points.empty() ? 0 : report.points.front().x.dim();
  const std::size_t m = report.points.empty() ? 0 : report.points.front().additive.dim();
  out << "schema_version";
  for (std::size_t i = 0; i < d; ++i) out << ",x_" << i;
  for (std::size_t k = 0; k < m; ++k) out << ",additive_" << k;
  for (std::size_t k = 0; k < m; ++k) out << ",cubic_" << k;
  out << ",error,raw_error,bound,additive_error,additive_bound,cubic_error,cubic_bound,"
         "bound_status,additive_converged,cubic_converged,additive_iterations,cubic_iterations,"
         "within_bound\n";
  for (const auto& p : report.points) {
    out << kSchemaVersion;
    for (const auto& c : p.x.coords()) out << ',' << format_double(c.to_double());
    for (const auto& c : p.additive.coords()) out << ',' << format_double(c.to_double());
    for (const auto& c : p.cubic.coords()) out << ',' << format_double(c.to_double());
    for (double v : {p.error, p.raw_error, p.bound, p.additive_error, p.additive_bound, p.cubic_error,
                     p.cubic_bound})
      out << ',' << format_double(v);
    out << ',' << to_string(p.bound_status) << ',' << int(p.additive_trace.converged) << ','
        << int(p.cubic_trace.converged) << ',' << p.additive_trace.iterations() << ','
        << p.cubic_trace.iterations() << ',' << int(p.within_bound()) << '\n';
  }
}

}  // namespace acstab
