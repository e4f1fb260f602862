#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "acstab/bounds.hpp"
#include "acstab/chain.hpp"
#include "acstab/control.hpp"
#include "acstab/hyers.hpp"
#include "acstab/model.hpp"

namespace acstab {

using Json = nlohmann::ordered_json;

/// Version stamped into every JSON document and CSV file the harness writes.
inline constexpr int kSchemaVersion = 1;

/// %.17g text; non-finite values as "inf", "-inf", "nan".
std::string format_double(double value);
/// Finite doubles as JSON numbers, others as the strings of format_double.
Json number_json(double value);
double number_from_json(const Json& j);

/// Strings are parsed exactly ("1/3", "1e-3"); JSON integers are exact;
/// other JSON numbers take the exact value of the parsed double.
Rational rational_from_json(const Json& j);
Json rational_json(const Rational& value);

/// Exact scalars as canonical "p/q" strings, float scalars as numbers.
Json scalar_json(const Scalar& s);
Json point_json(const Point& p);
/// Coordinates as doubles in either mode.
Json doubles_json(const Point& p);
/// Accepts an array of d coordinates, or a bare coordinate when d = 1.
Point point_from_json(const Json& j, std::size_t d, ScalarMode mode, NormKind norm);

Json atom_json(const Atom& atom);
Atom atom_from_json(const Json& j, std::size_t d, std::size_t m);
/// {"atoms": [...]}
Json model_json(const FuncModel& f);
FuncModel model_from_json(const Json& j, std::size_t d, std::size_t m);

Json phi_json(const ControlFunction& phi);
ControlFunction phi_from_json(const Json& j);

Json catalogue_json(const std::vector<ChainIdentity>& catalogue);
std::vector<ChainIdentity> catalogue_from_json(const Json& j);

Json series_json(const SeriesResult& s);
Json trace_json(const IterationTrace& t);
Json recovery_json(const RecoveryReport& report);

/// Header plus one row per point; the layout is documented in docs/formats.md.
void write_recovery_csv(std::ostream& out, const RecoveryReport& report);

/// Looks up a required member, throwing parse_error with `where` on absence.
const Json& require(const Json& j, const char* key, const std::string& where);

}  // namespace acstab
