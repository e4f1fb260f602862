#include "acstab/chain.hpp"

#include <string_view>

#include "acstab/errors.hpp"

namespace acstab {

namespace {

// {coefficient, x multiplier, y multiplier}. Coefficient text is written as
// printed (6/28, not 3/14) so the table diffs cleanly against the source.
struct Row {
  std::string_view coefficient;
  int x;
  int y;
};

std::vector<RelationTerm> build(std::initializer_list<Row> rows) {
  std::vector<RelationTerm> out;
  for (const auto& r : rows) out.push_back({parse_rational(r.coefficient), r.x, r.y});
  return out;
}

std::vector<ChainIdentity> build_catalogue() {
  std::vector<ChainIdentity> c;
  // 24f(x) = 12[f(x+y) + f(x-y)]
  c.push_back({"2.5", build({{"24", 1, 0}}), build({{"12", 1, 1}, {"12", 1, -1}})});
  // 3f(x+3y) - f(3x+y) = 8f(y)
  c.push_back({"2.8", build({{"3", 1, 3}, {"-1", 3, 1}}), build({{"8", 0, 1}})});
  // f(3x) = 3f(x)
  c.push_back({"2.9", build({{"1", 3, 0}}), build({{"3", 1, 0}})});
  // f(-x) = -f(x)
  c.push_back({"2.10", build({{"1", -1, 0}}), build({{"-1", 1, 0}})});
  // f(2x) = 2f(x)
  c.push_back({"2.11", build({{"1", 2, 0}}), build({{"2", 1, 0}})});
  // 3f(4x+2y) - f(4x-2y) = 24[f(x) - f(y)] - 24f(x-y) + 8f(x+y)
  c.push_back({"2.12", build({{"3", 4, 2}, {"-1", 4, -2}}),
               build({{"24", 1, 0}, {"-24", 0, 1}, {"-24", 1, -1}, {"8", 1, 1}})});
  // f(2x+y) + f(2x-y) = 12f(x) - 4f(x+y) - 4f(x-y)
  c.push_back({"2.13", build({{"1", 2, 1}, {"1", 2, -1}}),
               build({{"12", 1, 0}, {"-4", 1, 1}, {"-4", 1, -1}})});
  // f(x-y) + f(x+y) = 6f(x) - 2f(x-2y) - 2f(x+2y)
  c.push_back({"2.14", build({{"1", 1, -1}, {"1", 1, 1}}),
               build({{"6", 1, 0}, {"-2", 1, -2}, {"-2", 1, 2}})});
  // -f(x-y) + f(x+y) = 6f(y) + 2f(2x-y) - 2f(2x+y)
  c.push_back({"2.15", build({{"-1", 1, -1}, {"1", 1, 1}}),
               build({{"6", 0, 1}, {"2", 2, -1}, {"-2", 2, 1}})});
  // 2f(2x-y) = 2f(2x+y) - 6f(y) - f(x-y) + f(x+y)
  c.push_back({"2.16", build({{"2", 2, -1}}),
               build({{"2", 2, 1}, {"-6", 0, 1}, {"-1", 1, -1}, {"1", 1, 1}})});
  // 4f(2x+y) = -9f(x+y) - 7f(x-y) + 24f(x) + 6f(y)
  c.push_back({"2.17", build({{"4", 2, 1}}),
               build({{"-9", 1, 1}, {"-7", 1, -1}, {"24", 1, 0}, {"6", 0, 1}})});
  // 7f(2x-y) = -4f(x+y) - 6f(x-y) - 9f(y) + 24f(x)
  c.push_back({"2.18", build({{"7", 2, -1}}),
               build({{"-4", 1, 1}, {"-6", 1, -1}, {"-9", 0, 1}, {"24", 1, 0}})});
  // f(2x+y) + f(2x-y) = -79/28 f(x+y) - 73/28 f(x-y) + 6/28 f(y) + 264/28 f(x)
  c.push_back({"2.19", build({{"1", 2, 1}, {"1", 2, -1}}),
               build({{"-79/28", 1, 1}, {"-73/28", 1, -1}, {"6/28", 0, 1}, {"264/28", 1, 0}})});
  // -11f(x+y) - 13f(x-y) = 2f(y) - 24f(x)
  c.push_back({"2.20", build({{"-11", 1, 1}, {"-13", 1, -1}}), build({{"2", 0, 1}, {"-24", 1, 0}})});
  // f(4x+y) + f(4x-y) = -24f(x) + 16f(x+y) + 16f(x-y)
  c.push_back({"2.21", build({{"1", 4, 1}, {"1", 4, -1}}),
               build({{"-24", 1, 0}, {"16", 1, 1}, {"16", 1, -1}})});
  // f(4x+y) - f(y) = 12f(x) - 4f(3x+y) + 4f(x+y)
  c.push_back({"2.22", build({{"1", 4, 1}, {"-1", 0, 1}}),
               build({{"12", 1, 0}, {"-4", 3, 1}, {"4", 1, 1}})});
  // f(4x+y) + f(4x-y) = 24f(x) - 4[f(3x+y) + f(3x-y)] + 4[f(x+y) + f(x-y)]
  c.push_back({"2.23", build({{"1", 4, 1}, {"1", 4, -1}}),
               build({{"24", 1, 0}, {"-4", 3, 1}, {"-4", 3, -1}, {"4", 1, 1}, {"4", 1, -1}})});
  // f(3x+y) + f(x-y) = 12f(x) - 4f(2x+y) + 4f(y)
  c.push_back({"2.24", build({{"1", 3, 1}, {"1", 1, -1}}),
               build({{"12", 1, 0}, {"-4", 2, 1}, {"4", 0, 1}})});
  // f(3x+y) + f(3x-y) = -24f(x) + 15f(x+y) + 15f(x-y)
  c.push_back({"2.25", build({{"1", 3, 1}, {"1", 3, -1}}),
               build({{"-24", 1, 0}, {"15", 1, 1}, {"15", 1, -1}})});
  // f(4x+y) + f(4x-y) = 120f(x) - 56f(x+y) - 56f(x-y)
  c.push_back({"2.26", build({{"1", 4, 1}, {"1", 4, -1}}),
               build({{"120", 1, 0}, {"-56", 1, 1}, {"-56", 1, -1}})});
  // f(x-y) = 2f(x) - f(x+y)
  c.push_back({"2.27", build({{"1", 1, -1}}), build({{"2", 1, 0}, {"-1", 1, 1}})});
  return c;
}

}  // namespace

std::vector<RelationTerm> ChainIdentity::moved_to_one_side() const {
  std::vector<RelationTerm> out = lhs;
  for (const auto& t : rhs) out.push_back({Rational(-t.coefficient), t.x_coeff, t.y_coeff});
  return out;
}

const std::vector<ChainIdentity>& chain_catalogue() {
  static const std::vector<ChainIdentity> catalogue = build_catalogue();
  return catalogue;
}

std::vector<ChainResidual> chain_replay(const Evaluable& f, const Point& x, const Point& y) {
  return chain_replay(chain_catalogue(), f, x, y);
}

std::vector<ChainResidual> chain_replay(const std::vector<ChainIdentity>& catalogue,
                                        const Evaluable& f, const Point& x, const Point& y) {
  if (x.mode() != ScalarMode::exact || y.mode() != ScalarMode::exact)
    fail(ErrorCode::mode_mismatch, "chain replay is an exactness check and requires exact mode");
  std::vector<ChainResidual> out;
  out.reserve(catalogue.size());
  for (const auto& identity : catalogue) {
    const auto terms = identity.moved_to_one_side();
    out.push_back({identity.id, relation_residual(f, terms, x, y)});
  }
  return out;
}

}  // namespace acstab
