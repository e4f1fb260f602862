#pragma once

#include <string>
#include <vector>

#include "acstab/operator.hpp"

namespace acstab {

/// One printed step of the additivity derivation, LHS = RHS, as data.
struct ChainIdentity {
  std::string id;  // equation label, e.g. "2.19"
  std::vector<RelationTerm> lhs;
  std::vector<RelationTerm> rhs;

  /// lhs followed by the negated rhs.
  std::vector<RelationTerm> moved_to_one_side() const;
};

inline constexpr int kChainCatalogueVersion = 1;

/// The 21 identities 2.5, 2.8, 2.9, ..., 2.27 in order, coefficients as printed.
const std::vector<ChainIdentity>& chain_catalogue();

struct ChainResidual {
  std::string id;
  ResidualVector residual;
};

/// Exact residual LHS - RHS of every identity at (x, y). Rejects float mode.
std::vector<ChainResidual> chain_replay(const Evaluable& f, const Point& x, const Point& y);
std::vector<ChainResidual> chain_replay(const std::vector<ChainIdentity>& catalogue,
                                        const Evaluable& f, const Point& x, const Point& y);

}  // namespace acstab
