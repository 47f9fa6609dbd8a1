#pragma once

#include <istream>
#include <string>
#include <vector>

#include "liesys/algebra.hpp"

namespace liesys {

struct AlgebraEntry {
  std::string key;
  StructureConstants constants;
  std::string notes;
  /// Preferred Wei-Norman factorization order (zero-based basis indices).
  std::vector<int> default_order;
};

/// Compiled-in algebras:
///   h3            [a1,a2]=a3 (Brockett / hopping robot sign)
///   h3-classical  [a1,a2]=-a3 (classical linear potential)
///   h3-ext4       [a1,a2]=a3, [a2,a3]=a4 (quantum linear potential)
///   se2, sl2, g5 = R^2 x| sl(2,R), hsp2 = h(3) x| sl(2,R),
///   g_eps(1), g_eps(0), g_eps(-1), r2 (abelian).
const std::vector<AlgebraEntry>& builtin_algebras();

/// Builtin lookup; throws UnknownKey listing the valid keys.
const AlgebraEntry& find_algebra(const std::string& key);

/// Registry key of the signature algebra g_eps.
std::string g_eps_key(int eps);

/// Parses algebra definition records:
///
///     # comment
///     name  my-algebra
///     dim   3
///     order 1 2 3          (optional)
///     1 2 3 1.0            alpha beta gamma value, alpha < beta, one-based
///
/// A `name` line starts a new record. Duplicate (alpha, beta, gamma)
/// triples within a record are rejected.
std::vector<AlgebraEntry> parse_algebra_definitions(std::istream& in);

/// Inverse of parse_algebra_definitions (nonzero entries with alpha < beta).
std::string format_algebra_definition(const AlgebraEntry& entry);

}  // namespace liesys
