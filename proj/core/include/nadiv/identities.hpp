#pragma once

#include "nadiv/algebra.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nadiv {

enum class Identity {
  associative,
  commutative,
  anticommutative,
  flexible,
  alternative,
  jordan,
  nc_jordan,
  power_associative,
  weakly_alternative,
  moufang_left,
  moufang_right,
  moufang_middle,
};

/// All identities in declaration order.
const std::vector<Identity>& all_identities();
std::string_view identity_name(Identity id);
/// Throws AlgebraError for unknown names.
Identity parse_identity(std::string_view name);

/// True for identities linear in each argument; those are decided
/// exactly on basis tuples.
bool is_multilinear(Identity id);

struct IdentityResult {
  Identity identity;
  bool holds = true;
  /// Largest relative residual seen over all tested tuples.
  double max_residual = 0.0;
  /// A tuple violating the identity when holds is false.
  std::vector<Element> witness;
  /// Residual of the identity at the witness (absolute norm).
  double witness_residual = 0.0;
};

inline constexpr int kDefaultIdentitySamples = 200;

/// Checks an identity on all basis tuples and, for identities that are
/// not multilinear, on `samples` seeded random unit tuples as well.
IdentityResult check_identity(const Algebra& A, Identity which, int samples = kDefaultIdentitySamples,
                              std::uint64_t seed = kDefaultSeed);

/// Residual vector of an identity at a concrete tuple (missing trailing
/// arguments are ignored). Returned together with the magnitude of the
/// terms, which scales the tolerance.
struct IdentityEval {
  Vec residual;
  double magnitude;
};
IdentityEval evaluate_identity(const Algebra& A, Identity which, const std::vector<Element>& args);

/// Number of arguments the identity takes.
int identity_arity(Identity id);

}  // namespace nadiv
