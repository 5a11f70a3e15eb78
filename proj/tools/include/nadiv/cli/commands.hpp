#pragma once

#include "nadiv/algebra.hpp"
#include "nadiv/division.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nadiv::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitViolation = 2 };

/// Closed-form division verdict recognized from an algebra's provenance.
struct ClosedForm {
  std::string criterion;
  bool verdict = false;
  std::vector<std::pair<std::string, double>> inputs;
};

/// Matches table1/4/5/7, osborn4 and mut(gcd(mut(H,l),-1,a,b,d,-b),m)
/// (with either mutation optional) against the provenance string.
std::optional<ClosedForm> closed_form_for(const Algebra& A);

/// Orthonormal basis x1..x7 of the octonion vectors used by auttest:
/// sums and differences of e1,e2 / e3,e4 / e6,e7, with e5 kept.
std::vector<Vec> rotated_octonion_basis();

/// Seed from NADIV_SEED when set, otherwise the library default.
std::uint64_t default_seed();

/// Entry point of the nadiv executable; JSON report on `out`, summary on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nadiv::cli
