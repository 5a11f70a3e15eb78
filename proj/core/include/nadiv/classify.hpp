#pragma once

#include "nadiv/algebra.hpp"
#include "nadiv/constructions.hpp"
#include "nadiv/division.hpp"
#include "nadiv/identities.hpp"
#include "nadiv/lie.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nadiv {

struct InvariantOptions {
  /// Isotopy matrix phi when A = O(phi); enables the spectrum invariant.
  std::optional<Mat> isotopy_phi;
  ZeroDivisorOptions division;
  std::uint64_t seed = kDefaultSeed;
};

/// Isomorphism invariants computed for compare().
struct InvariantVector {
  int dim = 0;
  bool unital = false;
  /// One flag per identity, in all_identities() order.
  std::vector<bool> identities;
  DivisionVerdict::Status division = DivisionVerdict::Status::indeterminate;
  int der_dim = 0;
  std::string der_label;
  /// Irreducible Der(A)-module dimensions; empty when Der(A) = 0.
  std::vector<int> module_dims;
  /// |2 lambda - 1| for 4-dimensional flexible quadratic division algebras.
  std::optional<double> mutation_param;
  /// Sorted eigenvalues of s in the polar factorization phi = s r.
  std::optional<std::vector<double>> isotopy_spectrum;
};

InvariantVector invariants(const Algebra& A, const InvariantOptions& opts = {});

/// phi = s r with s = (phi phi^T)^{1/2} symmetric positive definite and r orthogonal.
struct PolarFactors {
  Mat s;
  Mat r;
};
PolarFactors polar_canonicalize(const Mat& phi);

struct CompareResult {
  bool distinguished = false;
  /// Name of the first invariant that differs.
  std::string reason;
  InvariantVector a;
  InvariantVector b;
};

/// Invariant-based comparison. A compatible result does not prove an
/// isomorphism; use verify_iso_witness for that.
CompareResult compare(const Algebra& A, const Algebra& B, const InvariantOptions& opts_a = {},
                      const InvariantOptions& opts_b = {});

/// True when F is an algebra isomorphism A -> B that, for quadratic
/// algebras, also carries the trace form of B back to that of A.
bool verify_iso_witness(const Algebra& A, const Algebra& B, const LinearMap& F);

struct CanonicalReduction {
  Table1Params params;
  /// Columns: 1, u, y1, z1, y2, z2, y3, z3 in A's coordinates.
  Mat basis;
  /// Max entrywise difference between table1(params) and A in that basis.
  double residual = 0.0;
  /// |u ^ y1| at the chosen frame (the maximized value).
  double sup_value = 0.0;
};

inline constexpr double kCanonicalTolerance = 1e-6;

/// Brings an 8-dimensional noncommutative Jordan division algebra to the
/// 16-parameter normal form. Throws when preconditions fail or no frame
/// reproduces A within kCanonicalTolerance.
CanonicalReduction canonical_table1_reduction(const Algebra& A, std::uint64_t seed = kDefaultSeed,
                                              bool check_division = true);

}  // namespace nadiv
