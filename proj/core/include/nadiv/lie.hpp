#pragma once

#include "nadiv/algebra.hpp"

#include <array>
#include <string>
#include <vector>

namespace nadiv {

enum class LieLabel { zero, abelian, su2, su2_plus_su2, su2_plus_abelian1, su3, g2_compact, other };

struct DerivationAlgebra {
  int dim = 0;
  /// Frobenius-orthonormal basis of Der(A).
  std::vector<LinearMap> basis;
  /// [D_i, D_j] = sum_k bracket(i,j,k) D_k.
  Tensor3 bracket;
  LieLabel label = LieLabel::zero;
  /// Human-readable label ("abelian_2", "su2", ...).
  std::string label_text = "zero";
  /// Smallest singular value kept and largest treated as zero in the
  /// Leibniz system; their ratio is the rank gap.
  double kept_singular = 0.0;
  double dropped_singular = 0.0;
  /// Largest bracket-closure residual.
  double closure_residual = 0.0;
};

inline constexpr double kDerivationRankTol = 1e-7;

/// Nullspace of the Leibniz system D(e_i e_j) = D(e_i) e_j + e_i D(e_j).
DerivationAlgebra derivation_basis(const Algebra& A, double rank_tol = kDerivationRankTol);

/// Label from (dim, derived dim, Killing signature); throws when the
/// bracket does not close.
LieLabel classify_lie(const DerivationAlgebra& D);
std::string lie_label_text(LieLabel label, int dim);

/// Max over basis pairs of |D(e_i e_j) - D(e_i) e_j - e_i D(e_j)|.
double derivation_residual(const Algebra& A, const LinearMap& D);
/// Max over basis pairs of |F(e_i e_j) - F(e_i) F(e_j)|, products taken in A and B.
double homomorphism_residual(const Algebra& A, const Algebra& B, const LinearMap& F);

bool is_derivation(const Algebra& A, const LinearMap& D);
bool is_automorphism(const Algebra& A, const LinearMap& F);
bool is_isomorphism(const Algebra& A, const Algebra& B, const LinearMap& F);

/// (x,y) -> (Dx, Dy); D must commute with the conjugation of B.
LinearMap natural_extension_derivation(const Algebra& B, const LinearMap& D);
/// (x,y) -> (f(x), f(y)); f must commute with the conjugation of B.
LinearMap natural_extension_automorphism(const Algebra& B, const LinearMap& f);

/// Sorted dimensions of a decomposition of A into irreducible
/// Der(A)-submodules. Throws when Der(A) = 0.
std::vector<int> der_module_decomposition(const Algebra& A, const DerivationAlgebra& D,
                                          std::uint64_t seed = kDefaultSeed);

/// Identity on span(B), minus identity on its orthogonal complement for
/// the trace form. Throws unless span(B) is a 4-dimensional subalgebra
/// containing 1 and the square of its complement.
LinearMap reflection_from_subalgebra(const Algebra& A, const std::vector<Element>& B_basis);

struct QuaternionStabilizerReport {
  bool stabilized = false;
  int triples_checked = 0;
  /// Index triples whose span is closed under the cross product.
  std::vector<std::array<int, 3>> closed_triples;
  /// Smallest closure residual over all triples.
  double min_residual = 0.0;
};

/// Whether some three eigenvectors of a symmetric map s on the vectors of
/// O span a cross-product-closed subspace (equivalently, s~ stabilizes a
/// quaternion subalgebra). Requires a simple spectrum.
QuaternionStabilizerReport stabilized_quaternion_test(const std::vector<Vec>& eigvecs,
                                                      const std::vector<double>& eigvals);

struct HomothetyReport {
  double lambda = 1.0;
  /// min over unit x of |L_x^2 - (tr L_x^2 / n) I| / |L_x^2| in A^(lambda).
  double residual = 0.0;
  Element best;
};

/// Heuristic search for a vector whose squared left multiplication in the
/// mutation A^(lambda) is a homothety. A small residual suggests (but does
/// not prove) that A^(lambda) arises from a doubling.
HomothetyReport homothety_residual(const Algebra& A, double lambda, int samples = 2000,
                                   std::uint64_t seed = kDefaultSeed);

}  // namespace nadiv
