#pragma once

#include "nadiv/algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nadiv {

/// Two-sided unit found by least squares on L_e = R_e = I, if any.
std::optional<Element> find_unit(const Algebra& A);

/// Orthonormal basis (as matrix columns) of the subalgebra generated by S.
Mat generated_subalgebra(const Algebra& A, const std::vector<Element>& S);

/// Orthonormal basis of the smallest subspace containing the columns of
/// `basis` that is closed under the maps in `ops`.
Mat invariant_closure(const Mat& basis, const std::vector<Mat>& ops, double rank_tol);

/// Numerical rank-revealing orthonormal basis of the column span of M.
Mat orthonormal_span(const Mat& M, double rank_tol);

/// True when U_x computed in the symmetrized algebra A^+ is invertible.
bool j_invertible(const Algebra& A, const Element& x);

/// Presentation A = R1 + V with xy = (x,y)1 + x^y for x, y in V.
struct QuadraticStructure {
  int vdim = 0;
  /// Bilinear form (x,y) on V; symmetric for flexible algebras.
  Mat form;
  /// wedge(i,j,k): coefficient of v_k in v_i ^ v_j.
  Tensor3 wedge;
  /// Columns: the unit, then v_1..v_vdim, in the source algebra's coordinates.
  Mat embedding;
  std::vector<std::string> vlabels;

  Mat symmetric_form() const { return 0.5 * (form + form.transpose()); }
};

/// Fits x^2 = t(x) x - n(x) 1 and returns (V, (.,.), ^). Throws when A is
/// not unital or the quadratic relation fails on the seeded samples.
QuadraticStructure extract_quadratic_structure(const Algebra& A, std::uint64_t seed = kDefaultSeed);

/// True when extract_quadratic_structure succeeds.
bool is_quadratic(const Algebra& A);

/// Symmetric bilinear form (a+x | b+y) = ab + sym(x,y) of a quadratic
/// algebra, as a Gram matrix in A's own coordinates.
Mat trace_form(const Algebra& A);

/// Linear form t with x^2 - t(x) x in R1 (as a row vector in A's coordinates).
Vec trace_functional(const Algebra& A);

}  // namespace nadiv
