#include "nadiv/structure.hpp"

#include "nadiv/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace nadiv {

std::optional<Element> find_unit(const Algebra& A) {
  const int n = A.dim();
  // Unknown e: sum_i e_i c(i,j,k) = delta_jk and sum_i e_i c(j,i,k) = delta_jk.
  Mat M(2 * n * n, n);
  Vec rhs(2 * n * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      int r = j * n + k;
      for (int i = 0; i < n; ++i) {
        M(r, i) = A.c(i, j, k);
        M(n * n + r, i) = A.c(j, i, k);
      }
      rhs[r] = rhs[n * n + r] = (j == k) ? 1.0 : 0.0;
    }
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(M);
  Vec e = cod.solve(rhs);
  double residual = (M * e - rhs).norm();
  if (!std::isfinite(residual) || residual >= A.tol() * n * A.scale()) return std::nullopt;
  return e;
}

Mat orthonormal_span(const Mat& M, double rank_tol) {
  if (M.cols() == 0) return Mat(M.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU);
  const Vec& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return Mat(M.rows(), 0);
  int r = 0;
  while (r < s.size() && s[r] > rank_tol * s[0]) ++r;
  return svd.matrixU().leftCols(r);
}

Mat invariant_closure(const Mat& basis, const std::vector<Mat>& ops, double rank_tol) {
  Mat Q = orthonormal_span(basis, rank_tol);
  while (true) {
    Mat M(Q.rows(), Q.cols() * (1 + static_cast<long>(ops.size())));
    M.leftCols(Q.cols()) = Q;
    for (std::size_t o = 0; o < ops.size(); ++o) M.middleCols(Q.cols() * (o + 1), Q.cols()) = ops[o] * Q;
    Mat next = orthonormal_span(M, rank_tol);
    if (next.cols() == Q.cols()) return Q;
    Q = next;
  }
}

Mat generated_subalgebra(const Algebra& A, const std::vector<Element>& S) {
  if (S.empty()) throw AlgebraError("generated_subalgebra: generator set is empty");
  const int n = A.dim();
  Mat G(n, static_cast<long>(S.size()));
  for (std::size_t i = 0; i < S.size(); ++i) {
    require_element(A, S[i], "generated_subalgebra");
    G.col(static_cast<long>(i)) = S[i];
  }
  const double rank_tol = A.tol();
  Mat Q = orthonormal_span(G, rank_tol);
  while (Q.cols() > 0) {
    const long q = Q.cols();
    Mat M(n, q + q * q);
    M.leftCols(q) = Q;
    for (long a = 0; a < q; ++a)
      for (long b = 0; b < q; ++b) M.col(q + a * q + b) = multiply(A, Q.col(a), Q.col(b));
    Mat next = orthonormal_span(M, rank_tol);
    if (next.cols() == q) break;
    Q = next;
  }
  return Q;
}

bool j_invertible(const Algebra& A, const Element& x) {
  require_element(A, x, "j_invertible");
  if (!find_unit(A)) throw AlgebraError("j_invertible: algebra is not unital");
  Mat Lp = 0.5 * (left_op(A, x) + right_op(A, x));
  Vec x2 = multiply(A, x, x);
  Mat Lp2 = 0.5 * (left_op(A, x2) + right_op(A, x2));
  Mat U = 2.0 * Lp * Lp - Lp2;
  Eigen::JacobiSVD<Mat> svd(U);
  const Vec& s = svd.singularValues();
  if (s[0] == 0.0) return false;
  return s[s.size() - 1] > A.tol() * std::max(1.0, s[0]);
}

namespace {

struct QuadraticFit {
  Vec unit;
  Vec t;  // trace functional, t(x) = t.dot(x)
};

QuadraticFit fit_quadratic(const Algebra& A, std::uint64_t seed) {
  auto unit = find_unit(A);
  if (!unit) throw AlgebraError("extract_quadratic_structure: algebra is not unital");
  const int n = A.dim();
  const Vec& u = *unit;
  const double tol = A.tol() * A.scale() * n;
  Vec t(n);
  for (int i = 0; i < n; ++i) {
    Vec e = A.basis(i);
    Vec w = multiply(A, e, e);
    Mat B(n, 2);
    B << e, u;
    Eigen::ColPivHouseholderQR<Mat> qr(B);
    if (qr.rank() < 2) {
      // e_i is a multiple s of the unit; t(s 1) = 2s.
      t[i] = 2.0 * e.dot(u) / u.squaredNorm();
      continue;
    }
    Vec ab = qr.solve(w);
    if ((B * ab - w).norm() > tol)
      throw AlgebraError("extract_quadratic_structure: 1, x, x^2 independent for basis vector " +
                         A.labels()[i]);
    t[i] = ab[0];
  }
  Sampler s(seed);
  for (int k = 0; k < 50; ++k) {
    Vec x = s.unit(n);
    Vec w = multiply(A, x, x) - t.dot(x) * x;
    Vec perp = w - (w.dot(u) / u.squaredNorm()) * u;
    if (perp.norm() > tol)
      throw AlgebraError("extract_quadratic_structure: relation x^2 = t(x)x - n(x)1 fails on a sample");
  }
  return {u, t};
}

}  // namespace

QuadraticStructure extract_quadratic_structure(const Algebra& A, std::uint64_t seed) {
  QuadraticFit fit = fit_quadratic(A, seed);
  const int n = A.dim();
  const Vec& u = fit.unit;
  int pivot = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(u[i]) > std::abs(u[pivot])) pivot = i;

  Mat P(n, n);
  P.col(0) = u;
  std::vector<std::string> vlabels;
  int col = 1;
  for (int i = 0; i < n; ++i) {
    if (i == pivot) continue;
    P.col(col++) = A.basis(i) - 0.5 * fit.t[i] * u;
    vlabels.push_back(A.labels()[i]);
  }
  Algebra B = change_basis(A, P);

  QuadraticStructure q;
  q.vdim = n - 1;
  q.form = Mat(q.vdim, q.vdim);
  q.wedge = Tensor3(q.vdim);
  q.embedding = P;
  q.vlabels = vlabels;
  for (int i = 0; i < q.vdim; ++i)
    for (int j = 0; j < q.vdim; ++j) {
      q.form(i, j) = B.c(i + 1, j + 1, 0);
      for (int k = 0; k < q.vdim; ++k) q.wedge(i, j, k) = B.c(i + 1, j + 1, k + 1);
    }
  return q;
}

bool is_quadratic(const Algebra& A) {
  try {
    extract_quadratic_structure(A);
    return true;
  } catch (const AlgebraError&) {
    return false;
  }
}

Vec trace_functional(const Algebra& A) { return fit_quadratic(A, kDefaultSeed).t; }

Mat trace_form(const Algebra& A) {
  QuadraticStructure q = extract_quadratic_structure(A);
  const int n = A.dim();
  Mat G = Mat::Zero(n, n);
  G(0, 0) = 1.0;
  G.bottomRightCorner(q.vdim, q.vdim) = q.symmetric_form();
  Mat Pinv = q.embedding.inverse();
  return Pinv.transpose() * G * Pinv;
}

}  // namespace nadiv
