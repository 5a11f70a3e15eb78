#include "nadiv/lie.hpp"

#include "nadiv/constructions.hpp"
#include "nadiv/sampling.hpp"
#include "nadiv/structure.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace nadiv {

namespace {

/// Orthonormal nullspace (columns) of M, with the singular values on each
/// side of the cut reported through kept/dropped.
Mat nullspace(const Mat& M, double rank_tol, double* kept = nullptr, double* dropped = nullptr) {
  const int cols = static_cast<int>(M.cols());
  // Reduce tall systems to a square triangular factor before the SVD.
  Mat R;
  if (M.rows() > M.cols()) {
    Eigen::HouseholderQR<Mat> qr(M);
    R = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  } else {
    R = M;
  }
  Eigen::JacobiSVD<Mat> svd(R, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  const double smax = s.size() ? s[0] : 0.0;
  const double cut = rank_tol * std::max(smax, std::numeric_limits<double>::min());
  int rank = 0;
  while (rank < s.size() && s[rank] > cut) ++rank;
  if (kept) *kept = rank > 0 ? s[rank - 1] : 0.0;
  if (dropped) *dropped = rank < s.size() ? s[rank] : 0.0;
  return svd.matrixV().rightCols(cols - rank);
}

Mat from_row_major(const Vec& v, int n) {
  Mat D(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) D(a, b) = v[a * n + b];
  return D;
}

int numeric_rank(const Mat& M, double rel_tol) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(M);
  const Vec& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  while (r < s.size() && s[r] > rel_tol * s[0]) ++r;
  return r;
}

Mat killing_form(const DerivationAlgebra& D) {
  const int d = D.dim;
  std::vector<Mat> ad(d, Mat::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) ad[i](k, j) = D.bracket(i, j, k);
  Mat K(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) K(i, j) = (ad[i] * ad[j]).trace();
  return K;
}

Mat symmetric_sqrt(const Mat& G) {
  Eigen::SelfAdjointEigenSolver<Mat> es(G);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

bool positive_definite(const Mat& G) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (G + G.transpose()));
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  return es.eigenvalues().minCoeff() > 1e-9 * std::max(1.0, top);
}

bool skew_for(const std::vector<Mat>& ops, const Mat& G) {
  for (const Mat& D : ops) {
    const double r = (D.transpose() * G + G * D).norm();
    if (r > 1e-8 * std::max(1.0, D.norm() * G.norm())) return false;
  }
  return true;
}

/// Positive definite inner product for which every derivation is skew.
Mat invariant_inner_product(const Algebra& A, const std::vector<Mat>& ops, std::uint64_t seed) {
  const int n = A.dim();
  if (is_quadratic(A)) {
    QuadraticStructure q = extract_quadratic_structure(A, seed);
    Mat inner = Mat::Zero(n, n);
    inner(0, 0) = 1.0;
    Mat sym = q.symmetric_form();
    Eigen::SelfAdjointEigenSolver<Mat> es(sym);
    if (es.eigenvalues().maxCoeff() < 0.0) {
      inner.bottomRightCorner(q.vdim, q.vdim) = -sym;
      Mat Pinv = q.embedding.inverse();
      Mat G = Pinv.transpose() * inner * Pinv;
      if (skew_for(ops, G)) return G;
    }
  }
  Mat I = Mat::Identity(n, n);
  if (skew_for(ops, I)) return I;

  // Symmetric G with D^T G + G D = 0 for all D, searched for a definite member.
  const int m = n * (n + 1) / 2;
  std::vector<Mat> sym_basis;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Mat E = Mat::Zero(n, n);
      E(a, b) = E(b, a) = 1.0;
      sym_basis.push_back(E);
    }
  Mat sys(static_cast<Eigen::Index>(ops.size()) * n * n, m);
  for (std::size_t k = 0; k < ops.size(); ++k)
    for (int c = 0; c < m; ++c) {
      Mat R = ops[k].transpose() * sym_basis[c] + sym_basis[c] * ops[k];
      sys.block(static_cast<Eigen::Index>(k) * n * n, c, n * n, 1) = Eigen::Map<const Vec>(R.data(), n * n);
    }
  Mat null = nullspace(sys, 1e-9);
  Sampler rng(seed);
  for (int attempt = 0; attempt < 20 && null.cols() > 0; ++attempt) {
    Vec w = null * rng.gaussian(static_cast<int>(null.cols()));
    Mat G = Mat::Zero(n, n);
    for (int c = 0; c < m; ++c) G += w[c] * sym_basis[c];
    if (positive_definite(G)) return G;
    if (positive_definite(-G)) return -G;
  }
  throw AlgebraError("der_module_decomposition: no invariant inner product found");
}

}  // namespace

DerivationAlgebra derivation_basis(const Algebra& A, double rank_tol) {
  const int n = A.dim();
  Mat M = Mat::Zero(static_cast<Eigen::Index>(n) * n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Eigen::Index row = (static_cast<Eigen::Index>(i) * n + j) * n + k;
        for (int m = 0; m < n; ++m) M(row, k * n + m) += A.c(i, j, m);
        for (int a = 0; a < n; ++a) M(row, a * n + i) -= A.c(a, j, k);
        for (int b = 0; b < n; ++b) M(row, b * n + j) -= A.c(i, b, k);
      }

  DerivationAlgebra out;
  Mat null = nullspace(M, rank_tol, &out.kept_singular, &out.dropped_singular);
  out.dim = static_cast<int>(null.cols());
  for (int c = 0; c < out.dim; ++c) out.basis.push_back(from_row_major(null.col(c), n));

  out.bracket = Tensor3(out.dim);
  for (int i = 0; i < out.dim; ++i)
    for (int j = 0; j < out.dim; ++j) {
      Mat br = out.basis[i] * out.basis[j] - out.basis[j] * out.basis[i];
      Mat rebuilt = Mat::Zero(n, n);
      for (int k = 0; k < out.dim; ++k) {
        const double coef = (br.array() * out.basis[k].array()).sum();
        out.bracket(i, j, k) = coef;
        rebuilt += coef * out.basis[k];
      }
      out.closure_residual = std::max(out.closure_residual, (br - rebuilt).norm());
    }
  out.label = classify_lie(out);
  out.label_text = lie_label_text(out.label, out.dim);
  return out;
}

std::string lie_label_text(LieLabel label, int dim) {
  switch (label) {
    case LieLabel::zero: return "zero";
    case LieLabel::abelian: return "abelian_" + std::to_string(dim);
    case LieLabel::su2: return "su2";
    case LieLabel::su2_plus_su2: return "su2_plus_su2";
    case LieLabel::su2_plus_abelian1: return "su2_plus_abelian1";
    case LieLabel::su3: return "su3";
    case LieLabel::g2_compact: return "g2_compact";
    case LieLabel::other: return "other";
  }
  return "other";
}

LieLabel classify_lie(const DerivationAlgebra& D) {
  if (D.closure_residual > 1e-6) throw AlgebraError("classify_lie: bracket does not close on the basis");
  const int d = D.dim;
  if (d == 0) return LieLabel::zero;

  Mat brackets(d * (d - 1) / 2 + 1, d);
  brackets.setZero();
  int row = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j, ++row)
      for (int k = 0; k < d; ++k) brackets(row, k) = D.bracket(i, j, k);
  const double bmax = brackets.cwiseAbs().maxCoeff();
  const int derived = bmax > 1e-9 ? numeric_rank(brackets, 1e-7) : 0;
  if (derived == 0) return LieLabel::abelian;

  Mat K = killing_form(D);
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (K + K.transpose()));
  const Vec& ev = es.eigenvalues();
  const double scale = std::max(1e-12, ev.cwiseAbs().maxCoeff());
  int neg = 0, zero = 0;
  for (int i = 0; i < d; ++i) {
    if (ev[i] < -1e-8 * scale) ++neg;
    else if (std::abs(ev[i]) <= 1e-8 * scale) ++zero;
  }
  const bool negdef = neg == d;

  if (negdef && d == 3) return LieLabel::su2;
  if (negdef && d == 6) return LieLabel::su2_plus_su2;
  if (negdef && d == 8) return LieLabel::su3;
  if (negdef && d == 14) return LieLabel::g2_compact;
  if (d == 4 && derived == 3 && neg == 3 && zero == 1) return LieLabel::su2_plus_abelian1;
  return LieLabel::other;
}

double derivation_residual(const Algebra& A, const LinearMap& D) {
  const int n = A.dim();
  if (D.rows() != n || D.cols() != n) throw AlgebraError("derivation: map has the wrong shape");
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec lhs = D * A.basis_left(i).col(j);
      Vec rhs = A.basis_right(j) * D.col(i) + A.basis_left(i) * D.col(j);
      worst = std::max(worst, (lhs - rhs).norm());
    }
  return worst;
}

double homomorphism_residual(const Algebra& A, const Algebra& B, const LinearMap& F) {
  const int n = A.dim();
  if (F.rows() != B.dim() || F.cols() != n) throw AlgebraError("homomorphism: map has the wrong shape");
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec lhs = F * A.basis_left(i).col(j);
      Vec rhs = multiply(B, F.col(i), F.col(j));
      worst = std::max(worst, (lhs - rhs).norm());
    }
  return worst;
}

bool is_derivation(const Algebra& A, const LinearMap& D) {
  return derivation_residual(A, D) <= A.tol() * A.scale() * std::max(1.0, D.norm());
}

bool is_isomorphism(const Algebra& A, const Algebra& B, const LinearMap& F) {
  if (A.dim() != B.dim()) return false;
  Eigen::JacobiSVD<Mat> svd(F);
  const Vec& s = svd.singularValues();
  if (s[s.size() - 1] <= A.tol() * std::max(1.0, s[0])) return false;
  const double scale = std::max(A.scale(), B.scale()) * std::max(1.0, F.squaredNorm());
  return homomorphism_residual(A, B, F) <= std::max(A.tol(), B.tol()) * scale;
}

bool is_automorphism(const Algebra& A, const LinearMap& F) { return is_isomorphism(A, A, F); }

namespace {

LinearMap natural_extension(const Algebra& B, const LinearMap& f, const char* what) {
  const int m = B.dim();
  if (f.rows() != m || f.cols() != m) throw AlgebraError(std::string(what) + ": map has the wrong shape");
  LinearMap K = quadratic_conjugation(B);
  if ((f * K - K * f).norm() > B.tol() * std::max(1.0, f.norm()) * m)
    throw AlgebraError(std::string(what) + ": map does not commute with the conjugation");
  LinearMap out = LinearMap::Zero(2 * m, 2 * m);
  out.topLeftCorner(m, m) = f;
  out.bottomRightCorner(m, m) = f;
  return out;
}

}  // namespace

LinearMap natural_extension_derivation(const Algebra& B, const LinearMap& D) {
  if (!is_derivation(B, D)) throw AlgebraError("natural_extension_derivation: not a derivation of B");
  return natural_extension(B, D, "natural_extension_derivation");
}

LinearMap natural_extension_automorphism(const Algebra& B, const LinearMap& f) {
  if (!is_automorphism(B, f)) throw AlgebraError("natural_extension_automorphism: not an automorphism of B");
  return natural_extension(B, f, "natural_extension_automorphism");
}

std::vector<int> der_module_decomposition(const Algebra& A, const DerivationAlgebra& D, std::uint64_t seed) {
  if (D.dim == 0) throw AlgebraError("der_module_decomposition: Der(A) = 0");
  const int n = A.dim();

  // Make every derivation skew, so the commutant is closed under transposes
  // and its symmetric members split the space into submodules.
  Mat G = invariant_inner_product(A, D.basis, seed);
  Mat W = symmetric_sqrt(G);
  Mat Winv = W.inverse();
  std::vector<Mat> ops;
  for (const Mat& d : D.basis) ops.push_back(W * d * Winv);

  Mat sys(static_cast<Eigen::Index>(ops.size()) * n * n, n * n);
  for (std::size_t k = 0; k < ops.size(); ++k)
    for (int c = 0; c < n * n; ++c) {
      Mat E = Mat::Zero(n, n);
      E(c % n, c / n) = 1.0;
      Mat R = E * ops[k] - ops[k] * E;
      sys.block(static_cast<Eigen::Index>(k) * n * n, c, n * n, 1) = Eigen::Map<const Vec>(R.data(), n * n);
    }
  Mat commutant = nullspace(sys, 1e-9);

  std::vector<int> best;
  for (int attempt = 0; attempt < 5; ++attempt) {
    Sampler rng(seed + static_cast<std::uint64_t>(attempt));
    Vec w = commutant * rng.gaussian(static_cast<int>(commutant.cols()));
    Mat X = Eigen::Map<const Mat>(w.data(), n, n);
    Mat S = X + X.transpose();
    Eigen::SelfAdjointEigenSolver<Mat> es(S);
    const Vec& ev = es.eigenvalues();
    const double spread = std::max(1e-12, ev.cwiseAbs().maxCoeff());

    std::vector<int> parts;
    int start = 0;
    bool irreducible = true;
    for (int i = 1; i <= n; ++i) {
      if (i < n && ev[i] - ev[i - 1] <= 1e-6 * spread) continue;
      Mat block = es.eigenvectors().middleCols(start, i - start);
      // An eigenspace is a submodule; a generic vector in it must regenerate it.
      Mat seedvec = block * rng.unit(i - start);
      Mat closed = invariant_closure(seedvec, ops, 1e-8);
      if (closed.cols() != i - start) irreducible = false;
      parts.push_back(i - start);
      start = i;
    }
    std::sort(parts.begin(), parts.end());
    if (irreducible && parts.size() > best.size()) best = parts;
    if (best.empty() && attempt == 4) best = parts;
  }
  return best;
}

LinearMap reflection_from_subalgebra(const Algebra& A, const std::vector<Element>& B_basis) {
  const int n = A.dim();
  if (B_basis.empty()) throw AlgebraError("reflection_from_subalgebra: empty basis");
  Mat Braw(n, static_cast<Eigen::Index>(B_basis.size()));
  for (std::size_t i = 0; i < B_basis.size(); ++i) {
    require_element(A, B_basis[i], "reflection_from_subalgebra");
    Braw.col(static_cast<Eigen::Index>(i)) = B_basis[i];
  }
  Mat Q = orthonormal_span(Braw, 1e-9);
  if (Q.cols() != 4) throw AlgebraError("reflection_from_subalgebra: span(B) is not 4-dimensional");

  const double tol = 1e-8 * A.scale();
  auto outside = [&](const Vec& v) { return (v - Q * (Q.transpose() * v)).norm(); };
  std::optional<Element> unit = find_unit(A);
  if (!unit || outside(*unit) > tol) throw AlgebraError("reflection_from_subalgebra: span(B) does not contain 1");
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (outside(multiply(A, Q.col(i), Q.col(j))) > tol)
        throw AlgebraError("reflection_from_subalgebra: span(B) is not a subalgebra");

  Mat G = trace_form(A);
  Mat C = orthonormal_span(nullspace(Q.transpose() * G, 1e-9), 1e-9);
  if (C.cols() != n - 4) throw AlgebraError("reflection_from_subalgebra: trace form degenerate on span(B)");
  for (int i = 0; i < C.cols(); ++i)
    for (int j = 0; j < C.cols(); ++j)
      if (outside(multiply(A, C.col(i), C.col(j))) > tol)
        throw AlgebraError("reflection_from_subalgebra: complement squares outside span(B)");

  Mat P(n, n);
  P << Q, C;
  Vec signs = Vec::Ones(n);
  signs.tail(n - 4).setConstant(-1.0);
  return P * signs.asDiagonal() * P.inverse();
}

QuaternionStabilizerReport stabilized_quaternion_test(const std::vector<Vec>& eigvecs,
                                                      const std::vector<double>& eigvals) {
  if (eigvecs.size() != 7 || eigvals.size() != 7)
    throw AlgebraError("stabilized_quaternion_test: expected 7 eigenpairs");
  Mat V(7, 7);
  for (int i = 0; i < 7; ++i) {
    if (eigvecs[i].size() != 7) throw AlgebraError("stabilized_quaternion_test: eigenvectors must have length 7");
    V.col(i) = eigvecs[i];
  }
  if ((V.transpose() * V - Mat::Identity(7, 7)).cwiseAbs().maxCoeff() > 1e-8)
    throw AlgebraError("stabilized_quaternion_test: eigenvectors are not orthonormal");
  std::vector<double> sorted = eigvals;
  std::sort(sorted.begin(), sorted.end());
  double top = 1.0;
  for (double v : sorted) top = std::max(top, std::abs(v));
  for (int i = 1; i < 7; ++i)
    if (sorted[i] - sorted[i - 1] <= 1e-9 * top)
      throw AlgebraError("stabilized_quaternion_test: repeated eigenvalue; test requires a simple spectrum");

  static const Algebra O = canonical("O");
  auto cross = [&](const Vec& x, const Vec& y) {
    Vec a = Vec::Zero(8), b = Vec::Zero(8);
    a.tail(7) = x;
    b.tail(7) = y;
    return Vec(multiply(O, a, b).tail(7));
  };

  QuaternionStabilizerReport rep;
  rep.min_residual = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b)
      for (int c = b + 1; c < 7; ++c) {
        Mat S(7, 3);
        S << V.col(a), V.col(b), V.col(c);
        double r = 0.0;
        const int idx[3][2] = {{a, b}, {a, c}, {b, c}};
        for (const auto& pq : idx) {
          Vec w = cross(V.col(pq[0]), V.col(pq[1]));
          r = std::max(r, (w - S * (S.transpose() * w)).norm());
        }
        ++rep.triples_checked;
        rep.min_residual = std::min(rep.min_residual, r);
        if (r <= 1e-8) rep.closed_triples.push_back({a, b, c});
      }
  rep.stabilized = !rep.closed_triples.empty();
  return rep;
}

HomothetyReport homothety_residual(const Algebra& A, double lambda, int samples, std::uint64_t seed) {
  Algebra M = mutation(A, lambda);
  const int n = M.dim();
  auto objective = [&](const Vec& x) {
    Mat L = left_op(M, x);
    Mat L2 = L * L;
    const double norm = L2.norm();
    if (norm == 0.0) return 1.0;
    return (L2 - (L2.trace() / n) * Mat::Identity(n, n)).norm() / norm;
  };

  Sampler rng(seed);
  std::vector<std::pair<double, Vec>> pool;
  for (int s = 0; s < samples; ++s) {
    Vec x = rng.unit(n);
    pool.emplace_back(objective(x), x);
  }
  std::sort(pool.begin(), pool.end(), [](const auto& l, const auto& r) { return l.first < r.first; });

  HomothetyReport rep;
  rep.lambda = lambda;
  rep.residual = std::numeric_limits<double>::infinity();
  const int starts = std::min<int>(5, static_cast<int>(pool.size()));
  for (int s = 0; s < starts; ++s) {
    Vec x = pool[s].second;
    double fx = pool[s].first;
    double step = 0.1;
    // Random-direction descent on the sphere with step halving.
    for (int it = 0; it < 400 && step > 1e-10; ++it) {
      Vec y = x + step * rng.gaussian(n);
      y.normalize();
      const double fy = objective(y);
      if (fy < fx) {
        x = y;
        fx = fy;
      } else {
        step *= 0.8;
      }
    }
    if (fx < rep.residual) {
      rep.residual = fx;
      rep.best = x;
    }
  }
  return rep;
}

}  // namespace nadiv
