#include "nadiv/classify.hpp"

#include "nadiv/sampling.hpp"
#include "nadiv/structure.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace nadiv {

namespace {

Mat inverse_sqrt_pd(const Mat& G) {
  Eigen::SelfAdjointEigenSolver<Mat> es(G);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

bool negative_definite(const Mat& S) {
  Eigen::SelfAdjointEigenSolver<Mat> es(S);
  return es.eigenvalues().maxCoeff() < 0.0;
}

/// Wedge of a quadratic algebra in coordinates orthonormal for -(.,.).
class OrthoWedge {
 public:
  OrthoWedge(const QuadraticStructure& q, const Mat& T) : q_(q), T_(T), Tinv_(T.inverse()) {}

  Vec operator()(const Vec& x, const Vec& y) const {
    const int m = q_.vdim;
    Vec a = T_ * x, b = T_ * y, w = Vec::Zero(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const double ab = a[i] * b[j];
        if (ab == 0.0) continue;
        for (int k = 0; k < m; ++k) w[k] += ab * q_.wedge(i, j, k);
      }
    return Tinv_ * w;
  }

  Mat left(const Vec& x) const {
    const int m = q_.vdim;
    Mat L(m, m);
    for (int j = 0; j < m; ++j) L.col(j) = (*this)(x, Vec::Unit(m, j));
    return L;
  }

 private:
  const QuadraticStructure& q_;
  Mat T_;
  Mat Tinv_;
};

/// Unit right singular vector of M for the largest singular value.
Vec top_right_singular(const Mat& M, double* value) {
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
  *value = svd.singularValues()[0];
  return svd.matrixV().col(0);
}

Mat complement_projector(const Vec& x) { return Mat::Identity(x.size(), x.size()) - x * x.transpose(); }

/// Rotates the plane (p, q) so that w has no component along the new p.
void rotate_out(Vec& p, Vec& q, const Vec& w) {
  const double cp = w.dot(p), cq = w.dot(q);
  const double t = std::atan2(-cp, cq);
  const Vec np = std::cos(t) * p + std::sin(t) * q;
  const Vec nq = -std::sin(t) * p + std::cos(t) * q;
  p = np;
  q = nq;
}

}  // namespace

InvariantVector invariants(const Algebra& A, const InvariantOptions& opts) {
  InvariantVector inv;
  inv.dim = A.dim();
  inv.unital = find_unit(A).has_value();
  bool flexible = false;
  for (Identity id : all_identities()) {
    const bool holds = check_identity(A, id, kDefaultIdentitySamples, opts.seed).holds;
    inv.identities.push_back(holds);
    if (id == Identity::flexible) flexible = holds;
  }
  ZeroDivisorOptions zopts = opts.division;
  zopts.seed = opts.seed;
  inv.division = zero_divisor_search(A, zopts).status;

  DerivationAlgebra der = derivation_basis(A);
  inv.der_dim = der.dim;
  inv.der_label = der.label_text;
  if (der.dim > 0) inv.module_dims = der_module_decomposition(A, der, opts.seed);

  if (A.dim() == 4 && flexible && is_quadratic(A)) {
    QuadraticStructure q = extract_quadratic_structure(A, opts.seed);
    Mat sym = q.symmetric_form();
    if (negative_definite(sym)) {
      OrthoWedge w(q, inverse_sqrt_pd(-sym));
      inv.mutation_param = std::abs(w(Vec::Unit(3, 0), Vec::Unit(3, 1))[2]);
    }
  }

  if (opts.isotopy_phi) {
    PolarFactors pf = polar_canonicalize(*opts.isotopy_phi);
    Eigen::SelfAdjointEigenSolver<Mat> es(pf.s);
    std::vector<double> spec(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    inv.isotopy_spectrum = spec;
  }
  return inv;
}

PolarFactors polar_canonicalize(const Mat& phi) {
  if (phi.rows() != phi.cols() || phi.rows() == 0) throw AlgebraError("polar_canonicalize: matrix must be square");
  Eigen::JacobiSVD<Mat> svd(phi, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec& sv = svd.singularValues();
  if (sv[sv.size() - 1] <= kDefaultTolerance * std::max(1.0, sv[0]))
    throw AlgebraError("polar_canonicalize: matrix is singular");
  PolarFactors pf;
  pf.s = svd.matrixU() * sv.asDiagonal() * svd.matrixU().transpose();
  pf.r = svd.matrixU() * svd.matrixV().transpose();
  return pf;
}

CompareResult compare(const Algebra& A, const Algebra& B, const InvariantOptions& opts_a,
                      const InvariantOptions& opts_b) {
  CompareResult res;
  res.a = invariants(A, opts_a);
  res.b = invariants(B, opts_b);
  const InvariantVector& a = res.a;
  const InvariantVector& b = res.b;
  auto differ = [&](std::string reason) {
    res.distinguished = true;
    res.reason = std::move(reason);
    return res;
  };
  constexpr double kSpectrumTol = 1e-6;

  if (a.dim != b.dim) return differ("dim");
  if (a.unital != b.unital) return differ("unital");
  for (std::size_t i = 0; i < a.identities.size(); ++i)
    if (a.identities[i] != b.identities[i]) return differ(std::string(identity_name(all_identities()[i])));
  using S = DivisionVerdict::Status;
  if (a.division != S::indeterminate && b.division != S::indeterminate && a.division != b.division)
    return differ("division");
  if (a.der_dim != b.der_dim) return differ("der_dim");
  if (a.der_label != b.der_label) return differ("der_label");
  if (a.module_dims != b.module_dims) return differ("module_dims");
  if (a.mutation_param && b.mutation_param && std::abs(*a.mutation_param - *b.mutation_param) > kSpectrumTol)
    return differ("mutation_param");
  if (a.isotopy_spectrum && b.isotopy_spectrum) {
    const auto& x = *a.isotopy_spectrum;
    const auto& y = *b.isotopy_spectrum;
    if (x.size() != y.size()) return differ("isotopy_spectrum");
    for (std::size_t i = 0; i < x.size(); ++i)
      if (std::abs(x[i] - y[i]) > kSpectrumTol) return differ("isotopy_spectrum");
  }
  return res;
}

bool verify_iso_witness(const Algebra& A, const Algebra& B, const LinearMap& F) {
  if (!is_isomorphism(A, B, F)) return false;
  if (!is_quadratic(A) || !is_quadratic(B)) return true;
  Mat GA = trace_form(A), GB = trace_form(B);
  const double scale = std::max(1.0, GA.norm()) * std::max(1.0, F.squaredNorm());
  return (F.transpose() * GB * F - GA).cwiseAbs().maxCoeff() <= 1e-8 * scale;
}

CanonicalReduction canonical_table1_reduction(const Algebra& A, std::uint64_t seed, bool check_division) {
  if (A.dim() != 8) throw AlgebraError("canonical_table1_reduction: algebra must be 8-dimensional");
  if (!check_identity(A, Identity::nc_jordan, kDefaultIdentitySamples, seed).holds)
    throw AlgebraError("canonical_table1_reduction: algebra is not noncommutative Jordan");
  if (!is_quadratic(A)) throw AlgebraError("canonical_table1_reduction: algebra is not quadratic");
  QuadraticStructure q = extract_quadratic_structure(A, seed);
  Mat sym = q.symmetric_form();
  if (!negative_definite(sym)) throw AlgebraError("canonical_table1_reduction: form on V is not negative definite");
  if (check_division && zero_divisor_search(A, ZeroDivisorOptions{.seed = seed}).status !=
                            DivisionVerdict::Status::division)
    throw AlgebraError("canonical_table1_reduction: algebra is not a division algebra");

  const int m = 7;
  const Mat T = inverse_sqrt_pd(-sym);
  OrthoWedge wedge(q, T);

  // Multistart block ascent of |u ^ v| over orthonormal pairs: for fixed u
  // the best v is a top singular vector of L_u on u-perp, and symmetrically.
  struct Candidate {
    double value;
    Vec u, v;
  };
  std::vector<Candidate> cands;
  Sampler rng(seed);
  for (int start = 0; start < 64; ++start) {
    Vec u = rng.unit(m), v;
    double f = 0.0;
    for (int it = 0; it < 500; ++it) {
      double f1 = 0.0, f2 = 0.0;
      v = top_right_singular(wedge.left(u) * complement_projector(u), &f1);
      u = top_right_singular(wedge.left(v) * complement_projector(v), &f2);
      const bool done = std::abs(f2 - f) <= 1e-14 * std::max(1.0, f2);
      f = f2;
      if (done) break;
    }
    v = top_right_singular(wedge.left(u) * complement_projector(u), &f);
    cands.push_back({f, u, v});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& l, const Candidate& r) { return l.value > r.value; });

  const Mat Vpart = q.embedding.rightCols(m) * T;
  const Vec unit = q.embedding.col(0);
  double best_residual = std::numeric_limits<double>::infinity();

  for (const Candidate& cand : cands) {
    Vec u = cand.u.normalized();
    Vec y1 = (cand.v - cand.v.dot(u) * u).normalized();
    Vec uy1 = wedge(u, y1);
    const double a = uy1.norm();
    if (a <= 1e-12) continue;
    Vec z1 = uy1 / a;

    Mat C = orthonormal_span(complement_projector(u) - y1 * y1.transpose() - z1 * z1.transpose(), 1e-8);
    if (C.cols() != 4) continue;
    const Mat Lu = wedge.left(u);
    Mat S = C.transpose() * Lu * C;
    Eigen::SelfAdjointEigenSolver<Mat> es(S * S);

    Vec y2 = C * es.eigenvectors().col(0);
    Vec uy2 = Lu * y2;
    Vec z2 = uy2.normalized();
    Vec y3;
    double best_norm = -1.0;
    for (int k = 1; k < 4; ++k) {
      Vec w = C * es.eigenvectors().col(k);
      w -= w.dot(y2) * y2 + w.dot(z2) * z2;
      if (w.norm() > best_norm) {
        best_norm = w.norm();
        y3 = w;
      }
    }
    y3.normalize();
    Vec z3 = (Lu * y3).normalized();

    rotate_out(y1, z1, wedge(y2, z2));
    rotate_out(y3, z3, wedge(y2, z2));
    rotate_out(y2, z2, wedge(y3, z3));

    Mat P(8, 8);
    P.col(0) = unit;
    const Vec frame[7] = {u, y1, z1, y2, z2, y3, z3};
    for (int i = 0; i < m; ++i) P.col(i + 1) = Vpart * frame[i];
    Algebra Bf = change_basis(A, P, kTableLabels);

    Table1Params p;
    p.a = Bf.c(1, 2, 3), p.b = Bf.c(1, 4, 5), p.c = Bf.c(1, 6, 7);
    p.alpha = Bf.c(2, 4, 6), p.beta = Bf.c(2, 4, 7), p.gamma = Bf.c(2, 5, 6), p.mu = Bf.c(2, 5, 7);
    p.lambda = Bf.c(3, 4, 6), p.eta = Bf.c(3, 4, 7), p.pi = Bf.c(3, 4, 5);
    p.sigma = Bf.c(3, 5, 6), p.delta = Bf.c(3, 5, 7);
    p.nu = Bf.c(2, 6, 7), p.rho = Bf.c(3, 6, 7), p.theta = Bf.c(4, 5, 7), p.omega = Bf.c(5, 6, 7);
    if (!(p.a > 0.0 && p.b > 0.0 && p.c > 0.0)) continue;

    const double residual = Bf.tensor().max_abs_diff(table1(p).tensor());
    best_residual = std::min(best_residual, residual);
    if (residual <= kCanonicalTolerance) {
      CanonicalReduction out;
      out.params = p;
      out.basis = P;
      out.residual = residual;
      out.sup_value = cand.value;
      return out;
    }
  }
  throw AlgebraError("canonical_table1_reduction: no frame reproduces the algebra (best residual " +
                     format_number(best_residual) + ")");
}

}  // namespace nadiv
