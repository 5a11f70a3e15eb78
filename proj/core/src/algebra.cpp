#include "nadiv/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace nadiv {

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Tensor3::max_abs_diff(const Tensor3& other) const {
  if (other.n_ != n_) throw AlgebraError("tensor dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - other.data_[i]));
  return m;
}

Algebra::Algebra(Tensor3 c, std::vector<std::string> labels, double tol, std::string provenance)
    : c_(std::move(c)), labels_(std::move(labels)), tol_(tol), provenance_(std::move(provenance)) {
  const int n = c_.dim();
  if (n < 1) throw AlgebraError("algebra dimension must be at least 1");
  if (!(tol_ > 0.0)) throw AlgebraError("tolerance must be positive");
  for (double v : c_.data())
    if (!std::isfinite(v)) throw AlgebraError("structure constants must be finite");
  if (labels_.empty()) {
    for (int i = 0; i < n; ++i) labels_.push_back("e" + std::to_string(i));
  }
  if (static_cast<int>(labels_.size()) != n) throw AlgebraError("label count differs from dimension");

  left_basis_.assign(n, Mat::Zero(n, n));
  right_basis_.assign(n, Mat::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        left_basis_[i](k, j) = c_(i, j, k);
        right_basis_[j](k, i) = c_(i, j, k);
      }
  scale_ = std::max(1.0, c_.max_abs());
}

Algebra Algebra::with_provenance(std::string p) const {
  return Algebra(c_, labels_, tol_, std::move(p));
}

Algebra Algebra::with_labels(std::vector<std::string> labels) const {
  return Algebra(c_, std::move(labels), tol_, provenance_);
}

int Algebra::label_index(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

Element Algebra::basis(int i) const {
  if (i < 0 || i >= dim()) throw AlgebraError("basis index out of range");
  return Vec::Unit(dim(), i);
}

Element Algebra::basis(const std::string& label) const {
  int i = label_index(label);
  if (i < 0) throw AlgebraError("unknown basis label '" + label + "'");
  return basis(i);
}

void require_element(const Algebra& A, const Element& x, const char* what) {
  if (x.size() != A.dim())
    throw AlgebraError(std::string(what) + ": element length " + std::to_string(x.size()) +
                       " does not match algebra dimension " + std::to_string(A.dim()));
}

LinearMap left_op(const Algebra& A, const Element& x) {
  require_element(A, x, "left_op");
  Mat L = Mat::Zero(A.dim(), A.dim());
  for (int i = 0; i < A.dim(); ++i)
    if (x[i] != 0.0) L.noalias() += x[i] * A.basis_left(i);
  return L;
}

LinearMap right_op(const Algebra& A, const Element& x) {
  require_element(A, x, "right_op");
  Mat R = Mat::Zero(A.dim(), A.dim());
  for (int j = 0; j < A.dim(); ++j)
    if (x[j] != 0.0) R.noalias() += x[j] * A.basis_right(j);
  return R;
}

Element multiply(const Algebra& A, const Element& x, const Element& y) {
  require_element(A, x, "multiply");
  require_element(A, y, "multiply");
  const int n = A.dim();
  Vec out = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    out.noalias() += x[i] * (A.basis_left(i) * y);
  }
  return out;
}

Element commutator(const Algebra& A, const Element& x, const Element& y) {
  return multiply(A, x, y) - multiply(A, y, x);
}

Element associator(const Algebra& A, const Element& x, const Element& y, const Element& z) {
  return multiply(A, multiply(A, x, y), z) - multiply(A, x, multiply(A, y, z));
}

LinearMap u_operator(const Algebra& A, const Element& x) {
  Mat L = left_op(A, x);
  Mat R = right_op(A, x);
  return L * (L + R) - left_op(A, multiply(A, x, x));
}

Element left_power(const Algebra& A, const Element& x, int n) {
  if (n < 1) throw AlgebraError("left_power: exponent must be at least 1");
  Vec p = x;
  for (int k = 1; k < n; ++k) p = multiply(A, x, p);
  return p;
}

Algebra change_basis(const Algebra& A, const Mat& P, std::vector<std::string> labels) {
  const int n = A.dim();
  if (P.rows() != n || P.cols() != n) throw AlgebraError("change_basis: matrix shape mismatch");
  Eigen::FullPivLU<Mat> lu(P);
  if (!lu.isInvertible()) throw AlgebraError("change_basis: singular basis matrix");
  Mat Pinv = lu.inverse();
  Tensor3 c(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      Vec v = Pinv * multiply(A, P.col(p), P.col(q));
      for (int k = 0; k < n; ++k) c(p, q, k) = v[k];
    }
  if (labels.empty()) labels = A.labels();
  return Algebra(std::move(c), std::move(labels), A.tol(), A.provenance());
}

}  // namespace nadiv
