#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nadiv {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Coefficient vector of an element in the basis of an algebra.
using Element = Vec;
/// Dense square matrix acting on the underlying space of an algebra.
using LinearMap = Mat;

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Raised for contract violations: shape mismatches, bad parameters,
/// failed preconditions.
class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense rank-3 tensor t(i,j,k), stored row-major in k.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int dim() const { return n_; }
  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double max_abs() const;
  double max_abs_diff(const Tensor3& other) const;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  int n_ = 0;
  std::vector<double> data_;
};

/// Finite-dimensional real algebra given by structure constants:
/// e_i e_j = sum_k c(i,j,k) e_k.
class Algebra {
 public:
  Algebra(Tensor3 c, std::vector<std::string> labels = {}, double tol = kDefaultTolerance,
          std::string provenance = {});

  int dim() const { return c_.dim(); }
  const Tensor3& tensor() const { return c_; }
  double c(int i, int j, int k) const { return c_(i, j, k); }
  const std::vector<std::string>& labels() const { return labels_; }
  double tol() const { return tol_; }
  const std::string& provenance() const { return provenance_; }

  Algebra with_provenance(std::string p) const;
  Algebra with_labels(std::vector<std::string> labels) const;

  /// Index of the basis label, or -1.
  int label_index(const std::string& label) const;
  /// Basis vector e_i.
  Element basis(int i) const;
  /// Basis vector by label; throws when absent.
  Element basis(const std::string& label) const;

  /// Matrix of L_{e_i}: column j holds e_i e_j.
  const Mat& basis_left(int i) const { return left_basis_[i]; }
  /// Matrix of R_{e_j}: column i holds e_i e_j.
  const Mat& basis_right(int j) const { return right_basis_[j]; }

  /// Largest |c(i,j,k)|, at least 1; used to scale absolute tolerances.
  double scale() const { return scale_; }

 private:
  Tensor3 c_;
  std::vector<std::string> labels_;
  double tol_;
  std::string provenance_;
  std::vector<Mat> left_basis_;
  std::vector<Mat> right_basis_;
  double scale_ = 1.0;
};

Element multiply(const Algebra& A, const Element& x, const Element& y);
LinearMap left_op(const Algebra& A, const Element& x);
LinearMap right_op(const Algebra& A, const Element& x);
Element commutator(const Algebra& A, const Element& x, const Element& y);
Element associator(const Algebra& A, const Element& x, const Element& y, const Element& z);

/// U_x = L_x (L_x + R_x) - L_{x^2}.
LinearMap u_operator(const Algebra& A, const Element& x);

/// Left power x^n with x^1 = x and x^{n+1} = x x^n.
Element left_power(const Algebra& A, const Element& x, int n);

/// Algebra expressed in a new basis b_p = sum_a P(a,p) e_a.
Algebra change_basis(const Algebra& A, const Mat& P, std::vector<std::string> labels = {});

/// Throws AlgebraError when x does not have length A.dim().
void require_element(const Algebra& A, const Element& x, const char* what);

}  // namespace nadiv
