#pragma once

#include "nadiv/algebra.hpp"

#include <cstdint>
#include <random>

namespace nadiv {

/// Deterministic source of random directions: standard normal
/// coordinates, normalized to unit Euclidean length.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  Vec unit(int n) {
    Vec v(n);
    do {
      for (int i = 0; i < n; ++i) v[i] = normal_(rng_);
    } while (v.norm() == 0.0);
    return v / v.norm();
  }

  Vec gaussian(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = normal_(rng_);
    return v;
  }

  double normal() { return normal_(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  /// Haar-like orthogonal matrix from the QR factors of a Gaussian matrix.
  Mat orthogonal(int n) {
    Mat G(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) G(i, j) = normal_(rng_);
    Eigen::HouseholderQR<Mat> qr(G);
    Mat Q = qr.householderQ();
    Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i)
      if (R(i, i) < 0) Q.col(i) = -Q.col(i);
    return Q;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace nadiv
