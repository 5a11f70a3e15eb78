#include "nadiv/division.hpp"

#include "nadiv/sampling.hpp"
#include "nadiv/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nadiv {

std::string status_name(DivisionVerdict::Status s) {
  switch (s) {
    case DivisionVerdict::Status::division:
      return "division";
    case DivisionVerdict::Status::not_division:
      return "not_division";
    case DivisionVerdict::Status::indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

std::string method_name(DivisionVerdict::Method m) {
  switch (m) {
    case DivisionVerdict::Method::closed_form:
      return "closed_form";
    case DivisionVerdict::Method::certificate:
      return "certificate";
    case DivisionVerdict::Method::numeric_bound:
      return "numeric_bound";
  }
  return "unknown";
}

namespace {

// Number of samples, ranked by |det L| |det R|, that get a full
// singular-value score before the best `starts` are refined.
constexpr int kScreened = 200;

struct SmallestSingular {
  double value;
  Vec vector;
};

SmallestSingular smallest_singular_fast(const Mat& M) {
  Eigen::SelfAdjointEigenSolver<Mat> es(M.transpose() * M);
  return {std::sqrt(std::max(0.0, es.eigenvalues()[0])), es.eigenvectors().col(0)};
}

SmallestSingular smallest_singular(const Mat& M) {
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
  const long n = M.cols();
  return {svd.singularValues()[n - 1], svd.matrixV().col(n - 1)};
}

struct Pair {
  Vec x, y;
  double value;
};

double pair_value(const Algebra& A, const Vec& x, const Vec& y) {
  return multiply(A, x.normalized(), y.normalized()).norm();
}

// Gauss-Newton with minimum-norm steps on (xy, |x|^2 - 1, |y|^2 - 1).
Pair newton_polish(const Algebra& A, Pair p) {
  const int n = A.dim();
  Vec x = p.x, y = p.y;
  for (int it = 0; it < 30; ++it) {
    Vec F(n + 2);
    F.head(n) = multiply(A, x, y);
    F[n] = 0.5 * (x.squaredNorm() - 1.0);
    F[n + 1] = 0.5 * (y.squaredNorm() - 1.0);
    if (F.norm() < 1e-16) break;
    Mat J = Mat::Zero(n + 2, 2 * n);
    J.topLeftCorner(n, n) = right_op(A, y);
    J.topRightCorner(n, n) = left_op(A, x);
    J.block(n, 0, 1, n) = x.transpose();
    J.block(n + 1, n, 1, n) = y.transpose();
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(J);
    Vec dz = cod.solve(F);
    if (!dz.allFinite()) break;
    Vec nx = x - dz.head(n), ny = y - dz.tail(n);
    if (nx.norm() == 0.0 || ny.norm() == 0.0) break;
    double v = pair_value(A, nx, ny);
    x = nx;
    y = ny;
    if (v < p.value) p = {x.normalized(), y.normalized(), v};
  }
  return p;
}

// Block coordinate descent: y <- argmin |x y|, x <- argmin |x y|.
Pair alternating_descent(const Algebra& A, const Vec& x0, int max_iterations, double stop) {
  Vec x = x0;
  SmallestSingular sy = smallest_singular_fast(left_op(A, x));
  Vec y = sy.vector;
  double value = sy.value;
  for (int it = 0; it < max_iterations && value > stop; ++it) {
    SmallestSingular sx = smallest_singular_fast(right_op(A, y));
    x = sx.vector;
    SmallestSingular s2 = smallest_singular_fast(left_op(A, x));
    y = s2.vector;
    double improvement = value - s2.value;
    value = s2.value;
    if (improvement <= 1e-12 * std::max(value, 1e-300)) break;
  }
  return {x, y, pair_value(A, x, y)};
}

// Bisects det along the chord between x0 and x1 to a singular L_x (or R_x).
Pair kernel_from_sign_change(const Algebra& A, const Vec& x0, const Vec& x1, bool right) {
  auto det_at = [&](double t) {
    Vec x = ((1.0 - t) * x0 + t * x1).normalized();
    return (right ? right_op(A, x) : left_op(A, x)).determinant();
  };
  double lo = 0.0, hi = 1.0;
  double dlo = det_at(lo);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double dm = det_at(mid);
    if (dm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((dm > 0) == (dlo > 0)) {
      lo = mid;
      dlo = dm;
    } else {
      hi = mid;
    }
  }
  Vec x = ((1.0 - lo) * x0 + lo * x1).normalized();
  SmallestSingular k = smallest_singular(right ? right_op(A, x) : left_op(A, x));
  Pair p = right ? Pair{k.vector, x, 0.0} : Pair{x, k.vector, 0.0};
  p.value = pair_value(A, p.x, p.y);
  return newton_polish(A, p);
}

}  // namespace

DivisionVerdict zero_divisor_search(const Algebra& A, int samples, std::uint64_t seed) {
  ZeroDivisorOptions o;
  o.samples = samples;
  o.seed = seed;
  return zero_divisor_search(A, o);
}

DivisionVerdict zero_divisor_search(const Algebra& A, const ZeroDivisorOptions& opts) {
  if (opts.samples < 1) throw AlgebraError("zero_divisor_search: samples must be at least 1");
  const int n = A.dim();
  const double tol = A.tol() * A.scale();
  DivisionVerdict v;

  Sampler s(opts.seed);
  std::vector<Vec> xs(opts.samples);
  std::vector<double> detL(opts.samples), detR(opts.samples);
  double max_det = 0.0;
  for (int i = 0; i < opts.samples; ++i) {
    xs[i] = s.unit(n);
    detL[i] = left_op(A, xs[i]).partialPivLu().determinant();
    detR[i] = right_op(A, xs[i]).partialPivLu().determinant();
    max_det = std::max({max_det, std::abs(detL[i]), std::abs(detR[i])});
  }

  // Determinant sign change; on the connected sphere (dim >= 2) this
  // forces a singular multiplication operator in between.
  if (n >= 2 && max_det > 0.0) {
    const double thr = 1e-8 * max_det;
    for (bool right : {false, true}) {
      const auto& d = right ? detR : detL;
      int first = -1;
      for (int i = 0; i < opts.samples; ++i) {
        if (std::abs(d[i]) <= thr) continue;
        if (first < 0) {
          first = i;
        } else if ((d[i] > 0) != (d[first] > 0)) {
          v.status = DivisionVerdict::Status::not_division;
          v.method = DivisionVerdict::Method::certificate;
          v.sign_change = std::make_pair(xs[first], xs[i]);
          v.sign_change_right = right;
          Pair k = kernel_from_sign_change(A, xs[first], xs[i], right);
          if (k.value <= tol) {
            v.zero_pair = std::make_pair(k.x, k.y);
            v.zero_pair_residual = k.value;
          }
          v.bound = k.value;
          return v;
        }
      }
    }
  }

  // Screen by determinant magnitude, then score by singular values.
  std::vector<int> order(opts.samples);
  std::iota(order.begin(), order.end(), 0);
  auto det_key = [&](int i) { return std::abs(detL[i]) * std::abs(detR[i]); };
  const int screened = std::min(opts.samples, kScreened);
  std::partial_sort(order.begin(), order.begin() + screened, order.end(), [&](int a, int b) {
    double ka = det_key(a), kb = det_key(b);
    return ka < kb || (ka == kb && a < b);
  });
  std::vector<std::pair<double, int>> scored;
  for (int r = 0; r < screened; ++r) {
    int i = order[r];
    double sl = smallest_singular_fast(left_op(A, xs[i])).value;
    double sr = smallest_singular_fast(right_op(A, xs[i])).value;
    scored.emplace_back(sl * sr, i);
  }
  std::sort(scored.begin(), scored.end());

  const int starts = std::min<int>(opts.starts, static_cast<int>(scored.size()));
  std::optional<Pair> best;
  for (int st = 0; st < starts; ++st) {
    const Vec& x0 = xs[scored[st].second];
    Pair p = alternating_descent(A, x0, opts.max_iterations, 0.01 * tol);
    p = newton_polish(A, p);
    // Also descend from the right-hand side: minimize |y x0| over y.
    SmallestSingular sr = smallest_singular_fast(right_op(A, x0));
    Pair q = alternating_descent(A, sr.vector, opts.max_iterations, 0.01 * tol);
    q = newton_polish(A, q);
    if (q.value < p.value) p = q;
    if (!best || p.value < best->value) best = p;
    if (best->value <= tol) break;
  }

  v.bound = best->value;
  if (best->value <= tol) {
    v.status = DivisionVerdict::Status::not_division;
    v.method = DivisionVerdict::Method::certificate;
    v.zero_pair = std::make_pair(best->x, best->y);
    v.zero_pair_residual = best->value;
  } else if (best->value > 10.0 * tol) {
    v.status = DivisionVerdict::Status::division;
    v.method = DivisionVerdict::Method::numeric_bound;
  } else {
    v.status = DivisionVerdict::Status::indeterminate;
    v.method = DivisionVerdict::Method::numeric_bound;
  }
  return v;
}

bool recheck_certificate(const Algebra& A, const DivisionVerdict& v) {
  if (v.status != DivisionVerdict::Status::not_division) return false;
  const double tol = A.tol() * A.scale();
  if (v.zero_pair) {
    const auto& [x, y] = *v.zero_pair;
    if (x.size() == A.dim() && y.size() == A.dim() && x.norm() > 0 && y.norm() > 0 &&
        pair_value(A, x, y) <= 10.0 * tol)
      return true;
  }
  if (v.sign_change) {
    const auto& [x0, x1] = *v.sign_change;
    auto det = [&](const Vec& x) {
      return (v.sign_change_right ? right_op(A, x) : left_op(A, x)).determinant();
    };
    double d0 = det(x0), d1 = det(x1);
    if (A.dim() >= 2 && d0 * d1 < 0.0) return true;
  }
  return false;
}

Mat osborn4_gram(double alpha, double beta, double gamma) {
  Mat G = Mat::Zero(4, 4);
  G(0, 0) = 1.0;
  G(0, 1) = G(1, 0) = beta / 2.0;
  G(1, 1) = alpha * gamma;
  G(2, 2) = alpha;
  G(2, 3) = G(3, 2) = beta / 2.0;
  G(3, 3) = gamma;
  return G;
}

bool osborn4_criterion(double alpha, double beta, double gamma) {
  if (alpha == 0.0 || gamma == 0.0) throw AlgebraError("osborn4_criterion: alpha and gamma must be nonzero");
  if (beta != 0.0 && beta != 1.0) throw AlgebraError("osborn4_criterion: beta must be 0 or 1");
  Eigen::SelfAdjointEigenSolver<Mat> es(osborn4_gram(alpha, beta, gamma));
  const Vec& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  return ev.minCoeff() > kDefaultTolerance * scale || ev.maxCoeff() < -kDefaultTolerance * scale;
}

bool quadratic_division_negdef(const Algebra& A) {
  QuadraticStructure q = extract_quadratic_structure(A);
  if (q.vdim == 0) return true;
  Eigen::SelfAdjointEigenSolver<Mat> es(q.symmetric_form());
  return es.eigenvalues().maxCoeff() < -A.tol();
}

namespace {

CriterionReport finish(std::vector<std::pair<std::string, double>> margins) {
  CriterionReport r;
  r.verdict = true;
  r.slack = std::numeric_limits<double>::infinity();
  for (auto& [name, m] : margins) {
    r.verdict = r.verdict && m > 0.0;
    r.slack = std::min(r.slack, std::abs(m));
  }
  r.margins = std::move(margins);
  return r;
}

}  // namespace

CriterionReport table1_criterion_report(const Table1Params& p) {
  const double a = p.a, b = p.b, c = p.c;
  const double al = p.alpha, be = p.beta, ga = p.gamma, mu = p.mu, la = p.lambda, et = p.eta;
  const double si = p.sigma, de = p.delta, nu = p.nu, pi = p.pi, rho = p.rho, th = p.theta, om = p.omega;
  const double P1 = be * ga - al * mu;
  const double P2 = be * la - al * et;
  const double P3 = ga * la - al * si;
  const double K = b * rho - pi * c;
  const double S = al * de - be * si - la * mu + ga * et;
  const double T = al * de - be * si + la * mu - ga * et;
  const double Q = P1 * K * K + b * b * (si * et - la * de) * nu * nu + b * nu * T * K;
  const double lhs = b * c * S * S + a * b * P2 * om * om + a * c * P3 * th * th + Q;
  const double rhs = a * th * om * (al * K - b * la * nu) + 4.0 * b * c * P2 * (si * mu - ga * de);

  std::vector<std::pair<std::string, double>> m{
      {"beta*lambda-alpha*eta", P2}, {"gamma*lambda-alpha*sigma", P3}, {"master", rhs - lhs}};
  if (nu == 0.0 && th == 0.0) {
    m.emplace_back("beta*gamma-alpha*mu", P1);
  } else if (nu == 0.0) {
    m.emplace_back("beta*gamma-alpha*mu", P1);
    m.emplace_back("theta_omega", c * P3 * th * th + b * P2 * om * om - al * om * th * K);
  } else if (th == 0.0) {
    m.emplace_back("Q", Q);
  } else {
    m.emplace_back("theta_omega", c * P3 * th * th + b * P2 * om * om - om * th * (al * K - b * la * nu));
    m.emplace_back("Q", Q);
  }
  return finish(std::move(m));
}

bool table1_division_criterion(const Table1Params& p) {
  if (!(p.a > 0 && p.b > 0 && p.c > 0)) throw AlgebraError("table1_division_criterion: a, b, c must be positive");
  return table1_criterion_report(p).verdict;
}

namespace detail {

bool table1_necessary(const Table1Params& p) {
  return p.beta * p.gamma - p.alpha * p.mu > 0 && p.beta * p.lambda - p.alpha * p.eta > 0 &&
         p.gamma * p.lambda - p.alpha * p.sigma > 0;
}

bool table1_criterion_planar(const Table1Params& p) {
  const double P1 = p.beta * p.gamma - p.alpha * p.mu;
  const double P2 = p.beta * p.lambda - p.alpha * p.eta;
  const double S = p.alpha * p.delta - p.beta * p.sigma - p.lambda * p.mu + p.gamma * p.eta;
  return table1_necessary(p) &&
         p.c * S * S + p.b * P1 * p.rho * p.rho + p.a * P2 * p.omega * p.omega <
             4.0 * p.c * P2 * (p.mu * p.sigma - p.gamma * p.delta);
}

bool table1_criterion_theta(const Table1Params& p) {
  const double a = p.a, b = p.b, c = p.c;
  const double P1 = p.beta * p.gamma - p.alpha * p.mu;
  const double P2 = p.beta * p.lambda - p.alpha * p.eta;
  const double P3 = p.gamma * p.lambda - p.alpha * p.sigma;
  const double S = p.alpha * p.delta - p.beta * p.sigma - p.lambda * p.mu + p.gamma * p.eta;
  const double rot = a * b * p.alpha * p.rho * p.omega * p.theta;
  return table1_necessary(p) &&
         c * P3 * p.theta * p.theta + b * P2 * p.omega * p.omega > b * p.alpha * p.rho * p.omega * p.theta &&
         b * c * S * S + a * b * P2 * p.omega * p.omega + b * b * P1 * p.rho * p.rho + a * c * P3 * p.theta * p.theta <
             rot + 4.0 * b * c * P2 * (p.sigma * p.mu - p.gamma * p.delta);
}

}  // namespace detail

CriterionReport table5_criterion_report(double eta, double b, double c, double rho) {
  if (!(b > 0 && c > 0)) throw AlgebraError("table5_division_criterion: b and c must be positive");
  return finish({{"-eta", -eta}, {"4c*eta^2-b*rho^2", 4.0 * c * eta * eta - b * rho * rho}});
}

bool table5_division_criterion(double eta, double b, double c, double rho) {
  return table5_criterion_report(eta, b, c, rho).verdict;
}

bool cor414_criterion(double lambda, double mu, double alpha, double beta, double delta) {
  if (lambda == 0.5 || mu == 0.5) return false;
  const double q = beta * beta + 2.0 * alpha - 1.0;
  const double lhs = (2.0 * alpha - 1.0) * delta - beta;
  return q > 0.0 && lhs * lhs < 4.0 * q * (1.0 + beta * delta);
}

bool e_delta_criterion(double delta) { return std::abs(delta) < 2.0; }

std::optional<std::string> hopf_gate(const Algebra& A, bool claimed_division) {
  const int n = A.dim();
  if (claimed_division && n != 1 && n != 2 && n != 4 && n != 8)
    return "division claimed for dimension " + std::to_string(n) +
           ", but real division algebras only exist in dimensions 1, 2, 4 and 8";
  return std::nullopt;
}

}  // namespace nadiv
