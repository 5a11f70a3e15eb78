#include "nadiv/constructions.hpp"

#include <initializer_list>
#include <utility>

namespace nadiv {

namespace {

enum : int { kOne = 0, kU, kY1, kZ1, kY2, kZ2, kY3, kZ3 };

void require_positive(double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) throw AlgebraError("table parameters a, b, c must be positive");
}

std::string params_text(std::initializer_list<double> values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ",";
    out += format_number(v);
  }
  return out;
}

}  // namespace

std::array<double, 16> Table1Params::to_array() const {
  return {a, b, c, alpha, beta, gamma, mu, lambda, eta, sigma, delta, nu, pi, rho, theta, omega};
}

Table1Params Table1Params::from_array(const std::array<double, 16>& v) {
  Table1Params p;
  p.a = v[0], p.b = v[1], p.c = v[2];
  p.alpha = v[3], p.beta = v[4], p.gamma = v[5], p.mu = v[6];
  p.lambda = v[7], p.eta = v[8], p.sigma = v[9], p.delta = v[10];
  p.nu = v[11], p.pi = v[12], p.rho = v[13], p.theta = v[14], p.omega = v[15];
  return p;
}

Table1Params Table1Params::octonion() {
  Table1Params p;
  p.alpha = 1.0;
  p.mu = -1.0;
  p.eta = -1.0;
  p.sigma = -1.0;
  return p;
}

Algebra table1(const Table1Params& p) {
  require_positive(p.a, p.b, p.c);
  Tensor3 c(8);
  for (int i = 0; i < 8; ++i) {
    c(kOne, i, i) = 1.0;
    c(i, kOne, i) = 1.0;
  }
  for (int i = 1; i < 8; ++i) c(i, i, kOne) = -1.0;

  // Upper-triangular entries; the lower half follows by antisymmetry.
  using Terms = std::initializer_list<std::pair<int, double>>;
  auto set = [&](int x, int y, Terms terms) {
    for (auto [k, v] : terms) {
      c(x, y, k) += v;
      c(y, x, k) -= v;
    }
  };
  set(kU, kY1, {{kZ1, p.a}});
  set(kU, kZ1, {{kY1, -p.a}});
  set(kU, kY2, {{kZ2, p.b}});
  set(kU, kZ2, {{kY2, -p.b}});
  set(kU, kY3, {{kZ3, p.c}});
  set(kU, kZ3, {{kY3, -p.c}});

  set(kY1, kZ1, {{kU, p.a}});
  set(kY1, kY2, {{kY3, p.alpha}, {kZ3, p.beta}});
  set(kY1, kZ2, {{kY3, p.gamma}, {kZ3, p.mu}});
  set(kY1, kY3, {{kY2, -p.alpha}, {kZ2, -p.gamma}, {kZ3, p.nu}});
  set(kY1, kZ3, {{kY2, -p.beta}, {kZ2, -p.mu}, {kY3, -p.nu}});

  set(kZ1, kY2, {{kZ2, p.pi}, {kY3, p.lambda}, {kZ3, p.eta}});
  set(kZ1, kZ2, {{kY2, -p.pi}, {kY3, p.sigma}, {kZ3, p.delta}});
  set(kZ1, kY3, {{kY2, -p.lambda}, {kZ2, -p.sigma}, {kZ3, p.rho}});
  set(kZ1, kZ3, {{kY2, -p.eta}, {kZ2, -p.delta}, {kY3, -p.rho}});

  set(kY2, kZ2, {{kU, p.b}, {kZ1, p.pi}, {kZ3, p.theta}});
  set(kY2, kY3, {{kY1, p.alpha}, {kZ1, p.lambda}});
  set(kY2, kZ3, {{kY1, p.beta}, {kZ1, p.eta}, {kZ2, -p.theta}});

  set(kZ2, kY3, {{kY1, p.gamma}, {kZ1, p.sigma}, {kZ3, p.omega}});
  set(kZ2, kZ3, {{kY1, p.mu}, {kZ1, p.delta}, {kY2, p.theta}, {kY3, -p.omega}});

  set(kY3, kZ3, {{kU, p.c}, {kY1, p.nu}, {kZ1, p.rho}, {kZ2, p.omega}});

  std::string prov = "table1(";
  auto arr = p.to_array();
  for (std::size_t i = 0; i < arr.size(); ++i) prov += (i ? "," : "") + format_number(arr[i]);
  prov += ")";
  return Algebra(std::move(c), kTableLabels, kDefaultTolerance, std::move(prov));
}

Table1Params table4_params(double a, double b, double c, double alpha) {
  if (!(alpha > 0.0)) throw AlgebraError("table4: alpha must be positive");
  return table7_params(a, b, c, alpha, -alpha);
}

Table1Params table5_params(double a, double b, double c, double alpha, double eta, double lambda, double rho) {
  require_positive(a, b, c);
  if (!(alpha > 0.0)) throw AlgebraError("table5: alpha must be positive");
  Table1Params p;
  p.a = a, p.b = b, p.c = c;
  p.alpha = alpha;
  p.mu = -alpha;
  p.lambda = lambda;
  p.eta = eta;
  p.sigma = eta;
  p.delta = -lambda;
  p.rho = rho;
  return p;
}

Table1Params table7_params(double a, double b, double c, double alpha, double mu) {
  require_positive(a, b, c);
  Table1Params p;
  p.a = a, p.b = b, p.c = c;
  p.alpha = alpha;
  p.mu = mu;
  p.eta = mu;
  p.sigma = mu;
  return p;
}

Algebra table4(double a, double b, double c, double alpha) {
  return table1(table4_params(a, b, c, alpha)).with_provenance("table4(" + params_text({a, b, c, alpha}) + ")");
}

Algebra table5(double a, double b, double c, double alpha, double eta, double lambda, double rho) {
  return table1(table5_params(a, b, c, alpha, eta, lambda, rho))
      .with_provenance("table5(" + params_text({a, b, c, alpha, eta, lambda, rho}) + ")");
}

Algebra table7(double a, double b, double c, double alpha, double mu) {
  return table1(table7_params(a, b, c, alpha, mu))
      .with_provenance("table7(" + params_text({a, b, c, alpha, mu}) + ")");
}

Mat table_to_octonion_basis() {
  Mat M = Mat::Zero(8, 8);
  M(0, kOne) = 1.0;
  M(4, kU) = 1.0;
  for (int i = 0; i < 3; ++i) {
    M(1 + i, kY1 + 2 * i) = 1.0;
    M(5 + i, kZ1 + 2 * i) = -1.0;
  }
  return M;
}

}  // namespace nadiv
