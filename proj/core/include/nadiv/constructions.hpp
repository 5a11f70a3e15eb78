#pragma once

#include "nadiv/algebra.hpp"
#include "nadiv/structure.hpp"

#include <array>
#include <string>
#include <string_view>

namespace nadiv {

/// Canonical algebras: "R", "C", "Cstar" (conjugated product on C),
/// "H", "O", "Hplus" (symmetrized quaternions).
Algebra canonical(std::string_view name);

/// A^(lambda): x.y = lambda xy + (1 - lambda) yx.
Algebra mutation(const Algebra& A, double lambda);

/// A^+ = A^(1/2).
Algebra symmetrization(const Algebra& A);

/// Cayley involution t(x) 1 - x derived from the quadratic structure.
LinearMap quadratic_conjugation(const Algebra& A);

/// Throws unless K is a Cayley involution of the unital algebra B:
/// x + Kx and x Kx both lie in R1.
void require_cayley_involution(const Algebra& B, const LinearMap& K);

/// Doubling (x,y)(x',y') = (xx' + gamma y'^- y, y x'^- + y' x).
Algebra cayley_dickson(const Algebra& B, double gamma);
Algebra cayley_dickson(const Algebra& B, const LinearMap& conj, double gamma);

struct GcdParams {
  double gamma = -1.0;
  double alpha = 1.0;
  double beta = 0.0;
  double delta = 0.0;
  double theta = 0.0;
};

/// Generalized doubling E_{gamma,alpha,beta,delta,theta}(B).
Algebra gcd_extension(const Algebra& B, const GcdParams& p);
Algebra gcd_extension(const Algebra& B, const LinearMap& conj, const GcdParams& p);

/// Bilinear form ((x,y),(x',y')) = (x|x') + gamma (y|y'^-) on B x B.
Mat gcd_form(const Algebra& B, double gamma);

/// Flexibility transfer condition beta = gamma theta.
bool gcd_flexible_predicate(const GcdParams& p, double tol = kDefaultTolerance);

/// Unital algebra R1 + V with (a+x)(b+y) = (ab + (x,y)) + (ay + bx + x^y).
Algebra build_quadratic(const QuadraticStructure& q, std::string provenance = {});

/// J(V, f): quadratic algebra with zero wedge and form f.
Algebra jform(const Mat& f);

/// Vector isotope: same form, x D y = phi*(phi x ^ phi y) with phi* the
/// adjoint for the form. phi acts on V in the basis of the extracted
/// quadratic structure.
Algebra vector_isotope(const Algebra& A, const LinearMap& phi);

/// Four-dimensional quadratic algebra with form -I on V = <x,y,z> and
/// y^z = x, z^x = alpha y + beta z, x^y = gamma z.
Algebra osborn4(double alpha, double beta, double gamma);

struct Prop44Matrices {
  LinearMap phi;
  LinearMap psi;
  double delta_alpha;
};

/// The two 7x7 maps for which O(phi psi) has the table of E_{-1,delta}(H).
Prop44Matrices prop44_isotopy_matrices(double alpha);

/// Parameters of the 8-dimensional table family on the basis
/// 1, u, y1, z1, y2, z2, y3, z3.
struct Table1Params {
  double a = 1, b = 1, c = 1;
  double alpha = 0, beta = 0, gamma = 0, mu = 0, lambda = 0, eta = 0, sigma = 0, delta = 0;
  double nu = 0, pi = 0, rho = 0, theta = 0, omega = 0;

  static constexpr std::array<const char*, 16> kNames{"a",     "b",      "c",     "alpha",
                                                     "beta",  "gamma",  "mu",    "lambda",
                                                     "eta",   "sigma",  "delta", "nu",
                                                     "pi",    "rho",    "theta", "omega"};
  std::array<double, 16> to_array() const;
  static Table1Params from_array(const std::array<double, 16>& v);
  /// Parameters that reproduce the octonions after relabeling.
  static Table1Params octonion();
};

inline const std::vector<std::string> kTableLabels{"1", "u", "y1", "z1", "y2", "z2", "y3", "z3"};

Algebra table1(const Table1Params& p);
Table1Params table4_params(double a, double b, double c, double alpha);
Table1Params table5_params(double a, double b, double c, double alpha, double eta, double lambda, double rho);
Table1Params table7_params(double a, double b, double c, double alpha, double mu);
Algebra table4(double a, double b, double c, double alpha);
Algebra table5(double a, double b, double c, double alpha, double eta, double lambda, double rho);
Algebra table7(double a, double b, double c, double alpha, double mu);

/// Basis matrix expressing u, y_i, z_i of the table basis in the octonion
/// basis 1, e1..e7 via u = e4, y_i = e_i, z_i = -e_{i+4}.
Mat table_to_octonion_basis();

/// Shortest round-trip decimal rendering used in provenance strings.
std::string format_number(double v);

}  // namespace nadiv
