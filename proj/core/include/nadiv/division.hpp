#pragma once

#include "nadiv/algebra.hpp"
#include "nadiv/constructions.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nadiv {

struct DivisionVerdict {
  enum class Status { division, not_division, indeterminate };
  enum class Method { closed_form, certificate, numeric_bound };

  Status status = Status::indeterminate;
  Method method = Method::numeric_bound;
  /// Unit x, y with |xy| small.
  std::optional<std::pair<Element, Element>> zero_pair;
  double zero_pair_residual = 0.0;
  /// Unit x0, x1 with det L_{x0} det L_{x1} < 0 (or the same for R).
  std::optional<std::pair<Element, Element>> sign_change;
  bool sign_change_right = false;
  /// Smallest |xy| over unit x, y reached by the search.
  std::optional<double> bound;
  /// Closed-form inputs and margins, echoed for the report.
  std::vector<std::pair<std::string, double>> inputs;
};

std::string status_name(DivisionVerdict::Status s);
std::string method_name(DivisionVerdict::Method m);

struct ZeroDivisorOptions {
  int samples = 20000;
  std::uint64_t seed = kDefaultSeed;
  int starts = 20;
  int max_iterations = 500;
};

/// Numeric division prober: determinant sign changes over seeded unit
/// samples, then local minimization of |xy| over pairs of unit vectors.
DivisionVerdict zero_divisor_search(const Algebra& A, int samples, std::uint64_t seed);
DivisionVerdict zero_divisor_search(const Algebra& A, const ZeroDivisorOptions& opts);

/// Re-evaluates a not_division certificate independently of the search.
bool recheck_certificate(const Algebra& A, const DivisionVerdict& v);

/// Gram matrix of l1^2 + b l1 l2 + a g l2^2 + a l3^2 + b l3 l4 + g l4^2.
Mat osborn4_gram(double alpha, double beta, double gamma);

/// Division criterion for osborn4(alpha, beta, gamma): the quadratic form
/// above must be anisotropic, which over the reals means definite.
bool osborn4_criterion(double alpha, double beta, double gamma);

/// J-division test for quadratic algebras: the symmetrized form on V is
/// negative definite.
bool quadratic_division_negdef(const Algebra& A);

/// Outcome of a closed-form criterion with its individual margins; each
/// margin must be strictly positive for the criterion to hold.
struct CriterionReport {
  bool verdict = false;
  std::vector<std::pair<std::string, double>> margins;
  /// Smallest |margin|; draws with small slack are boundary cases.
  double slack = 0.0;
};

CriterionReport table1_criterion_report(const Table1Params& p);
bool table1_division_criterion(const Table1Params& p);

CriterionReport table5_criterion_report(double eta, double b, double c, double rho);
bool table5_division_criterion(double eta, double b, double c, double rho);

bool cor414_criterion(double lambda, double mu, double alpha, double beta, double delta);

/// E_{-1,delta}(H) is division iff |delta| < 2.
bool e_delta_criterion(double delta);

/// Warning text when a division claim contradicts dim in {1, 2, 4, 8}.
std::optional<std::string> hopf_gate(const Algebra& A, bool claimed_division);

namespace detail {
/// Necessary conditions: beta gamma - alpha mu, beta lambda - alpha eta and
/// gamma lambda - alpha sigma are all positive.
bool table1_necessary(const Table1Params& p);
/// The case nu = pi = theta = 0.
bool table1_criterion_planar(const Table1Params& p);
/// The case nu = pi = 0, theta != 0.
bool table1_criterion_theta(const Table1Params& p);
}  // namespace detail

}  // namespace nadiv
