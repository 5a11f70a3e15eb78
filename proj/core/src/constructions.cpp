#include "nadiv/constructions.hpp"

#include <charconv>
#include <cmath>
#include <vector>

namespace nadiv {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

// Builds a table whose entries are signed basis labels such as "-kf".
Algebra from_label_table(const std::vector<std::string>& labels,
                         const std::vector<std::vector<std::string>>& rows, std::string provenance) {
  const int n = static_cast<int>(labels.size());
  Tensor3 c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::string e = rows[i][j];
      double sign = 1.0;
      if (!e.empty() && e[0] == '-') {
        sign = -1.0;
        e = e.substr(1);
      }
      int k = 0;
      while (k < n && labels[k] != e) ++k;
      if (k == n) throw AlgebraError("internal: bad table entry " + rows[i][j]);
      c(i, j, k) = sign;
    }
  return Algebra(std::move(c), labels, kDefaultTolerance, std::move(provenance));
}

std::vector<std::string> doubled_labels(const std::vector<std::string>& base) {
  const std::size_t n = base.size();
  std::string g = n == 1 ? "i" : n == 2 ? "j" : n == 4 ? "f" : "e" + std::to_string(n);
  std::vector<std::string> out = base;
  for (const auto& l : base) out.push_back(l == "1" ? g : l + g);
  return out;
}

std::string provenance_or(const Algebra& A, const char* fallback) {
  return A.provenance().empty() ? std::string(fallback) : A.provenance();
}

}  // namespace

Algebra canonical(std::string_view name) {
  if (name == "R") return from_label_table({"1"}, {{"1"}}, "R");
  if (name == "C") return from_label_table({"1", "i"}, {{"1", "i"}, {"i", "-1"}}, "C");
  if (name == "Cstar") return from_label_table({"1", "i"}, {{"1", "-i"}, {"-i", "-1"}}, "Cstar");
  if (name == "H" || name == "Hplus") {
    Algebra H = from_label_table({"1", "i", "j", "k"},
                                 {{"1", "i", "j", "k"},
                                  {"i", "-1", "k", "-j"},
                                  {"j", "-k", "-1", "i"},
                                  {"k", "j", "-i", "-1"}},
                                 "H");
    if (name == "H") return H;
    return symmetrization(H).with_provenance("Hplus");
  }
  if (name == "O") {
    return from_label_table({"1", "i", "j", "k", "f", "if", "jf", "kf"},
                            {{"1", "i", "j", "k", "f", "if", "jf", "kf"},
                             {"i", "-1", "k", "-j", "if", "-f", "-kf", "jf"},
                             {"j", "-k", "-1", "i", "jf", "kf", "-f", "-if"},
                             {"k", "j", "-i", "-1", "kf", "-jf", "if", "-f"},
                             {"f", "-if", "-jf", "-kf", "-1", "i", "j", "k"},
                             {"if", "f", "-kf", "jf", "-i", "-1", "-k", "j"},
                             {"jf", "kf", "f", "-if", "-j", "k", "-1", "-i"},
                             {"kf", "-jf", "if", "f", "-k", "-j", "i", "-1"}},
                            "O");
  }
  throw AlgebraError("unknown canonical algebra '" + std::string(name) + "'");
}

Algebra mutation(const Algebra& A, double lambda) {
  const int n = A.dim();
  Tensor3 c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) c(i, j, k) = lambda * A.c(i, j, k) + (1.0 - lambda) * A.c(j, i, k);
  return Algebra(std::move(c), A.labels(), A.tol(),
                 "mut(" + provenance_or(A, "A") + "," + format_number(lambda) + ")");
}

Algebra symmetrization(const Algebra& A) {
  return mutation(A, 0.5).with_provenance("plus(" + provenance_or(A, "A") + ")");
}

LinearMap quadratic_conjugation(const Algebra& A) {
  auto u = find_unit(A);
  if (!u) throw AlgebraError("quadratic_conjugation: algebra is not unital");
  Vec t = trace_functional(A);
  return (*u) * t.transpose() - Mat::Identity(A.dim(), A.dim());
}

void require_cayley_involution(const Algebra& B, const LinearMap& K) {
  const int n = B.dim();
  if (K.rows() != n || K.cols() != n) throw AlgebraError("conjugation has wrong shape");
  auto u = find_unit(B);
  if (!u) throw AlgebraError("doubling requires a unital algebra");
  const double tol = B.tol() * B.scale() * n;
  auto scalar_residual = [&](const Vec& w) { return (w - (w.dot(*u) / u->squaredNorm()) * *u).norm(); };
  for (int i = 0; i < n; ++i) {
    Vec x = B.basis(i);
    Vec kx = K * x;
    if (scalar_residual(x + kx) > tol || scalar_residual(multiply(B, x, kx)) > tol)
      throw AlgebraError("conjugation is not a Cayley involution (basis vector " + B.labels()[i] + ")");
    for (int j = 0; j < n; ++j) {
      Vec y = B.basis(j);
      Vec s = x + y;
      if (scalar_residual(multiply(B, s, K * s)) > tol)
        throw AlgebraError("conjugation is not a Cayley involution");
    }
  }
}

Algebra cayley_dickson(const Algebra& B, double gamma) {
  return cayley_dickson(B, quadratic_conjugation(B), gamma);
}

Algebra cayley_dickson(const Algebra& B, const LinearMap& conj, double gamma) {
  if (gamma == 0.0) throw AlgebraError("cayley_dickson: gamma must be nonzero");
  GcdParams p{gamma, 1.0, 0.0, 0.0, 0.0};
  Algebra E = gcd_extension(B, conj, p);
  return E.with_provenance("cd(" + provenance_or(B, "B") + "," + format_number(gamma) + ")");
}

Algebra gcd_extension(const Algebra& B, const GcdParams& p) {
  return gcd_extension(B, quadratic_conjugation(B), p);
}

Algebra gcd_extension(const Algebra& B, const LinearMap& conj, const GcdParams& p) {
  if (p.gamma == 0.0) throw AlgebraError("gcd_extension: gamma must be nonzero");
  require_cayley_involution(B, conj);
  const int n = B.dim();
  const int N = 2 * n;
  auto m = [&](const Vec& x, const Vec& y) { return multiply(B, x, y); };
  auto com = [&](const Vec& x, const Vec& y) { return Vec(m(x, y) - m(y, x)); };
  auto mut = [&](const Vec& x, const Vec& y) { return Vec(p.alpha * m(x, y) + (1.0 - p.alpha) * m(y, x)); };

  Tensor3 c(N);
  for (int P = 0; P < N; ++P)
    for (int Q = 0; Q < N; ++Q) {
      Vec x = Vec::Zero(n), y = Vec::Zero(n), x2 = Vec::Zero(n), y2 = Vec::Zero(n);
      (P < n ? x : y)[P % n] = 1.0;
      (Q < n ? x2 : y2)[Q % n] = 1.0;
      Vec first = mut(x, x2) + 0.5 * p.beta * (com(x, y2) + com(y, x2)) + p.gamma * m(conj * y2, y);
      Vec second = m(y, conj * x2) + m(y2, x) + 0.5 * p.delta * com(y2, y) + 0.5 * p.theta * com(x2, x);
      for (int k = 0; k < n; ++k) {
        c(P, Q, k) = first[k];
        c(P, Q, n + k) = second[k];
      }
    }
  std::string prov = "gcd(" + provenance_or(B, "B") + "," + format_number(p.gamma) + "," +
                     format_number(p.alpha) + "," + format_number(p.beta) + "," + format_number(p.delta) +
                     "," + format_number(p.theta) + ")";
  return Algebra(std::move(c), doubled_labels(B.labels()), B.tol(), std::move(prov));
}

Mat gcd_form(const Algebra& B, double gamma) {
  const int n = B.dim();
  Mat G = trace_form(B);
  Mat K = quadratic_conjugation(B);
  Mat F = Mat::Zero(2 * n, 2 * n);
  F.topLeftCorner(n, n) = G;
  F.bottomRightCorner(n, n) = gamma * G * K;
  return F;
}

bool gcd_flexible_predicate(const GcdParams& p, double tol) {
  return std::abs(p.beta - p.gamma * p.theta) <= tol * std::max(1.0, std::abs(p.beta) + std::abs(p.gamma * p.theta));
}

Algebra build_quadratic(const QuadraticStructure& q, std::string provenance) {
  const int v = q.vdim;
  if (q.form.rows() != v || q.form.cols() != v || q.wedge.dim() != v)
    throw AlgebraError("build_quadratic: inconsistent quadratic structure shapes");
  const int n = v + 1;
  Tensor3 c(n);
  c(0, 0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    c(0, i, i) = 1.0;
    c(i, 0, i) = 1.0;
  }
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < v; ++j) {
      c(i + 1, j + 1, 0) = q.form(i, j);
      for (int k = 0; k < v; ++k) c(i + 1, j + 1, k + 1) = q.wedge(i, j, k);
    }
  std::vector<std::string> labels{"1"};
  if (static_cast<int>(q.vlabels.size()) == v) {
    labels.insert(labels.end(), q.vlabels.begin(), q.vlabels.end());
  } else {
    for (int i = 1; i <= v; ++i) labels.push_back("v" + std::to_string(i));
  }
  return Algebra(std::move(c), std::move(labels), kDefaultTolerance,
                 provenance.empty() ? "quad(@inline)" : std::move(provenance));
}

Algebra jform(const Mat& f) {
  if (f.rows() != f.cols()) throw AlgebraError("jform: form must be square");
  if ((f - f.transpose()).cwiseAbs().maxCoeff() > kDefaultTolerance)
    throw AlgebraError("jform: form must be symmetric");
  QuadraticStructure q;
  q.vdim = static_cast<int>(f.rows());
  q.form = f;
  q.wedge = Tensor3(q.vdim);
  return build_quadratic(q, "jform(@inline)");
}

Algebra vector_isotope(const Algebra& A, const LinearMap& phi) {
  QuadraticStructure q = extract_quadratic_structure(A);
  const int v = q.vdim;
  if (phi.rows() != v || phi.cols() != v)
    throw AlgebraError("vector_isotope: map must act on V of dimension " + std::to_string(v));
  Eigen::JacobiSVD<Mat> svd(phi);
  const Vec& s = svd.singularValues();
  if (v > 0 && !(s[v - 1] > A.tol() * std::max(1.0, s[0])))
    throw AlgebraError("vector_isotope: map is singular");
  Mat G = q.symmetric_form();
  Eigen::FullPivLU<Mat> glu(G);
  if (!glu.isInvertible()) throw AlgebraError("vector_isotope: the form on V is degenerate");
  Mat adj = glu.solve(phi.transpose() * G);

  auto wedge = [&](const Vec& x, const Vec& y) {
    Vec out = Vec::Zero(v);
    for (int i = 0; i < v; ++i)
      for (int j = 0; j < v; ++j) {
        double xy = x[i] * y[j];
        if (xy == 0.0) continue;
        for (int k = 0; k < v; ++k) out[k] += xy * q.wedge(i, j, k);
      }
    return out;
  };
  QuadraticStructure iso = q;
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < v; ++j) {
      Vec d = adj * wedge(phi.col(i), phi.col(j));
      for (int k = 0; k < v; ++k) iso.wedge(i, j, k) = d[k];
    }
  Algebra built = build_quadratic(iso);
  Algebra back = change_basis(built, q.embedding.inverse(), A.labels());
  return Algebra(back.tensor(), A.labels(), A.tol(),
                 "isotope(" + provenance_or(A, "A") + ",@matrix)");
}

Algebra osborn4(double alpha, double beta, double gamma) {
  QuadraticStructure q;
  q.vdim = 3;
  q.form = -Mat::Identity(3, 3);
  q.wedge = Tensor3(3);
  q.vlabels = {"x", "y", "z"};
  auto set = [&](int i, int j, int k, double val) {
    q.wedge(i, j, k) += val;
    q.wedge(j, i, k) -= val;
  };
  const int X = 0, Y = 1, Z = 2;
  set(Y, Z, X, 1.0);
  set(Z, X, Y, alpha);
  set(Z, X, Z, beta);
  set(X, Y, Z, gamma);
  return build_quadratic(q, "osborn4(" + format_number(alpha) + "," + format_number(beta) + "," +
                                format_number(gamma) + ")");
}

Prop44Matrices prop44_isotopy_matrices(double alpha) {
  if (!(alpha > 0.5 && alpha <= 1.0)) throw AlgebraError("prop44_isotopy_matrices: alpha must lie in (1/2, 1]");
  const double r = std::sqrt(1.0 - alpha * alpha);
  const double a_prime = r / ((alpha + 1.0) * (2.0 * alpha - 1.0));
  Mat phi = Mat::Zero(7, 7);
  for (int i = 0; i < 3; ++i) {
    phi(i, i) = 1.0 / (2.0 * alpha - 1.0);
    phi(i, 4 + i) = r;
    phi(4 + i, i) = a_prime;
    phi(4 + i, 4 + i) = alpha;
  }
  phi(3, 3) = 1.0;
  const double beta = 2.0 / ((alpha + 1.0) * (2.0 * alpha - 1.0) * (2.0 * alpha - 1.0));
  Vec d(7);
  d << std::pow(beta, -1.0 / 3.0), std::pow(beta, -1.0 / 3.0), std::pow(beta, -1.0 / 3.0),
      std::pow(beta, 1.0 / 6.0), std::pow(beta, 1.0 / 6.0), std::pow(beta, 1.0 / 6.0), std::pow(beta, 1.0 / 6.0);
  Mat psi = d.asDiagonal();
  const double lambda = (4.0 * alpha * alpha - 1.0) * r;
  return {phi, psi, lambda * std::sqrt(beta)};
}

}  // namespace nadiv
