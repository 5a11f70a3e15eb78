#include "nadiv/identities.hpp"

#include "nadiv/sampling.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace nadiv {

namespace {

constexpr std::array<std::pair<Identity, std::string_view>, 12> kNames{{
    {Identity::associative, "associative"},
    {Identity::commutative, "commutative"},
    {Identity::anticommutative, "anticommutative"},
    {Identity::flexible, "flexible"},
    {Identity::alternative, "alternative"},
    {Identity::jordan, "jordan"},
    {Identity::nc_jordan, "nc_jordan"},
    {Identity::power_associative, "power_associative"},
    {Identity::weakly_alternative, "weakly_alternative"},
    {Identity::moufang_left, "moufang_left"},
    {Identity::moufang_right, "moufang_right"},
    {Identity::moufang_middle, "moufang_middle"},
}};

Vec stack(const Vec& a, const Vec& b) {
  Vec out(a.size() + b.size());
  out << a, b;
  return out;
}

// Identities that are linear in every argument except the first, where
// they are quadratic; checking x in {e_i, e_i + e_k} is then exhaustive.
bool quadratic_in_first(Identity id) {
  return id == Identity::flexible || id == Identity::alternative;
}

struct Tracker {
  const Algebra& A;
  IdentityResult& result;

  void consider(Identity id, const std::vector<Element>& args) {
    IdentityEval ev = evaluate_identity(A, id, args);
    double abs_res = ev.residual.norm();
    double rel = abs_res / std::max(1.0, ev.magnitude);
    result.max_residual = std::max(result.max_residual, rel);
    if (rel > A.tol() && result.holds) {
      result.holds = false;
      result.witness = args;
      result.witness_residual = abs_res;
    }
  }
};

void basis_tuples(const Algebra& A, Identity id, Tracker& t) {
  const int n = A.dim();
  const int arity = identity_arity(id);
  std::vector<int> idx(arity, 0);
  while (true) {
    std::vector<Element> args;
    for (int a : idx) args.push_back(A.basis(a));
    t.consider(id, args);
    int pos = arity - 1;
    while (pos >= 0 && ++idx[pos] == n) idx[pos--] = 0;
    if (pos < 0) break;
  }
  if (quadratic_in_first(id)) {
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k)
        for (int j = 0; j < n; ++j) t.consider(id, {A.basis(i) + A.basis(k), A.basis(j)});
  }
}

}  // namespace

const std::vector<Identity>& all_identities() {
  static const std::vector<Identity> ids = [] {
    std::vector<Identity> v;
    for (auto& [id, name] : kNames) v.push_back(id);
    return v;
  }();
  return ids;
}

std::string_view identity_name(Identity id) {
  for (auto& [i, name] : kNames)
    if (i == id) return name;
  return "unknown";
}

Identity parse_identity(std::string_view name) {
  for (auto& [id, n] : kNames)
    if (n == name) return id;
  throw AlgebraError("unknown identity '" + std::string(name) + "'");
}

bool is_multilinear(Identity id) {
  switch (id) {
    case Identity::associative:
    case Identity::commutative:
    case Identity::anticommutative:
    case Identity::flexible:
    case Identity::alternative:
      return true;
    default:
      return false;
  }
}

int identity_arity(Identity id) {
  switch (id) {
    case Identity::power_associative:
      return 1;
    case Identity::associative:
    case Identity::moufang_left:
    case Identity::moufang_right:
    case Identity::moufang_middle:
      return 3;
    default:
      return 2;
  }
}

IdentityEval evaluate_identity(const Algebra& A, Identity which, const std::vector<Element>& args) {
  if (static_cast<int>(args.size()) < identity_arity(which))
    throw AlgebraError("evaluate_identity: too few arguments for " + std::string(identity_name(which)));
  auto m = [&](const Vec& a, const Vec& b) { return multiply(A, a, b); };
  const Vec& x = args[0];
  switch (which) {
    case Identity::associative: {
      Vec l = m(m(x, args[1]), args[2]);
      Vec r = m(x, m(args[1], args[2]));
      return {l - r, l.norm() + r.norm()};
    }
    case Identity::commutative: {
      Vec l = m(x, args[1]), r = m(args[1], x);
      return {l - r, l.norm() + r.norm()};
    }
    case Identity::anticommutative: {
      Vec l = m(x, args[1]), r = m(args[1], x);
      return {l + r, l.norm() + r.norm()};
    }
    case Identity::flexible: {
      const Vec& y = args[1];
      Vec l = m(m(x, y), x), r = m(x, m(y, x));
      return {l - r, l.norm() + r.norm()};
    }
    case Identity::alternative: {
      const Vec& y = args[1];
      Vec l1 = m(m(x, x), y), r1 = m(x, m(x, y));
      Vec l2 = m(m(y, x), x), r2 = m(y, m(x, x));
      return {stack(l1 - r1, l2 - r2), l1.norm() + r1.norm() + l2.norm() + r2.norm()};
    }
    case Identity::jordan: {
      const Vec& y = args[1];
      Vec x2 = m(x, x);
      Vec l = m(m(x2, y), x), r = m(x2, m(y, x));
      return {l - r, l.norm() + r.norm()};
    }
    case Identity::nc_jordan: {
      IdentityEval f = evaluate_identity(A, Identity::flexible, args);
      IdentityEval j = evaluate_identity(A, Identity::jordan, args);
      return {stack(f.residual, j.residual), f.magnitude + j.magnitude};
    }
    case Identity::power_associative: {
      Vec x2 = m(x, x);
      Vec l1 = m(x2, x), r1 = m(x, x2);
      Vec l2 = m(x2, x2), r2 = m(x, m(x, x2));
      return {stack(l1 - r1, l2 - r2), l1.norm() + r1.norm() + l2.norm() + r2.norm()};
    }
    case Identity::weakly_alternative: {
      Vec c = commutator(A, x, args[1]);
      Vec l = m(m(x, x), c), r = m(x, m(x, c));
      return {l - r, l.norm() + r.norm()};
    }
    case Identity::moufang_left: {
      const Vec &y = args[1], &z = args[2];
      Vec l = m(x, m(y, m(x, z)));
      Vec r = m(m(m(x, y), x), z);
      return {l - r, l.norm() + r.norm()};
    }
    case Identity::moufang_right: {
      const Vec &y = args[1], &z = args[2];
      Vec l = m(m(m(z, x), y), x);
      Vec r = m(z, m(m(x, y), x));
      return {l - r, l.norm() + r.norm()};
    }
    case Identity::moufang_middle: {
      const Vec &y = args[1], &z = args[2];
      Vec l = m(m(x, y), m(z, x));
      Vec r = m(m(x, m(y, z)), x);
      return {l - r, l.norm() + r.norm()};
    }
  }
  throw AlgebraError("evaluate_identity: unhandled identity");
}

IdentityResult check_identity(const Algebra& A, Identity which, int samples, std::uint64_t seed) {
  if (samples < 1) throw AlgebraError("check_identity: samples must be at least 1");
  IdentityResult result;
  result.identity = which;
  if (which == Identity::nc_jordan) {
    IdentityResult f = check_identity(A, Identity::flexible, samples, seed);
    IdentityResult j = check_identity(A, Identity::jordan, samples, seed);
    result.max_residual = std::max(f.max_residual, j.max_residual);
    result.holds = f.holds && j.holds;
    const IdentityResult& bad = f.holds ? j : f;
    result.witness = bad.witness;
    result.witness_residual = bad.witness_residual;
    return result;
  }

  Tracker t{A, result};
  basis_tuples(A, which, t);
  if (!is_multilinear(which)) {
    Sampler s(seed);
    const int arity = identity_arity(which);
    for (int k = 0; k < samples; ++k) {
      std::vector<Element> args;
      for (int a = 0; a < arity; ++a) args.push_back(s.unit(A.dim()));
      t.consider(which, args);
    }
  }
  return result;
}

}  // namespace nadiv
