#include "nadiv/algebra.hpp"
#include "nadiv/constructions.hpp"
#include "nadiv/identities.hpp"
#include "nadiv/sampling.hpp"
#include "nadiv/structure.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace nadiv {
namespace {

using test::e;

Element by_label(const Algebra& A, const std::string& l) { return A.basis(l); }

TEST(Algebra, RejectsNonFiniteEntries) {
  Tensor3 t(2);
  t(0, 0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Algebra{t}, AlgebraError);
}

TEST(Algebra, RejectsLabelCountMismatch) { EXPECT_THROW(Algebra(Tensor3(2), {"a"}), AlgebraError); }

TEST(Algebra, RejectsEmptyDimension) { EXPECT_THROW(Algebra(Tensor3(0)), AlgebraError); }

TEST(Multiply, OctonionIJ) {
  Algebra O = canonical("O");
  Vec k = multiply(O, by_label(O, "i"), by_label(O, "j"));
  EXPECT_LT((k - by_label(O, "k")).norm(), 1e-15);
}

TEST(Multiply, UnitIsNeutral) {
  Algebra O = canonical("O");
  Sampler rng(1);
  Vec x = rng.gaussian(8);
  EXPECT_LT((multiply(O, O.basis(0), x) - x).norm(), 1e-15);
  EXPECT_LT((multiply(O, x, O.basis(0)) - x).norm(), 1e-15);
}

TEST(Multiply, MutatedQuaternions) {
  Algebra A = mutation(canonical("H"), 0.75);
  Vec r = multiply(A, A.basis("i"), A.basis("j"));
  EXPECT_LT((r - 0.5 * A.basis("k")).norm(), 1e-15);
}

TEST(Multiply, DimensionMismatchThrows) {
  Algebra H = canonical("H");
  EXPECT_THROW(multiply(H, Vec::Zero(3), Vec::Zero(4)), AlgebraError);
}

TEST(Operators, LeftOfUnitIsIdentity) {
  Algebra O = canonical("O");
  EXPECT_LT((left_op(O, O.basis(0)) - Mat::Identity(8, 8)).norm(), 1e-15);
}

TEST(Operators, QuaternionLeftMultiplicationIsOrthogonal) {
  Algebra H = canonical("H");
  Eigen::JacobiSVD<Mat> svd(left_op(H, H.basis("i")));
  EXPECT_NEAR(svd.singularValues().minCoeff(), 1.0, 1e-12);
  EXPECT_NEAR(svd.singularValues().maxCoeff(), 1.0, 1e-12);
}

TEST(Operators, SymmetrizedQuaternionsHaveSingularLeftMultiplication) {
  Algebra Hp = canonical("Hplus");
  Vec r = left_op(Hp, Hp.basis("i")) * Hp.basis("j");
  EXPECT_LT(r.norm(), 1e-15);
}

TEST(Operators, ColumnsAreProducts) {
  Algebra O = canonical("O");
  Sampler rng(3);
  Vec x = rng.gaussian(8);
  for (int j = 0; j < 8; ++j) {
    EXPECT_LT((left_op(O, x).col(j) - multiply(O, x, O.basis(j))).norm(), 1e-13);
    EXPECT_LT((right_op(O, x).col(j) - multiply(O, O.basis(j), x)).norm(), 1e-13);
  }
}

TEST(Associator, OctonionExamples) {
  Algebra O = canonical("O");
  Vec i = O.basis("i"), j = O.basis("j"), f = O.basis("f");
  EXPECT_LT(associator(O, i, i, j).norm(), 1e-15);
  EXPECT_LT((associator(O, i, j, f) - 2.0 * O.basis("kf")).norm(), 1e-15);
  EXPECT_LT(commutator(O, i + f, i + f).norm(), 1e-15);
}

TEST(UOperator, UnitGivesIdentity) {
  Algebra O = canonical("O");
  EXPECT_LT((u_operator(O, O.basis(0)) - Mat::Identity(8, 8)).norm(), 1e-14);
}

TEST(UOperator, CommutativeFormula) {
  Algebra Hp = canonical("Hplus");
  Sampler rng(5);
  Vec x = rng.gaussian(4);
  Mat L = left_op(Hp, x);
  Mat expect = 2.0 * L * L - left_op(Hp, multiply(Hp, x, x));
  EXPECT_LT((u_operator(Hp, x) - expect).norm(), 1e-12);
}

TEST(UOperator, FlexibleRightFormulaAgrees) {
  Algebra A = mutation(canonical("H"), 0.7);
  Sampler rng(6);
  for (int s = 0; s < 10; ++s) {
    Vec x = rng.gaussian(4);
    Mat L = left_op(A, x), R = right_op(A, x);
    Mat right = R * (L + R) - right_op(A, multiply(A, x, x));
    EXPECT_LT((u_operator(A, x) - right).norm(), 1e-12);
  }
}

TEST(Identities, ParseRoundTripAndUnknownName) {
  for (Identity id : all_identities()) EXPECT_EQ(parse_identity(identity_name(id)), id);
  EXPECT_THROW(parse_identity("commutativeish"), AlgebraError);
  EXPECT_THROW(check_identity(canonical("H"), Identity::flexible, 0), AlgebraError);
}

TEST(Identities, OctonionProfile) {
  Algebra O = canonical("O");
  for (Identity id : {Identity::alternative, Identity::flexible, Identity::nc_jordan, Identity::moufang_left,
                      Identity::moufang_right, Identity::moufang_middle, Identity::power_associative,
                      Identity::weakly_alternative})
    EXPECT_TRUE(check_identity(O, id).holds) << identity_name(id);
  IdentityResult assoc = check_identity(O, Identity::associative);
  EXPECT_FALSE(assoc.holds);
  ASSERT_EQ(assoc.witness.size(), 3u);
  EXPECT_GT(associator(O, assoc.witness[0], assoc.witness[1], assoc.witness[2]).norm(), 1e-6);
}

TEST(Identities, QuaternionsAreAssociative) { EXPECT_TRUE(check_identity(canonical("H"), Identity::associative).holds); }

TEST(Identities, NonFlexibleDoublingHasWitness) {
  GcdParams p{-1.0, 1.0, 0.0, 0.0, 1.0};
  Algebra E = gcd_extension(canonical("H"), p);
  IdentityResult r = check_identity(E, Identity::flexible);
  EXPECT_FALSE(r.holds);
  ASSERT_EQ(r.witness.size(), 2u);
  EXPECT_GT(associator(E, r.witness[0], r.witness[1], r.witness[0]).norm(), 1e-6);
}

TEST(Identities, CommutativeImpliesFlexible) {
  EXPECT_TRUE(check_identity(canonical("Hplus"), Identity::commutative).holds);
  EXPECT_TRUE(check_identity(canonical("Hplus"), Identity::flexible).holds);
  EXPECT_TRUE(check_identity(canonical("C"), Identity::flexible).holds);
}

TEST(Identities, MutatedQuaternionsAreNoncommutativeJordan) {
  EXPECT_TRUE(check_identity(mutation(canonical("H"), 0.8), Identity::nc_jordan).holds);
}

// Flexibility coincides with [L_x, R_x] = 0 on random samples.
TEST(IdentityProperties, FlexibleMatchesOperatorCommutation) {
  Sampler rng(11);
  std::vector<Algebra> algebras = {canonical("O"), mutation(canonical("O"), 0.3),
                                   gcd_extension(canonical("H"), GcdParams{-1.0, 1.0, 0.0, 0.0, 1.0}),
                                   canonical("Cstar")};
  for (const Algebra& A : algebras) {
    bool commute = true;
    for (int s = 0; s < 100; ++s) {
      Vec x = rng.unit(A.dim());
      Mat L = left_op(A, x), R = right_op(A, x);
      if ((L * R - R * L).norm() > A.tol()) commute = false;
    }
    EXPECT_EQ(check_identity(A, Identity::flexible).holds, commute) << A.provenance();
  }
}

TEST(IdentityProperties, PowerAssociativeGivesConsistentPowers) {
  Sampler rng(12);
  for (const Algebra& A : {canonical("O"), mutation(canonical("H"), 0.8), canonical("Hplus")}) {
    ASSERT_TRUE(check_identity(A, Identity::power_associative).holds);
    for (int s = 0; s < 50; ++s) {
      Vec x = rng.unit(A.dim());
      for (int n = 1; n < 6; ++n)
        for (int m = 1; n + m <= 6; ++m) {
          Vec lhs = multiply(A, left_power(A, x, n), left_power(A, x, m));
          EXPECT_LT((lhs - left_power(A, x, n + m)).norm(), 1e-9);
        }
    }
  }
}

TEST(IdentityProperties, AlternativeImpliesMoufang) {
  for (const Algebra& A : {canonical("O"), canonical("H"), canonical("C")}) {
    ASSERT_TRUE(check_identity(A, Identity::alternative).holds);
    for (Identity id : {Identity::moufang_left, Identity::moufang_right, Identity::moufang_middle})
      EXPECT_TRUE(check_identity(A, id).holds);
  }
}

TEST(IdentityProperties, Bilinearity) {
  Algebra A = gcd_extension(canonical("H"), GcdParams{-0.5, 0.9, 0.3, 0.2, 0.6});
  Sampler rng(13);
  for (int s = 0; s < 50; ++s) {
    Vec x = rng.gaussian(8), y = rng.gaussian(8), z = rng.gaussian(8);
    const double a = rng.normal(), b = rng.normal();
    Vec lhs = multiply(A, a * x + b * y, z);
    Vec rhs = a * multiply(A, x, z) + b * multiply(A, y, z);
    EXPECT_LE((lhs - rhs).norm(), 1e-12 * std::max(1.0, rhs.norm() + lhs.norm()));
  }
}

TEST(IdentityProperties, IdentitiesSurviveChangeOfBasis) {
  Algebra O = canonical("O");
  Algebra Q = change_basis(O, Sampler(14).orthogonal(8) * 2.0);
  for (Identity id : all_identities()) EXPECT_EQ(check_identity(O, id).holds, check_identity(Q, id).holds) << identity_name(id);
}

TEST(FindUnit, Octonions) {
  std::optional<Element> u = find_unit(canonical("O"));
  ASSERT_TRUE(u);
  EXPECT_LT((*u - e(8, 0)).norm(), 1e-12);
}

TEST(FindUnit, ConjugatedComplexAndZeroAlgebraHaveNone) {
  EXPECT_FALSE(find_unit(canonical("Cstar")));
  EXPECT_FALSE(find_unit(Algebra(Tensor3(1))));
}

TEST(FindUnit, ResultIsTwoSided) {
  for (const Algebra& A : {canonical("Hplus"), mutation(canonical("O"), 0.2), canonical("R")}) {
    std::optional<Element> u = find_unit(A);
    ASSERT_TRUE(u);
    const Mat I = Mat::Identity(A.dim(), A.dim());
    EXPECT_LE((left_op(A, *u) - I).norm() + (right_op(A, *u) - I).norm(), A.tol());
  }
}

TEST(GeneratedSubalgebra, OctonionExamples) {
  Algebra O = canonical("O");
  EXPECT_EQ(generated_subalgebra(O, {O.basis(0), O.basis("i")}).cols(), 2);
  EXPECT_EQ(generated_subalgebra(O, {O.basis("i"), O.basis("j")}).cols(), 4);
  EXPECT_EQ(generated_subalgebra(O, {O.basis("i"), O.basis("j"), O.basis("f")}).cols(), 8);
}

TEST(GeneratedSubalgebra, MutationCompatible) {
  Algebra O = canonical("O");
  Algebra M = mutation(O, 0.3);
  Sampler rng(15);
  std::vector<Element> S = {rng.gaussian(8), rng.gaussian(8)};
  Mat a = generated_subalgebra(O, S), b = generated_subalgebra(M, S);
  ASSERT_EQ(a.cols(), b.cols());
  EXPECT_LT((a * a.transpose() - b * b.transpose()).norm(), 1e-9);
}

TEST(JInvertible, Examples) {
  Algebra H = canonical("H");
  EXPECT_TRUE(j_invertible(H, H.basis("i")));
  EXPECT_TRUE(j_invertible(canonical("Hplus"), H.basis("i")));
  EXPECT_FALSE(j_invertible(H, Vec::Zero(4)));
  EXPECT_THROW(j_invertible(canonical("Cstar"), Vec::Unit(2, 0)), AlgebraError);
}

TEST(Quadratic, OctonionStructure) {
  Algebra O = canonical("O");
  QuadraticStructure q = extract_quadratic_structure(O);
  EXPECT_EQ(q.vdim, 7);
  EXPECT_LT((q.symmetric_form() + Mat::Identity(7, 7)).norm(), 1e-12);
}

TEST(Quadratic, MutationKeepsForm) {
  QuadraticStructure h = extract_quadratic_structure(canonical("H"));
  QuadraticStructure m = extract_quadratic_structure(mutation(canonical("H"), 0.3));
  EXPECT_LT((h.symmetric_form() - m.symmetric_form()).norm(), 1e-12);
}

TEST(Quadratic, MatrixAlgebraIsRejected) {
  // M_3(R) on matrix units E_ab: E_ab E_cd = [b == c] E_ad.
  Tensor3 t(9);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int d = 0; d < 3; ++d) t(3 * a + b, 3 * b + d, 3 * a + d) = 1.0;
  Algebra M(t);
  EXPECT_TRUE(find_unit(M).has_value());
  EXPECT_FALSE(is_quadratic(M));
  EXPECT_THROW(extract_quadratic_structure(M), AlgebraError);
}

TEST(Quadratic, RebuildReproducesTensor) {
  for (const Algebra& A : {canonical("O"), canonical("H"), mutation(canonical("H"), 0.7),
                           gcd_extension(canonical("H"), GcdParams{-1.0, 1.0, 0.0, 1.0, 0.0}),
                           change_basis(canonical("O"), Sampler(16).orthogonal(8))}) {
    QuadraticStructure q = extract_quadratic_structure(A);
    Algebra B = change_basis(build_quadratic(q), q.embedding.inverse());
    EXPECT_LT(B.tensor().max_abs_diff(A.tensor()), 1e-9) << A.provenance();
  }
}

TEST(Quadratic, TraceFormOfOctonions) {
  Mat G = trace_form(canonical("O"));
  Vec d = Vec::Constant(8, -1.0);
  d[0] = 1.0;
  EXPECT_LT((G - Mat(d.asDiagonal())).norm(), 1e-12);
}

TEST(ChangeBasis, RoundTrip) {
  Algebra O = canonical("O");
  Mat P = Sampler(17).orthogonal(8) + 0.5 * Mat::Identity(8, 8);
  Algebra back = change_basis(change_basis(O, P), P.inverse());
  EXPECT_LT(back.tensor().max_abs_diff(O.tensor()), 1e-12);
}

TEST(LeftPower, Convention) {
  Algebra O = canonical("O");
  Vec x = O.basis("i") + O.basis("f");
  EXPECT_LT((left_power(O, x, 3) - multiply(O, x, multiply(O, x, x))).norm(), 1e-14);
  EXPECT_THROW(left_power(O, x, 0), AlgebraError);
}

}  // namespace
}  // namespace nadiv
