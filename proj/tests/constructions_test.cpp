#include "nadiv/constructions.hpp"
#include "nadiv/identities.hpp"
#include "nadiv/lie.hpp"
#include "nadiv/sampling.hpp"
#include "nadiv/structure.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace nadiv {
namespace {

Algebra H() { return canonical("H"); }
Algebra O() { return canonical("O"); }

TEST(Canonical, MatchesGoldenTensors) {
  EXPECT_EQ(O().tensor().max_abs_diff(test::golden("O.json").tensor()), 0.0);
  EXPECT_EQ(H().tensor().max_abs_diff(test::golden("H.json").tensor()), 0.0);
}

TEST(Canonical, TableEntries) {
  Algebra o = O();
  EXPECT_LT((multiply(o, o.basis("jf"), o.basis("kf")) + o.basis("i")).norm(), 1e-15);
  Algebra cs = canonical("Cstar");
  EXPECT_LT((multiply(cs, cs.basis("i"), cs.basis("i")) + cs.basis("1")).norm(), 1e-15);
  Algebra r = canonical("R");
  EXPECT_EQ(r.c(0, 0, 0), 1.0);
  EXPECT_THROW(canonical("S"), AlgebraError);
}

TEST(Mutation, OneIsIdentityAndHalfIsCommutative) {
  EXPECT_EQ(mutation(O(), 1.0).tensor().max_abs_diff(O().tensor()), 0.0);
  EXPECT_TRUE(check_identity(mutation(O(), 0.5), Identity::commutative).holds);
  EXPECT_LT(mutation(H(), 0.75).tensor().max_abs_diff(test::golden("H_mut_0.75.json").tensor()), 1e-15);
}

TEST(Mutation, CompositionLaw) {
  Sampler rng(21);
  for (int s = 0; s < 20; ++s) {
    const double l = rng.uniform(-2, 2), m = rng.uniform(-2, 2);
    Algebra twice = mutation(mutation(O(), l), m);
    Algebra once = mutation(O(), 2 * l * m - l - m + 1);
    EXPECT_LT(twice.tensor().max_abs_diff(once.tensor()), 1e-12);
  }
}

TEST(CayleyDickson, DoublingTower) {
  EXPECT_LT(cayley_dickson(canonical("C"), -1.0).tensor().max_abs_diff(H().tensor()), 1e-15);
  EXPECT_LT(cayley_dickson(H(), -1.0).tensor().max_abs_diff(O().tensor()), 1e-15);
}

TEST(CayleyDickson, SplitDoublingHasZeroDivisors) {
  Algebra A = cayley_dickson(canonical("R"), 1.0);
  Vec x(2), y(2);
  x << 1, 1;
  y << 1, -1;
  EXPECT_LT(multiply(A, x, y).norm(), 1e-15);
}

TEST(CayleyDickson, RejectsBadConjugationAndGamma) {
  EXPECT_THROW(cayley_dickson(H(), Mat::Identity(4, 4), -1.0), AlgebraError);
  EXPECT_THROW(cayley_dickson(H(), 0.0), AlgebraError);
}

TEST(Gcd, ReducesToDoubling) {
  EXPECT_LT(gcd_extension(H(), GcdParams{-1.0, 1.0, 0.0, 0.0, 0.0}).tensor().max_abs_diff(O().tensor()), 1e-15);
  EXPECT_THROW(gcd_extension(H(), GcdParams{0.0, 1.0, 0.0, 0.0, 0.0}), AlgebraError);
}

TEST(Gcd, MatchesGoldenTensors) {
  EXPECT_LT(gcd_extension(H(), GcdParams{-1.0, 0.8, 0.0, 1.0, 0.0})
                .tensor()
                .max_abs_diff(test::golden("E_H_-1_0.8_0_1_0.json").tensor()),
            1e-14);
  EXPECT_LT(gcd_extension(H(), GcdParams{-0.5, 0.9, 0.3, 0.2, 0.6})
                .tensor()
                .max_abs_diff(test::golden("E_H_-0.5_0.9_0.3_0.2_0.6.json").tensor()),
            1e-14);
}

TEST(Gcd, SecondGeneratorSquaresToHomothety) {
  Sampler rng(22);
  for (int s = 0; s < 10; ++s) {
    GcdParams p{-rng.uniform(0.2, 2.0), rng.uniform(-1, 2), rng.normal(), rng.normal(), rng.normal()};
    Algebra E = gcd_extension(H(), p);
    Mat L = left_op(E, E.basis(4));
    EXPECT_LT((L * L - p.gamma * Mat::Identity(8, 8)).norm(), 1e-12);
  }
}

TEST(Gcd, EmbedsMutationOfBase) {
  Sampler rng(23);
  for (int s = 0; s < 10; ++s) {
    GcdParams p{-1.0, rng.uniform(-1, 2), rng.normal(), rng.normal(), rng.normal()};
    Algebra E = gcd_extension(H(), p);
    Algebra Ha = mutation(H(), p.alpha);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 8; ++k) {
          // The theta term contributes theta/2 [e_j, e_i] to the second component.
          const double expected = k < 4 ? Ha.c(i, j, k) : 0.5 * p.theta * (H().c(j, i, k - 4) - H().c(i, j, k - 4));
          EXPECT_NEAR(E.c(i, j, k), expected, 1e-14);
        }
  }
}

TEST(Gcd, FlexibilityPredicate) {
  EXPECT_TRUE(gcd_flexible_predicate({-1.0, 1.0, 0.0, 0.0, 0.0}));
  EXPECT_FALSE(gcd_flexible_predicate({-1.0, 1.0, 0.0, 0.0, 1.0}));
  EXPECT_TRUE(gcd_flexible_predicate({-1.0, 1.0, -2.0, 0.0, 2.0}));
}

// Flexible base plus beta = gamma theta transfers flexibility and the
// Jordan identity to the extension.
TEST(GcdProperties, FlexibleExtensionsAreNoncommutativeJordan) {
  Sampler rng(24);
  for (int s = 0; s < 15; ++s) {
    const double gamma = -rng.uniform(0.3, 2.0), theta = rng.normal();
    GcdParams p{gamma, rng.uniform(0.6, 1.5), gamma * theta, rng.normal(), theta};
    EXPECT_TRUE(check_identity(gcd_extension(H(), p), Identity::nc_jordan).holds);
  }
}

TEST(GcdProperties, SignFlipOfSecondComponentIsIsomorphism) {
  for (double d : {0.5, 1.0, 1.7}) {
    Algebra A = gcd_extension(H(), GcdParams{-1.0, 0.8, 0.0, -d, 0.0});
    Algebra B = gcd_extension(H(), GcdParams{-1.0, 0.8, 0.0, d, 0.0});
    Vec s = Vec::Ones(8);
    s.tail(4).setConstant(-1.0);
    EXPECT_TRUE(is_isomorphism(A, B, s.asDiagonal().toDenseMatrix()));
  }
}

TEST(GcdProperties, ScalingWitness) {
  const double omega = 1.6;
  GcdParams p{-omega * omega, 0.8, 0.4, 0.3, 0.7};
  GcdParams q{-1.0, 0.8, 0.4 / omega, 0.3 / omega, 0.7 * omega};
  Vec s = Vec::Ones(8);
  s.tail(4).setConstant(1.0 / omega);
  // (x, y) -> (x, y / omega) maps E_q onto E_p.
  EXPECT_TRUE(is_isomorphism(gcd_extension(H(), q), gcd_extension(H(), p), s.asDiagonal().toDenseMatrix()));
}

TEST(GcdForm, Shape) {
  Mat G = gcd_form(H(), -2.0);
  Vec d(8);
  // gamma (y | y'^-) is gamma on every basis vector of the second copy.
  d << 1, -1, -1, -1, -2, -2, -2, -2;
  EXPECT_LT((G - Mat(d.asDiagonal())).norm(), 1e-14);
}

TEST(VectorIsotope, IdentityAndMutation) {
  EXPECT_LT(vector_isotope(O(), Mat::Identity(7, 7)).tensor().max_abs_diff(O().tensor()), 1e-14);
  for (double l : {0.2, 0.8, 1.5}) {
    const double t = std::cbrt(2 * l - 1);
    EXPECT_LT(vector_isotope(H(), t * Mat::Identity(3, 3)).tensor().max_abs_diff(mutation(H(), l).tensor()), 1e-12);
  }
}

TEST(VectorIsotope, Composition) {
  Sampler rng(25);
  for (int s = 0; s < 5; ++s) {
    Mat phi = rng.orthogonal(7) * Vec(rng.gaussian(7).array().abs() + 0.5).asDiagonal();
    Mat psi = rng.orthogonal(7) * Vec(rng.gaussian(7).array().abs() + 0.5).asDiagonal();
    Algebra twice = vector_isotope(vector_isotope(O(), phi), psi);
    Algebra once = vector_isotope(O(), phi * psi);
    EXPECT_LT(twice.tensor().max_abs_diff(once.tensor()), 1e-9 * std::max(1.0, once.tensor().max_abs()));
  }
}

TEST(VectorIsotope, Errors) {
  EXPECT_THROW(vector_isotope(O(), Mat::Zero(7, 7)), AlgebraError);
  EXPECT_THROW(vector_isotope(O(), Mat::Identity(6, 6)), AlgebraError);
  EXPECT_THROW(vector_isotope(canonical("Cstar"), Mat::Identity(1, 1)), AlgebraError);
}

TEST(BuildQuadratic, CrossProductGivesQuaternions) {
  QuadraticStructure q;
  q.vdim = 3;
  q.form = -Mat::Identity(3, 3);
  q.wedge = Tensor3(3);
  for (auto [a, b, c] : {std::array<int, 3>{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}) {
    q.wedge(a, b, c) = 1.0;
    q.wedge(b, a, c) = -1.0;
  }
  q.embedding = Mat::Identity(4, 4);
  EXPECT_LT(build_quadratic(q).tensor().max_abs_diff(H().tensor()), 1e-15);
}

TEST(BuildQuadratic, JordanFormAndEmpty) {
  Mat f = Mat::Identity(2, 2);
  Algebra J = jform(f);
  EXPECT_TRUE(check_identity(J, Identity::commutative).holds);
  EXPECT_TRUE(check_identity(J, Identity::jordan).holds);
  QuadraticStructure q;
  q.vdim = 0;
  q.form = Mat(0, 0);
  q.wedge = Tensor3(0);
  q.embedding = Mat::Identity(1, 1);
  EXPECT_EQ(build_quadratic(q).tensor().max_abs_diff(canonical("R").tensor()), 0.0);
}

TEST(IsotopyMatrices, EndpointsAndFormula) {
  Prop44Matrices m = prop44_isotopy_matrices(1.0);
  EXPECT_NEAR(m.delta_alpha, 0.0, 1e-15);
  EXPECT_NEAR(prop44_isotopy_matrices(0.6).delta_alpha * prop44_isotopy_matrices(0.6).delta_alpha, 3.872, 1e-12);
  const double d51 = prop44_isotopy_matrices(0.51).delta_alpha;
  EXPECT_GT(d51 * d51, 3.9);
  EXPECT_LT(d51 * d51, 4.0);
  EXPECT_THROW(prop44_isotopy_matrices(0.5), AlgebraError);
  EXPECT_THROW(prop44_isotopy_matrices(1.1), AlgebraError);
}

TEST(IsotopyMatrices, IsotopeIsDoubling) {
  for (double a : {0.6, 0.75, 0.9, 1.0}) {
    Prop44Matrices m = prop44_isotopy_matrices(a);
    Algebra iso = vector_isotope(O(), m.phi * m.psi);
    Algebra E = gcd_extension(H(), GcdParams{-1.0, 1.0, 0.0, m.delta_alpha, 0.0});
    EXPECT_LT(iso.tensor().max_abs_diff(E.tensor()), 1e-9) << a;
  }
}

TEST(Tables, OctonionParametersReproduceOctonions) {
  Algebra T = table1(Table1Params::octonion());
  Algebra relabeled = change_basis(O(), table_to_octonion_basis());
  EXPECT_LT(T.tensor().max_abs_diff(relabeled.tensor()), 1e-15);
  EXPECT_LT(T.tensor().max_abs_diff(test::golden("O_table_basis.json").tensor()), 1e-15);
}

TEST(Tables, ParameterValidation) {
  Table1Params p = Table1Params::octonion();
  p.b = 0.0;
  EXPECT_THROW(table1(p), AlgebraError);
  EXPECT_THROW(table4(1, 1, 1, -1), AlgebraError);
  EXPECT_THROW(table5(1, 1, 1, 0, -1, 0, 0), AlgebraError);
  EXPECT_THROW(table7(1, -1, 1, 1, -1), AlgebraError);
}

TEST(Tables, SpecializationsAreTable1) {
  EXPECT_EQ(table4(1.5, 2, 0.5, 0.7).tensor().max_abs_diff(table1(table4_params(1.5, 2, 0.5, 0.7)).tensor()), 0.0);
  Table1Params p = table5_params(1, 2, 3, 0.5, -1, 0.3, 0.4);
  EXPECT_EQ(p.mu, -0.5);
  EXPECT_EQ(p.sigma, -1.0);
  EXPECT_EQ(p.delta, -0.3);
  Table1Params q = table7_params(1, 2, 3, 0.5, -0.25);
  EXPECT_EQ(q.eta, -0.25);
  EXPECT_EQ(q.sigma, -0.25);
}

TEST(Tables, AnticommutativeVectorPartAndTraceForm) {
  Sampler rng(26);
  Table1Params p;
  auto arr = p.to_array();
  for (std::size_t i = 3; i < arr.size(); ++i) arr[i] = rng.normal();
  arr[0] = 0.7, arr[1] = 1.3, arr[2] = 2.1;
  Algebra T = table1(Table1Params::from_array(arr));
  for (int i = 1; i < 8; ++i)
    for (int j = 1; j < 8; ++j)
      for (int k = 1; k < 8; ++k) {
        EXPECT_EQ(T.c(i, j, k), -T.c(j, i, k));
        // (x^y | z) = (x | y^z) with the form -I.
        EXPECT_NEAR(T.c(i, j, k), T.c(j, k, i), 1e-15);
      }
}

// Every member of the table families is noncommutative Jordan.
TEST(TablesProperties, FamiliesAreNoncommutativeJordan) {
  Sampler rng(27);
  for (int s = 0; s < 8; ++s) {
    std::array<double, 16> arr{};
    for (double& v : arr) v = rng.normal();
    arr[0] = rng.uniform(0.3, 2), arr[1] = rng.uniform(0.3, 2), arr[2] = rng.uniform(0.3, 2);
    EXPECT_TRUE(check_identity(table1(Table1Params::from_array(arr)), Identity::nc_jordan).holds);
    EXPECT_TRUE(check_identity(table4(arr[0], arr[1], arr[2], std::abs(arr[3])), Identity::nc_jordan).holds);
    EXPECT_TRUE(check_identity(table5(arr[0], arr[1], arr[2], std::abs(arr[3]), arr[4], arr[5], arr[6]),
                               Identity::nc_jordan).holds);
    EXPECT_TRUE(check_identity(table7(arr[0], arr[1], arr[2], arr[3], arr[4]), Identity::nc_jordan).holds);
  }
  EXPECT_TRUE(check_identity(table4(1, 1, 1, 1), Identity::nc_jordan).holds);
  EXPECT_TRUE(check_identity(table7(1, 1, 1, 1, -1), Identity::nc_jordan).holds);
}

TEST(Osborn4, AlgebraShape) {
  Algebra A = osborn4(1, 0, 1);
  EXPECT_LT(A.tensor().max_abs_diff(H().tensor()), 1e-15);
  // With form -I the trace-form condition forces alpha = gamma = 1, beta = 0.
  EXPECT_FALSE(check_identity(osborn4(-1, 0, 2), Identity::flexible).holds);
  EXPECT_FALSE(check_identity(osborn4(-1, 1, 2), Identity::flexible).holds);
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.75), "0.75");
  EXPECT_EQ(format_number(-1.0), "-1");
  EXPECT_EQ(std::stod(format_number(0.1 + 0.2)), 0.1 + 0.2);
}

}  // namespace
}  // namespace nadiv
