#include "jrh/reference/identities.hpp"
#include "jrh/reference/orthogonality.hpp"
#include "jrh/reference/zeros.hpp"

#include <gtest/gtest.h>

using namespace jrh;

namespace {
double d(const BigReal& x) { return static_cast<double>(x); }
}  // namespace

TEST(Jacobi, DegreeOne) {
    Rational a(-7, 3), b(5, 2);
    auto P = build_jacobi(1, a, b);
    ASSERT_EQ(P.coeffs.size(), 2u);
    EXPECT_EQ(P.coeffs[1], (a + b + 2) / 2);
    EXPECT_EQ(P.coeffs[0], (a - b) / 2);
}

TEST(Jacobi, MatchesBinomialSum) {
    for (auto [n, a, b] : {std::tuple{5, Rational(-7, 2), Rational(-21, 5)}, std::tuple{8, Rational(1, 3), Rational(-9, 4)},
                           std::tuple{12, Rational(-84, 10), Rational(-95, 10)}}) {
        auto P = build_jacobi_raw(n, a, b);
        for (Rational x : {Rational(0), Rational(3), Rational(-5, 7), Rational(11, 2)})
            EXPECT_EQ(P(x), jacobi_binomial_sum(n, a, b, x)) << n;
        ComplexRational z{Rational(1, 3), Rational(-2)};
        auto lhs = P(z), rhs = jacobi_binomial_sum(n, a, b, z);
        EXPECT_TRUE(lhs == rhs);
        EXPECT_EQ(P.leading(), jacobi_leading(n, a, b));
    }
}

TEST(Jacobi, ZeroOfOrderKAtOne) {
    auto P = build_jacobi_raw(3, Rational(-2), Rational(-1, 2));
    EXPECT_EQ(P(Rational(1)), 0);
    EXPECT_EQ(derivative(P)(Rational(1)), 0);
    EXPECT_NE(derivative(derivative(P))(Rational(1)), 0);
}

TEST(Jacobi, Reflection) {
    Rational a(1, 2), b(1, 3);
    auto P = build_jacobi_raw(4, a, b), Q = build_jacobi_raw(4, b, a);
    for (size_t i = 1; i < P.coeffs.size(); i += 2) P.coeffs[i] = -P.coeffs[i];
    EXPECT_TRUE(same_coefficients(P, Q));
}

TEST(Jacobi, DegreeReduction) {
    // alpha + beta = -n - 1 leaves a constant
    Rational a(-3, 2), b = Rational(-5) - a;
    ASSERT_TRUE(degree_reduction(4, a, b).has_value());
    EXPECT_EQ(*degree_reduction(4, a, b), 0);
    EXPECT_EQ(build_jacobi_raw(4, a, b).degree(), 0);
    EXPECT_THROW(build_jacobi_monic(4, a, b), DegreeReduction);
    EXPECT_FALSE(degree_reduction(4, Rational(-3, 2), Rational(-7, 3)).has_value());
}

TEST(Eval, ExactAndFloatingAgree) {
    Rational a(-7, 10), b(-8, 10);
    auto P1 = build_jacobi_monic(1, a, b);
    Rational root = -(a - b) / (a + b + 2);
    EXPECT_EQ(P1(root), 0);
    auto P = build_jacobi_monic(2, Rational(-3, 4), Rational(-3, 4));
    PrecisionGuard g(256);
    auto v0 = eval_poly(P, BigComplex(BigReal(0)), 256);
    EXPECT_EQ(v0.value.re, to_big(P.coeffs[0]));
    auto exact = P(ComplexRational{Rational(0), Rational(1)});
    auto vi = eval_poly(P, BigComplex(BigReal(0), BigReal(1)), 256);
    EXPECT_LT(d(abs(vi.value - to_big(exact))), 1e-70);
    EXPECT_LE(d(abs(vi.value - to_big(exact))), d(vi.error));
}

TEST(Eval, RelativeAccuracyEscalates) {
    auto P = build_jacobi_monic(60, Rational(-42), Rational(-48) + Rational(1, 7));
    PrecisionGuard g(128);
    BigComplex z(BigReal(0.1), BigReal(0.2));
    auto v = eval_poly_relative(P, z, 1e-30, 64);
    EXPECT_LE(v.error, abs(v.value) * BigReal(1e-30));
}

TEST(Zeros, DegreeOne) {
    Rational a(-7, 10), b(-8, 10);
    auto zs = find_zeros(build_jacobi_monic(1, a, b), 128);
    ASSERT_EQ(zs.zeros.size(), 1u);
    PrecisionGuard g(128);
    EXPECT_LT(d(abs(zs.zeros[0] - to_big(-(a - b) / (a + b + 2)))), 1e-35);
}

TEST(Zeros, DoubleZeroClusters) {
    auto P = build_jacobi_monic(3, Rational(-2), Rational(-1, 2));
    auto zs = find_zeros(P, 256);
    ASSERT_EQ(zs.zeros.size(), 3u);
    PrecisionGuard g(zs.precision_bits);
    int near_one = 0;
    BigReal diam(0);
    std::vector<BigComplex> cl;
    for (auto& z : zs.zeros)
        if (abs(z - BigReal(1)) < BigReal(1e-10)) cl.push_back(z);
    near_one = static_cast<int>(cl.size());
    ASSERT_EQ(near_one, 2);
    diam = abs(cl[0] - cl[1]);
    double digits = zs.precision_bits * 0.30103;
    EXPECT_LT(d(diam), std::pow(10.0, -digits / 2 + 1));
}

TEST(Zeros, ResidualCertificate) {
    auto P = build_jacobi_monic(40, Rational(-28) + Rational(1, 1000), Rational(-32) + Rational(1, 1000));
    auto zs = find_zeros(P, 128);
    ASSERT_EQ(zs.zeros.size(), 40u);
    EXPECT_LT(d(zs.residual_bound), 1e-30);
    // conjugate symmetry of a real polynomial
    PrecisionGuard g(zs.precision_bits);
    for (auto& z : zs.zeros) {
        BigReal best(1e9);
        for (auto& w : zs.zeros) best = std::min(best, abs(w - conj(z)));
        EXPECT_LT(d(best), 1e-25);
    }
}

TEST(Orthogonality, VanishingMoments) {
    Rational a = Rational(-35, 10) + Rational(1, 1000), b(-42, 10);
    ASSERT_TRUE(orthogonality_condition(5, a, b));
    for (int k : {0, 2, 4}) {
        auto r = orthogonality_check(5, a, b, k, 1e-40);
        EXPECT_LE(d(abs(r.lhs)), 1e-20 * d(r.magnitude)) << k;
    }
    auto r5 = orthogonality_check(5, a, b, 5, 1e-40);
    EXPECT_LT(d(abs(r5.lhs - r5.rhs) / abs(r5.rhs)), 1e-10);
}

TEST(Orthogonality, ConditionGate) {
    EXPECT_FALSE(orthogonality_condition(3, Rational(-2), Rational(-1, 2)));
    EXPECT_THROW(orthogonality_check(3, Rational(-2), Rational(-1, 2), 1, 1e-30), ConditionViolated);
    EXPECT_THROW(orthogonality_check(5, Rational(-7, 2), Rational(-21, 5), 6, 1e-30), InvalidInput);
}

TEST(Identities, GenericParameters) {
    auto rep = identity_suite(3, Rational(-11, 2), Rational(-1, 3));
    EXPECT_TRUE(rep.all_passed());
    int applicable = 0;
    for (auto& c : rep.checks) applicable += c.applicable;
    EXPECT_EQ(applicable, 3);
}

TEST(Identities, IntegerCases) {
    auto r1 = identity_suite(3, Rational(-1), Rational(2, 3));
    EXPECT_TRUE(r1.all_passed());
    bool saw = false;
    for (auto& c : r1.checks)
        if (c.name == "integer_alpha") saw = c.applicable && c.passed;
    EXPECT_TRUE(saw);

    auto r2 = identity_suite(4, Rational(-3, 2), Rational(-7, 2));
    for (auto& c : r2.checks)
        if (c.name == "degree_reduction") {
            EXPECT_TRUE(c.applicable && c.passed);
        }
    EXPECT_TRUE(r2.all_passed());

    auto r3 = identity_suite(5, Rational(-7, 3), Rational(-2));
    for (auto& c : r3.checks)
        if (c.name == "integer_beta") {
            EXPECT_TRUE(c.applicable && c.passed);
        }
}
