#include "jrh/reference/zeros.hpp"
#include "jrh/zerodist/zerodist.hpp"

#include <gtest/gtest.h>

using namespace jrh;

namespace {

const Geometry& base() {
    static auto g = std::make_unique<Geometry>(make_params(Rational(-7, 10), Rational(-8, 10)));
    return *g;
}

double d(const BigReal& x) { return static_cast<double>(x); }

}  // namespace

TEST(Masses, ClosedFormAndQuadrature) {
    const Geometry& g = base();
    auto m = arc_masses(g);
    const double want[3] = {0.3, 0.5, 0.2};
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(d(m.quadrature[static_cast<size_t>(i)].re), want[i], 1e-15);
        EXPECT_LT(std::abs(d(m.quadrature[static_cast<size_t>(i)].im)), 1e-15);
        EXPECT_NEAR(m.closed_form[static_cast<size_t>(i)].convert_to<double>(), want[i], 0);
    }
    Geometry sym(make_params(Rational(-3, 4), Rational(-3, 4)));
    auto s = arc_masses(sym);
    EXPECT_NEAR(d(s.quadrature[0].re), 0.25, 1e-15);
    EXPECT_NEAR(d(s.quadrature[1].re), 0.5, 1e-15);
    EXPECT_NEAR(d(s.quadrature[2].re), 0.25, 1e-15);
}

TEST(Masses, ResidueIdentities) {
    auto rs = residue_identities(base());
    ASSERT_EQ(rs.size(), 3u);
    for (auto& r : rs) {
        EXPECT_NEAR(d(r.quadrature), d(r.residue), 1e-8) << r.name;
        EXPECT_NEAR(d(r.quadrature), r.expected.convert_to<double>(), 1e-8) << r.name;
    }
}

TEST(Density, PositiveOnCriticalArcs) {
    const Geometry& g = base();
    PrecisionGuard pg(g.bits());
    for (ArcKind k : {ArcKind::GammaL, ArcKind::GammaC, ArcKind::GammaR}) {
        const Arc& a = g.arc(k);
        size_t stride = std::max<size_t>(1, a.points.size() / 50);
        int checked = 0;
        for (size_t i = 1; i + 1 < a.points.size(); i += stride, ++checked)
            EXPECT_GE(d(mu_density(g, k, a.points[i])), 0) << arc_name(k) << " " << i;
        EXPECT_GE(checked, 40);
    }
    EXPECT_THROW(mu_density(g, ArcKind::GammaP1Plus, g.arc(ArcKind::GammaP1Plus).points[3]), InvalidInput);
    EXPECT_THROW(mu_density(g, ArcKind::GammaR, BigComplex(BigReal(0), BigReal(9))), NotOnArc);
}

TEST(Exponents, FiniteN) {
    auto e = rate_exponents(Rational(-70) + Rational(1, 100000), Rational(-80) + Rational(1, 100000), 100);
    EXPECT_NEAR(e.r_alpha, std::log(1e5) / 100, 1e-12);
    EXPECT_NEAR(e.r_beta, std::log(1e5) / 100, 1e-12);
    EXPECT_NEAR(e.r_alphabeta, std::log(5e4) / 100, 1e-12);
    EXPECT_DOUBLE_EQ(e.tolerance(), 0.05);
    // alpha + beta = -150 exactly
    EXPECT_THROW(rate_exponents(Rational(-70) + Rational(1, 100000), Rational(-80) - Rational(1, 100000), 100),
                 ExactInteger);
    EXPECT_THROW(rate_exponents(Rational(-70), Rational(-80) + Rational(1, 3), 100), ExactInteger);
    EXPECT_THROW(rate_exponents(Rational(1, 3), Rational(1, 3), 0), InvalidInput);
}

TEST(Exponents, LimitTruthTable) {
    auto a = decide_case(RateExponents::limit(1, 1, 1));
    EXPECT_EQ(case_letter(a.which), 'A');
    EXPECT_EQ(a.r, 0);
    auto b = decide_case(RateExponents::limit(1, 1, 2));
    EXPECT_EQ(case_letter(b.which), 'B');
    EXPECT_DOUBLE_EQ(b.r, 0.5);
    auto c = decide_case(RateExponents::limit(1, 3, 1));
    EXPECT_EQ(case_letter(c.which), 'C');
    EXPECT_DOUBLE_EQ(c.r, -1);
    auto dd = decide_case(RateExponents::limit(3, 1, 1));
    EXPECT_EQ(case_letter(dd.which), 'D');
    EXPECT_DOUBLE_EQ(dd.r, -1);
    EXPECT_THROW(decide_case(RateExponents::limit(1, 2, 3)), InconsistentExponents);
    EXPECT_THROW(decide_case(RateExponents::limit(2, 2, 1)), InconsistentExponents);
}

TEST(Attractor, CaseBHasUnitMass) {
    const Geometry& g = base();
    auto p = predict_attractor(RateExponents::limit(0.1, 0.1, 0.2), g);
    EXPECT_EQ(case_letter(p.which), 'B');
    ASSERT_EQ(p.measures.size(), 2u);
    EXPECT_NEAR(d(p.total_mass), 1.0, kMassTolerance);
    for (auto& m : p.measures) EXPECT_GT(d(m.mass.re), 0);
}

TEST(Attractor, CaseCAndDMasses) {
    const Geometry& g = base();
    auto c = predict_attractor(RateExponents::limit(0.2, 0.4, 0.2), g);
    EXPECT_EQ(case_letter(c.which), 'C');
    EXPECT_NEAR(d(c.total_mass), 1.0, kMassTolerance);
    auto dd = predict_attractor(RateExponents::limit(0.4, 0.2, 0.2), g);
    EXPECT_EQ(case_letter(dd.which), 'D');
    EXPECT_NEAR(d(dd.total_mass), 1.0, kMassTolerance);
}

TEST(Compare, SingleZero) {
    const Geometry& g = base();
    auto p = predict_attractor(RateExponents::limit(0, 0, 0), g);
    auto zs = find_zeros(build_jacobi_monic(1, Rational(-7, 10), Rational(-8, 10)), 128);
    auto cmp = compare_zeros(zs, p);
    ASSERT_EQ(cmp.assignments.size(), 1u);
    int total = 0;
    for (int c : cmp.per_arc_counts) total += c;
    EXPECT_EQ(total, 1);
    EXPECT_GE(cmp.max_dist, 0);
    EXPECT_DOUBLE_EQ(cmp.fraction_within(1e9), 1.0);
}

TEST(Compare, DistanceShrinksWithDegree) {
    const Rational A(-209, 300), B(-559, 700);
    Geometry g(make_params(A, B));
    auto p = predict_attractor(RateExponents::limit(0, 0, 0), g);
    double prev = 1e9;
    for (int n : {40, 80, 160}) {
        auto zs = find_zeros(build_jacobi_monic(n, A * n, B * n), 128);
        auto cmp = compare_zeros(zs, p);
        EXPECT_LE(cmp.max_dist, 1.2 * prev) << n;
        int total = 0;
        for (size_t i = 0; i < cmp.per_arc_counts.size(); ++i) {
            total += cmp.per_arc_counts[i];
            EXPECT_NEAR(cmp.per_arc_counts[i], cmp.per_arc_expected[i], 2.0) << n;
        }
        EXPECT_EQ(total, n);
        prev = cmp.max_dist;
    }
}
