#include "jrh/phase/phase.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace jrh;

namespace {

std::shared_ptr<const Phase> base() {
    static auto ph = [] {
        auto g = std::make_shared<Geometry>(make_params(Rational(-7, 10), Rational(-8, 10)));
        return std::make_shared<const Phase>(g);
    }();
    return ph;
}

double d(const BigReal& x) { return static_cast<double>(x); }

BigComplex midpoint(const Arc& a, double frac = 0.5) {
    return a.points[static_cast<size_t>(frac * static_cast<double>(a.points.size() - 1))];
}

BigComplex left_normal(const Arc& a, double frac = 0.5) {
    size_t i = static_cast<size_t>(frac * static_cast<double>(a.points.size() - 1));
    BigComplex t = a.points[i + 1] - a.points[i - 1];
    return I_unit() * t / abs(t);
}

}  // namespace

TEST(Phase, JumpsAcrossCuts) {
    auto ph = base();
    PrecisionGuard pg(ph->geometry().bits());
    const BigReal pi = big_pi();
    EXPECT_LT(d(abs(ph->jump(ArcKind::GammaP1Plus) - BigComplex(BigReal(0), pi * BigReal(7) / 10))), 1e-35);
    EXPECT_LT(d(abs(ph->jump(ArcKind::GammaM1Plus) - BigComplex(BigReal(0), pi * BigReal(8) / 10))), 1e-35);
    EXPECT_LT(d(abs(ph->jump(ArcKind::GammaInfPlus) - BigComplex(BigReal(0), pi / 2))), 1e-35);
    EXPECT_THROW(ph->jump(ArcKind::GammaL), InvalidInput);
}

TEST(Phase, VanishesAtLowerBranchPoint) {
    auto ph = base();
    const Geometry& g = ph->geometry();
    PrecisionGuard pg(g.bits());
    const BigComplex zm = g.branch().zeta_minus;
    EXPECT_EQ(ph->phi(zm).value, BigComplex());
    EXPECT_THROW(ph->phi(g.branch().zeta_plus), AtBranchPoint);
    EXPECT_THROW(ph->phi(BigComplex(BigReal(1))), AtPole);
    for (double eps : {1e-2, 1e-4}) {
        BigComplex z = zm + polar(BigReal(eps), BigReal(0.4));
        // phi has a zero of order 3/2 at zeta-
        EXPECT_LT(d(abs(ph->phi(z).value)), 10 * std::pow(eps, 1.5));
    }
}

TEST(Phase, RealPartVanishesOnCriticalArcs) {
    auto ph = base();
    const Geometry& g = ph->geometry();
    PrecisionGuard pg(g.bits());
    for (ArcKind k : {ArcKind::GammaL, ArcKind::GammaR}) {
        BigComplex z = midpoint(g.arc(k)) + left_normal(g.arc(k)) * BigReal(1e-3);
        auto v = ph->phi(z);
        EXPECT_LT(std::abs(d(v.value.re)), 1e-2) << arc_name(k);
        BigComplex on = midpoint(g.arc(k));
        EXPECT_LT(std::abs(d(ph->phi(on).value.re)), 1e-18) << arc_name(k);
    }
}

TEST(Phase, CentralArcBoundaryValuesCancel) {
    auto ph = base();
    const Geometry& g = ph->geometry();
    PrecisionGuard pg(g.bits());
    const Arc& c = g.arc(ArcKind::GammaC);
    for (double f : {0.2, 0.5, 0.8}) {
        BigComplex z = midpoint(c, f);
        auto p = ph->phi_side(z, ArcKind::GammaC, Side::Plus);
        auto m = ph->phi_side(z, ArcKind::GammaC, Side::Minus);
        EXPECT_LT(d(abs(p.value + m.value)), 1e-25);
        EXPECT_THROW(ph->phi(z), OnCut);
        // one-sided limits from the open plane
        BigComplex nrm = left_normal(c, f);
        BigReal h(1e-6);
        EXPECT_LT(d(abs(ph->phi(z + nrm * h).value - p.value)), 1e-5);
        EXPECT_LT(d(abs(ph->phi(z - nrm * h).value - m.value)), 1e-5);
    }
}

TEST(Phase, JumpRelationsOnCuts) {
    auto ph = base();
    const Geometry& g = ph->geometry();
    PrecisionGuard pg(g.bits());
    const auto& P = g.params();
    const BigReal pi = big_pi();
    auto ipi = [&](const Rational& q) { return BigComplex(BigReal(0), pi * to_big(q)); };
    for (ArcKind k : {ArcKind::GammaInfPlus, ArcKind::GammaM1Plus, ArcKind::GammaP1Plus}) {
        const Arc& a = g.arc(k);
        for (double f : {0.3, 0.7}) {
            BigComplex z = midpoint(a, f);
            auto p = ph->phi_side(z, k, Side::Plus), m = ph->phi_side(z, k, Side::Minus);
            EXPECT_LT(d(abs(p.value - m.value - ph->jump(k))), 1e-25) << arc_name(k);
            BigComplex nrm = left_normal(a, f);
            BigReal h(1e-6);
            EXPECT_LT(d(abs(ph->phi(z + nrm * h).value - p.value)), 1e-5) << arc_name(k);
            EXPECT_LT(d(abs(ph->phi(z - nrm * h).value - m.value)), 1e-5) << arc_name(k);
        }
    }
    // phi_+ = phi~ + pi i (1+B) on gamma_inf^+ and on gamma_1^+
    EXPECT_LT(d(abs(ph->tilde_shift(ArcKind::GammaInfPlus, Side::Plus) - ipi(1 + P.B))), 1e-35);
    EXPECT_LT(d(abs(ph->tilde_shift(ArcKind::GammaInfPlus, Side::Minus) - ipi(-(1 + P.A)))), 1e-35);
    EXPECT_LT(d(abs(ph->tilde_shift(ArcKind::GammaP1Plus, Side::Plus) - ipi(1 + P.B))), 1e-35);
}

TEST(Phase, TildeOnRealAxis) {
    auto ph = base();
    PrecisionGuard pg(ph->geometry().bits());
    for (double x : {-7.0, 0.3, 6.5}) {
        BigComplex z{BigReal(x)};
        EXPECT_LT(d(abs(ph->phi_tilde(z).value - conj(ph->phi(z).value))), 1e-30);
    }
}

TEST(Phase, SignNearMinusOne) {
    auto ph = base();
    PrecisionGuard pg(ph->geometry().bits());
    EXPECT_LT(d(ph->phi(BigComplex(BigReal(-1), BigReal(0.01))).value.re), 0);
    // real and negative on gamma_1^-
    const Arc& a = ph->geometry().arc(ArcKind::GammaP1Minus);
    auto v = ph->phi(midpoint(a)).value;
    EXPECT_LT(d(v.re), 0);
    EXPECT_LT(std::abs(d(v.im)), 1e-18);
}

TEST(Phase, PathIndependence) {
    auto ph = base();
    const Geometry& g = ph->geometry();
    PrecisionGuard pg(g.bits());
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-6, 6);
    int checked = 0;
    for (int i = 0; i < 200 && checked < 20; ++i) {
        std::complex<double> a(u(rng), u(rng)), b = a + std::polar(0.05, u(rng));
        double clear = 1e9;
        for (ArcKind k : g.arc_kinds()) clear = std::min(clear, poly::polyline_segment_distance(g.polyline(k), a, b));
        for (auto s : {std::complex<double>(1, 0), std::complex<double>(-1, 0), to_double(g.branch().zeta_plus),
                       to_double(g.branch().zeta_minus)})
            clear = std::min(clear, poly::point_segment_distance(s, a, b));
        if (clear < 0.05) continue;
        BigComplex za = from_double(a), zb = from_double(b);
        BigComplex Ra = g.R(za);
        auto inc = phase_increment(g.branch(), za, zb, za, Ra, BigReal(1e-32));
        BigComplex lhs = ph->phi(zb).value - ph->phi(za).value;
        EXPECT_LT(d(abs(lhs - inc.value)), 1e-26) << a << " -> " << b;
        ++checked;
    }
    EXPECT_GE(checked, 10);
}

TEST(Phase, ConstantIsRayIndependent) {
    auto ph = base();
    PrecisionGuard pg(ph->geometry().bits());
    auto c1 = ph->constant_c(-M_PI / 2);
    auto c2 = ph->constant_c(M_PI / 3);
    EXPECT_LT(d(abs(c1.value - c2.value)), 1e-25);
    ASSERT_EQ(c1.ladder.size(), 3u);
    EXPECT_LT(d(abs(c1.ladder[1] - c1.ladder[2])), 1e-28);
    EXPECT_THROW(ph->constant_c(ph->geometry().theta_inf()), OnCut);
}

TEST(Phase, ConstantSymmetricCase) {
    auto g = std::make_shared<Geometry>(make_params(Rational(-3, 4), Rational(-3, 4)));
    Phase ph(g);
    PrecisionGuard pg(g->bits());
    auto c1 = ph.constant_c(M_PI / 3);
    auto c2 = ph.constant_c(-M_PI / 2);
    EXPECT_LT(d(abs(c1.value - c2.value)), 1e-25);
}
