#include "jrh/asymptotics/asymptotics.hpp"
#include "jrh/reference/identities.hpp"
#include "jrh/reference/orthogonality.hpp"
#include "jrh/reference/zeros.hpp"
#include "jrh/zerodist/zerodist.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace jrh;

namespace {

using Clock = std::chrono::steady_clock;

double d(const BigReal& x) { return static_cast<double>(x); }
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

// 10^-(working digits - 8) at the given precision
double property_tol(unsigned bits) { return std::pow(10.0, -(std::floor(bits * std::log10(2.0)) - 8)); }

std::shared_ptr<const Asymptotics> asym_base() {
    static auto as = [] {
        auto g = std::make_shared<Geometry>(make_params(Rational(-209, 300), Rational(-559, 700)));
        return std::make_shared<const Asymptotics>(std::make_shared<const Phase>(g));
    }();
    return as;
}

BigComplex exact_value(const Asymptotics& as, int n, const BigComplex& z) {
    const auto& P = as.geometry().params();
    auto poly = build_jacobi_monic(n, P.A * n, P.B * n);
    return at_prec(eval_poly_relative(poly, z, 1e-30).value);
}

double rel(const BigComplex& a, const BigComplex& b) { return d(abs(a - b) / abs(b)); }

// ------------------------------------------------------------------ 1
Outcome masses() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> u(-950, -50);
    std::ostringstream os;
    double worst = 0;
    int done = 0;
    while (done < 10) {
        Rational A(u(rng), 1000), B(u(rng), 1000);
        if (A + B >= Rational(-105, 100)) continue;
        Geometry g(make_params(A, B));
        auto m = arc_masses(g);
        PrecisionGuard pg(g.bits());
        for (size_t i = 0; i < 3; ++i) worst = std::max(worst, d(abs(m.quadrature[i] - to_big(m.closed_form[i]))));
        ++done;
    }
    double t = seconds_since(t0);
    os << "10 random (A,B), worst mass error " << worst << ", " << t << " s";
    return {worst <= 1e-6 && t < 60, os.str()};
}

// ------------------------------------------------------------------ 2
Outcome figure_generic() {
    auto t0 = Clock::now();
    const int n = 100;
    Rational al = Rational(-70) + Rational(1, 100000), be = Rational(-80) + Rational(1, 100000);
    auto zs = find_zeros(build_jacobi_monic(n, al, be), 128);
    Geometry g(make_params(al / n, be / n));
    auto e = rate_exponents(al, be, n);
    auto pred = predict_attractor(e, g);
    auto cmp = compare_zeros(zs, pred);
    double t = seconds_since(t0);
    const int want[3] = {30, 50, 20};
    bool counts = pred.which == AttractorCase::A && cmp.per_arc_counts.size() == 3;
    std::ostringstream os;
    os << "case " << case_letter(pred.which) << ", " << zs.zeros.size() << " zeros, residual " << d(zs.residual_bound)
       << ", counts";
    for (size_t i = 0; i < cmp.per_arc_counts.size(); ++i) {
        os << " " << cmp.per_arc_counts[i];
        if (i < 3) counts = counts && std::abs(cmp.per_arc_counts[i] - want[i]) <= 3;
    }
    auto far = std::max_element(cmp.assignments.begin(), cmp.assignments.end(),
                                [](const ZeroAssignment& a, const ZeroAssignment& b) { return a.distance < b.distance; });
    os << ", max_dist " << cmp.max_dist;
    if (far != cmp.assignments.end()) os << " at " << far->z;
    os << ", " << t << " s";
    bool ok = zs.zeros.size() == 100u && d(zs.residual_bound) <= property_tol(128) && counts && cmp.max_dist <= 0.1 &&
              t < 300;
    return {ok, os.str()};
}

// ------------------------------------------------------------------ 3
Outcome attractor_cases() {
    const int n = 100;
    std::ostringstream os;
    bool ok = true;
    struct Run {
        const char* name;
        Rational al, be;
        AttractorCase want;
    };
    Rational e20 = Rational(1) / boost::multiprecision::pow(BigInt(10), 20);
    Rational e30 = Rational(1) / boost::multiprecision::pow(BigInt(10), 30);
    Rational e5(1, 100000), e10(1, 10000000000LL);
    for (const Run& r : {Run{"left", Rational(-70) + e20, Rational(-80) + e30, AttractorCase::C},
                         Run{"right", Rational(-70) + e5 + e10, Rational(-80) - e5, AttractorCase::B}}) {
        auto e = rate_exponents(r.al, r.be, n);
        Geometry g(make_params(r.al / n, r.be / n));
        auto pred = predict_attractor(e, g);
        auto zs = find_zeros(build_jacobi_monic(n, r.al, r.be), 128);
        auto cmp = compare_zeros(zs, pred);
        double frac = cmp.fraction_within(0.1);
        bool this_ok = pred.which == r.want && frac >= 0.9;
        if (r.want == AttractorCase::B) this_ok = this_ok && std::abs(pred.r - 0.0576) < 5e-4;
        ok = ok && this_ok;
        os << r.name << ": case " << case_letter(pred.which) << " r " << pred.r << " within 0.1: " << frac * 100
           << "% (max_dist " << cmp.max_dist << "); ";
    }
    return {ok, os.str()};
}

// ------------------------------------------------------------------ 4
Outcome outer_rate() {
    auto as = asym_base();
    PrecisionGuard pg(as->geometry().bits());
    auto pts = domain_sample_points(*as);
    std::ostringstream os;
    bool ok = pts.size() == 6;
    const int ns[3] = {40, 80, 160};
    for (auto& p : pts) {
        double err[3];
        for (int i = 0; i < 3; ++i) err[i] = rel(as->outer_eval(p.z, ns[i]).value, exact_value(*as, ns[i], p.z));
        // least squares slope of log err against log n
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < 3; ++i) {
            double x = std::log(ns[i]), y = std::log(err[i]);
            sx += x, sy += y, sxx += x * x, sxy += x * y;
        }
        double order = -(3 * sxy - sx * sy) / (3 * sxx - sx * sx);
        bool inf = p.region == Region::I || p.region == Region::VI;
        bool this_ok = std::abs(order - 1.0) <= 0.5 && err[2] < 1e-1 && (!inf || err[2] < 1e-2);
        ok = ok && this_ok;
        os << region_name(p.region) << " order " << order << " err160 " << err[2] << "; ";
    }
    return {ok, os.str()};
}

// ------------------------------------------------------------------ 5
Outcome local_rate() {
    auto as = asym_base();
    const Geometry& g = as->geometry();
    PrecisionGuard pg(g.bits());
    std::ostringstream os;
    bool ok = true;
    for (double ang : {0.3, 2.2, 4.1}) {
        BigComplex z = g.branch().zeta_minus + polar(BigReal(as->delta() / 2), BigReal(ang));
        double e100 = rel(as->local_eval(z, 100), exact_value(*as, 100, z));
        double e80 = rel(as->local_eval(z, 80), exact_value(*as, 80, z));
        double e160 = rel(as->local_eval(z, 160), exact_value(*as, 160, z));
        double ratio = e160 / e80;
        bool this_ok = e100 <= 10.0 / 100 && ratio >= 0.25 && ratio <= 0.75;
        ok = ok && this_ok;
        os << "ray " << ang << ": err100 " << e100 << " err160/err80 " << ratio << "; ";
    }
    return {ok, os.str()};
}

// ------------------------------------------------------------------ 6
Outcome boundary_agreement() {
    auto as = asym_base();
    const Geometry& g = as->geometry();
    PrecisionGuard pg(g.bits());
    const int n = 400;
    std::ostringstream os;
    os << "n=" << n << ":";
    double worst = 0;
    for (ArcKind k : {ArcKind::GammaL, ArcKind::GammaM1Minus, ArcKind::GammaM1Plus, ArcKind::GammaC,
                      ArcKind::GammaP1Minus, ArcKind::GammaP1Plus, ArcKind::GammaR, ArcKind::GammaInfMinus,
                      ArcKind::GammaInfPlus}) {
        const Arc& a = g.arc(k);
        BigComplex z = a.points[a.points.size() / 2];
        auto p = as->outer_eval_one_sided(z, n, k, Side::Plus);
        auto m = as->outer_eval_one_sided(z, n, k, Side::Minus);
        double r = rel(p.value, m.value);
        worst = std::max(worst, r);
        os << " " << arc_name(k) << " " << region_name(p.domain.region) << "|" << region_name(m.domain.region) << " "
           << r << ";";
    }
    return {worst <= 1e-8, os.str()};
}

// ------------------------------------------------------------------ 7
Outcome orthogonality() {
    auto t0 = Clock::now();
    Rational a = Rational(-35, 10) + Rational(1, 1000), b(-42, 10);
    std::ostringstream os;
    bool ok = orthogonality_condition(5, a, b);
    for (int k = 0; k <= 4; ++k) {
        auto r = orthogonality_check(5, a, b, k, 1e-40);
        double ratio = d(abs(r.lhs) / r.magnitude);
        ok = ok && ratio <= 1e-20;
        os << "k=" << k << " " << ratio << "; ";
    }
    auto r5 = orthogonality_check(5, a, b, 5, 1e-40);
    double e5 = d(abs(r5.lhs - r5.rhs) / abs(r5.rhs));
    double t = seconds_since(t0);
    ok = ok && e5 <= 1e-10 && t < 60;
    os << "k=5 rel " << e5 << ", " << t << " s";
    return {ok, os.str()};
}

// ------------------------------------------------------------------ 8
Outcome identities() {
    struct Set {
        int n;
        Rational a, b;
    };
    const std::vector<std::pair<std::string, std::vector<Set>>> plan = {
        {"transformation_alpha",
         {{3, Rational(-11, 2), Rational(-1, 3)}, {5, Rational(-37, 4), Rational(2, 7)}, {4, Rational(1, 2), Rational(-9, 5)},
          {6, Rational(-70, 3), Rational(-1, 9)}, {8, Rational(-7, 10), Rational(-8, 10)}}},
        {"transformation_beta",
         {{3, Rational(-1, 3), Rational(-11, 2)}, {5, Rational(2, 7), Rational(-37, 4)}, {4, Rational(-9, 5), Rational(1, 2)},
          {6, Rational(-1, 9), Rational(-70, 3)}, {7, Rational(-28, 5), Rational(-33, 5)}}},
        {"integer_alpha",
         {{3, Rational(-1), Rational(2, 3)}, {5, Rational(-2), Rational(-1, 3)}, {6, Rational(-4), Rational(-7, 2)},
          {8, Rational(-8), Rational(-11, 3)}, {10, Rational(-3), Rational(-61, 7)}}},
        {"degree_reduction",
         {{4, Rational(-3, 2), Rational(-7, 2)}, {5, Rational(-7, 3), Rational(-17, 3)}, {6, Rational(-5, 4), Rational(-35, 4)},
          {7, Rational(-29, 5), Rational(-31, 5)}, {9, Rational(-1, 7), Rational(-125, 7)}}},
    };
    std::ostringstream os;
    bool ok = true;
    for (auto& [name, sets] : plan) {
        int passed = 0;
        for (auto& s : sets) {
            auto rep = identity_suite(s.n, s.a, s.b, false);
            bool hit = false;
            for (auto& c : rep.checks)
                if (c.name == name) hit = c.applicable && c.passed;
            if (hit && rep.all_passed()) ++passed;
        }
        ok = ok && passed == static_cast<int>(sets.size());
        os << name << " " << passed << "/" << sets.size() << "; ";
    }
    return {ok, os.str()};
}

// ------------------------------------------------------------------ 9
// closed polygon around c; the last vertex reuses the first so the loop closes exactly
BigComplex loop_period(const Geometry& g, std::complex<double> c, double radius, int m, double a0) {
    const auto& bp = g.branch();
    std::vector<BigComplex> v;
    for (int i = 0; i < m; ++i) v.push_back(from_double(c + std::polar(radius, a0 + 2 * M_PI * i / m)));
    v.push_back(v.front());
    BigComplex s, R = g.R(v.front());
    for (size_t i = 0; i + 1 < v.size(); ++i) {
        s += phase_increment(bp, v[i], v[i + 1], v[i], R, BigReal(1e-36)).value;
        R = root_near(v[i + 1], bp, R);
    }
    return s;
}

Outcome properties() {
    auto t0 = Clock::now();
    auto g = std::make_shared<Geometry>(make_params(Rational(-7, 10), Rational(-8, 10)));
    auto ph = std::make_shared<const Phase>(g);
    Asymptotics as(ph);
    PrecisionGuard pg(g->bits());
    const double tol = property_tol(g->bits());
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-6, 6), u01(0, 1);
    const int N = 100;
    std::ostringstream os;
    os << "tol " << tol << ":";
    bool ok = true;
    auto report = [&](const char* name, double worst, int count) {
        bool pass = worst <= tol && count == N;
        ok = ok && pass;
        os << " " << name << " " << worst << " (" << count << ");";
    };
    auto random_point = [&] {
        for (;;) {
            BigComplex z(BigReal(u(rng)), BigReal(u(rng)));
            try {
                if (g->classify(z).on_boundary) continue;
                g->R(z);
            } catch (const Error&) {
                continue;
            }
            return z;
        }
    };

    double w_sq = 0, w_alt = 0;
    for (int i = 0; i < N; ++i) {
        BigComplex z = random_point();
        auto [n11, n12] = as.N_entries(z);
        auto alt = as.N_alternative(z);
        w_sq = std::max(w_sq, d(abs(n11 * n11 + n12 * n12 - BigReal(1))));
        BigReal sc = abs(n11) + abs(n12);
        w_alt = std::max({w_alt, d(abs(n11 - alt.alt11) / sc), d(abs(n12 - alt.alt12) / sc),
                          d(abs(alt.alt11 * alt.alt11 - (BigReal(1) + alt.R_prime) / 2) / (sc * sc)),
                          d(abs(alt.alt12 * alt.alt12 - (BigReal(1) - alt.R_prime) / 2) / (sc * sc))});
    }
    report("N11^2+N12^2", w_sq, N);
    report("N forms", w_alt, N);

    double w_airy = 0, w_wr = 0, w_conn = 0;
    const BigReal pi = big_pi();
    BigComplex w = polar(BigReal(1), pi * 2 / 3);
    for (int i = 0; i < N; ++i) {
        BigComplex s(BigReal(u(rng)), BigReal(u(rng)));
        int n = 41 + 2 * (i % 30);  // odd n keeps (A+B) n = -1.5 n off the integers
        w_airy = std::max(w_airy, d(as.airy_combination(s, n).form_gap));
        auto b = airy_base(s);
        BigComplex wr = b.ai * b.bi_prime - b.ai_prime * b.bi;
        w_wr = std::max(w_wr, d(abs(wr - BigComplex(BigReal(1) / pi)) / (abs(b.ai * b.bi_prime) + abs(b.ai_prime * b.bi))));
        auto b1 = airy_base(w * s), b2 = airy_base(w * w * s);
        BigComplex sum = b.ai + w * b1.ai + w * w * b2.ai;
        w_conn = std::max(w_conn, d(abs(sum) / (abs(b.ai) + abs(b1.ai) + abs(b2.ai))));
    }
    report("Airy forms", w_airy, N);
    report("Wronskian", w_wr, N);
    report("connection", w_conn, N);

    // path independence: routed phi differences against a direct segment integral
    double w_path = 0;
    int cnt = 0;
    for (int i = 0; i < 100000 && cnt < N; ++i) {
        std::complex<double> a(u(rng), u(rng)), b = a + std::polar(0.05 + 0.5 * u01(rng), u(rng));
        double clear = 1e9;
        for (ArcKind k : g->arc_kinds()) clear = std::min(clear, poly::polyline_segment_distance(g->polyline(k), a, b));
        for (auto s : {std::complex<double>(1, 0), std::complex<double>(-1, 0), to_double(g->branch().zeta_plus),
                       to_double(g->branch().zeta_minus)})
            clear = std::min(clear, poly::point_segment_distance(s, a, b));
        if (clear < 0.05) continue;
        BigComplex za = from_double(a), zb = from_double(b);
        auto inc = phase_increment(g->branch(), za, zb, za, g->R(za), BigReal(1e-36));
        BigComplex lhs = ph->phi(zb).value - ph->phi(za).value;
        w_path = std::max(w_path, d(abs(lhs - inc.value) / std::max(BigReal(1), abs(inc.value))));
        ++cnt;
    }
    report("phi path", w_path, cnt);

    // jump relations: the period of dphi around +-1 and around infinity equals the jump across
    // the cut that the loop crosses
    const double xc = d(g->xi(ArcKind::GammaC));
    double w_jump = 0;
    for (int i = 0; i < N; ++i) {
        double a0 = 2 * M_PI * u01(rng);
        BigComplex loop, jump;
        switch (i % 3) {
            case 0:
                loop = loop_period(*g, {1, 0}, (0.2 + 0.6 * u01(rng)) * (1 - xc), 16, a0);
                jump = ph->jump(ArcKind::GammaP1Plus);
                break;
            case 1:
                loop = loop_period(*g, {-1, 0}, (0.2 + 0.6 * u01(rng)) * (1 + xc), 16, a0);
                jump = ph->jump(ArcKind::GammaM1Plus);
                break;
            default:
                loop = loop_period(*g, {0, 0}, g->box() * (0.6 + 0.4 * u01(rng)), 64, a0);
                jump = ph->jump(ArcKind::GammaInfPlus);
                break;
        }
        w_jump = std::max(w_jump, d(abs(loop - jump) / abs(jump)));
    }
    report("phi jumps", w_jump, N);

    double t = seconds_since(t0);
    ok = ok && t < 120;
    os << " " << t << " s";
    return {ok, os.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"arc masses", masses},
        {"generic zero distribution", figure_generic},
        {"attractor cases", attractor_cases},
        {"outer asymptotics rate", outer_rate},
        {"local Airy asymptotics", local_rate},
        {"boundary agreement", boundary_agreement},
        {"orthogonality oracle", orthogonality},
        {"identity suite", identities},
        {"property suites", properties},
    };
    auto t0 = Clock::now();
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    std::cout << "total " << seconds_since(t0) << " s, " << failed << " failed" << std::endl;
    return failed == 0 ? 0 : 1;
}
