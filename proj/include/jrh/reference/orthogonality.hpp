#pragma once
#include "jrh/numeric/quadrature.hpp"
#include "jrh/reference/jacobi.hpp"

namespace jrh {

/// Gamma function for real arguments, with the reflection formula for x < 1/2.
/// Returns 0 for the reciprocal at poles through `reciprocal_gamma`.
inline BigReal gamma_real(const BigReal& x) {
    if (x < BigReal(0.5)) {
        BigReal pi = big_pi();
        BigReal s = sin(pi * x);
        if (s == 0) throw InvalidInput("Gamma has a pole at a non-positive integer");
        return pi / (s * gamma_real(BigReal(1) - x));
    }
    BigReal r;
    mpfr_gamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

/// 1/Gamma(x), zero at the poles.
inline BigReal reciprocal_gamma(const Rational& x) {
    if (is_integer(x) && x <= 0) return BigReal(0);
    return BigReal(1) / gamma_real(to_big(x));
}

/// The orthogonality gate: -n-alpha-beta, n+alpha and n+beta avoid {1, 2, ...}.
inline bool orthogonality_condition(int n, const Rational& alpha, const Rational& beta) {
    auto positive_int = [](const Rational& q) { return is_integer(q) && q >= 1; };
    return !positive_int(-Rational(n) - alpha - beta) && !positive_int(Rational(n) + alpha) &&
           !positive_int(Rational(n) + beta);
}

struct OrthogonalityResult {
    BigComplex lhs;
    BigComplex rhs;
    BigReal quad_error{0};
    BigReal magnitude{0};  // loop length times max |integrand|, the natural scale of lhs
};

/// Integral of t^k P_n w(t; alpha, beta) over a double loop contour that winds
/// around +1 and -1 in the positive direction and then in the negative one,
/// starting at xi = 0 with w(0) = 1, compared with the closed form.
inline OrthogonalityResult orthogonality_check(int n, const Rational& alpha, const Rational& beta, int k,
                                               double tol, unsigned bits = 192) {
    if (k < 0 || k > n) throw InvalidInput("moment index must lie in 0..n");
    if (!orthogonality_condition(n, alpha, beta))
        throw ConditionViolated("parameters violate the orthogonality condition");
    PrecisionGuard guard(bits);
    RationalPoly P = build_jacobi_raw(n, alpha, beta);
    std::vector<BigReal> c;
    for (auto& q : P.coeffs) c.push_back(to_big(q));
    const BigReal a = to_big(alpha), b = to_big(beta);
    const BigReal pi = big_pi(), two_pi = pi * 2;
    const BigReal rho(0.5);
    const BigComplex iu = I_unit();

    auto poly = [&](const BigComplex& t) {
        BigComplex s;
        for (size_t i = c.size(); i-- > 0;) s = s * t + c[i];
        return s * ipow(t, static_cast<unsigned long>(k));
    };
    BigReal max_abs(0), length(0);
    auto track = [&](const BigComplex& v) {
        BigReal m = abs(v);
        if (m > max_abs) max_abs = m;
        return v;
    };

    // continuous branches: log(1-t) = Log(1-t) + 2 pi i m1 off the +1 loops, likewise m2
    int m1 = 0, m2 = 0;
    OrthogonalityResult out;
    BigReal qtol(tol);
    auto add = [&](const QuadResult& r) {
        out.lhs += r.value;
        out.quad_error += r.error;
    };
    auto segment = [&](const BigReal& x0, const BigReal& x1) {
        auto f = [&](const BigComplex& t) {
            BigComplex l1 = log(BigReal(1) - t) + iu * (two_pi * m1);
            BigComplex l2 = log(BigReal(1) + t) + iu * (two_pi * m2);
            return track(poly(t) * exp(l1 * a + l2 * b));
        };
        add(integrate_segment(f, BigComplex(x0), BigComplex(x1), qtol / 10));
        length += abs(x1 - x0);
    };
    // loop around +1 from 1 - rho; dir = +1 counterclockwise
    auto loop_plus = [&](int dir) {
        auto f = [&](const BigReal& th) {
            BigComplex e = polar(rho, th);
            BigComplex t = BigReal(1) + e;
            BigComplex l1 = BigComplex(log(rho), th - pi) + iu * (two_pi * m1);
            BigComplex l2 = log(BigReal(1) + t) + iu * (two_pi * m2);
            return track(poly(t) * exp(l1 * a + l2 * b) * iu * e);
        };
        add(integrate_interval(f, pi, pi + two_pi * dir, qtol / 10, QuadOptions{20, 40}));
        m1 += dir;
        length += two_pi * rho;
    };
    auto loop_minus = [&](int dir) {
        auto f = [&](const BigReal& th) {
            BigComplex e = polar(rho, th);
            BigComplex t = BigReal(-1) + e;
            BigComplex l1 = log(BigReal(1) - t) + iu * (two_pi * m1);
            BigComplex l2 = BigComplex(log(rho), th) + iu * (two_pi * m2);
            return track(poly(t) * exp(l1 * a + l2 * b) * iu * e);
        };
        add(integrate_interval(f, BigReal(0), two_pi * dir, qtol / 10, QuadOptions{20, 40}));
        m2 += dir;
        length += two_pi * rho;
    };

    const BigReal x_p = BigReal(1) - rho, x_m = BigReal(-1) + rho;
    segment(BigReal(0), x_p);
    loop_plus(+1);
    segment(x_p, x_m);
    loop_minus(+1);
    segment(x_m, x_p);
    loop_plus(-1);
    segment(x_p, x_m);
    loop_minus(-1);
    segment(x_m, BigReal(0));

    out.magnitude = length * max_abs;
    if (k == n) {
        Rational s = alpha + beta;
        BigReal two_pow = pow(BigReal(2), to_big(Rational(n) + s + 3));
        BigComplex e = polar(BigReal(1), pi * to_big(s));
        BigReal inv = reciprocal_gamma(Rational(2 * n) + s + 2) * reciprocal_gamma(-Rational(n) - alpha) *
                      reciprocal_gamma(-Rational(n) - beta);
        out.rhs = e * (-(pi * pi) * two_pow * inv);
    }
    return out;
}

}  // namespace jrh
