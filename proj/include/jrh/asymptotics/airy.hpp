#pragma once
#include "jrh/errors.hpp"
#include "jrh/numeric/complex.hpp"

#include <cmath>

namespace jrh {

struct AiryBase {
    BigComplex ai, ai_prime, bi, bi_prime;
};

namespace detail {

inline BigReal airy_c1() {  // Ai(0) = 3^(-2/3) / Gamma(2/3)
    BigReal g, x = BigReal(2) / 3;
    mpfr_gamma(g.backend().data(), x.backend().data(), MPFR_RNDN);
    return pow(BigReal(3), BigReal(-2) / 3) / g;
}
inline BigReal airy_c2() {  // -Ai'(0) = 3^(-1/3) / Gamma(1/3)
    BigReal g, x = BigReal(1) / 3;
    mpfr_gamma(g.backend().data(), x.backend().data(), MPFR_RNDN);
    return pow(BigReal(3), BigReal(-1) / 3) / g;
}

/// Maclaurin series for all four functions. Runs with extra guard bits to
/// absorb the cancellation, which grows like exp(4/3 |s|^{3/2}).
inline AiryBase airy_series(const BigComplex& s_in, unsigned bits) {
    double as = static_cast<double>(abs(s_in));
    unsigned guard = static_cast<unsigned>(std::ceil(1.4427 * (4.0 / 3.0) * std::pow(as, 1.5))) + 32;
    AiryBase out;
    {
        PrecisionGuard pg(bits + guard);
        BigComplex s = at_prec(s_in);
        BigComplex s3 = s * s * s;
        BigReal eps = boost::multiprecision::ldexp(BigReal(1), -static_cast<int>(bits + guard));
        // f = sum t_k, g = sum u_k, f' = sum p_k, g' = sum q_k
        BigComplex t(BigReal(1)), u = s, p = s * s / BigReal(2), q(BigReal(1));
        BigComplex f = t, g = u, fp = p, gp = q;
        for (int k = 0; k < 100000; ++k) {
            BigReal k3(3 * k);
            t = t * s3 / ((k3 + 2) * (k3 + 3));
            u = u * s3 / ((k3 + 3) * (k3 + 4));
            p = p * s3 / ((k3 + 3) * (k3 + 5));
            q = q * s3 / ((k3 + 1) * (k3 + 3));
            f += t;
            g += u;
            fp += p;
            gp += q;
            BigReal m = abs(t) + abs(u) + abs(p) + abs(q);
            if (m <= eps * (abs(f) + abs(g) + abs(fp) + abs(gp)) && k > 2) break;
        }
        BigReal c1 = airy_c1(), c2 = airy_c2(), r3 = sqrt(BigReal(3));
        out.ai = f * c1 - g * c2;
        out.ai_prime = fp * c1 - gp * c2;
        out.bi = (f * c1 + g * c2) * r3;
        out.bi_prime = (fp * c1 + gp * c2) * r3;
    }
    out.ai = at_prec(out.ai);
    out.ai_prime = at_prec(out.ai_prime);
    out.bi = at_prec(out.bi);
    out.bi_prime = at_prec(out.bi_prime);
    return out;
}

/// Large-argument expansion of Ai and Ai' for |arg s| <= 2 pi / 3.
/// Returns false if the smallest term does not reach the working precision.
inline bool airy_ai_asymptotic(const BigComplex& s, BigComplex& ai, BigComplex& aip) {
    BigReal eps = unit_roundoff();
    BigComplex root = sqrt(s);
    BigComplex zeta = s * root * (BigReal(2) / 3);
    BigComplex quarter = sqrt(root);
    BigComplex inv = BigReal(1) / zeta;
    BigComplex su(BigReal(1)), sv(BigReal(1)), pw(BigReal(1));
    BigReal uk(1);
    BigReal prev = BigReal(1e300);
    bool ok = false;
    for (int k = 1; k < 2000; ++k) {
        uk = uk * BigReal((6 * k - 5) * (6 * k - 3)) * BigReal(6 * k - 1) / (BigReal(216 * k) * (2 * k - 1));
        BigReal vk = -uk * BigReal(6 * k + 1) / BigReal(6 * k - 1);
        pw = -pw * inv;
        BigComplex tu = pw * uk, tv = pw * vk;
        BigReal m = abs(tu) + abs(tv);
        if (m > prev) break;  // divergent tail reached
        prev = m;
        su += tu;
        sv += tv;
        if (m <= eps * BigReal(0.01)) {
            ok = true;
            break;
        }
    }
    if (!ok) return false;
    BigComplex e = exp(-zeta);
    BigReal c = BigReal(1) / (sqrt(big_pi()) * 2);
    ai = e * su * c / quarter;
    aip = -(e * sv * c * quarter);
    return true;
}

/// Ai and Ai' for any s, via the connection formula outside |arg s| <= 2 pi / 3.
inline void airy_ai_pair(const BigComplex& s, unsigned bits, BigComplex& ai, BigComplex& aip, int depth = 0) {
    const BigReal pi = big_pi();
    BigReal as = abs(s);
    double zeta_abs = 2.0 / 3.0 * std::pow(static_cast<double>(as), 1.5);
    bool large = zeta_abs > (bits + 16) * 0.6931471805599453 / 2;
    if (!large) {
        AiryBase b = airy_series(s, bits);
        ai = b.ai;
        aip = b.ai_prime;
        return;
    }
    BigReal th = arg(s);
    if (abs(th) <= pi * 2 / 3 || depth > 1) {
        if (!airy_ai_asymptotic(s, ai, aip)) {
            AiryBase b = airy_series(s, bits);
            ai = b.ai;
            aip = b.ai_prime;
        }
        return;
    }
    // Ai(s) = -w Ai(w s) - w^2 Ai(w^2 s)
    BigComplex w = polar(BigReal(1), pi * 2 / 3), w2 = w * w;
    BigComplex a1, d1, a2, d2;
    airy_ai_pair(w * s, bits, a1, d1, depth + 1);
    airy_ai_pair(w2 * s, bits, a2, d2, depth + 1);
    ai = -(w * a1) - w2 * a2;
    aip = -(w2 * d1) - w * d2;
}

}  // namespace detail

/// Ai, Ai', Bi, Bi' for complex s at the current precision.
inline AiryBase airy_base(const BigComplex& s_in) {
    const unsigned bits = current_bits();
    BigComplex s = at_prec(s_in);
    double as = static_cast<double>(abs(s));
    if (!std::isfinite(as)) throw PrecisionUnreachable("Airy argument is not finite");
    double zeta_abs = 2.0 / 3.0 * std::pow(as, 1.5);
    if (zeta_abs <= (bits + 16) * 0.6931471805599453 / 2) return detail::airy_series(s, bits);
    const BigReal pi = big_pi();
    AiryBase out;
    detail::airy_ai_pair(s, bits, out.ai, out.ai_prime);
    // Bi(s) = e^{i pi/6} Ai(w s) + e^{-i pi/6} Ai(w^2 s)
    BigComplex w = polar(BigReal(1), pi * 2 / 3), w2 = w * w;
    BigComplex e1 = polar(BigReal(1), pi / 6), e2 = conj(e1);
    BigComplex a1, d1, a2, d2;
    detail::airy_ai_pair(w * s, bits, a1, d1);
    detail::airy_ai_pair(w2 * s, bits, a2, d2);
    out.bi = e1 * a1 + e2 * a2;
    out.bi_prime = e1 * w * d1 + e2 * w2 * d2;
    return out;
}

}  // namespace jrh
