#pragma once
#include "jrh/reference/jacobi.hpp"

#include <algorithm>

namespace jrh {

struct ZeroSet {
    std::vector<BigComplex> zeros;
    BigReal residual_bound{0};  // max |p(z_i)| / sum |a_k| |z_i|^k
    unsigned precision_bits = 0;
    int iterations = 0;
};

struct ZeroOptions {
    int max_iterations = 400;
    int max_doublings = 6;
    double radius = 0;  // initial circle radius; 0 picks one from the polynomial
};

/// Canonical ordering: by argument, then modulus.
inline void sort_zeros(std::vector<BigComplex>& z) {
    std::stable_sort(z.begin(), z.end(), [](const BigComplex& a, const BigComplex& b) {
        double aa = static_cast<double>(arg(a)), ab = static_cast<double>(arg(b));
        if (aa != ab) return aa < ab;
        return abs(a) < abs(b);
    });
}

namespace detail {

/// Horner for p and p' with a scale for the residual test.
inline void horner2(const std::vector<BigReal>& c, const BigComplex& z, BigComplex& p, BigComplex& dp,
                    BigReal& scale) {
    BigReal az = abs(z);
    p = BigComplex(c.back());
    dp = BigComplex();
    scale = abs(c.back());
    for (size_t i = c.size() - 1; i-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[i];
        scale = scale * az + abs(c[i]);
    }
}

/// Default starting radius: one plus the modulus of zeta+ for the limiting
/// parameters, else the geometric mean of the zero moduli.
inline double start_radius(const RationalPoly& p, int deg) {
    if (p.n > 0) {
        double A = static_cast<double>(p.alpha / p.n), B = static_cast<double>(p.beta / p.n);
        double s = A + B + 2;
        double disc = (A + 1) * (B + 1) * (-A - B - 1);
        if (s != 0 && disc > 0) {
            double re = (B * B - A * A) / (s * s), im = 4 * std::sqrt(disc) / (s * s);
            return 1 + std::hypot(re, im);
        }
    }
    double a0 = std::abs(static_cast<double>(p.coeffs.front())), an = std::abs(static_cast<double>(p.leading()));
    if (a0 == 0 || an == 0 || !std::isfinite(a0 / an)) return 1.5;
    double r = std::pow(a0 / an, 1.0 / deg);
    return std::isfinite(r) && r > 0 ? r : 1.5;
}

}  // namespace detail

/// All zeros by Aberth-Ehrlich iteration at the requested precision, doubling
/// it when the iteration stalls.
inline ZeroSet find_zeros(const RationalPoly& p_in, unsigned precision_bits, const ZeroOptions& opt = {}) {
    RationalPoly p = p_in;
    p.trim();
    const int deg = p.degree();
    if (deg < 0) throw InvalidInput("zero polynomial");
    ZeroSet out;
    if (deg == 0) {
        out.precision_bits = precision_bits;
        return out;
    }
    const double radius = opt.radius > 0 ? opt.radius : detail::start_radius(p, deg);
    unsigned bits = precision_bits;
    for (int attempt = 0; attempt <= opt.max_doublings; ++attempt, bits *= 2) {
        PrecisionGuard guard(bits + 64);
        std::vector<BigReal> c;
        Rational lc = p.leading();
        for (int i = 0; i <= deg; ++i) c.push_back(to_big(p.coeffs[static_cast<size_t>(i)] / lc));
        std::vector<BigComplex> z(static_cast<size_t>(deg));
        if (attempt == 0 || out.zeros.empty()) {
            BigReal two_pi = big_pi() * 2;
            for (int i = 0; i < deg; ++i) {
                // deterministic jitter keeps the start off any symmetry axis
                BigReal th = two_pi * (BigReal(i) + BigReal(0.25)) / deg + BigReal(0.4);
                BigReal rr = BigReal(radius) * (BigReal(1) + BigReal(0.01) * BigReal((i * 7919) % 13) / 13);
                z[static_cast<size_t>(i)] = polar(rr, th);
            }
        } else {
            for (int i = 0; i < deg; ++i) z[static_cast<size_t>(i)] = at_prec(out.zeros[static_cast<size_t>(i)]);
        }
        // stop at rounding level of the working precision so clusters shrink to sqrt(u)
        const BigReal eps = boost::multiprecision::ldexp(BigReal(1), -static_cast<int>(bits + 64));
        const BigReal res_tol = eps * BigReal(16 * deg);
        std::vector<char> done(static_cast<size_t>(deg), 0);
        int it = 0;
        bool converged = false;
        for (; it < opt.max_iterations; ++it) {
            int active = 0;
            for (int i = 0; i < deg; ++i) {
                size_t si = static_cast<size_t>(i);
                BigComplex pv, dpv;
                BigReal sc;
                detail::horner2(c, z[si], pv, dpv, sc);
                if (abs(pv) <= res_tol * sc) {
                    done[si] = 1;
                    continue;
                }
                done[si] = 0;
                ++active;
                BigComplex ratio = pv / dpv;
                BigComplex sum;
                for (int j = 0; j < deg; ++j)
                    if (j != i) sum += BigReal(1) / (z[si] - z[static_cast<size_t>(j)]);
                BigComplex w = ratio / (BigReal(1) - ratio * sum);
                z[si] -= w;
                if (abs(w) <= eps * abs(z[si])) done[si] = 1;
            }
            if (active == 0) {
                converged = true;
                break;
            }
        }
        out.zeros = z;
        out.iterations += it;
        if (!converged) continue;
        // residual certificate
        BigReal worst(0);
        for (auto& zi : z) {
            BigComplex pv, dpv;
            BigReal sc;
            detail::horner2(c, zi, pv, dpv, sc);
            BigReal r = abs(pv) / sc;
            if (r > worst) worst = r;
        }
        out.residual_bound = worst;
        out.precision_bits = bits;
        sort_zeros(out.zeros);
        return out;
    }
    throw NoConverge("Aberth iteration did not converge after precision doubling");
}

}  // namespace jrh
