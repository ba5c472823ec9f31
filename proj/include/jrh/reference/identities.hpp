#pragma once
#include "jrh/reference/jacobi.hpp"

#include <string>

namespace jrh {

struct IdentityCheck {
    std::string name;
    bool applicable = false;
    bool passed = false;
    std::string detail;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    bool all_passed() const {
        for (auto& c : checks)
            if (c.applicable && !c.passed) return false;
        return true;
    }
};

namespace detail {

/// Ten exact test points away from x = +-1.
inline std::vector<Rational> identity_points() {
    return {Rational(3), Rational(5), Rational(7), Rational(-3), Rational(1, 2), Rational(-2, 3),
            Rational(11, 4), Rational(-9, 5), Rational(13, 7), Rational(0)};
}

inline Rational rpow(const Rational& x, int n) {
    Rational r = 1;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

}  // namespace detail

/// Exact verification of the classical Jacobi identities for (n, alpha, beta).
/// Identities whose hypotheses fail are reported as not applicable.
inline IdentityReport identity_suite(int n, const Rational& alpha, const Rational& beta, bool throw_on_failure = true) {
    IdentityReport rep;
    const RationalPoly P = build_jacobi_raw(n, alpha, beta);
    auto fail = [&](IdentityCheck& c, const std::string& why) {
        c.passed = false;
        c.detail = why;
        if (throw_on_failure) throw IdentityViolated(c.name + ": " + why);
    };

    // x -> (x+3)/(x-1) transformation with the first parameter replaced
    {
        IdentityCheck c{"transformation_alpha", true, true, ""};
        RationalPoly Q = build_jacobi_raw(n, -Rational(2 * n) - alpha - beta - 1, beta);
        for (auto& x : detail::identity_points()) {
            if (x == 1) continue;
            Rational rhs = detail::rpow((1 - x) / 2, n) * Q((x + 3) / (x - 1));
            if (P(x) != rhs) {
                fail(c, "mismatch at x = " + x.str());
                break;
            }
        }
        rep.checks.push_back(c);
    }
    // x -> (3-x)/(x+1) transformation with the second parameter replaced
    {
        IdentityCheck c{"transformation_beta", true, true, ""};
        RationalPoly Q = build_jacobi_raw(n, alpha, -Rational(2 * n) - alpha - beta - 1);
        for (auto& x : detail::identity_points()) {
            if (x == -1) continue;
            Rational rhs = detail::rpow((1 + x) / 2, n) * Q((3 - x) / (x + 1));
            if (P(x) != rhs) {
                fail(c, "mismatch at x = " + x.str());
                break;
            }
        }
        rep.checks.push_back(c);
    }
    // reflection x -> -x swaps the parameters
    {
        IdentityCheck c{"reflection", true, true, ""};
        RationalPoly Q = build_jacobi_raw(n, beta, alpha);
        RationalPoly R = P;
        for (size_t i = 1; i < R.coeffs.size(); i += 2) R.coeffs[i] = -R.coeffs[i];
        if (n % 2) R = Rational(-1) * R;
        if (!same_coefficients(R, Q)) fail(c, "coefficient mismatch");
        rep.checks.push_back(c);
    }
    // alpha = -k: zero of order k at +1
    {
        IdentityCheck c{"integer_alpha", false, true, ""};
        if (is_integer(alpha) && alpha <= -1 && alpha >= -n) {
            c.applicable = true;
            int k = static_cast<int>(boost::multiprecision::numerator(Rational(-alpha)).convert_to<long>());
            // Gamma(n+beta+1)/Gamma(n+beta+1-k) = (n+beta+1-k)_k
            Rational factor = pochhammer(Rational(n) + beta + 1 - k, k) * factorial(n - k) / factorial(n);
            RationalPoly lin;
            lin.coeffs = {Rational(-1, 2), Rational(1, 2)};
            RationalPoly rhs = build_jacobi_raw(n - k, Rational(k), beta);
            for (int i = 0; i < k; ++i) rhs = lin * rhs;
            rhs = factor * rhs;
            if (!same_coefficients(P, rhs)) fail(c, "coefficient mismatch for k = " + std::to_string(k));
        }
        rep.checks.push_back(c);
    }
    // beta = -l: zero of order l at -1
    {
        IdentityCheck c{"integer_beta", false, true, ""};
        if (is_integer(beta) && beta <= -1 && beta >= -n) {
            c.applicable = true;
            int l = static_cast<int>(boost::multiprecision::numerator(Rational(-beta)).convert_to<long>());
            Rational factor = pochhammer(Rational(n) + alpha + 1 - l, l) * factorial(n - l) / factorial(n);
            RationalPoly lin;
            lin.coeffs = {Rational(1, 2), Rational(1, 2)};
            RationalPoly rhs = build_jacobi_raw(n - l, alpha, Rational(l));
            for (int i = 0; i < l; ++i) rhs = lin * rhs;
            rhs = factor * rhs;
            if (!same_coefficients(P, rhs)) fail(c, "coefficient mismatch for l = " + std::to_string(l));
        }
        rep.checks.push_back(c);
    }
    // alpha + beta = -n-k-1: degree drops to k
    {
        IdentityCheck c{"degree_reduction", false, true, ""};
        if (auto k = degree_reduction(n, alpha, beta)) {
            c.applicable = true;
            // Gamma(n+alpha+1)/Gamma(k+alpha+1) = (k+alpha+1)_{n-k}
            Rational factor = pochhammer(Rational(*k) + alpha + 1, n - *k) * factorial(*k) / factorial(n);
            RationalPoly rhs = factor * build_jacobi_raw(*k, alpha, beta);
            if (!same_coefficients(P, rhs)) fail(c, "coefficient mismatch for k = " + std::to_string(*k));
            if (P.degree() > *k) fail(c, "degree exceeds " + std::to_string(*k));
        }
        rep.checks.push_back(c);
    }
    return rep;
}

}  // namespace jrh
