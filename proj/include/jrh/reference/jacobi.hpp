#pragma once
#include "jrh/reference/rational_poly.hpp"

#include <optional>

namespace jrh {

/// Rising factorial (x)_k.
inline Rational pochhammer(const Rational& x, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= x + i;
    return r;
}

inline Rational factorial(int k) {
    Rational r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

/// Generalized binomial coefficient binom(x, k) for integer k >= 0.
inline Rational binomial(const Rational& x, int k) {
    if (k < 0) return 0;
    Rational r = 1;
    for (int i = 0; i < k; ++i) r = r * (x - i) / (i + 1);
    return r;
}

inline bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

/// k when alpha + beta = -n - k - 1 with k in {0..n-1}.
inline std::optional<int> degree_reduction(int n, const Rational& alpha, const Rational& beta) {
    Rational k = -Rational(n) - 1 - alpha - beta;
    if (!is_integer(k)) return std::nullopt;
    if (k < 0 || k > n - 1) return std::nullopt;
    return static_cast<int>(boost::multiprecision::numerator(k).convert_to<long>());
}

/// P_n^(alpha,beta) from its expansion in powers of (x-1)/2, without the
/// degree-reduction gate.
inline RationalPoly build_jacobi_raw(int n, const Rational& alpha, const Rational& beta) {
    if (n < 0) throw InvalidInput("degree must be non-negative");
    RationalPoly p;
    p.alpha = alpha;
    p.beta = beta;
    p.n = n;
    p.coeffs.assign(static_cast<size_t>(n) + 1, Rational(0));
    Rational nf = factorial(n);
    // ((x-1)/2)^m expanded into monomials, built incrementally
    std::vector<Rational> u{Rational(1)};
    for (int m = 0; m <= n; ++m) {
        Rational cm = binomial(Rational(n), m) * pochhammer(Rational(n) + alpha + beta + 1, m) *
                      pochhammer(alpha + m + 1, n - m) / nf;
        if (cm != 0)
            for (size_t j = 0; j < u.size(); ++j) p.coeffs[j] += cm * u[j];
        // u <- u * (x - 1)/2
        std::vector<Rational> v(u.size() + 1, Rational(0));
        for (size_t j = 0; j < u.size(); ++j) {
            v[j + 1] += u[j] / 2;
            v[j] -= u[j] / 2;
        }
        u.swap(v);
    }
    p.trim();
    return p;
}

/// P_n^(alpha,beta) with exact coefficients. Raises DegreeReduction when
/// alpha + beta = -n - k - 1 for some k in {0..n-1}.
inline RationalPoly build_jacobi(int n, const Rational& alpha, const Rational& beta) {
    if (auto k = degree_reduction(n, alpha, beta)) throw DegreeReduction(n, *k);
    return build_jacobi_raw(n, alpha, beta);
}

inline RationalPoly build_jacobi_monic(int n, const Rational& alpha, const Rational& beta) {
    return build_jacobi(n, alpha, beta).to_monic();
}

/// Exact leading coefficient (n+alpha+beta+1)_n / (2^n n!).
inline Rational jacobi_leading(int n, const Rational& alpha, const Rational& beta) {
    Rational two_n = 1;
    for (int i = 0; i < n; ++i) two_n *= 2;
    return pochhammer(Rational(n) + alpha + beta + 1, n) / (two_n * factorial(n));
}

/// Independent oracle: the symmetric binomial sum
/// sum_s binom(n+alpha, n-s) binom(n+beta, s) ((x-1)/2)^s ((x+1)/2)^(n-s).
inline Rational jacobi_binomial_sum(int n, const Rational& alpha, const Rational& beta, const Rational& x) {
    Rational a = (x - 1) / 2, b = (x + 1) / 2, s = 0;
    for (int k = 0; k <= n; ++k) {
        Rational term = binomial(Rational(n) + alpha, n - k) * binomial(Rational(n) + beta, k);
        for (int i = 0; i < k; ++i) term *= a;
        for (int i = 0; i < n - k; ++i) term *= b;
        s += term;
    }
    return s;
}

inline ComplexRational jacobi_binomial_sum(int n, const Rational& alpha, const Rational& beta,
                                           const ComplexRational& x) {
    ComplexRational a{(x.re - 1) / 2, x.im / 2}, b{(x.re + 1) / 2, x.im / 2}, s;
    for (int k = 0; k <= n; ++k) {
        ComplexRational term{binomial(Rational(n) + alpha, n - k) * binomial(Rational(n) + beta, k), 0};
        for (int i = 0; i < k; ++i) term = term * a;
        for (int i = 0; i < n - k; ++i) term = term * b;
        s = s + term;
    }
    return s;
}

}  // namespace jrh
