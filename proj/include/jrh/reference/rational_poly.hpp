#pragma once
#include "jrh/errors.hpp"
#include "jrh/numeric/complex.hpp"

#include <vector>

namespace jrh {

/// Polynomial with exact rational coefficients in ascending degree.
struct RationalPoly {
    std::vector<Rational> coeffs;
    Rational alpha{0}, beta{0};
    int n = 0;  // nominal degree of the Jacobi polynomial it represents
    bool monic = false;

    int degree() const {
        for (size_t i = coeffs.size(); i-- > 0;)
            if (coeffs[i] != 0) return static_cast<int>(i);
        return -1;
    }
    const Rational& leading() const {
        int d = degree();
        if (d < 0) throw InvalidInput("zero polynomial has no leading coefficient");
        return coeffs[static_cast<size_t>(d)];
    }
    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }
    RationalPoly to_monic() const {
        RationalPoly out = *this;
        Rational lc = leading();
        for (auto& c : out.coeffs) c /= lc;
        out.trim();
        out.monic = true;
        return out;
    }

    Rational operator()(const Rational& x) const {
        Rational s = 0;
        for (size_t i = coeffs.size(); i-- > 0;) s = s * x + coeffs[i];
        return s;
    }
    ComplexRational operator()(const ComplexRational& x) const {
        ComplexRational s;
        for (size_t i = coeffs.size(); i-- > 0;) s = s * x + ComplexRational{coeffs[i], 0};
        return s;
    }
};

inline RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly out;
    if (a.coeffs.empty() || b.coeffs.empty()) return out;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Rational(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        for (size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    out.trim();
    return out;
}

inline RationalPoly operator*(const Rational& s, RationalPoly p) {
    for (auto& c : p.coeffs) c *= s;
    p.trim();
    return p;
}

inline bool same_coefficients(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly x = a, y = b;
    x.trim();
    y.trim();
    return x.coeffs == y.coeffs;
}

/// Value of a polynomial with an a priori rounding bound.
struct PolyValue {
    BigComplex value;
    BigReal error{0};
    BigReal scale{0};  // sum |a_i| |z|^i
};

/// Horner evaluation at the current precision. The bound uses the standard
/// gamma_{2n+2} estimate with a factor for complex arithmetic.
inline PolyValue eval_poly_here(const RationalPoly& p, const BigComplex& z) {
    PolyValue out;
    BigReal az = abs(z);
    for (size_t i = p.coeffs.size(); i-- > 0;) {
        BigReal c = to_big(p.coeffs[i]);
        out.value = out.value * z + c;
        out.scale = out.scale * az + abs(c);
    }
    BigReal u = unit_roundoff();
    out.error = u * BigReal(4 * (2 * static_cast<long>(p.coeffs.size()) + 2)) * out.scale;
    return out;
}

/// Horner evaluation at the stated precision.
inline PolyValue eval_poly(const RationalPoly& p, const BigComplex& z, unsigned precision_bits) {
    PrecisionGuard guard(precision_bits);
    BigComplex zz = at_prec(z);
    return eval_poly_here(p, zz);
}

/// Evaluation that raises the precision until the relative error bound is below rel_tol.
inline PolyValue eval_poly_relative(const RationalPoly& p, const BigComplex& z, double rel_tol,
                                    unsigned start_bits = 256, int max_doublings = 6) {
    unsigned bits = start_bits;
    for (int k = 0; k <= max_doublings; ++k, bits *= 2) {
        PolyValue v = eval_poly(p, z, bits);
        if (v.error <= abs(v.value) * BigReal(rel_tol)) return v;
    }
    throw PrecisionExhausted("polynomial value not resolved to the requested relative accuracy");
}

/// Derivative polynomial.
inline RationalPoly derivative(const RationalPoly& p) {
    RationalPoly d = p;
    d.coeffs.clear();
    for (size_t i = 1; i < p.coeffs.size(); ++i) d.coeffs.push_back(p.coeffs[i] * static_cast<long>(i));
    d.trim();
    d.monic = false;
    return d;
}

}  // namespace jrh
