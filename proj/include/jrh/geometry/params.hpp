#pragma once
#include "jrh/errors.hpp"
#include "jrh/numeric/complex.hpp"

#include <string>

namespace jrh {

/// Limiting parameters (A, B) with -1 < A, B < 0 and A + B < -1, held exactly.
struct ParameterPair {
    Rational A;
    Rational B;
    bool ill_conditioned = false;  // some constraint holds with margin below 1e-6

    BigReal A_big() const { return to_big(A); }
    BigReal B_big() const { return to_big(B); }
    BigReal kappa() const { return to_big((A + B + 2) / 2); }
};

inline ParameterPair make_params(const Rational& A, const Rational& B) {
    auto s = [](const Rational& q) { return q.str(); };
    if (!(A > -1 && A < 0)) throw ParameterOutOfRange("A = " + s(A) + " must satisfy -1 < A < 0");
    if (!(B > -1 && B < 0)) throw ParameterOutOfRange("B = " + s(B) + " must satisfy -1 < B < 0");
    if (!(A + B < -1)) throw ParameterOutOfRange("A + B = " + s(A + B) + " must be < -1");
    ParameterPair p{A, B, false};
    Rational margin = A + 1;
    if (B + 1 < margin) margin = B + 1;
    if (-1 - A - B < margin) margin = -1 - A - B;
    p.ill_conditioned = margin < Rational(1, 1000000);
    return p;
}

struct BranchPoints {
    BigComplex zeta_plus;
    BigComplex zeta_minus;
    BigReal kappa;  // (A+B+2)/2
};

inline BranchPoints branch_points(const ParameterPair& p) {
    BigReal A = p.A_big(), B = p.B_big();
    BigReal s = A + B + 2;
    BigReal re = (B * B - A * A) / (s * s);
    BigReal im = 4 * sqrt((A + 1) * (B + 1) * (-A - B - 1)) / (s * s);
    return {BigComplex(re, im), BigComplex(re, BigReal(-im)), s / 2};
}

}  // namespace jrh
