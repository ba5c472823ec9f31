#pragma once
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <string>

namespace jrh {

using BigReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline unsigned bits_to_digits(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}
inline unsigned digits_to_bits(unsigned digits) {
    return static_cast<unsigned>(std::ceil(digits * 3.3219280948873623));
}

/// Sets the thread default MPFR precision for the lifetime of the guard.
/// Results of arithmetic inherit operand precision, so values must be created
/// inside the guard that governs them.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned bits) : saved_(BigReal::default_precision()) {
        BigReal::default_precision(bits_to_digits(bits));
    }
    ~PrecisionGuard() { BigReal::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

inline unsigned current_bits() { return digits_to_bits(BigReal::default_precision()); }

inline BigReal big_pi() {
    BigReal r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

/// Unit roundoff of the current default precision.
inline BigReal unit_roundoff() {
    return boost::multiprecision::ldexp(BigReal(1), -static_cast<int>(current_bits()));
}

inline BigReal to_big(const Rational& q) {
    BigReal num(boost::multiprecision::numerator(q));
    BigReal den(boost::multiprecision::denominator(q));
    return num / den;
}

inline std::string to_string(const BigReal& x, int digits = 0) {
    if (digits <= 0) digits = static_cast<int>(BigReal::default_precision());
    return x.str(digits, std::ios_base::scientific);
}

/// x - round(x), exact.
inline Rational frac_nearest(const Rational& x, BigInt* k_out = nullptr) {
    BigInt num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
    // floor(x + 1/2)
    BigInt twice = 2 * num + den, d2 = 2 * den;
    BigInt k = twice / d2;
    if (twice % d2 != 0 && twice < 0) k -= 1;
    if (k_out) *k_out = k;
    return x - Rational(k);
}

/// Distance from x to the nearest integer, exact.
inline Rational dist_to_integer(const Rational& x) {
    Rational r = frac_nearest(x);
    return r < 0 ? Rational(-r) : r;
}

}  // namespace jrh
