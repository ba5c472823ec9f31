#pragma once
#include "jrh/numeric/big.hpp"

#include <cmath>
#include <complex>
#include <ostream>

namespace jrh {

/// Minimal complex arithmetic over an arbitrary real scalar. std::complex is
/// only specified for the builtin floating types, so the multiprecision path
/// needs its own.
template <class T>
struct Complex {
    T re{0};
    T im{0};

    Complex() = default;
    Complex(const T& r) : re(r), im(0) {}  // NOLINT(implicit)
    Complex(const T& r, const T& i) : re(r), im(i) {}
    template <class U, class = std::enable_if_t<std::is_arithmetic_v<U> && !std::is_same_v<U, T>>>
    Complex(U r) : re(T(r)), im(0) {}  // NOLINT(implicit)

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        T r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        T d = o.re * o.re + o.im * o.im;
        T r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = std::move(r);
        return *this;
    }
    Complex& operator*=(const T& s) { re *= s; im *= s; return *this; }
    Complex& operator/=(const T& s) { re /= s; im /= s; return *this; }
    Complex operator-() const { return {-re, -im}; }
};

template <class T> Complex<T> operator+(Complex<T> a, const Complex<T>& b) { return a += b; }
template <class T> Complex<T> operator-(Complex<T> a, const Complex<T>& b) { return a -= b; }
template <class T> Complex<T> operator*(Complex<T> a, const Complex<T>& b) { return a *= b; }
template <class T> Complex<T> operator/(Complex<T> a, const Complex<T>& b) { return a /= b; }
template <class T> Complex<T> operator*(Complex<T> a, const T& s) { return a *= s; }
template <class T> Complex<T> operator*(const T& s, Complex<T> a) { return a *= s; }
template <class T> Complex<T> operator/(Complex<T> a, const T& s) { return a /= s; }
template <class T> Complex<T> operator+(Complex<T> a, const T& s) { a.re += s; return a; }
template <class T> Complex<T> operator+(const T& s, Complex<T> a) { a.re += s; return a; }
template <class T> Complex<T> operator-(Complex<T> a, const T& s) { a.re -= s; return a; }
template <class T> Complex<T> operator-(const T& s, const Complex<T>& a) { return {s - a.re, -a.im}; }
template <class T> Complex<T> operator/(const T& s, const Complex<T>& a) { return Complex<T>(s) / a; }
template <class T> bool operator==(const Complex<T>& a, const Complex<T>& b) { return a.re == b.re && a.im == b.im; }

// mixed with builtin numbers
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U> && !std::is_same_v<U, T>>>
Complex<T> operator*(Complex<T> a, U s) { return a *= T(s); }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U> && !std::is_same_v<U, T>>>
Complex<T> operator*(U s, Complex<T> a) { return a *= T(s); }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U> && !std::is_same_v<U, T>>>
Complex<T> operator/(Complex<T> a, U s) { return a /= T(s); }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U> && !std::is_same_v<U, T>>>
Complex<T> operator+(Complex<T> a, U s) { a.re += T(s); return a; }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U> && !std::is_same_v<U, T>>>
Complex<T> operator-(Complex<T> a, U s) { a.re -= T(s); return a; }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U> && !std::is_same_v<U, T>>>
Complex<T> operator-(U s, const Complex<T>& a) { return {T(s) - a.re, -a.im}; }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U> && !std::is_same_v<U, T>>>
Complex<T> operator+(U s, Complex<T> a) { a.re += T(s); return a; }

template <class T> Complex<T> conj(const Complex<T>& z) { return {z.re, -z.im}; }
template <class T> T norm(const Complex<T>& z) { return z.re * z.re + z.im * z.im; }
template <class T> T abs(const Complex<T>& z) { using std::hypot; return hypot(z.re, z.im); }
template <class T> T arg(const Complex<T>& z) { using std::atan2; return atan2(z.im, z.re); }
template <class T> Complex<T> polar(const T& r, const T& t) {
    using std::cos; using std::sin;
    return {r * cos(t), r * sin(t)};
}
template <class T> Complex<T> exp(const Complex<T>& z) {
    using std::exp;
    return polar(T(exp(z.re)), z.im);
}
/// Principal logarithm, arg in (-pi, pi].
template <class T> Complex<T> log(const Complex<T>& z) {
    using std::log;
    return {T(log(abs(z))), arg(z)};
}
/// Principal square root, cut on the negative real axis.
template <class T> Complex<T> sqrt(const Complex<T>& z) {
    using std::sqrt; using std::abs;
    if (z.re == 0 && z.im == 0) return {T(0), T(0)};
    T m = abs(z);
    T a = sqrt((m + abs(z.re)) / 2);
    if (z.re >= 0) return {a, z.im / (2 * a)};
    T b = z.im < 0 ? T(-a) : a;
    return {T(abs(z.im) / (2 * a)), b};
}
template <class T> Complex<T> pow(const Complex<T>& z, const T& p) {
    if (z.re == 0 && z.im == 0) return {T(0), T(0)};
    return exp(log(z) * p);
}
template <class T> Complex<T> pow(const Complex<T>& z, const Complex<T>& p) {
    return exp(log(z) * p);
}
template <class T> Complex<T> sin(const Complex<T>& z) {
    using std::sin; using std::cos; using std::sinh; using std::cosh;
    return {T(sin(z.re) * cosh(z.im)), T(cos(z.re) * sinh(z.im))};
}
template <class T> Complex<T> cos(const Complex<T>& z) {
    using std::sin; using std::cos; using std::sinh; using std::cosh;
    return {T(cos(z.re) * cosh(z.im)), T(-sin(z.re) * sinh(z.im))};
}
template <class T> Complex<T> ipow(Complex<T> z, unsigned long k) {
    Complex<T> r(T(1));
    while (k) {
        if (k & 1) r *= z;
        z *= z;
        k >>= 1;
    }
    return r;
}
template <class T> bool isfinite(const Complex<T>& z) {
    using boost::multiprecision::isfinite; using std::isfinite;
    return isfinite(z.re) && isfinite(z.im);
}

template <class T> std::ostream& operator<<(std::ostream& os, const Complex<T>& z) {
    return os << '(' << z.re << (z.im < 0 ? " - " : " + ") << abs(z.im) << "i)";
}

using BigComplex = Complex<BigReal>;
using DComplex = std::complex<double>;

/// Brings a value to the current default precision.
inline BigReal at_prec(const BigReal& x) {
    BigReal r(x);
    r.precision(BigReal::default_precision());
    return r;
}
inline BigComplex at_prec(const BigComplex& z) { return {at_prec(z.re), at_prec(z.im)}; }

inline BigComplex I_unit() { return {BigReal(0), BigReal(1)}; }
inline DComplex to_double(const BigComplex& z) {
    return {static_cast<double>(z.re), static_cast<double>(z.im)};
}
inline BigComplex from_double(const DComplex& z) { return {BigReal(z.real()), BigReal(z.imag())}; }

/// Exact Gaussian rational, used by the exact reference path.
struct ComplexRational {
    Rational re{0};
    Rational im{0};
};
inline ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) { return {a.re + b.re, a.im + b.im}; }
inline ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) { return {a.re - b.re, a.im - b.im}; }
inline ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
    Rational d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline bool operator==(const ComplexRational& a, const ComplexRational& b) { return a.re == b.re && a.im == b.im; }
inline BigComplex to_big(const ComplexRational& z) { return {to_big(z.re), to_big(z.im)}; }

}  // namespace jrh
