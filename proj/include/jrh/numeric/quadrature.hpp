#pragma once
#include "jrh/errors.hpp"
#include "jrh/numeric/complex.hpp"

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace jrh {

struct GaussRule {
    std::vector<BigReal> x;  // nodes on [-1, 1]
    std::vector<BigReal> w;
};

/// Gauss-Legendre rule of order m at the current precision, cached per (m, bits).
inline const GaussRule& gauss_legendre(int m) {
    static std::mutex mu;
    static std::map<std::pair<int, unsigned>, GaussRule> cache;
    const unsigned bits = current_bits();
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(m, bits);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    GaussRule r;
    r.x.resize(m);
    r.w.resize(m);
    const BigReal pi = big_pi();
    const BigReal eps = unit_roundoff() * 8;
    for (int i = 0; i < (m + 1) / 2; ++i) {
        BigReal x = cos(pi * (BigReal(i) + BigReal(0.75)) / (BigReal(m) + BigReal(0.5)));
        BigReal dp;
        for (int it2 = 0; it2 < 200; ++it2) {
            BigReal p0 = 1, p1 = x;
            for (int k = 2; k <= m; ++k) {
                BigReal p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = std::move(p1);
                p1 = std::move(p2);
            }
            dp = m * (x * p1 - p0) / (x * x - 1);
            BigReal dx = p1 / dp;
            x -= dx;
            if (abs(dx) < eps) {
                // refresh derivative at the converged node
                BigReal q0 = 1, q1 = x;
                for (int k = 2; k <= m; ++k) {
                    BigReal q2 = ((2 * k - 1) * x * q1 - (k - 1) * q0) / k;
                    q0 = std::move(q1);
                    q1 = std::move(q2);
                }
                dp = m * (x * q1 - q0) / (x * x - 1);
                break;
            }
        }
        BigReal w = 2 / ((1 - x * x) * dp * dp);
        r.x[i] = -x;
        r.w[i] = w;
        r.x[m - 1 - i] = x;
        r.w[m - 1 - i] = w;
    }
    return cache.emplace(key, std::move(r)).first->second;
}

struct QuadResult {
    BigComplex value;
    BigReal error{0};
    long evals = 0;
};

struct QuadOptions {
    int order = 20;
    int max_depth = 40;
};

namespace detail {

template <class G>
BigComplex gl_panel(G& g, const BigReal& lo, const BigReal& hi, const GaussRule& rule, long& evals) {
    BigReal half = (hi - lo) / 2, mid = (hi + lo) / 2;
    BigComplex s;
    for (size_t k = 0; k < rule.x.size(); ++k) {
        s += g(mid + half * rule.x[k]) * rule.w[k];
    }
    evals += static_cast<long>(rule.x.size());
    return s * half;
}

template <class G>
void adapt(G& g, const BigReal& lo, const BigReal& hi, const BigComplex& whole, const BigReal& tol,
           int depth, const QuadOptions& opt, const GaussRule& rule, QuadResult& out) {
    BigReal mid = (lo + hi) / 2;
    BigComplex left = gl_panel(g, lo, mid, rule, out.evals);
    BigComplex right = gl_panel(g, mid, hi, rule, out.evals);
    BigComplex both = left + right;
    BigReal err = abs(both - whole);
    BigReal floor_ = unit_roundoff() * 64 * (abs(both) + 1e-300);
    if (err <= tol || err <= floor_) {
        out.value += both;
        out.error += err;
        return;
    }
    if (depth >= opt.max_depth) {
        throw QuadNoConverge("adaptive quadrature reached depth limit (panel error " +
                             to_string(err, 6) + ")");
    }
    adapt(g, lo, mid, left, tol / 2, depth + 1, opt, rule, out);
    adapt(g, mid, hi, right, tol / 2, depth + 1, opt, rule, out);
}

}  // namespace detail

/// Adaptive Gauss-Legendre integration of a complex valued g over real [lo, hi].
/// The error estimate compares each panel with its two halves.
template <class G>
QuadResult integrate_interval(G&& g, const BigReal& lo, const BigReal& hi, const BigReal& tol,
                              const QuadOptions& opt = {}) {
    const GaussRule& rule = gauss_legendre(opt.order);
    QuadResult out;
    BigComplex whole = detail::gl_panel(g, lo, hi, rule, out.evals);
    detail::adapt(g, lo, hi, whole, tol, 0, opt, rule, out);
    return out;
}

/// Which ends of a segment carry a square-root type branch point.
enum class SqrtEnd { None, Start, End, Both };

/// Integral of f along the straight segment a -> b. Square-root endpoints are
/// handled with t = endpoint + (other - endpoint) u^2, which makes the
/// integrand analytic in u.
template <class F>
QuadResult integrate_segment(F&& f, const BigComplex& a, const BigComplex& b, const BigReal& tol,
                             SqrtEnd sing = SqrtEnd::None, const QuadOptions& opt = {}) {
    if (sing == SqrtEnd::Both) {
        BigComplex m = (a + b) * BigReal(0.5);
        QuadResult r1 = integrate_segment(f, a, m, tol / 2, SqrtEnd::Start, opt);
        QuadResult r2 = integrate_segment(f, m, b, tol / 2, SqrtEnd::End, opt);
        r1.value += r2.value;
        r1.error += r2.error;
        r1.evals += r2.evals;
        return r1;
    }
    BigComplex d = b - a;
    if (sing == SqrtEnd::None) {
        auto g = [&](const BigReal& u) { return f(a + d * u) * d; };
        return integrate_interval(g, BigReal(0), BigReal(1), tol, opt);
    }
    if (sing == SqrtEnd::Start) {
        auto g = [&](const BigReal& u) { return f(a + d * (u * u)) * (d * (2 * u)); };
        return integrate_interval(g, BigReal(0), BigReal(1), tol, opt);
    }
    auto g = [&](const BigReal& u) { return f(b - d * (u * u)) * (d * (2 * u)); };
    return integrate_interval(g, BigReal(0), BigReal(1), tol, opt);
}

/// Integral of f along a polyline; `first` marks a square-root singularity at
/// the first waypoint.
template <class F>
QuadResult integrate_polyline(F&& f, const std::vector<BigComplex>& wp, const BigReal& tol,
                              SqrtEnd first = SqrtEnd::None, const QuadOptions& opt = {}) {
    QuadResult out;
    if (wp.size() < 2) return out;
    BigReal seg_tol = tol / BigReal(static_cast<long>(wp.size() - 1));
    for (size_t i = 0; i + 1 < wp.size(); ++i) {
        QuadResult r = integrate_segment(f, wp[i], wp[i + 1], seg_tol, i == 0 ? first : SqrtEnd::None, opt);
        out.value += r.value;
        out.error += r.error;
        out.evals += r.evals;
    }
    return out;
}

/// Integral of f along a smooth parametrized curve z(s), s in [lo, hi].
template <class F, class Z, class DZ>
QuadResult integrate_curve(F&& f, Z&& z, DZ&& dz, const BigReal& lo, const BigReal& hi, const BigReal& tol,
                           const QuadOptions& opt = {}) {
    auto g = [&](const BigReal& s) { return f(z(s)) * dz(s); };
    return integrate_interval(g, lo, hi, tol, opt);
}

}  // namespace jrh
