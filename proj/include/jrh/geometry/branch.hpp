#pragma once
#include "jrh/geometry/params.hpp"
#include "jrh/numeric/quadrature.hpp"

namespace jrh {

/// Root of (t - zeta+)(t - zeta-) with the sign closest to ref.
inline BigComplex root_near(const BigComplex& t, const BranchPoints& bp, const BigComplex& ref) {
    BigComplex r = sqrt((t - bp.zeta_plus) * (t - bp.zeta_minus));
    if (norm(r - ref) > norm(r + ref)) r = -r;
    return r;
}

/// Continuous branch of R along a straight segment [p, q]. Each factor
/// sqrt(t - zeta) gets a rotated cut that points away from the segment, and
/// the overall sign is pinned by one known value.
class SegmentRoot {
public:
    SegmentRoot(const BranchPoints& bp, const BigComplex& p, const BigComplex& q)
        : zp_(bp.zeta_plus), zm_(bp.zeta_minus) {
        BigComplex mid = (p + q) * BigReal(0.5);
        setup(mid - zp_, rot_p_, half_p_);
        setup(mid - zm_, rot_m_, half_m_);
    }
    /// Pins the sign so that the branch equals ref_value at ref_point.
    void pin(const BigComplex& ref_point, const BigComplex& ref_value) {
        sigma_ = 1;
        BigComplex v = (*this)(ref_point);
        if (norm(v - ref_value) > norm(v + ref_value)) sigma_ = -1;
    }
    BigComplex operator()(const BigComplex& t) const {
        BigComplex v = (half_p_ * sqrt((t - zp_) * rot_p_)) * (half_m_ * sqrt((t - zm_) * rot_m_));
        return sigma_ > 0 ? v : -v;
    }

private:
    static void setup(const BigComplex& d, BigComplex& rot, BigComplex& half) {
        BigReal m = abs(d);
        if (m == 0) {
            rot = BigComplex(BigReal(1));
            half = BigComplex(BigReal(1));
            return;
        }
        BigComplex u = d / m;
        rot = conj(u);
        half = sqrt(u);
    }
    BigComplex zp_, zm_, rot_p_, half_p_, rot_m_, half_m_;
    int sigma_ = 1;
};

/// d(phi)/dz = kappa R / (z^2 - 1).
inline BigComplex phase_derivative(const BigComplex& z, const BigComplex& R, const BigReal& kappa) {
    return R * kappa / (z * z - BigReal(1));
}

/// Integral of kappa R/(t^2-1) along [p, q] with R continued from R(p) = Rp.
/// Endpoints that coincide with a branch point are passed through `sing`.
inline QuadResult phase_increment(const BranchPoints& bp, const BigComplex& p, const BigComplex& q,
                                  const BigComplex& ref_point, const BigComplex& ref_value,
                                  const BigReal& tol, SqrtEnd sing = SqrtEnd::None) {
    SegmentRoot root(bp, p, q);
    root.pin(ref_point, ref_value);
    const BigReal& kappa = bp.kappa;
    auto f = [&](const BigComplex& t) { return root(t) * kappa / (t * t - BigReal(1)); };
    return integrate_segment(f, p, q, tol, sing);
}

/// Single fixed Gauss panel for segments much shorter than their distance to
/// every singularity. No error control; callers guarantee the ratio.
inline BigComplex phase_increment_short(const BranchPoints& bp, const BigComplex& p, const BigComplex& q,
                                        const BigComplex& Rp, int order) {
    const GaussRule& rule = gauss_legendre(order);
    BigComplex d = (q - p) * BigReal(0.5), mid = (p + q) * BigReal(0.5);
    BigComplex s;
    for (size_t k = 0; k < rule.x.size(); ++k) {
        BigComplex t = mid + d * rule.x[k];
        s += root_near(t, bp, Rp) / (t * t - BigReal(1)) * rule.w[k];
    }
    return s * d * bp.kappa;
}

}  // namespace jrh
