#pragma once
#include "jrh/errors.hpp"
#include "jrh/geometry/arc.hpp"
#include "jrh/geometry/branch.hpp"

#include <array>
#include <complex>
#include <optional>
#include <vector>

namespace jrh {

/// Level lines of Re(phi) or of Im(phi).
enum class Flow { Level, Orthogonal };

struct TraceConfig {
    BigReal step{0.05};       // spacing bound for stored points inside the box
    BigReal tol{1e-20};       // bound on |level function - level| at stored points
    double ode_tol = 1e-9;    // local error of the predictor
    long max_steps = 400000;
    BigReal box{10};          // radius of the bounding disk
    BigReal box_unit{1};      // scale used for step growth beyond the box
    BigReal far_radius{1e8};  // unbounded arcs are continued (in double) up to here
    BigReal degenerate_radius{0};
};

struct TraceTarget {
    BigComplex point;
    Anchor anchor;
    bool branch_point;  // square-root endpoint rather than a pole
};

struct TraceRequest {
    Flow flow = Flow::Level;
    BigReal level{0};
    BigComplex z0, phi0, R0;            // start state, already on the level line
    std::complex<double> direction;     // rough initial heading
    std::vector<TraceTarget> targets;   // captured when approached
    bool stop_at_box = false;           // leaving the box ends the arc at infinity
    bool closed_loop = false;           // stop when returning to z0
};

struct TraceOutput {
    std::vector<BigComplex> z, phi, R;
    Anchor end = Anchor::Closed;
    std::vector<std::complex<double>> tail;
    long steps = 0;
};

namespace detail {

inline BigReal level_value(Flow f, const BigComplex& phi) { return f == Flow::Level ? phi.re : phi.im; }

/// Gradient of the level function, as a complex number.
inline BigComplex level_gradient(Flow f, const BigComplex& dphi) {
    return f == Flow::Level ? conj(dphi) : I_unit() * conj(dphi);
}

inline double dist_singular(const BranchPoints& bp, std::complex<double> z) {
    std::complex<double> zp = to_double(bp.zeta_plus), zm = to_double(bp.zeta_minus);
    return std::min({std::abs(z - zp), std::abs(z - zm), std::abs(z - 1.0), std::abs(z + 1.0)});
}

struct DirectionField {
    std::complex<double> zp, zm, Rref;
    Flow flow;
    double sign;
    std::complex<double> operator()(std::complex<double> z) const {
        std::complex<double> r = std::sqrt((z - zp) * (z - zm));
        if (std::norm(r - Rref) > std::norm(r + Rref)) r = -r;
        std::complex<double> d = r / (z * z - 1.0);
        std::complex<double> g = flow == Flow::Level ? std::complex<double>(0, 1) * std::conj(d) : std::conj(d);
        return sign * g / std::abs(g);
    }
};

/// One Dormand-Prince 5(4) step; returns the 5th order point and sets err.
inline std::complex<double> dp_step(const DirectionField& f, std::complex<double> z, double h, double& err) {
    using C = std::complex<double>;
    C k1 = f(z);
    C k2 = f(z + h * (k1 / 5.0));
    C k3 = f(z + h * (3.0 / 40 * k1 + 9.0 / 40 * k2));
    C k4 = f(z + h * (44.0 / 45 * k1 - 56.0 / 15 * k2 + 32.0 / 9 * k3));
    C k5 = f(z + h * (19372.0 / 6561 * k1 - 25360.0 / 2187 * k2 + 64448.0 / 6561 * k3 - 212.0 / 729 * k4));
    C k6 = f(z + h * (9017.0 / 3168 * k1 - 355.0 / 33 * k2 + 46732.0 / 5247 * k3 + 49.0 / 176 * k4 -
                      5103.0 / 18656 * k5));
    C y5 = z + h * (35.0 / 384 * k1 + 500.0 / 1113 * k3 + 125.0 / 192 * k4 - 2187.0 / 6784 * k5 + 11.0 / 84 * k6);
    C k7 = f(y5);
    C y4 = z + h * (5179.0 / 57600 * k1 + 7571.0 / 16695 * k3 + 393.0 / 640 * k4 - 92097.0 / 339200 * k5 +
                    187.0 / 2100 * k6 + 1.0 / 40 * k7);
    err = std::abs(y5 - y4);
    return y5;
}

}  // namespace detail

/// Newton projection of (z, phi, R) onto {level function = level}, moving
/// along the gradient. Phase and root are carried along exactly.
inline void project_to_level(const BranchPoints& bp, Flow flow, const BigReal& level, BigComplex& z,
                             BigComplex& phi, BigComplex& R, const BigReal& tol) {
    for (int it = 0; it < 12; ++it) {
        BigReal e = detail::level_value(flow, phi) - level;
        if (abs(e) <= tol / 16) return;
        BigComplex dphi = phase_derivative(z, R, bp.kappa);
        BigComplex g = detail::level_gradient(flow, dphi);
        BigComplex z2 = z - g * (e / norm(dphi));
        phi += phase_increment_short(bp, z, z2, R, 8);
        R = root_near(z2, bp, R);
        z = z2;
    }
    BigReal e = detail::level_value(flow, phi) - level;
    if (abs(e) > tol) throw TraceDiverged("projection onto level line failed (residual " + to_string(e, 5) + ")");
}

inline TraceOutput trace_flow(const BranchPoints& bp, const TraceRequest& req, const TraceConfig& cfg) {
    using C = std::complex<double>;
    TraceOutput out;
    BigComplex z = req.z0, phi = req.phi0, R = req.R0;
    out.z.push_back(z);
    out.phi.push_back(phi);
    out.R.push_back(R);

    const double step = static_cast<double>(cfg.step);
    const double box = static_cast<double>(cfg.box);
    const C start = to_double(req.z0);
    double traveled = 0, max_away = 0;

    detail::DirectionField field{to_double(bp.zeta_plus), to_double(bp.zeta_minus), to_double(R), req.flow, 1.0};
    if (std::real(field(start) * std::conj(req.direction)) < 0) field.sign = -1.0;

    double h = std::min(step, 0.25 * detail::dist_singular(bp, start));
    C prev_dir = field(start);

    for (long n = 0;; ++n) {
        if (n > cfg.max_steps) throw TraceDiverged("step limit reached while tracing");
        C zd = to_double(z);
        const double ds = detail::dist_singular(bp, zd);
        const double hmax = std::min(step, 0.25 * ds);
        if (req.closed_loop && ds < static_cast<double>(cfg.degenerate_radius))
            throw DegenerateLevel("level line passes within cut proximity of a branch point");
        if (std::abs(zd) > 10 * box + 10) throw TraceDiverged("trajectory left the working region");

        // targets
        for (const auto& t : req.targets) {
            C td = to_double(t.point);
            if (std::abs(zd - td) < 0.5 * step && std::abs(zd - td) < 2.5 * ds + 1e-300 &&
                std::real((td - zd) * std::conj(prev_dir)) > 0) {
                BigComplex phiT;
                BigComplex RT;
                if (t.branch_point) {
                    phiT = phi + phase_increment(bp, z, t.point, z, R, cfg.tol / 100, SqrtEnd::End).value;
                    RT = BigComplex();
                } else {
                    BigReal nan = std::numeric_limits<BigReal>::quiet_NaN();
                    phiT = BigComplex(nan, nan);
                    RT = root_near(t.point, bp, R);
                }
                out.z.push_back(t.point);
                out.phi.push_back(phiT);
                out.R.push_back(RT);
                out.end = t.anchor;
                out.steps = n;
                return out;
            }
        }
        if (req.closed_loop && max_away > 3 * hmax && std::abs(zd - start) < 0.75 * hmax && traveled > 4 * hmax) {
            out.z.push_back(req.z0);
            out.phi.push_back(phi + phase_increment_short(bp, z, req.z0, R, 24));
            out.R.push_back(root_near(req.z0, bp, R));
            out.end = Anchor::Closed;
            out.steps = n;
            return out;
        }
        if (req.stop_at_box && std::abs(zd) > box) {
            // continue cheaply in double until far away; used for routing only
            C w = zd;
            C Rw = to_double(R);
            detail::DirectionField f = field;
            double hh = step;
            long guard = 0;
            while (std::abs(w) < static_cast<double>(cfg.far_radius) && guard++ < 200000) {
                f.Rref = Rw;
                double lim = static_cast<double>(cfg.step) * std::abs(w) / static_cast<double>(cfg.box_unit);
                hh = std::min(std::max(hh, 1e-12), lim);
                double err;
                C w2 = detail::dp_step(f, w, hh, err);
                if (err > 1e-12 * std::abs(w) && hh > 1e-9 * std::abs(w)) {
                    hh *= 0.5;
                    continue;
                }
                C r2 = std::sqrt((w2 - f.zp) * (w2 - f.zm));
                if (std::norm(r2 - Rw) > std::norm(r2 + Rw)) r2 = -r2;
                Rw = r2;
                w = w2;
                out.tail.push_back(w);
                hh *= 1.5;
            }
            out.end = Anchor::Infinity;
            out.steps = n;
            return out;
        }

        // predictor
        field.Rref = to_double(R);
        h = std::min(h, hmax);
        double err = 0;
        C z1d;
        for (int shrink = 0;; ++shrink) {
            z1d = detail::dp_step(field, zd, h, err);
            if (err <= cfg.ode_tol || shrink > 60) break;
            h *= 0.5;
        }
        // corrector
        BigComplex z1(BigReal(z1d.real()), BigReal(z1d.imag()));
        BigComplex phi1 = phi + phase_increment_short(bp, z, z1, R, 24);
        BigComplex R1 = root_near(z1, bp, R);
        project_to_level(bp, req.flow, req.level, z1, phi1, R1, cfg.tol);

        C z1c = to_double(z1);
        double seg = std::abs(z1c - zd);
        if (seg > 1.0001 * std::max(hmax, 1e-300) + 1e-14) {
            // projection moved too far; retry with a smaller step
            h *= 0.5;
            if (h < 1e-15) throw TraceDiverged("step size underflow");
            continue;
        }
        prev_dir = (z1c - zd) / seg;
        traveled += seg;
        max_away = std::max(max_away, std::abs(z1c - start));
        z = z1;
        phi = phi1;
        R = R1;
        out.z.push_back(z);
        out.phi.push_back(phi);
        out.R.push_back(R);
        double grow = err > 0 ? 0.9 * std::pow(cfg.ode_tol / err, 0.2) : 2.0;
        h *= std::clamp(grow, 0.5, 2.0);
    }
}

/// Seeds at a branch point b: directions z - b = eps e^{i theta} along which the
/// local expansion phi ~ (2/3) c0 (z-b)^{3/2} has zero real part (Level) or zero
/// imaginary part (Orthogonal). Each seed is projected onto its level line.
struct Seed {
    BigComplex z, phi, R;
    std::complex<double> direction;
};

inline std::vector<Seed> branch_seeds(const BranchPoints& bp, bool at_minus, Flow flow, const BigReal& eps,
                                      const BigReal& tol) {
    const BigComplex b = at_minus ? bp.zeta_minus : bp.zeta_plus;
    const BigComplex o = at_minus ? bp.zeta_plus : bp.zeta_minus;
    BigComplex c0 = sqrt(b - o) * bp.kappa / (b * b - BigReal(1));
    const BigReal pi = big_pi();
    BigReal a0 = arg(c0);
    std::vector<Seed> seeds;
    for (int k = 0; k < 3; ++k) {
        BigReal base = flow == Flow::Level ? pi / 2 : BigReal(0);
        BigReal theta = (base + pi * k - a0) * 2 / 3;
        BigComplex u = polar(BigReal(1), theta);
        BigComplex z0 = b + u * eps;
        BigComplex half = polar(BigReal(1), BigReal(theta / 2));
        // R(z0) = sqrt(z0-b) sqrt(z0-o), with sqrt(z0-b) = sqrt(eps) e^{i theta/2}
        BigComplex R0 = half * sqrt(eps) * sqrt(z0 - o);
        if (norm(sqrt(z0 - o) - sqrt(b - o)) > norm(sqrt(z0 - o) + sqrt(b - o))) R0 = -R0;
        BigComplex phi0 = phase_increment(bp, b, z0, z0, R0, tol / 100, SqrtEnd::Start).value;
        project_to_level(bp, flow, BigReal(0), z0, phi0, R0, tol);
        seeds.push_back({z0, phi0, R0, to_double(u)});
    }
    return seeds;
}

}  // namespace jrh
