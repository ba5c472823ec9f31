#pragma once
#include "jrh/errors.hpp"
#include "jrh/geometry/arc.hpp"
#include "jrh/geometry/branch.hpp"
#include "jrh/geometry/params.hpp"
#include "jrh/geometry/tracer.hpp"
#include "jrh/numeric/polyline.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace jrh {

struct GeometryOptions {
    unsigned prec_bits = 128;
    double step_rel = 0.01;     // stored point spacing, relative to |zeta+ - zeta-|
    double trace_tol = 1e-20;   // level residual at stored points
    double cut_tol_rel = 1e-8;  // cut proximity, relative to |zeta+ - zeta-|
    double margin_rel = 1e-10;  // boundary margin for classification
    bool critical_only = false; // skip the orthogonal arcs
};

enum class Region { I = 1, II, III, IV, V, VI };

inline std::string region_name(Region r) {
    static const char* names[] = {"", "I", "II", "III", "IV", "V", "VI"};
    return names[static_cast<int>(r)];
}

struct RegionLabel {
    Region region = Region::I;
    int omega = 0;  // -1 for Omega_{-1}, +1 for Omega_1, 0 for Omega_inf
    bool on_boundary = false;
    std::string boundary;  // arc name when on_boundary
};

enum class Side { Plus, Minus };

/// Local continuation of the stored phase of an arc to a nearby point.
struct LocalPhase {
    BigComplex phi;     // continuation of the stored phase
    BigComplex root;    // continuation of the stored R
    BigReal offset{0};  // level function minus level, at z
    BigReal distance{0};  // first order distance to the true curve
    int side = 0;       // +1 left of the arc, -1 right
    size_t index = 0;   // stored point used as base
};

/// Traced geometry for one parameter pair: branch points, the critical graph
/// Gamma = Gamma_L u Gamma_C u Gamma_R, the orthogonal arcs gamma_s^{+-}, the
/// global branch of R and the region map.
class Geometry {
public:
    Geometry(const ParameterPair& params, const GeometryOptions& opt = {}) : params_(params), opt_(opt) {
        PrecisionGuard guard(opt_.prec_bits);
        bp_ = branch_points(params_);
        scale_ = static_cast<double>(abs(bp_.zeta_plus - bp_.zeta_minus));
        cut_tol_ = opt_.cut_tol_rel * scale_;
        margin_ = opt_.margin_rel * scale_;
        box_ = 10.0 * (1.0 + static_cast<double>(abs(bp_.zeta_plus)));
        cfg_.step = BigReal(opt_.step_rel * scale_);
        cfg_.tol = BigReal(opt_.trace_tol);
        cfg_.box = BigReal(box_);
        cfg_.box_unit = BigReal(1.0 + static_cast<double>(abs(bp_.zeta_plus)));
        cfg_.degenerate_radius = BigReal(10 * cut_tol_);
        trace_critical();
        if (!opt_.critical_only) trace_orthogonal();
        compute_sag();
    }

    const ParameterPair& params() const { return params_; }
    const GeometryOptions& options() const { return opt_; }
    const BranchPoints& branch() const { return bp_; }
    unsigned bits() const { return opt_.prec_bits; }
    double scale() const { return scale_; }
    double cut_tol() const { return cut_tol_; }
    double margin() const { return margin_; }
    double box() const { return box_; }
    double near_threshold() const { return near_; }
    double max_sag() const { return max_sag_; }
    const TraceConfig& trace_config() const { return cfg_; }
    bool has_orthogonal() const { return !opt_.critical_only; }

    const Arc& arc(ArcKind k) const {
        auto it = arcs_.find(k);
        if (it == arcs_.end()) throw InvalidInput("arc " + arc_name(k) + " was not traced");
        return it->second;
    }
    std::vector<ArcKind> arc_kinds() const {
        std::vector<ArcKind> ks;
        for (auto& kv : arcs_) ks.push_back(kv.first);
        return ks;
    }
    /// Real-axis crossings xi_L < -1 < xi_C < 1 < xi_R.
    const BigReal& xi(ArcKind k) const { return xi_.at(k); }
    const BigComplex& phi_at_xi(ArcKind k) const { return phi_xi_.at(k); }
    const BigComplex& root_at_xi(ArcKind k) const { return root_xi_.at(k); }
    /// Asymptotic direction of gamma_inf^+.
    double theta_inf() const { return theta_inf_; }
    const std::vector<std::complex<double>>& polyline(ArcKind k) const { return poly_.at(k); }

    // ---------------------------------------------------------------- R
    /// Global branch of R: analytic off Gamma_C, R(z) ~ z at infinity.
    BigComplex R(const BigComplex& zin) const {
        PrecisionGuard guard(bits());
        BigComplex z = at_prec(zin);
        std::complex<double> zd = to_double(z);
        const auto& gc = poly_.at(ArcKind::GammaC);
        auto hit = poly::nearest(gc, zd);
        if (hit.distance < cut_tol_) throw CutAmbiguity("point lies within cut proximity of Gamma_C");
        const double dz = std::min(std::abs(zd - to_double(bp_.zeta_plus)), std::abs(zd - to_double(bp_.zeta_minus)));
        if (hit.distance < near_) {
            auto lp = local_phase_impl(arc(ArcKind::GammaC), z, dz);
            if (lp) {
                if (lp->distance < cut_tol_) throw CutAmbiguity("point lies within cut proximity of Gamma_C");
                return lp->side > 0 ? lp->root : -lp->root;
            }
        }
        return R_far(z, std::min(hit.distance, dz));
    }

    /// Boundary values R_+ / R_- on Gamma_C (+ is the left side of zeta+ -> zeta-).
    BigComplex R_boundary(const BigComplex& zin, Side side) const {
        PrecisionGuard guard(bits());
        BigComplex z = at_prec(zin);
        auto lp = local_phase(ArcKind::GammaC, z);
        if (lp.distance > BigReal(std::max(cut_tol_, 1e3 * static_cast<double>(cfg_.tol))))
            throw NotOnCut("point is not on Gamma_C");
        return side == Side::Plus ? lp.root : -lp.root;
    }

    /// Continuation of an arc's stored phase to a point near it, with a
    /// precise side test against the true curve.
    LocalPhase local_phase(ArcKind k, const BigComplex& zin) const {
        PrecisionGuard guard(bits());
        BigComplex z = at_prec(zin);
        auto lp = local_phase_impl(arc(k), z, 1e300);
        if (!lp) throw NotOnArc("no usable base point on " + arc_name(k));
        return *lp;
    }

    /// As local_phase, but empty when no stored point is close enough. Stored
    /// spacing is at most a quarter of the distance to the nearest singular
    /// point, so an empty result means z is far from the arc on the local
    /// scale and the polyline side is reliable.
    std::optional<LocalPhase> try_local_phase(ArcKind k, const BigComplex& zin) const {
        PrecisionGuard guard(bits());
        return local_phase_impl(arc(k), at_prec(zin), 1e300);
    }

    // ------------------------------------------------------- classification
    RegionLabel classify(const BigComplex& zin) const {
        if (opt_.critical_only) throw InvalidInput("classification needs the orthogonal arcs");
        PrecisionGuard guard(bits());
        BigComplex z = at_prec(zin);
        std::complex<double> zd = to_double(z);
        RegionLabel out;
        for (auto [pt, name] : {std::pair{bp_.zeta_plus, "zeta+"}, std::pair{bp_.zeta_minus, "zeta-"}}) {
            if (std::abs(zd - to_double(pt)) < margin_) {
                out.on_boundary = true;
                out.boundary = name;
            }
        }
        // nearest arc
        ArcKind best{};
        double bestd = 1e300;
        for (auto& [k, pl] : poly_) {
            if (is_level(k)) continue;
            double d = poly::nearest(pl, zd).distance;
            if (d < bestd) {
                bestd = d;
                best = k;
            }
        }
        std::complex<double> probe = zd;
        if (bestd < near_) {
            const double dsing = dist_special(zd);
            auto lp = local_phase_impl(arcs_.at(best), z, dsing);
            if (lp) {
                if (static_cast<double>(lp->distance) < margin_) {
                    out.on_boundary = true;
                    out.boundary = arc_name(best);
                }
                // move off the curve on the true side and classify there
                const auto& pl = poly_.at(best);
                auto hit = poly::nearest(pl, zd);
                std::complex<double> t = pl[hit.segment + 1] - pl[hit.segment];
                std::complex<double> nrm = std::complex<double>(0, 1) * t / std::abs(t);
                double push = std::min(2 * near_, 0.25 * dsing);
                int side = lp->side != 0 ? lp->side : 1;
                probe = to_double(arcs_.at(best).points[lp->index]) + double(side) * push * nrm;
                // keep the along-curve position of z
                probe += (zd - to_double(arcs_.at(best).points[lp->index])) -
                         poly::dot(zd - to_double(arcs_.at(best).points[lp->index]), nrm) * nrm;
            }
        }
        int wm1 = poly::winding_number(omega_m1_, probe);
        int wp1 = poly::winding_number(omega_p1_, probe);
        if (wm1 != 0) {
            out.omega = -1;
            out.region = poly::winding_number(region_ii_, probe) != 0 ? Region::II : Region::III;
        } else if (wp1 != 0) {
            out.omega = 1;
            out.region = poly::winding_number(region_v_, probe) != 0 ? Region::V : Region::IV;
        } else {
            out.omega = 0;
            out.region = in_region_i(probe) ? Region::I : Region::VI;
        }
        return out;
    }

    // ------------------------------------------------------------ level sets
    /// Closed level line Re phi = r: r > 0 gives Gamma_r around Gamma, r < 0
    /// gives Gamma_{r,-1} or Gamma_{r,+1}. Traced counterclockwise.
    Arc level_set(const BigReal& rin, ArcKind which) const {
        PrecisionGuard guard(bits());
        BigReal r = at_prec(rin);
        if (which == ArcKind::LevelOuter && !(r > 0)) throw InvalidInput("Gamma_r needs r > 0");
        if ((which == ArcKind::LevelM1 || which == ArcKind::LevelP1) && !(r < 0))
            throw InvalidInput("Gamma_{r,+-1} needs r < 0");
        if (!is_level(which)) throw InvalidInput("not a level set kind");
        if (abs(r) < BigReal(10 * cut_tol_)) throw DegenerateLevel("|r| too small; level line runs into the branch points");

        ArcKind base = which == ArcKind::LevelM1 ? ArcKind::GammaL : ArcKind::GammaR;
        BigReal x0 = xi_.at(base);
        BigComplex phi0 = phi_xi_.at(base), R0 = root_xi_.at(base);
        // f(x) = Re phi(x) - r along the real axis, measured from xi
        auto eval = [&](const BigReal& x, BigComplex& phi, BigComplex& R) {
            BigComplex zx(x);
            phi = phi0 + phase_increment(bp_, BigComplex(x0), zx, BigComplex(x0), R0, cfg_.tol / 100).value;
            SegmentRoot sr(bp_, BigComplex(x0), zx);
            sr.pin(BigComplex(x0), R0);
            R = sr(zx);
        };
        BigReal lo = x0, hi;
        BigComplex phi, R;
        if (which == ArcKind::LevelOuter) {
            BigReal d(0.25);
            for (int i = 0;; ++i) {
                hi = x0 + d;
                eval(hi, phi, R);
                if (phi.re > r) break;
                d *= 2;
                if (i > 200) throw DegenerateLevel("level value out of reach");
            }
        } else {
            BigReal pole = which == ArcKind::LevelM1 ? BigReal(-1) : BigReal(1);
            BigReal d = abs(x0 - pole) / 2;
            for (int i = 0;; ++i) {
                hi = pole + (x0 > pole ? d : BigReal(-d));
                eval(hi, phi, R);
                if (phi.re < r) break;
                d /= 4;
                if (i > 400) throw DegenerateLevel("level value out of reach");
            }
        }
        // bisection, then Newton
        BigReal flo = -r;  // Re phi(xi) = 0
        for (int i = 0; i < 60; ++i) {
            BigReal mid = (lo + hi) / 2;
            eval(mid, phi, R);
            BigReal fm = phi.re - r;
            if ((fm > 0) == (flo > 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        BigReal x = (lo + hi) / 2;
        for (int i = 0; i < 40; ++i) {
            eval(x, phi, R);
            BigReal f = phi.re - r;
            if (abs(f) < cfg_.tol / 16) break;
            BigReal df = phase_derivative(BigComplex(x), R, bp_.kappa).re;
            x -= f / df;
        }
        eval(x, phi, R);

        TraceRequest req;
        req.flow = Flow::Level;
        req.level = r;
        req.z0 = BigComplex(x);
        req.phi0 = phi;
        req.R0 = R;
        // counterclockwise about the enclosed point
        req.direction = which == ArcKind::LevelM1 ? std::complex<double>(0, -1) : std::complex<double>(0, 1);
        req.closed_loop = true;
        TraceConfig cfg = cfg_;
        auto tr = trace_flow(bp_, req, cfg);
        Arc a;
        a.kind = which;
        a.points = std::move(tr.z);
        a.phase = std::move(tr.phi);
        a.root = std::move(tr.R);
        a.start = a.end = Anchor::Closed;
        a.level = r;
        a.level_is_real = true;
        return a;
    }

private:
    // --------------------------------------------------------------- tracing
    void trace_critical() {
        BigReal eps = BigReal(1e-6 * scale_);
        auto seeds = branch_seeds(bp_, true, Flow::Level, eps, cfg_.tol);
        std::vector<Arc> traced;
        for (auto& s : seeds) {
            TraceRequest req;
            req.flow = Flow::Level;
            req.z0 = s.z;
            req.phi0 = s.phi;
            req.R0 = s.R;
            req.direction = s.direction;
            req.targets = {{bp_.zeta_plus, Anchor::ZetaPlus, true}};
            auto tr = trace_flow(bp_, req, cfg_);
            if (tr.end != Anchor::ZetaPlus) throw TraceDiverged("critical trajectory did not reach zeta+");
            Arc a;
            a.points.push_back(bp_.zeta_minus);
            a.phase.push_back(BigComplex());
            a.root.push_back(BigComplex());
            a.points.insert(a.points.end(), tr.z.begin(), tr.z.end());
            a.phase.insert(a.phase.end(), tr.phi.begin(), tr.phi.end());
            a.root.insert(a.root.end(), tr.R.begin(), tr.R.end());
            a.start = Anchor::ZetaMinus;
            a.end = Anchor::ZetaPlus;
            traced.push_back(std::move(a));
        }
        // identify by real-axis crossing
        for (auto& a : traced) {
            size_t j = crossing_index(a);
            BigReal x = a.points[j].re;  // provisional
            std::complex<double> p0 = to_double(a.points[j]), p1 = to_double(a.points[j + 1]);
            double t = p0.imag() / (p0.imag() - p1.imag());
            double xr = p0.real() + t * (p1.real() - p0.real());
            ArcKind k = xr < -1 ? ArcKind::GammaL : (xr < 1 ? ArcKind::GammaC : ArcKind::GammaR);
            if (arcs_.count(k)) throw TraceDiverged("two critical trajectories share a real-axis interval");
            (void)x;
            a.kind = k;
            a.level = 0;
            a.level_is_real = true;
            arcs_[k] = std::move(a);
        }
        if (arcs_.size() != 3) throw TraceDiverged("critical graph identification failed");
        // orientation
        arcs_[ArcKind::GammaL].reverse();
        arcs_[ArcKind::GammaC].reverse();
        for (auto k : {ArcKind::GammaL, ArcKind::GammaC, ArcKind::GammaR}) poly_[k] = arcs_[k].polyline();
        near_ = 0.05 * scale_;  // provisional, refined after the sag estimate

        // Gamma_C stores R_+: compare with the global branch at a point to its left
        {
            Arc& c = arcs_[ArcKind::GammaC];
            size_t m = c.points.size() / 2;
            std::complex<double> t = to_double(c.points[m + 1] - c.points[m - 1]);
            std::complex<double> nrm = std::complex<double>(0, 1) * t / std::abs(t);
            BigComplex w = c.points[m] + from_double(0.1 * scale_ * nrm);
            SegmentRoot sr(bp_, c.points[m], w);
            sr.pin(c.points[m], c.root[m]);
            BigComplex cont = sr(w);
            BigComplex global = R_far(w, 0.1 * scale_);
            if (norm(cont - global) > norm(cont + global)) flip(c);
        }
        for (auto k : {ArcKind::GammaL, ArcKind::GammaR}) normalize_branch(arcs_[k]);
        for (auto k : {ArcKind::GammaL, ArcKind::GammaC, ArcKind::GammaR}) refine_crossing(k);
    }

    void trace_orthogonal() {
        BigReal eps = BigReal(1e-6 * scale_);
        for (bool minus : {true, false}) {
            auto seeds = branch_seeds(bp_, minus, Flow::Orthogonal, eps, cfg_.tol);
            const BigComplex& b = minus ? bp_.zeta_minus : bp_.zeta_plus;
            for (auto& s : seeds) {
                TraceRequest req;
                req.flow = Flow::Orthogonal;
                req.z0 = s.z;
                req.phi0 = s.phi;
                req.R0 = s.R;
                req.direction = s.direction;
                req.targets = {{BigComplex(BigReal(1)), Anchor::PlusOne, false},
                               {BigComplex(BigReal(-1)), Anchor::MinusOne, false}};
                req.stop_at_box = true;
                auto tr = trace_flow(bp_, req, cfg_);
                Arc a;
                a.points.push_back(b);
                a.phase.push_back(BigComplex());
                a.root.push_back(BigComplex());
                a.points.insert(a.points.end(), tr.z.begin(), tr.z.end());
                a.phase.insert(a.phase.end(), tr.phi.begin(), tr.phi.end());
                a.root.insert(a.root.end(), tr.R.begin(), tr.R.end());
                a.tail = std::move(tr.tail);
                a.start = minus ? Anchor::ZetaMinus : Anchor::ZetaPlus;
                a.end = tr.end;
                a.phase_ref = minus ? PhaseRef::Phi : PhaseRef::PhiTilde;
                a.level = 0;
                a.level_is_real = false;
                ArcKind k;
                if (tr.end == Anchor::PlusOne) k = minus ? ArcKind::GammaP1Minus : ArcKind::GammaP1Plus;
                else if (tr.end == Anchor::MinusOne) k = minus ? ArcKind::GammaM1Minus : ArcKind::GammaM1Plus;
                else k = minus ? ArcKind::GammaInfMinus : ArcKind::GammaInfPlus;
                if (arcs_.count(k)) throw TraceDiverged("two orthogonal trajectories reach the same endpoint");
                a.kind = k;
                normalize_branch(a);
                if (k == ArcKind::GammaInfMinus || k == ArcKind::GammaInfPlus) a.reverse();
                arcs_[k] = std::move(a);
            }
        }
        for (auto& [k, a] : arcs_) {
            if (is_critical(k)) continue;
            poly_[k] = a.polyline();
            ext_[k] = a.extended_polyline();
        }
        const auto& tail = arcs_.at(ArcKind::GammaInfPlus).tail;
        theta_inf_ = std::arg(tail.empty() ? to_double(arcs_.at(ArcKind::GammaInfPlus).points.front()) : tail.back());
        build_regions();
    }

    static size_t crossing_index(const Arc& a) {
        for (size_t j = 0; j + 1 < a.points.size(); ++j) {
            if ((a.points[j].im < 0) != (a.points[j + 1].im < 0)) return j;
        }
        throw TraceDiverged("critical trajectory does not cross the real axis");
    }

    /// Solves Re phi(x) = 0 on the real axis next to the traced crossing.
    void refine_crossing(ArcKind k) {
        const Arc& a = arcs_.at(k);
        size_t j = crossing_index(a);
        if (a.root[j].re == 0 && a.root[j].im == 0) ++j;
        const BigComplex p = a.points[j], Rp = a.root[j], phip = a.phase[j];
        BigReal x = p.re;
        BigComplex phi, R;
        for (int it = 0; it < 60; ++it) {
            BigComplex zx(x);
            phi = phip + phase_increment(bp_, p, zx, p, Rp, cfg_.tol / 100).value;
            SegmentRoot sr(bp_, p, zx);
            sr.pin(p, Rp);
            R = sr(zx);
            BigReal f = phi.re;
            if (abs(f) < cfg_.tol / 16) break;
            x -= f / phase_derivative(zx, R, bp_.kappa).re;
        }
        xi_[k] = x;
        phi_xi_[k] = phi;
        root_xi_[k] = R;
    }

    static void flip(Arc& a) {
        for (auto& r : a.root) r = -r;
        for (auto& p : a.phase) p = -p;
    }

    /// Makes the stored R of an arc agree with the global branch.
    void normalize_branch(Arc& a) {
        const auto& gc = poly_.at(ArcKind::GammaC);
        size_t best = 1;
        double bestd = -1;
        for (size_t i = 1; i + 1 < a.points.size(); ++i) {
            std::complex<double> zd = to_double(a.points[i]);
            double d = std::min(poly::nearest(gc, zd).distance, dist_special(zd));
            if (d > bestd) {
                bestd = d;
                best = i;
            }
        }
        BigComplex g = R_far(a.points[best], bestd);
        if (norm(a.root[best] - g) > norm(a.root[best] + g)) flip(a);
    }

    double dist_special(std::complex<double> z) const {
        return std::min({std::abs(z - to_double(bp_.zeta_plus)), std::abs(z - to_double(bp_.zeta_minus)),
                         std::abs(z - 1.0), std::abs(z + 1.0)});
    }

    /// R away from Gamma_C: the square root with its cut on the segment
    /// [zeta-, zeta+], negated inside the lune between that segment and Gamma_C.
    BigComplex R_far(const BigComplex& z, double clearance) const {
        const BigReal m = bp_.zeta_plus.re, b = bp_.zeta_plus.im;
        auto S = [&](const BigComplex& w) {
            BigComplex d = w - m;
            return d * sqrt(BigReal(1) + b * b / (d * d));
        };
        auto in_lune = [&](std::complex<double> w) {
            std::vector<std::complex<double>> poly = poly_.at(ArcKind::GammaC);  // zeta+ -> zeta-
            return poly::winding_number(poly, w) != 0;  // closing edge is the segment zeta- -> zeta+
        };
        std::complex<double> zd = to_double(z);
        double mv = static_cast<double>(m), bv = static_cast<double>(b);
        double dV = std::abs(zd.imag()) <= bv ? std::abs(zd.real() - mv)
                                               : std::min(std::abs(zd - std::complex<double>(mv, bv)),
                                                          std::abs(zd - std::complex<double>(mv, -bv)));
        if (dV > 1e-6 * scale_) {
            BigComplex s = S(z);
            return in_lune(zd) ? -s : s;
        }
        // on or next to the segment: evaluate beside it and continue
        double eta = std::max(1e-4 * std::min(clearance, scale_), 1e-9 * scale_);
        BigComplex w = z + BigComplex(BigReal(eta));
        BigComplex s = S(w);
        if (in_lune(to_double(w))) s = -s;
        return root_near(z, bp_, s);
    }

    std::optional<LocalPhase> local_phase_impl(const Arc& a, const BigComplex& z, double dsing) const {
        std::complex<double> zd = to_double(z);
        // nearest usable stored point, closer to z than half the distance to any singular point
        size_t best = a.points.size();
        double bestd = 1e300;
        for (size_t i = 0; i < a.points.size(); ++i) {
            if (a.root[i].re == 0 && a.root[i].im == 0) continue;
            if (!isfinite(a.phase[i])) continue;
            double d = std::abs(to_double(a.points[i]) - zd);
            if (d < bestd) {
                bestd = d;
                best = i;
            }
        }
        if (best == a.points.size()) return std::nullopt;
        double ds = std::min(dsing, dist_special(zd));
        double dbase = dist_special(to_double(a.points[best]));
        if (bestd > 0.5 * std::min(ds, dbase) && bestd > 0) return std::nullopt;
        LocalPhase lp;
        lp.index = best;
        const BigComplex& p = a.points[best];
        lp.phi = a.phase[best] + phase_increment(bp_, p, z, p, a.root[best], cfg_.tol / 100).value;
        SegmentRoot sr(bp_, p, z);
        sr.pin(p, a.root[best]);
        lp.root = sr(z);
        lp.offset = (a.level_is_real ? lp.phi.re : lp.phi.im) - a.level;
        BigComplex dphi = phase_derivative(z, lp.root, bp_.kappa);
        lp.distance = abs(lp.offset) / abs(dphi);
        // directional derivative of the level function along the left normal
        size_t i0 = best > 0 ? best - 1 : best, i1 = best + 1 < a.points.size() ? best + 1 : best;
        BigComplex t = a.points[i1] - a.points[i0];
        BigComplex nrm = I_unit() * t / abs(t);
        BigComplex dphib = phase_derivative(p, a.root[best], bp_.kappa);
        BigComplex dn = dphib * nrm;
        BigReal dd = a.level_is_real ? dn.re : dn.im;
        int s1 = lp.offset > 0 ? 1 : (lp.offset < 0 ? -1 : 0);
        int s2 = dd > 0 ? 1 : -1;
        lp.side = s1 * s2;
        return lp;
    }

    void compute_sag() {
        double sag = 0;
        for (auto& [k, a] : arcs_) {
            for (size_t i = 0; i + 1 < a.points.size(); ++i) {
                if (!isfinite(a.phase[i]) || (a.root[i].re == 0 && a.root[i].im == 0)) continue;
                if (!isfinite(a.phase[i + 1])) continue;
                BigComplex mid = (a.points[i] + a.points[i + 1]) * BigReal(0.5);
                std::complex<double> md = to_double(mid);
                if (std::abs(to_double(a.points[i + 1] - a.points[i])) > 0.5 * dist_special(md)) continue;
                BigComplex ph = a.phase[i] + phase_increment_short(bp_, a.points[i], mid, a.root[i], 16);
                BigComplex R = root_near(mid, bp_, a.root[i]);
                BigReal off = (a.level_is_real ? ph.re : ph.im) - a.level;
                double d = static_cast<double>(abs(off) / abs(phase_derivative(mid, R, bp_.kappa)));
                sag = std::max(sag, d);
            }
        }
        max_sag_ = sag;
        near_ = std::clamp(50 * sag, 1e-6 * scale_, 0.05 * scale_);
    }

    void build_regions() {
        auto cat = [](std::initializer_list<std::vector<std::complex<double>>> parts) {
            std::vector<std::complex<double>> out;
            for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
            return out;
        };
        auto rev = [](std::vector<std::complex<double>> v) {
            std::reverse(v.begin(), v.end());
            return v;
        };
        const auto& L = poly_.at(ArcKind::GammaL);   // zeta+ -> zeta-
        const auto& Cc = poly_.at(ArcKind::GammaC);  // zeta+ -> zeta-
        const auto& Rr = poly_.at(ArcKind::GammaR);  // zeta- -> zeta+
        omega_m1_ = cat({L, rev(Cc)});
        omega_p1_ = cat({Cc, Rr});
        region_ii_ = cat({L, poly_.at(ArcKind::GammaM1Minus), rev(poly_.at(ArcKind::GammaM1Plus))});
        region_v_ = cat({Rr, poly_.at(ArcKind::GammaP1Plus), rev(poly_.at(ArcKind::GammaP1Minus))});
        // Region I: inf -> zeta+ along gamma_inf^+, Gamma_L, zeta- -> inf along gamma_inf^-, far arc through angle pi
        const auto& gp = ext_.at(ArcKind::GammaInfPlus);   // inf -> zeta+
        const auto& gm = ext_.at(ArcKind::GammaInfMinus);  // inf -> zeta-
        region_i_ = cat({gp, L, rev(gm)});
        double a1 = std::arg(gm.front()), a2 = std::arg(gp.front());
        double rfar = std::max(std::abs(gm.front()), std::abs(gp.front())) * 2;
        if (a1 > 0) a1 -= 2 * M_PI;
        if (a2 < 0) a2 += 2 * M_PI;
        // sweep from a1 down to a2 - 2pi, passing angle -pi
        double end = a2 - 2 * M_PI;
        for (int i = 0; i <= 256; ++i) {
            double th = a1 + (end - a1) * i / 256.0;
            region_i_.push_back(std::polar(rfar, th));
        }
        region_i_far_ = rfar;
        arg_inf_minus_ = std::arg(gm.front());
        arg_inf_plus_ = std::arg(gp.front());
    }

    bool in_region_i(std::complex<double> z) const {
        if (std::abs(z) >= region_i_far_ * 0.5) {
            double a = std::arg(z);
            // the left sector between the two asymptotic directions
            return a > arg_inf_plus_ || a < arg_inf_minus_;
        }
        return poly::winding_number(region_i_, z) != 0;
    }

    ParameterPair params_;
    GeometryOptions opt_;
    BranchPoints bp_;
    TraceConfig cfg_;
    double scale_ = 1, cut_tol_ = 0, margin_ = 0, box_ = 0, near_ = 0, max_sag_ = 0, theta_inf_ = 0;
    std::map<ArcKind, Arc> arcs_;
    std::map<ArcKind, std::vector<std::complex<double>>> poly_, ext_;
    std::map<ArcKind, BigReal> xi_;
    std::map<ArcKind, BigComplex> phi_xi_, root_xi_;
    std::vector<std::complex<double>> omega_m1_, omega_p1_, region_ii_, region_v_, region_i_;
    double region_i_far_ = 0, arg_inf_minus_ = 0, arg_inf_plus_ = 0;
};

}  // namespace jrh
