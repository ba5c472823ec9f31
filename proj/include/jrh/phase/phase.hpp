#pragma once
#include "jrh/geometry/geometry.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <queue>
#include <vector>

namespace jrh {

struct PhaseOptions {
    double tol = 1e-30;  // absolute quadrature tolerance for phi
};

/// Crossing of an integration path with one of the cuts gamma_s^+.
struct CutCrossing {
    ArcKind cut;
    int sign;  // +1 when crossing from the right of the cut to its left
};

/// Integration route from zeta- to a target. The path never crosses Gamma_C;
/// crossings with the remaining cuts are recorded and compensated exactly
/// with the residue periods.
struct PhasePlan {
    std::vector<BigComplex> waypoints;  // starts at zeta-, ends at the target
    std::vector<CutCrossing> crossings;
    bool mirror_across_central = false;  // target sits between the traced chord and Gamma_C
};

struct PhaseValue {
    BigComplex value;
    BigReal error{0};
};

struct ConstantC {
    BigComplex value;
    BigReal error{0};
    std::vector<BigComplex> ladder;  // estimates at |z| = 1e2, 1e3, 1e4
    BigComplex richardson;           // extrapolation of the uncorrected differences
};

class Phase {
public:
    explicit Phase(std::shared_ptr<const Geometry> g, PhaseOptions opt = {}) : g_(std::move(g)), opt_(opt) {
        if (!g_->has_orthogonal()) throw InvalidInput("phase evaluation needs the full geometry");
        PrecisionGuard guard(g_->bits());
        tol_ = BigReal(opt_.tol);
        build_graph();
    }

    const Geometry& geometry() const { return *g_; }
    std::shared_ptr<const Geometry> geometry_ptr() const { return g_; }

    /// Period of phi about a cut endpoint: phi_+ - phi_- on gamma_s^+.
    BigComplex jump(ArcKind cut) const {
        PrecisionGuard guard(g_->bits());
        const auto& p = g_->params();
        BigReal pi = big_pi();
        switch (cut) {
            case ArcKind::GammaP1Plus: return BigComplex(BigReal(0), BigReal(-pi * to_big(p.A)));
            case ArcKind::GammaM1Plus: return BigComplex(BigReal(0), BigReal(-pi * to_big(p.B)));
            case ArcKind::GammaInfPlus: return BigComplex(BigReal(0), BigReal(pi * to_big(p.A + p.B + 2)));
            default: throw InvalidInput("not a cut of phi");
        }
    }

    PhasePlan plan(const BigComplex& zin) const {
        PrecisionGuard guard(g_->bits());
        BigComplex z = at_prec(zin);
        check_target(z);
        std::complex<double> zd = to_double(z);
        const auto& gc = g_->polyline(ArcKind::GammaC);

        // Gamma_C side bookkeeping for targets between chord and curve
        bool mirror = false;
        auto hitC = poly::nearest(gc, zd);
        if (hitC.distance < g_->near_threshold()) {
            if (auto lp = g_->try_local_phase(ArcKind::GammaC, z)) {
                if (lp->distance < BigReal(g_->cut_tol())) throw OnCut("point lies on Gamma_C");
                int poly_side = poly_side_of(gc, hitC, zd);
                mirror = lp->side != poly_side;
            }
        }

        // shortest route through the visibility graph
        double best = 1e300;
        int best_node = -1;
        for (size_t i = 0; i < nodes_.size(); ++i) {
            if (dist_[i] >= 1e299) continue;
            double c = dist_[i] + std::abs(nodes_[i] - zd);
            if (c < best && edge_ok(nodes_[i], zd, true)) {
                best = c;
                best_node = static_cast<int>(i);
            }
        }
        if (best_node < 0) throw RouteFailed("no admissible integration route to the target");
        std::vector<std::complex<double>> route;
        for (int v = best_node; v >= 0; v = prev_[v]) route.push_back(nodes_[v]);
        std::reverse(route.begin(), route.end());

        PhasePlan plan;
        plan.waypoints.push_back(g_->branch().zeta_minus);
        plan.waypoints.push_back(w0_big_);
        for (size_t i = 1; i < route.size(); ++i) plan.waypoints.push_back(from_double(route[i]));
        plan.waypoints.push_back(z);
        plan.mirror_across_central = mirror;

        // signed crossings with the remaining cuts
        std::vector<std::complex<double>> pts;
        for (auto& w : plan.waypoints) pts.push_back(to_double(w));
        for (ArcKind cut : {ArcKind::GammaP1Plus, ArcKind::GammaM1Plus, ArcKind::GammaInfPlus}) {
            const auto& pl = cut_poly_.at(cut);
            for (size_t i = 1; i + 1 < pts.size(); ++i) {
                for (size_t j = 0; j + 1 < pl.size(); ++j) {
                    int s = poly::segment_crossing(pts[i], pts[i + 1], pl[j], pl[j + 1]);
                    if (s) plan.crossings.push_back({cut, s});
                }
            }
            // target between the traced chord and the true cut
            const auto& near_pl = cut_near_.at(cut);
            auto hit = poly::nearest(near_pl, zd);
            if (hit.distance < g_->near_threshold()) {
                if (auto lp = g_->try_local_phase(cut, z)) {
                    if (lp->distance < BigReal(g_->cut_tol())) throw OnCut("point lies on " + arc_name(cut));
                    int poly_side = poly_side_of(near_pl, hit, zd);
                    if (lp->side != poly_side) plan.crossings.push_back({cut, lp->side > 0 ? 1 : -1});
                }
            }
        }
        return plan;
    }

    /// Integral of kappa R/(t^2-1) along a polyline starting at zeta-.
    PhaseValue quad_contour(const std::vector<BigComplex>& wp) const {
        PrecisionGuard guard(g_->bits());
        if (wp.size() < 2) throw InvalidInput("contour needs two waypoints");
        const BranchPoints& bp = g_->branch();
        const auto& gc = g_->polyline(ArcKind::GammaC);
        for (size_t i = 1; i + 1 < wp.size(); ++i)
            if (poly::count_crossings(gc, to_double(wp[i]), to_double(wp[i + 1])) != 0)
                throw PathIntersectsCut("integration path crosses Gamma_C");
        PhaseValue out;
        BigReal seg_tol = tol_ / BigReal(static_cast<long>(wp.size()));
        // first leg leaves the branch point zeta-
        BigComplex Rcur = g_->R(wp[1]);
        {
            auto r = phase_increment(bp, wp[0], wp[1], wp[1], Rcur, seg_tol, SqrtEnd::Start);
            out.value += r.value;
            out.error += r.error;
        }
        for (size_t i = 1; i + 1 < wp.size(); ++i) {
            auto r = phase_increment(bp, wp[i], wp[i + 1], wp[i], Rcur, seg_tol);
            out.value += r.value;
            out.error += r.error;
            SegmentRoot sr(bp, wp[i], wp[i + 1]);
            sr.pin(wp[i], Rcur);
            Rcur = sr(wp[i + 1]);
        }
        return out;
    }

    /// Principal branch of phi(z) = kappa * int_{zeta-}^z R/(t^2-1) dt.
    PhaseValue phi(const BigComplex& zin) const {
        PrecisionGuard guard(g_->bits());
        BigComplex z = at_prec(zin);
        if (abs(z - g_->branch().zeta_minus) < BigReal(g_->cut_tol())) return {BigComplex(), BigReal(0)};
        PhasePlan p = plan(z);
        PhaseValue v = quad_contour(p.waypoints);
        for (auto& c : p.crossings) v.value += jump(c.cut) * BigReal(c.sign);
        if (p.mirror_across_central) v.value = -v.value;
        return v;
    }

    /// phi~(z) = conj(phi(conj z)), the primitive based at zeta+.
    PhaseValue phi_tilde(const BigComplex& z) const {
        PhaseValue v = phi(conj(z));
        v.value = conj(v.value);
        return v;
    }

    /// Boundary value of phi on a cut, from the requested side.
    PhaseValue phi_side(const BigComplex& zin, ArcKind cut, Side side) const {
        PrecisionGuard guard(g_->bits());
        BigComplex z = at_prec(zin);
        auto lp = g_->local_phase(cut, z);
        if (lp.distance > BigReal(1e3 * g_->cut_tol())) throw NotOnCut("point is not on " + arc_name(cut));
        if (cut == ArcKind::GammaC) {
            // phi_+ is stored; continue the closest sample
            BigComplex v = lp.phi;
            return {side == Side::Plus ? v : -v, BigReal(0)};
        }
        // gamma_s^+ stores phi~, which is analytic across the cut
        return {lp.phi + tilde_shift(cut, side), BigReal(0)};
    }

    /// phi_+- minus phi~ on gamma_s^+, from the period relations.
    BigComplex tilde_shift(ArcKind cut, Side side) const {
        PrecisionGuard guard(g_->bits());
        const auto& p = g_->params();
        BigReal pi = big_pi();
        auto im = [&](const Rational& q) { return BigComplex(BigReal(0), BigReal(pi * to_big(q))); };
        switch (cut) {
            case ArcKind::GammaInfPlus: return side == Side::Plus ? im(1 + p.B) : im(-(1 + p.A));
            case ArcKind::GammaM1Plus: return side == Side::Plus ? im(-(1 + p.A + p.B)) : im(-(1 + p.A));
            case ArcKind::GammaP1Plus: return side == Side::Plus ? im(1 + p.B) : im(1 + p.A + p.B);
            default: throw InvalidInput("not a cut of phi");
        }
    }

    /// c = lim (phi(z) - kappa log z), log with arg in (theta_inf - 2 pi, theta_inf).
    ConstantC constant_c(double ray_angle = -M_PI / 2) const {
        PrecisionGuard guard(g_->bits());
        double th = g_->theta_inf();
        double d = std::remainder(ray_angle - th, 2 * M_PI);
        if (std::abs(d) < 1e-6) throw OnCut("ray runs along gamma_inf^+");
        const BranchPoints& bp = g_->branch();
        const BigReal m = bp.zeta_plus.re, b2 = norm(bp.zeta_plus);
        ConstantC out;
        std::vector<BigComplex> raw;
        for (double R : {1e2, 1e3, 1e4}) {
            BigComplex z0 = polar(BigReal(R), BigReal(ray_angle));
            PhaseValue ph = phi(z0);
            BigComplex lg = log_branch(z0);
            // tail: int_{z0}^{inf} (kappa R/(t^2-1) - kappa/t) dt with t = z0/u
            auto g = [&](const BigReal& u) {
                BigComplex w = BigComplex(u) / z0;
                BigComplex one_mw = BigReal(1) - w * m;
                BigComplex s = sqrt(BigReal(1) + (bp.zeta_plus.im * bp.zeta_plus.im) * w * w / (one_mw * one_mw));
                BigComplex num = (w * b2 - m * 2) / (one_mw * s + BigReal(1)) + w;
                return num * bp.kappa / ((BigReal(1) - w * w) * z0);
            };
            QuadResult tail = integrate_interval(g, BigReal(0), BigReal(1), tol_);
            BigComplex c = ph.value - lg * bp.kappa + tail.value;
            out.ladder.push_back(c);
            raw.push_back(ph.value - lg * bp.kappa);
            out.error += ph.error + tail.error;
        }
        out.value = out.ladder.back();
        BigReal spread(0);
        for (auto& c : out.ladder) { BigReal d = abs(c - out.value); if (d > spread) spread = d; }
        if (abs(out.ladder[1] - out.ladder[2]) > tol_ * 10 + out.error * 10)
            throw LimitUnstable("limit estimates at |z| = 1e3 and 1e4 disagree by " + to_string(abs(out.ladder[1] - out.ladder[2]), 5));
        out.error += spread;
        out.richardson = (raw[2] * BigReal(10) - raw[1]) / BigReal(9);
        return out;
    }

    /// log z with arg in (theta_inf - 2 pi, theta_inf].
    BigComplex log_branch(const BigComplex& z) const {
        BigComplex l = log(z);
        BigReal th(g_->theta_inf());
        BigReal two_pi = big_pi() * 2;
        while (l.im > th) l.im -= two_pi;
        while (l.im <= th - two_pi) l.im += two_pi;
        return l;
    }

    const std::vector<std::complex<double>>& router_nodes() const { return nodes_; }

private:
    void check_target(const BigComplex& z) const {
        const BranchPoints& bp = g_->branch();
        double tol = g_->cut_tol();
        if (abs(z - bp.zeta_plus) < BigReal(tol) || abs(z - bp.zeta_minus) < BigReal(tol))
            throw AtBranchPoint("target coincides with a branch point");
        if (abs(z - BigReal(1)) < BigReal(tol) || abs(z + BigReal(1)) < BigReal(tol))
            throw AtPole("target coincides with a pole of R/(z^2-1)");
    }

    static int poly_side_of(const std::vector<std::complex<double>>& pl, const poly::NearestHit& hit,
                            std::complex<double> z) {
        std::complex<double> a = pl[hit.segment], b = pl[std::min(hit.segment + 1, pl.size() - 1)];
        return poly::cross(b - a, z - a) > 0 ? 1 : -1;
    }

    /// Validity of a straight leg; `target_end` relaxes clearances at b.
    bool edge_ok(std::complex<double> a, std::complex<double> b, bool target_end) const {
        const auto& gc = g_->polyline(ArcKind::GammaC);
        if (poly::count_crossings(gc, a, b) != 0) return false;
        double need_c = target_end ? 0.0 : 0.25 * h_;
        if (need_c > 0 && poly::polyline_segment_distance(gc, a, b) < need_c) return false;
        const BranchPoints& bp = g_->branch();
        for (std::complex<double> s : {std::complex<double>(1, 0), std::complex<double>(-1, 0)}) {
            double need = 0.5 * rp_;
            if (target_end) need = std::min(need, 0.5 * std::abs(b - s));
            if (poly::point_segment_distance(s, a, b) < need) return false;
        }
        for (const BigComplex& zz : {bp.zeta_plus, bp.zeta_minus}) {
            std::complex<double> s = to_double(zz);
            double need = 0.25 * h_;
            if (target_end) need = std::min(need, 0.5 * std::abs(b - s));
            if (poly::point_segment_distance(s, a, b) < need) return false;
        }
        return true;
    }

    bool node_ok(std::complex<double> p) const {
        const auto& gc = g_->polyline(ArcKind::GammaC);
        if (poly::nearest(gc, p).distance < 0.5 * h_) return false;
        if (std::abs(p - 1.0) < 0.75 * rp_ || std::abs(p + 1.0) < 0.75 * rp_) return false;
        const BranchPoints& bp = g_->branch();
        if (std::abs(p - to_double(bp.zeta_plus)) < 0.5 * h_) return false;
        if (std::abs(p - to_double(bp.zeta_minus)) < 0.5 * h_) return false;
        return true;
    }

    void build_graph() {
        const Geometry& g = *g_;
        const BranchPoints& bp = g.branch();
        const auto& gc = g.polyline(ArcKind::GammaC);
        const double scale = g.scale();
        const std::complex<double> zp = to_double(bp.zeta_plus), zm = to_double(bp.zeta_minus);
        double dpole = std::min(poly::nearest(gc, 1.0).distance, poly::nearest(gc, -1.0).distance);
        h_ = std::min(0.05 * scale, 0.3 * dpole);
        rp_ = std::min(0.3, 0.4 * dpole);

        for (ArcKind cut : {ArcKind::GammaP1Plus, ArcKind::GammaM1Plus, ArcKind::GammaInfPlus}) {
            auto pl = g.arc(cut).extended_polyline();
            cut_near_[cut] = pl;
            if (cut == ArcKind::GammaInfPlus && pl.size() >= 2) {
                // extend the far end to an effectively infinite ray
                std::complex<double> d = pl[0] - pl[1];
                pl.insert(pl.begin(), pl[0] + d / std::abs(d) * 1e12);
            }
            cut_poly_[cut] = pl;
        }

        // start node on gamma_inf^- a short distance from zeta-
        const Arc& gm = g.arc(ArcKind::GammaInfMinus);  // inf -> zeta-
        size_t iw = gm.points.size() - 1;
        while (iw > 0 && abs(gm.points[iw] - bp.zeta_minus) < BigReal(2 * h_)) --iw;
        w0_big_ = gm.points[iw];
        nodes_.push_back(to_double(w0_big_));

        auto add = [&](std::complex<double> p) {
            if (node_ok(p)) nodes_.push_back(p);
        };
        // offsets on both sides of Gamma_C
        double acc = 0;
        for (size_t i = 1; i + 1 < gc.size(); ++i) {
            acc += std::abs(gc[i] - gc[i - 1]);
            if (acc < h_) continue;
            acc = 0;
            std::complex<double> t = gc[i + 1] - gc[i - 1];
            std::complex<double> n = std::complex<double>(0, 1) * t / std::abs(t);
            add(gc[i] + h_ * n);
            add(gc[i] - h_ * n);
        }
        for (int k = 0; k < 16; ++k) {
            double th = 2 * M_PI * k / 16;
            add(zp + std::polar(2 * h_, th));
            add(zm + std::polar(2 * h_, th));
            add(zp + std::polar(6 * h_, th));
            add(zm + std::polar(6 * h_, th));
        }
        for (int k = 0; k < 12; ++k) {
            double th = 2 * M_PI * k / 12 + 0.1;
            for (double s : {1.0, -1.0}) {
                add(s + std::polar(rp_, th));
                add(s + std::polar(2.5 * rp_, th));
            }
        }
        double r1 = 1.5 * std::max(std::abs(zp), 1.5);
        for (double R : {r1, 2 * r1, 0.5 * g.box()}) {
            for (int k = 0; k < 24; ++k) add(std::polar(R, 2 * M_PI * (k + 0.5) / 24));
        }
        // Dijkstra from w0
        const size_t N = nodes_.size();
        dist_.assign(N, 1e300);
        prev_.assign(N, -1);
        std::vector<char> done(N, 0);
        dist_[0] = 0;
        for (size_t it = 0; it < N; ++it) {
            int u = -1;
            for (size_t i = 0; i < N; ++i)
                if (!done[i] && (u < 0 || dist_[i] < dist_[u])) u = static_cast<int>(i);
            if (u < 0 || dist_[u] >= 1e299) break;
            done[u] = 1;
            for (size_t v = 0; v < N; ++v) {
                if (done[v]) continue;
                double c = dist_[u] + std::abs(nodes_[u] - nodes_[v]);
                if (c < dist_[v] && edge_ok(nodes_[u], nodes_[v], false)) {
                    dist_[v] = c;
                    prev_[v] = u;
                }
            }
        }
    }

    std::shared_ptr<const Geometry> g_;
    PhaseOptions opt_;
    BigReal tol_;
    double h_ = 0, rp_ = 0;
    BigComplex w0_big_;
    std::vector<std::complex<double>> nodes_;
    std::vector<double> dist_;
    std::vector<int> prev_;
    std::map<ArcKind, std::vector<std::complex<double>>> cut_poly_, cut_near_;
};

}  // namespace jrh
