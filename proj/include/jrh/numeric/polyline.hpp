#pragma once
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace jrh::poly {

using P = std::complex<double>;

inline double cross(P a, P b) { return a.real() * b.imag() - a.imag() * b.real(); }
inline double dot(P a, P b) { return a.real() * b.real() + a.imag() * b.imag(); }

inline double point_segment_distance(P z, P a, P b, double* t_out = nullptr) {
    P d = b - a;
    double len2 = std::norm(d);
    double t = len2 > 0 ? std::clamp(dot(z - a, d) / len2, 0.0, 1.0) : 0.0;
    if (t_out) *t_out = t;
    return std::abs(z - (a + t * d));
}

struct NearestHit {
    double distance = std::numeric_limits<double>::infinity();
    size_t segment = 0;  // index i of segment [i, i+1]
    double t = 0;        // position inside that segment
};

inline NearestHit nearest(const std::vector<P>& pl, P z) {
    NearestHit h;
    if (pl.size() == 1) {
        h.distance = std::abs(z - pl[0]);
        return h;
    }
    for (size_t i = 0; i + 1 < pl.size(); ++i) {
        double t;
        double d = point_segment_distance(z, pl[i], pl[i + 1], &t);
        if (d < h.distance) h = {d, i, t};
    }
    return h;
}

inline double segment_segment_distance(P a, P b, P c, P d);

/// Proper intersection of segments [a,b] and [c,d]. On success returns the
/// orientation sign of the crossing: +1 when [a,b] passes from the right of
/// [c,d] to its left.
inline int segment_crossing(P a, P b, P c, P d, double* s_out = nullptr) {
    P r = b - a, s = d - c;
    double den = cross(r, s);
    if (den == 0) return 0;
    double t = cross(c - a, s) / den;
    double u = cross(c - a, r) / den;
    if (t < 0 || t > 1 || u < 0 || u > 1) return 0;
    if (s_out) *s_out = t;
    // r crosses s; right-to-left of s means cross(s, r) > 0
    return cross(s, r) > 0 ? 1 : -1;
}

inline double segment_segment_distance(P a, P b, P c, P d) {
    if (segment_crossing(a, b, c, d)) return 0;
    return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                     point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

/// Signed number of crossings of segment [a,b] with a polyline.
inline int signed_crossings(const std::vector<P>& pl, P a, P b) {
    int n = 0;
    for (size_t i = 0; i + 1 < pl.size(); ++i) n += segment_crossing(a, b, pl[i], pl[i + 1]);
    return n;
}

inline int count_crossings(const std::vector<P>& pl, P a, P b) {
    int n = 0;
    for (size_t i = 0; i + 1 < pl.size(); ++i) n += segment_crossing(a, b, pl[i], pl[i + 1]) != 0;
    return n;
}

inline double polyline_segment_distance(const std::vector<P>& pl, P a, P b) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < pl.size(); ++i)
        best = std::min(best, segment_segment_distance(a, b, pl[i], pl[i + 1]));
    return best;
}

/// Winding number of a closed polygon (last vertex joined to the first) around z.
inline int winding_number(const std::vector<P>& poly, P z) {
    int wn = 0;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        P a = poly[i], b = poly[(i + 1) % n];
        if (a.imag() <= z.imag()) {
            if (b.imag() > z.imag() && cross(b - a, z - a) > 0) ++wn;
        } else {
            if (b.imag() <= z.imag() && cross(b - a, z - a) < 0) --wn;
        }
    }
    return wn;
}

inline double length(const std::vector<P>& pl) {
    double s = 0;
    for (size_t i = 0; i + 1 < pl.size(); ++i) s += std::abs(pl[i + 1] - pl[i]);
    return s;
}

}  // namespace jrh::poly
