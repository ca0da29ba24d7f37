#include "zlab/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace zlab {

std::string Cube::str() const {
    std::ostringstream os;
    os << "Cube(center=(";
    for (int i = 0; i < dim(); ++i) os << (i ? "," : "") << center[i];
    os << "), side=" << side;
    if (dyadic) os << ", level=" << dyadic->level;
    os << ")";
    return os.str();
}

double box_distance(const Cube& a, const Cube& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        double gap = std::max({a.low(i) - b.high(i), b.low(i) - a.high(i), 0.0});
        s += gap * gap;
    }
    return std::sqrt(s);
}

double point_box_distance(const Vec& p, const Cube& b) {
    double s = 0.0;
    for (int i = 0; i < b.dim(); ++i) {
        double gap = std::max({b.low(i) - p[i], p[i] - b.high(i), 0.0});
        s += gap * gap;
    }
    return std::sqrt(s);
}

double point_segment_distance(const Vec& p, const Vec& a, const Vec& b) {
    Vec ab = b - a;
    double len2 = ab.norm2();
    if (len2 == 0.0) return (p - a).norm();
    double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + ab * t)).norm();
}

namespace {
// Liang-Barsky: does the segment meet the closed box?
bool segment_meets_box(const Cube& box, const Vec& a, const Vec& b) {
    double t0 = 0.0, t1 = 1.0;
    for (int i = 0; i < box.dim(); ++i) {
        double d = b[i] - a[i];
        double lo = box.low(i) - a[i], hi = box.high(i) - a[i];
        if (d == 0.0) {
            if (lo > 0.0 || hi < 0.0) return false;
        } else {
            double ta = lo / d, tb = hi / d;
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            if (t0 > t1) return false;
        }
    }
    return true;
}
} // namespace

double box_segment_distance(const Cube& box, const Vec& a, const Vec& b) {
    if (segment_meets_box(box, a, b)) return 0.0;
    // disjoint convex sets: the minimum is realized at a segment endpoint
    // against the box or at a box corner against the segment
    double d = std::min(point_box_distance(a, box), point_box_distance(b, box));
    for (int c = 0; c < box.corner_count(); ++c) {
        d = std::min(d, point_segment_distance(box.corner(c), a, b));
    }
    return d;
}

namespace {
int orient(const Vec& p, const Vec& q, const Vec& r) {
    double v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}
bool on_segment(const Vec& p, const Vec& q, const Vec& r) {
    return std::min(p[0], q[0]) <= r[0] && r[0] <= std::max(p[0], q[0]) &&
           std::min(p[1], q[1]) <= r[1] && r[1] <= std::max(p[1], q[1]);
}
} // namespace

bool segments_intersect(const Vec& p, const Vec& q, const Vec& r, const Vec& s) {
    int o1 = orient(p, q, r), o2 = orient(p, q, s);
    int o3 = orient(r, s, p), o4 = orient(r, s, q);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p, q, r)) return true;
    if (o2 == 0 && on_segment(p, q, s)) return true;
    if (o3 == 0 && on_segment(r, s, p)) return true;
    if (o4 == 0 && on_segment(r, s, q)) return true;
    return false;
}

} // namespace zlab
