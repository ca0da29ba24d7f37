#include "zlab/domain.hpp"

#include <algorithm>
#include <cmath>

#include "zlab/quadrature.hpp"

namespace zlab {

namespace {

double polygon_signed_area(const std::vector<Vec>& v) {
    double a = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const Vec& p = v[i];
        const Vec& q = v[(i + 1) % v.size()];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * a;
}

double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

// Sutherland-Hodgman clip of a polygon against the halfplane n.x <= c.
std::vector<Vec> clip_halfplane(const std::vector<Vec>& poly, double nx, double ny,
                                double c) {
    std::vector<Vec> out;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec& a = poly[i];
        const Vec& b = poly[(i + 1) % n];
        double da = nx * a[0] + ny * a[1] - c;
        double db = nx * b[0] + ny * b[1] - c;
        bool ina = da <= 0.0, inb = db <= 0.0;
        if (ina) out.push_back(a);
        if (ina != inb) {
            double t = da / (da - db);
            out.push_back(Vec(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])));
        }
    }
    return out;
}

} // namespace

LipschitzDomain LipschitzDomain::polygon(std::vector<Vec> vertices, std::string name) {
    if (vertices.size() < 3) throw InvalidPolygon("need at least 3 vertices");
    LipschitzDomain d;
    d.kind_ = Kind::Polygon;
    d.name_ = std::move(name);
    d.verts_ = std::move(vertices);
    if (polygon_signed_area(d.verts_) < 0.0) {
        std::reverse(d.verts_.begin(), d.verts_.end());
    }
    d.finalize_polygon();
    return d;
}

LipschitzDomain LipschitzDomain::disk(Vec center, double radius, std::string name) {
    if (!(radius > 0.0)) throw InvalidPolygon("disk radius must be positive");
    LipschitzDomain d;
    d.kind_ = Kind::Disk;
    d.name_ = std::move(name);
    d.disk_center_ = center;
    d.disk_radius_ = radius;
    d.finalize_disk();
    return d;
}

void LipschitzDomain::finalize_polygon() {
    const size_t n = verts_.size();
    area_ = polygon_signed_area(verts_);
    if (area_ < 1e-12) throw InvalidPolygon("degenerate polygon (zero area)");

    for (size_t i = 0; i < n; ++i) {
        if ((verts_[(i + 1) % n] - verts_[i]).norm() < 1e-12) {
            throw InvalidPolygon("repeated consecutive vertices");
        }
    }
    // self intersection: non-adjacent edge pairs must not meet
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(verts_[i], verts_[(i + 1) % n], verts_[j],
                                   verts_[(j + 1) % n])) {
                throw InvalidPolygon("self-intersecting polygon");
            }
        }
    }

    // interior angles; cusp detection; corner slope bound
    double max_slope = 0.0;
    std::vector<double> interior(n);
    for (size_t i = 0; i < n; ++i) {
        const Vec& prev = verts_[(i + n - 1) % n];
        const Vec& cur = verts_[i];
        const Vec& next = verts_[(i + 1) % n];
        Vec a = cur - prev, b = next - cur;
        double turn = std::atan2(cross2(a, b), a.dot(b));
        double alpha = M_PI - turn;  // interior angle, CCW orientation
        interior[i] = alpha;
        const double cusp_tol = 1e-6;
        if (alpha < cusp_tol || alpha > 2.0 * M_PI - cusp_tol) {
            throw NotLipschitz("cusp at vertex " + std::to_string(i));
        }
        max_slope = std::max(max_slope, std::abs(std::tan(M_PI / 2.0 - alpha / 2.0)));
    }
    delta_ = max_slope;

    // bounding box: smallest enclosing square
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const Vec& v : verts_) {
        x0 = std::min(x0, v[0]); x1 = std::max(x1, v[0]);
        y0 = std::min(y0, v[1]); y1 = std::max(y1, v[1]);
    }
    double side = std::max(x1 - x0, y1 - y0);
    bbox_ = Cube(Vec(0.5 * (x0 + x1), 0.5 * (y0 + y1)), side);

    // window size: stay clear of non-adjacent edges and keep within the two
    // incident edges at a corner
    double min_edge = 1e300;
    for (size_t i = 0; i < n; ++i) {
        min_edge = std::min(min_edge, (verts_[(i + 1) % n] - verts_[i]).norm());
    }
    double clearance = 1e300;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            Vec a = verts_[j], b = verts_[(j + 1) % n];
            clearance = std::min(clearance, point_segment_distance(verts_[i], a, b));
        }
    }
    window_R_ = 0.9 * std::min(min_edge, clearance);

    // windows: one per vertex (wedge graph) and one per edge midpoint (flat)
    windows_.clear();
    for (size_t i = 0; i < n; ++i) {
        const Vec& prev = verts_[(i + n - 1) % n];
        const Vec& cur = verts_[i];
        const Vec& next = verts_[(i + 1) % n];
        Vec ein = (cur - prev).normalized();
        Vec eout = (next - cur).normalized();
        // interior bisector: rotate the two boundary directions into the wedge
        Vec bis = (eout - ein);
        if (bis.norm() < 1e-12) bis = Vec(-ein[1], ein[0]);
        bis = bis.normalized();
        // orient toward the interior: the left normal of eout points inside (CCW)
        Vec inward(-eout[1], eout[0]);
        if (bis.dot(inward) < 0.0 && std::abs(bis.dot(inward)) > 1e-12) bis = -bis;
        double slope = std::tan(M_PI / 2.0 - interior[i] / 2.0);
        Window w;
        w.center = cur;
        w.up_angle = std::atan2(bis[1], bis[0]);
        w.graph = [slope](double x) { return slope * std::abs(x); };
        w.side = window_R_;
        windows_.push_back(std::move(w));

        Vec mid = (cur + next) * 0.5;
        Vec nrm(-eout[1], eout[0]);  // inward for CCW
        Window we;
        we.center = mid;
        we.up_angle = std::atan2(nrm[1], nrm[0]);
        we.graph = [](double) { return 0.0; };
        we.side = window_R_;
        windows_.push_back(std::move(we));
    }
}

void LipschitzDomain::finalize_disk() {
    area_ = M_PI * disk_radius_ * disk_radius_;
    bbox_ = Cube(disk_center_, 2.0 * disk_radius_);
    window_R_ = 0.8 * disk_radius_;
    delta_ = (window_R_ / 2.0) /
             std::sqrt(disk_radius_ * disk_radius_ - window_R_ * window_R_ / 4.0);
    const int nw = 16;
    double rad = disk_radius_;
    for (int i = 0; i < nw; ++i) {
        double th = 2.0 * M_PI * i / nw;
        Window w;
        w.center = disk_center_ + Vec(rad * std::cos(th), rad * std::sin(th));
        w.up_angle = th + M_PI;  // inward normal
        w.graph = [rad](double x) { return rad - std::sqrt(rad * rad - x * x); };
        w.side = window_R_;
        windows_.push_back(std::move(w));
    }
}

bool LipschitzDomain::contains(const Vec& p) const {
    if (kind_ == Kind::Disk) return (p - disk_center_).norm() < disk_radius_;
    // crossing-number test; boundary points count as outside (open domain)
    bool inside = false;
    const size_t n = verts_.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec& a = verts_[i];
        const Vec& b = verts_[(i + 1) % n];
        if ((a[1] > p[1]) != (b[1] > p[1])) {
            double xint = a[0] + (p[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
            if (p[0] < xint) inside = !inside;
        }
    }
    return inside;
}

double LipschitzDomain::boundary_dist(const Vec& p) const {
    if (kind_ == Kind::Disk) {
        return std::abs(disk_radius_ - (p - disk_center_).norm());
    }
    double d = 1e300;
    const size_t n = verts_.size();
    for (size_t i = 0; i < n; ++i) {
        d = std::min(d, point_segment_distance(p, verts_[i], verts_[(i + 1) % n]));
    }
    return d;
}

double LipschitzDomain::cube_boundary_dist(const Cube& q) const {
    if (kind_ == Kind::Disk) {
        double far2 = 0.0;
        for (int c = 0; c < q.corner_count(); ++c) {
            far2 = std::max(far2, (q.corner(c) - disk_center_).norm2());
        }
        double far = std::sqrt(far2);
        double near = point_box_distance(disk_center_, q);
        if (far <= disk_radius_) return disk_radius_ - far;   // box inside
        if (near >= disk_radius_) return near - disk_radius_; // box outside
        return 0.0;                                           // straddles circle
    }
    double d = 1e300;
    const size_t n = verts_.size();
    for (size_t i = 0; i < n; ++i) {
        d = std::min(d, box_segment_distance(q, verts_[i], verts_[(i + 1) % n]));
        if (d == 0.0) return 0.0;
    }
    return d;
}

int LipschitzDomain::classify(const Cube& q) const {
    double d = cube_boundary_dist(q);
    if (d <= 1e-14 * std::max(1.0, q.side)) return 0;
    return contains(q.center) ? +1 : -1;
}

double LipschitzDomain::cell_area_fraction(const Cube& q) const {
    int cls = classify(q);
    if (cls > 0) return 1.0;
    if (cls < 0) return 0.0;
    if (kind_ == Kind::Polygon) {
        std::vector<Vec> poly = verts_;
        poly = clip_halfplane(poly, -1.0, 0.0, -q.low(0));
        if (poly.empty()) return 0.0;
        poly = clip_halfplane(poly, 1.0, 0.0, q.high(0));
        if (poly.empty()) return 0.0;
        poly = clip_halfplane(poly, 0.0, -1.0, -q.low(1));
        if (poly.empty()) return 0.0;
        poly = clip_halfplane(poly, 0.0, 1.0, q.high(1));
        if (poly.size() < 3) return 0.0;
        return std::max(0.0, polygon_signed_area(poly)) / q.volume();
    }
    // disk: 1-D integral of the chord overlap, split at the breakpoints where
    // the clipped chord formula changes branch
    const double cx = disk_center_[0], cy = disk_center_[1], R = disk_radius_;
    const double x0 = q.low(0), x1 = q.high(0), y0 = q.low(1), y1 = q.high(1);
    std::vector<double> cuts = {x0, x1};
    auto add_cut = [&](double x) {
        if (x > x0 + 1e-15 && x < x1 - 1e-15) cuts.push_back(x);
    };
    add_cut(cx - R);
    add_cut(cx + R);
    for (double yy : {y0, y1}) {
        double h2 = R * R - (yy - cy) * (yy - cy);
        if (h2 > 0.0) {
            double h = std::sqrt(h2);
            add_cut(cx - h);
            add_cut(cx + h);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    auto chord = [&](double x) {
        double g2 = R * R - (x - cx) * (x - cx);
        if (g2 <= 0.0) return 0.0;
        double g = std::sqrt(g2);
        double lo = std::max(y0, cy - g), hi = std::min(y1, cy + g);
        return std::max(0.0, hi - lo);
    };
    double area = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] - cuts[i] < 1e-16) continue;
        area += gauss_on_interval(chord, cuts[i], cuts[i + 1], 48);
    }
    return std::clamp(area / q.volume(), 0.0, 1.0);
}

RhoIntervals LipschitzDomain::radial_intervals(const Vec& y, double angle) const {
    const double dx = std::cos(angle), dy = std::sin(angle);
    RhoIntervals out;
    if (kind_ == Kind::Disk) {
        Vec w = y - disk_center_;
        double b = w[0] * dx + w[1] * dy;
        double c = w.norm2() - disk_radius_ * disk_radius_;
        double disc = b * b - c;
        if (disc <= 0.0) return out;
        double s = std::sqrt(disc);
        double r0 = -b - s, r1 = -b + s;
        if (r1 <= 0.0) return out;
        out.emplace_back(std::max(0.0, r0), r1);
        return out;
    }
    std::vector<double> hits;
    const size_t n = verts_.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec& a = verts_[i];
        const Vec& b = verts_[(i + 1) % n];
        double ex = b[0] - a[0], ey = b[1] - a[1];
        double det = dx * (-ey) - dy * (-ex);
        if (std::abs(det) < 1e-15) continue;  // ray parallel to edge
        double rx = a[0] - y[0], ry = a[1] - y[1];
        double rho = (rx * (-ey) + ry * ex) / det;
        double u = (dx * ry - dy * rx) / det;
        if (rho > 1e-13 && u >= 0.0 && u < 1.0) hits.push_back(rho);
    }
    std::sort(hits.begin(), hits.end());
    size_t k = 0;
    if (contains(y)) {
        if (hits.empty()) return out;
        out.emplace_back(0.0, hits[0]);
        k = 1;
    }
    for (; k + 1 < hits.size(); k += 2) out.emplace_back(hits[k], hits[k + 1]);
    return out;
}

std::vector<double> LipschitzDomain::radial_breakpoints(const Vec& y) const {
    std::vector<double> angles;
    if (kind_ == Kind::Polygon) {
        for (const Vec& v : verts_) {
            angles.push_back(std::atan2(v[1] - y[1], v[0] - y[0]));
        }
    } else {
        Vec w = disk_center_ - y;
        double d = w.norm();
        if (d > disk_radius_) {  // tangent directions
            double base = std::atan2(w[1], w[0]);
            double half = std::asin(std::min(1.0, disk_radius_ / d));
            angles.push_back(base - half);
            angles.push_back(base + half);
        }
    }
    return angles;
}

LipschitzDomain make_domain(const DomainSpec& spec) {
    if (spec.type == "square" || spec.type == "unit_square") {
        return LipschitzDomain::polygon(
            {Vec(0, 0), Vec(1, 0), Vec(1, 1), Vec(0, 1)}, "square");
    }
    if (spec.type == "disk" || spec.type == "unit_disk") {
        return LipschitzDomain::disk(spec.center, spec.radius, "disk");
    }
    if (spec.type == "lshape") {
        // (0,1)^2 minus [1/2,1)^2
        return LipschitzDomain::polygon({Vec(0, 0), Vec(1, 0), Vec(1, 0.5),
                                         Vec(0.5, 0.5), Vec(0.5, 1), Vec(0, 1)},
                                        "lshape");
    }
    if (spec.type == "lipgraph") {
        // sawtooth bottom boundary with slopes <= 1
        return LipschitzDomain::polygon(
            {Vec(0, 0), Vec(0.25, 0.2), Vec(0.5, 0.05), Vec(0.75, 0.25),
             Vec(1, 0.1), Vec(1, 1), Vec(0, 1)},
            "lipgraph");
    }
    if (spec.type == "polygon") {
        return LipschitzDomain::polygon(spec.vertices, "polygon");
    }
    throw UnknownDomain("'" + spec.type + "'");
}

LipschitzDomain make_domain(const std::string& builtin_name) {
    DomainSpec s;
    s.type = builtin_name;
    if (builtin_name == "disk" || builtin_name == "unit_disk") {
        s.center = Vec(0.0, 0.0);
        s.radius = 1.0;
    }
    return make_domain(s);
}

} // namespace zlab
