#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zlab/geometry.hpp"

namespace zlab {

// Boundary window: a square of side R centered at a boundary point such that,
// in the rotated frame where `up` points into the domain, the boundary is the
// graph y = A(x) with |A'| <= delta.
struct Window {
    Vec center;                          // on the boundary
    double up_angle = 0.0;               // direction of the rotated vertical axis
    std::function<double(double)> graph; // A in the window frame
    double side = 0.0;                   // window side length (<= domain R)
};

// Sorted, disjoint list of radial parameters {rho : y + rho*dir in D}.
using RhoIntervals = std::vector<std::pair<double, double>>;

// Bounded (delta, R)-Lipschitz domain in the plane. Two concrete shapes back
// the same interface: simple polygons and disks. All distance queries are
// exact (up to roundoff), including the cube-to-boundary distance that the
// Whitney axioms are asserted against.
class LipschitzDomain {
public:
    static LipschitzDomain polygon(std::vector<Vec> vertices, std::string name);
    static LipschitzDomain disk(Vec center, double radius, std::string name = "disk");

    const std::string& name() const { return name_; }
    bool is_polygon() const { return kind_ == Kind::Polygon; }

    bool contains(const Vec& p) const;
    double boundary_dist(const Vec& p) const;

    // min over the closed box of the distance to the boundary (0 if it meets it)
    double cube_boundary_dist(const Cube& q) const;

    // -1 fully outside D, +1 fully inside, 0 straddling the boundary
    int classify(const Cube& q) const;

    // |q intersect D| / |q|, exact for polygons, adaptive closed-form pieces
    // for disks (error well below 1e-12)
    double cell_area_fraction(const Cube& q) const;

    // Radial geometry as seen from y in direction (cos a, sin a).
    RhoIntervals radial_intervals(const Vec& y, double angle) const;
    // Angles at which the radial structure can change (polygon vertices,
    // disk tangents); integrands are smooth between consecutive ones.
    std::vector<double> radial_breakpoints(const Vec& y) const;

    double delta() const { return delta_; }
    double window_R() const { return window_R_; }
    const std::vector<Window>& windows() const { return windows_; }
    const Cube& bounding_box() const { return bbox_; }
    double area() const { return area_; }

    const std::vector<Vec>& vertices() const { return verts_; }
    Vec disk_center() const { return disk_center_; }
    double disk_radius() const { return disk_radius_; }

private:
    enum class Kind { Polygon, Disk };
    Kind kind_ = Kind::Polygon;
    std::string name_;
    std::vector<Vec> verts_;  // CCW, closed implicitly
    Vec disk_center_{0.0, 0.0};
    double disk_radius_ = 1.0;
    double delta_ = 0.0;
    double window_R_ = 0.0;
    double area_ = 0.0;
    Cube bbox_;
    std::vector<Window> windows_;

    void finalize_polygon();
    void finalize_disk();
};

struct DomainSpec {
    std::string type;  // "square" | "disk" | "lshape" | "lipgraph" | "polygon"
    std::vector<Vec> vertices;  // for "polygon"
    Vec center{0.0, 0.0};       // for "disk"
    double radius = 1.0;
};

LipschitzDomain make_domain(const DomainSpec& spec);
LipschitzDomain make_domain(const std::string& builtin_name);

} // namespace zlab
