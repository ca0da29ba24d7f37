#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "zlab/errors.hpp"

namespace zlab {

// Points and cubes carry a runtime dimension d in {1,2,3}. Everything
// downstream of the singular integrals is d=2; the cube algebra and the
// kernel homogeneity probes use d=1..3.
inline constexpr int kMaxDim = 3;

struct Vec {
    std::array<double, kMaxDim> x{0.0, 0.0, 0.0};
    int dim = 2;

    Vec() = default;
    Vec(double a, double b) : x{a, b, 0.0}, dim(2) {}
    Vec(double a, double b, double c) : x{a, b, c}, dim(3) {}
    static Vec scalar(double a) {
        Vec v;
        v.x = {a, 0.0, 0.0};
        v.dim = 1;
        return v;
    }
    static Vec zero(int d) {
        Vec v;
        v.dim = d;
        return v;
    }

    double operator[](int i) const { return x[static_cast<size_t>(i)]; }
    double& operator[](int i) { return x[static_cast<size_t>(i)]; }

    Vec operator+(const Vec& o) const {
        Vec r = *this;
        for (int i = 0; i < dim; ++i) r.x[i] += o.x[i];
        return r;
    }
    Vec operator-(const Vec& o) const {
        Vec r = *this;
        for (int i = 0; i < dim; ++i) r.x[i] -= o.x[i];
        return r;
    }
    Vec operator*(double s) const {
        Vec r = *this;
        for (int i = 0; i < dim; ++i) r.x[i] *= s;
        return r;
    }
    Vec operator-() const { return *this * -1.0; }

    double dot(const Vec& o) const {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) s += x[i] * o.x[i];
        return s;
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    double inf_norm() const {
        double m = 0.0;
        for (int i = 0; i < dim; ++i) m = std::max(m, std::abs(x[i]));
        return m;
    }
    Vec normalized() const {
        double n = norm();
        return *this * (1.0 / n);
    }
};

inline Vec operator*(double s, const Vec& v) { return v * s; }

// Axis-aligned cube, semi-open [c - l/2, c + l/2) in each coordinate.
// Dyadic cubes additionally carry (level, index): the cube at level k with
// index (i_0,..) has side root_side * 2^-k and low corner
// root_origin + index * side.
struct DyadicCoords {
    int level = 0;
    std::array<std::int64_t, kMaxDim> index{0, 0, 0};
};

struct Cube {
    Vec center;
    double side = 1.0;
    std::optional<DyadicCoords> dyadic;

    Cube() = default;
    Cube(Vec c, double l) : center(c), side(l) {
        if (!(l > 0.0)) throw DegenerateCube("side must be positive");
    }

    int dim() const { return center.dim; }
    double volume() const { return std::pow(side, dim()); }
    double diameter() const { return side * std::sqrt(static_cast<double>(dim())); }
    double low(int i) const { return center[i] - 0.5 * side; }
    double high(int i) const { return center[i] + 0.5 * side; }

    // sQ: same center, side scaled by s.
    Cube dilated(double s) const {
        Cube q(center, side * s);
        return q;
    }

    bool contains(const Vec& p) const {  // semi-open convention
        for (int i = 0; i < dim(); ++i) {
            if (p[i] < low(i) || p[i] >= high(i)) return false;
        }
        return true;
    }
    bool contains_closed(const Vec& p) const {
        for (int i = 0; i < dim(); ++i) {
            if (p[i] < low(i) || p[i] > high(i)) return false;
        }
        return true;
    }

    // Q1 subset of Q2 as closed boxes, with slack for roundoff.
    bool inside(const Cube& outer, double tol = 1e-12) const {
        for (int i = 0; i < dim(); ++i) {
            if (low(i) < outer.low(i) - tol) return false;
            if (high(i) > outer.high(i) + tol) return false;
        }
        return true;
    }

    Vec corner(unsigned mask) const {
        Vec p = center;
        for (int i = 0; i < dim(); ++i) p[i] = (mask >> i) & 1u ? high(i) : low(i);
        return p;
    }
    int corner_count() const { return 1 << dim(); }

    std::string str() const;
};

// Euclidean distance between two closed boxes (0 if they intersect).
double box_distance(const Cube& a, const Cube& b);

// Distance from a point to a closed box (0 inside).
double point_box_distance(const Vec& p, const Cube& b);

// Distance from a point to a segment [a,b] (2-D).
double point_segment_distance(const Vec& p, const Vec& a, const Vec& b);

// Distance between a closed 2-D box and a segment.
double box_segment_distance(const Cube& box, const Vec& a, const Vec& b);

// True if segments pq and rs properly intersect or touch (2-D).
bool segments_intersect(const Vec& p, const Vec& q, const Vec& r, const Vec& s);

} // namespace zlab
