#pragma once

#include <array>
#include <string>
#include <vector>

#include "zlab/geometry.hpp"

namespace zlab {

struct MultiIndex {
    std::array<int, kMaxDim> k{0, 0, 0};
    int dim = 2;

    int total() const {
        int s = 0;
        for (int i = 0; i < dim; ++i) s += k[i];
        return s;
    }
    int operator[](int i) const { return k[static_cast<size_t>(i)]; }
    bool operator==(const MultiIndex& o) const {
        if (dim != o.dim) return false;
        for (int i = 0; i < dim; ++i) {
            if (k[i] != o.k[i]) return false;
        }
        return true;
    }
};

// All multi-indices |k| <= degree in the given dimension, graded
// lexicographic (grade ascending; within a grade the first component is most
// significant and descends: x^2, xy, y^2). This order is fixed for file output.
const std::vector<MultiIndex>& multi_indices(int dim, int degree);
size_t multi_index_position(int dim, int degree, const MultiIndex& m);

double binomial(int n, int j);
double factorial(int n);

// Polynomial of total degree <= degree(), coefficients over multi-indices in
// powers of (x - center).
class Polynomial {
public:
    Polynomial() : Polynomial(2, 0, Vec(0.0, 0.0)) {}
    Polynomial(int dim, int degree, Vec center);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    const Vec& center() const { return center_; }
    const std::vector<double>& coefficients() const { return coef_; }
    std::vector<double>& coefficients() { return coef_; }

    double coefficient(const MultiIndex& m) const;
    void set_coefficient(const MultiIndex& m, double v);

    double eval(const Vec& x) const;         // direct monomial summation
    double eval_horner(const Vec& x) const;  // nested evaluation
    double operator()(const Vec& x) const { return eval_horner(x); }

    // same polynomial function, coefficients relative to the new center
    Polynomial recentered(const Vec& new_center) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(double s);

    std::string to_json() const;
    static Polynomial from_json(const std::string& text);

private:
    int dim_;
    int degree_;
    Vec center_;
    std::vector<double> coef_;
};

// <x - x0, e>^p as a polynomial centered at x0 (degree bound >= p).
Polynomial linear_form_power(const Vec& e, const Vec& x0, int p, int degree_bound);

} // namespace zlab
