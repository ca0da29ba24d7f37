#pragma once

#include <functional>
#include <vector>

#include "zlab/errors.hpp"
#include "zlab/geometry.hpp"

namespace zlab {

using Fn1 = std::function<double(double)>;
using FnV = std::function<double(const Vec&)>;

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Cached Gauss-Legendre rule with m points (m >= 1).
const GaussRule& gauss_legendre(int m);

double gauss_on_interval(const Fn1& f, double a, double b, int m);

struct QuadOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-300;  // pure relative control by default
    long max_evals = 1'000'000;
};

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
    long evals = 0;
};

// Adaptive Gauss-Kronrod 7-15 bisection on [a, b].
QuadResult integrate(const Fn1& f, double a, double b, const QuadOptions& opt = {});

// Adaptive integration on [a, b] with geometric panels accumulating toward a,
// for integrands that vary over many scales near the left endpoint
// (e.g. omega(t) * t^(-n-1) with a close to 0).
QuadResult integrate_graded_left(const Fn1& f, double a, double b,
                                 const QuadOptions& opt = {});

// Tensor Gauss-Legendre on a cube, doubling the order until two successive
// levels agree to rel_tol. Throws QuadratureFailure if the ladder never
// settles (discontinuous integrands belong in integrate_cube_adaptive).
QuadResult integrate_cube(const FnV& f, const Cube& q, double rel_tol = 1e-9,
                          int m0 = 8, int m_max = 256);

// Adaptive dyadic subdivision on a cube with a per-cell two-order Gauss
// estimate; splits the worst cell first. Handles kinks and indicator masks.
QuadResult integrate_cube_adaptive(const FnV& f, const Cube& q,
                                   double rel_tol = 1e-8, double abs_tol = 0.0,
                                   long max_cells = 200'000);

} // namespace zlab
