#pragma once

#include "zlab/polynomial.hpp"
#include "zlab/quadrature.hpp"

namespace zlab {

// Monomial coefficient of u^m in the shifted Legendre polynomial L_j(2u)
// (orthogonal on [-1/2, 1/2], squared norm 1/(2j+1)).
double shifted_legendre_coeff(int j, int m);
double shifted_legendre_eval(int j, double u);

struct ProjectOptions {
    double rel_tol = 1e-9;
    int m0 = 0;       // 0: auto, max(n + 5, 8)
    int m_max = 256;  // doubling cap before the adaptive fallback
    bool adaptive_fallback = true;
    double adaptive_tol = 1e-8;
    long adaptive_cells = 60'000;
};

// L^2(Q)-orthogonal projection onto P_n via the tensor Legendre basis,
// computed in reference coordinates and transplanted (exact covariance).
Polynomial project(const FnV& f, const Cube& q, int n, const ProjectOptions& opt = {});

struct LpOptions {
    double rel_tol = 1e-8;
    long max_cells = 60'000;
    int sup_grid = 65;  // closed uniform grid per axis for p = infinity
};

// (int_Q |f - P|^p dx/|Q|)^(1/p); p = infinity takes the max over quadrature
// nodes and a closed uniform grid. Works for any p >= 1 (power mean).
double lp_dist(const FnV& f, const Polynomial& P, const Cube& q, double p,
               const LpOptions& opt = {});

constexpr double kLpInf = std::numeric_limits<double>::infinity();

// Lemma-1 chain: returns (sup_Q |P|, sup / mean_Q |P|).
std::pair<double, double> poly_sup_bound(const Polynomial& P, const Cube& q);

// sqrt(n) * sum |a_k| l^{|k|}, the middle member of the Lemma-1 chain.
double coeff_l1_scaled(const Polynomial& P, double side);

// Lemma-2 ratio: ||P||_{L1(Q2,dx/|Q2|)} / (||P||_{L1(Q1,dx/|Q1|)} (l2/l1)^n).
// Throws NotNested unless Q1 is contained in Q2.
double rescaling_ratio(const Polynomial& P, const Cube& q1, const Cube& q2);

} // namespace zlab
