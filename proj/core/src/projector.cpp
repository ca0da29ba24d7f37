#include "zlab/projector.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

namespace zlab {

namespace {

constexpr int kMaxLegendre = 16;

// monomial coefficients of P_j on [-1,1] via the three-term recurrence
const std::vector<std::vector<double>>& legendre_table() {
    static std::vector<std::vector<double>> table = [] {
        std::vector<std::vector<double>> t(kMaxLegendre + 1);
        t[0] = {1.0};
        t[1] = {0.0, 1.0};
        for (int j = 1; j < kMaxLegendre; ++j) {
            std::vector<double> next(j + 2, 0.0);
            for (int m = 0; m <= j; ++m) {
                next[m + 1] += (2.0 * j + 1.0) / (j + 1.0) * t[j][m];
            }
            for (size_t m = 0; m < t[j - 1].size(); ++m) {
                next[m] -= static_cast<double>(j) / (j + 1.0) * t[j - 1][m];
            }
            t[j + 1] = std::move(next);
        }
        return t;
    }();
    return table;
}

} // namespace

double shifted_legendre_coeff(int j, int m) {
    if (j < 0 || j > kMaxLegendre || m < 0 || m > j) return 0.0;
    return legendre_table()[j][m] * std::pow(2.0, m);
}

double shifted_legendre_eval(int j, double u) {
    // P_j(2u) by recurrence
    double x = 2.0 * u;
    double p0 = 1.0, p1 = x;
    if (j == 0) return p0;
    if (j == 1) return p1;
    for (int i = 1; i < j; ++i) {
        double p2 = ((2.0 * i + 1.0) * x * p1 - i * p0) / (i + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

namespace {

// accumulate all inner products <f_hat, L_k> on the reference cube with an
// m-point tensor rule; f_hat lives on [-1/2, 1/2]^d
std::vector<double> reference_moments(const FnV& fhat, int dim, int n, int m) {
    const auto& idx = multi_indices(dim, n);
    const GaussRule& rule = gauss_legendre(m);
    std::vector<double> nodes(m), w(m);
    for (int i = 0; i < m; ++i) {
        nodes[i] = 0.5 * rule.nodes[i];
        w[i] = 0.5 * rule.weights[i];
    }
    // per-axis Legendre values at nodes
    std::vector<std::vector<double>> L(n + 1, std::vector<double>(m));
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i < m; ++i) L[j][i] = shifted_legendre_eval(j, nodes[i]);
    }
    std::vector<double> mom(idx.size(), 0.0);
    Vec p = Vec::zero(dim);
    if (dim == 1) {
        for (int i = 0; i < m; ++i) {
            p[0] = nodes[i];
            double fv = fhat(p) * w[i];
            for (size_t t = 0; t < idx.size(); ++t) mom[t] += fv * L[idx[t].k[0]][i];
        }
    } else if (dim == 2) {
        for (int i = 0; i < m; ++i) {
            p[0] = nodes[i];
            for (int jn = 0; jn < m; ++jn) {
                p[1] = nodes[jn];
                double fv = fhat(p) * w[i] * w[jn];
                for (size_t t = 0; t < idx.size(); ++t) {
                    mom[t] += fv * L[idx[t].k[0]][i] * L[idx[t].k[1]][jn];
                }
            }
        }
    } else {
        for (int i = 0; i < m; ++i) {
            p[0] = nodes[i];
            for (int jn = 0; jn < m; ++jn) {
                p[1] = nodes[jn];
                for (int kn = 0; kn < m; ++kn) {
                    p[2] = nodes[kn];
                    double fv = fhat(p) * w[i] * w[jn] * w[kn];
                    for (size_t t = 0; t < idx.size(); ++t) {
                        mom[t] += fv * L[idx[t].k[0]][i] * L[idx[t].k[1]][jn] *
                                  L[idx[t].k[2]][kn];
                    }
                }
            }
        }
    }
    return mom;
}

} // namespace

Polynomial project(const FnV& f, const Cube& q, int n, const ProjectOptions& opt) {
    if (!(q.side > 0.0)) throw DegenerateCube("projection on a degenerate cube");
    const int dim = q.dim();
    const auto& idx = multi_indices(dim, n);
    auto fhat = [&](const Vec& u) {
        Vec x = q.center;
        for (int i = 0; i < dim; ++i) x[i] += q.side * u[i];
        return f(x);
    };

    int m = opt.m0 > 0 ? opt.m0 : std::max(n + 5, 8);
    std::vector<double> mom = reference_moments(fhat, dim, n, m);
    bool settled = false;
    for (m *= 2; m <= opt.m_max; m *= 2) {
        std::vector<double> next = reference_moments(fhat, dim, n, m);
        double diff = 0.0, scale = 0.0;
        for (size_t t = 0; t < mom.size(); ++t) {
            diff = std::max(diff, std::abs(next[t] - mom[t]));
            scale = std::max(scale, std::abs(next[t]));
        }
        mom = std::move(next);
        if (diff <= opt.rel_tol * std::max(scale, 1e-30)) {
            settled = true;
            break;
        }
    }
    if (!settled) {
        if (!opt.adaptive_fallback) {
            throw QuadratureFailure("projection moments did not settle on " + q.str());
        }
        Cube ref(Vec::zero(dim), 1.0);
        for (size_t t = 0; t < idx.size(); ++t) {
            const MultiIndex& kk = idx[t];
            auto g = [&](const Vec& u) {
                double v = fhat(u);
                for (int a = 0; a < dim; ++a) v *= shifted_legendre_eval(kk.k[a], u[a]);
                return v;
            };
            mom[t] = integrate_cube_adaptive(g, ref, opt.adaptive_tol, 1e-14,
                                             opt.adaptive_cells)
                         .value;
        }
    }

    // Legendre coefficients -> monomial coefficients around the cube center
    Polynomial out(dim, n, q.center);
    auto& coef = out.coefficients();
    for (size_t t = 0; t < idx.size(); ++t) {
        double norm = 1.0;
        for (int a = 0; a < dim; ++a) norm *= 2.0 * idx[t].k[a] + 1.0;
        double c_leg = mom[t] * norm;
        if (c_leg == 0.0) continue;
        // expand prod_a L_{k_a}(u_a), u = (x - center)/side
        for (size_t s = 0; s < idx.size(); ++s) {
            const MultiIndex& mm = idx[s];
            double w = 1.0;
            bool ok = true;
            for (int a = 0; a < dim; ++a) {
                double lc = shifted_legendre_coeff(idx[t].k[a], mm.k[a]);
                if (lc == 0.0) {
                    ok = false;
                    break;
                }
                w *= lc;
            }
            if (ok) coef[s] += c_leg * w / std::pow(q.side, mm.total());
        }
    }
    return out;
}

double lp_dist(const FnV& f, const Polynomial& P, const Cube& q, double p,
               const LpOptions& opt) {
    if (p == kLpInf) {
        double best = 0.0;
        const GaussRule& rule = gauss_legendre(32);
        const int g = opt.sup_grid;
        Vec x = Vec::zero(q.dim());
        if (q.dim() == 1) {
            for (int i = 0; i < 32; ++i) {
                x[0] = q.center[0] + 0.5 * q.side * rule.nodes[i];
                best = std::max(best, std::abs(f(x) - P(x)));
            }
            for (int i = 0; i < g; ++i) {
                x[0] = q.low(0) + q.side * i / (g - 1.0);
                best = std::max(best, std::abs(f(x) - P(x)));
            }
            return best;
        }
        for (int i = 0; i < 32; ++i) {
            x[0] = q.center[0] + 0.5 * q.side * rule.nodes[i];
            for (int j = 0; j < 32; ++j) {
                x[1] = q.center[1] + 0.5 * q.side * rule.nodes[j];
                best = std::max(best, std::abs(f(x) - P(x)));
            }
        }
        for (int i = 0; i < g; ++i) {
            x[0] = q.low(0) + q.side * i / (g - 1.0);
            for (int j = 0; j < g; ++j) {
                x[1] = q.low(1) + q.side * j / (g - 1.0);
                best = std::max(best, std::abs(f(x) - P(x)));
            }
        }
        return best;
    }
    if (!(p >= 1.0)) throw ParameterOutOfRange("lp_dist needs p >= 1");
    auto g = [&](const Vec& x) { return std::pow(std::abs(f(x) - P(x)), p); };
    double integral =
        integrate_cube_adaptive(g, q, opt.rel_tol, 1e-300, opt.max_cells).value;
    return std::pow(std::max(0.0, integral) / q.volume(), 1.0 / p);
}

std::pair<double, double> poly_sup_bound(const Polynomial& P, const Cube& q) {
    double sup = 0.0;
    const int g = 129;
    Vec x = Vec::zero(q.dim());
    if (q.dim() == 1) {
        for (int i = 0; i < g; ++i) {
            x[0] = q.low(0) + q.side * i / (g - 1.0);
            sup = std::max(sup, std::abs(P(x)));
        }
    } else {
        for (int i = 0; i < g; ++i) {
            x[0] = q.low(0) + q.side * i / (g - 1.0);
            for (int j = 0; j < g; ++j) {
                x[1] = q.low(1) + q.side * j / (g - 1.0);
                sup = std::max(sup, std::abs(P(x)));
            }
        }
    }
    auto absP = [&](const Vec& y) { return std::abs(P(y)); };
    double mean = integrate_cube_adaptive(absP, q, 1e-9, 1e-300, 60'000).value / q.volume();
    return {sup, mean > 0.0 ? sup / mean : 1.0};
}

double coeff_l1_scaled(const Polynomial& P, double side) {
    const auto& idx = multi_indices(P.dim(), P.degree());
    double s = 0.0;
    for (size_t i = 0; i < idx.size(); ++i) {
        s += std::abs(P.coefficients()[i]) * std::pow(side, idx[i].total());
    }
    return std::sqrt(std::max(1, P.degree())) * s;
}

double rescaling_ratio(const Polynomial& P, const Cube& q1, const Cube& q2) {
    if (!q1.inside(q2)) throw NotNested(q1.str() + " not inside " + q2.str());
    auto absP = [&](const Vec& y) { return std::abs(P(y)); };
    double n1 = integrate_cube_adaptive(absP, q1, 1e-9, 1e-300, 60'000).value / q1.volume();
    double n2 = integrate_cube_adaptive(absP, q2, 1e-9, 1e-300, 60'000).value / q2.volume();
    if (n1 == 0.0) return 0.0;
    return n2 / n1 / std::pow(q2.side / q1.side, P.degree());
}

} // namespace zlab
