#include "zlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>

namespace zlab {

namespace {

GaussRule compute_gauss_legendre(int m) {
    // Newton iteration on P_m with the Chebyshev initial guess.
    GaussRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < m; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = m * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[m - 1 - i] = x;
        rule.weights[m - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return rule;
}

std::mutex g_rule_mutex;
std::map<int, GaussRule> g_rules;

// Gauss-Kronrod 7-15 nodes/weights on [-1,1] (abscissa, K15 weight, G7 weight).
constexpr int kGK = 8;
constexpr double kGKData[kGK][3] = {
    {0.000000000000000, 0.209482141084728, 0.417959183673469},
    {0.207784955007898, 0.204432940075298, 0.0},
    {0.405845151377397, 0.190350578064785, 0.381830050505119},
    {0.586087235467691, 0.169004726639267, 0.0},
    {0.741531185599394, 0.140653259715525, 0.279705391489277},
    {0.864864423359769, 0.104790010322250, 0.0},
    {0.949107912342759, 0.063092092629979, 0.129484966168870},
    {0.991455371120813, 0.022935322010529, 0.0},
};

struct GKEval {
    double k15;
    double err;
};

GKEval gk15(const Fn1& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double f0 = f(c);
    double k15 = kGKData[0][1] * f0;
    double g7 = kGKData[0][2] * f0;
    for (int i = 1; i < kGK; ++i) {
        double dx = h * kGKData[i][0];
        double s = f(c + dx) + f(c - dx);
        k15 += kGKData[i][1] * s;
        g7 += kGKData[i][2] * s;
    }
    k15 *= h;
    g7 *= h;
    double diff = std::abs(k15 - g7);
    // classic QUADPACK-style sharpened estimate
    double err = diff * std::sqrt(std::min(1.0, 200.0 * diff / (std::abs(k15) + 1e-300)));
    return {k15, std::max(err, std::abs(k15) * 1e-16)};
}

} // namespace

const GaussRule& gauss_legendre(int m) {
    std::lock_guard<std::mutex> lock(g_rule_mutex);
    auto it = g_rules.find(m);
    if (it == g_rules.end()) it = g_rules.emplace(m, compute_gauss_legendre(m)).first;
    return it->second;
}

double gauss_on_interval(const Fn1& f, double a, double b, int m) {
    const GaussRule& r = gauss_legendre(m);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += r.weights[i] * f(c + h * r.nodes[i]);
    return s * h;
}

QuadResult integrate(const Fn1& f, double a, double b, const QuadOptions& opt) {
    if (a == b) return {0.0, 0.0, 0};
    struct Piece {
        double err, a, b, val;
        bool operator<(const Piece& o) const { return err < o.err; }
    };
    long evals = 15;
    GKEval e0 = gk15(f, a, b);
    std::priority_queue<Piece> heap;
    heap.push({e0.err, a, b, e0.k15});
    double total = e0.k15, total_err = e0.err;

    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (evals + 30 > opt.max_evals || heap.empty()) {
            throw QuadratureFailure("1-D adaptive budget exhausted, err=" +
                                    std::to_string(total_err));
        }
        Piece p = heap.top();
        heap.pop();
        double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b) {
            // interval at roundoff floor; keep its contribution as-is
            total_err -= p.err;
            continue;
        }
        GKEval l = gk15(f, p.a, mid), r = gk15(f, mid, p.b);
        evals += 30;
        total += l.k15 + r.k15 - p.val;
        total_err += l.err + r.err - p.err;
        heap.push({l.err, p.a, mid, l.k15});
        heap.push({r.err, mid, p.b, r.k15});
    }
    return {total, total_err, evals};
}

QuadResult integrate_graded_left(const Fn1& f, double a, double b,
                                 const QuadOptions& opt) {
    if (!(a >= 0.0) || !(b > a)) throw ParameterOutOfRange("need 0 <= a < b");
    // Panels [b/2, b], [b/4, b/2], ..., down to a. Each panel covers one
    // octave so the integrand is tame on it even when it blows up toward a.
    std::vector<std::pair<double, double>> panels;
    double hi = b;
    while (hi > 2.0 * a && panels.size() < 2000) {
        double lo = std::max(a, 0.5 * hi);
        panels.emplace_back(lo, hi);
        hi = lo;
    }
    if (hi > a) panels.emplace_back(a, hi);
    QuadResult out;
    QuadOptions per = opt;
    per.rel_tol = opt.rel_tol * 0.25;
    per.abs_tol = std::max(opt.abs_tol, 1e-306);
    long budget = opt.max_evals;
    for (auto [lo, hix] : panels) {
        per.max_evals = budget - out.evals;
        if (per.max_evals < 60) throw QuadratureFailure("graded budget exhausted");
        // soften the per-panel relative demand once we know the running total
        per.abs_tol = std::max(opt.abs_tol,
                               0.1 * opt.rel_tol * std::abs(out.value) /
                                   static_cast<double>(panels.size()));
        QuadResult r = integrate(f, lo, hix, per);
        out.value += r.value;
        out.err_estimate += r.err_estimate;
        out.evals += r.evals;
    }
    return out;
}

QuadResult integrate_cube(const FnV& f, const Cube& q, double rel_tol, int m0,
                          int m_max) {
    const int d = q.dim();
    auto eval_level = [&](int m) {
        const GaussRule& r = gauss_legendre(m);
        double sum = 0.0;
        Vec p = Vec::zero(d);
        if (d == 1) {
            for (int i = 0; i < m; ++i) {
                p[0] = q.center[0] + 0.5 * q.side * r.nodes[i];
                sum += r.weights[i] * f(p);
            }
        } else if (d == 2) {
            for (int i = 0; i < m; ++i) {
                p[0] = q.center[0] + 0.5 * q.side * r.nodes[i];
                double row = 0.0;
                for (int j = 0; j < m; ++j) {
                    p[1] = q.center[1] + 0.5 * q.side * r.nodes[j];
                    row += r.weights[j] * f(p);
                }
                sum += r.weights[i] * row;
            }
        } else {
            for (int i = 0; i < m; ++i) {
                p[0] = q.center[0] + 0.5 * q.side * r.nodes[i];
                for (int j = 0; j < m; ++j) {
                    p[1] = q.center[1] + 0.5 * q.side * r.nodes[j];
                    double row = 0.0;
                    for (int k = 0; k < m; ++k) {
                        p[2] = q.center[2] + 0.5 * q.side * r.nodes[k];
                        row += r.weights[k] * f(p);
                    }
                    sum += r.weights[i] * r.weights[j] * row;
                }
            }
        }
        return sum * std::pow(0.5 * q.side, d);
    };

    long evals = 0;
    double prev = eval_level(m0);
    evals += static_cast<long>(std::pow(m0, d));
    for (int m = 2 * m0; m <= m_max; m *= 2) {
        double cur = eval_level(m);
        evals += static_cast<long>(std::pow(m, d));
        double diff = std::abs(cur - prev);
        if (diff <= rel_tol * std::max(std::abs(cur), 1e-300) || diff < 1e-300) {
            return {cur, diff, evals};
        }
        prev = cur;
    }
    throw QuadratureFailure("tensor ladder did not settle on " + q.str());
}

QuadResult integrate_cube_adaptive(const FnV& f, const Cube& q, double rel_tol,
                                   double abs_tol, long max_cells) {
    const int d = q.dim();
    const int m_lo = 4, m_hi = 7;
    auto cell_eval = [&](const Cube& c, double& est, double& err) {
        auto level = [&](int m) {
            const GaussRule& r = gauss_legendre(m);
            double sum = 0.0;
            Vec p = Vec::zero(d);
            if (d == 1) {
                for (int i = 0; i < m; ++i) {
                    p[0] = c.center[0] + 0.5 * c.side * r.nodes[i];
                    sum += r.weights[i] * f(p);
                }
            } else {
                for (int i = 0; i < m; ++i) {
                    p[0] = c.center[0] + 0.5 * c.side * r.nodes[i];
                    double row = 0.0;
                    for (int j = 0; j < m; ++j) {
                        p[1] = c.center[1] + 0.5 * c.side * r.nodes[j];
                        row += r.weights[j] * f(p);
                    }
                    sum += r.weights[i] * row;
                }
            }
            return sum * std::pow(0.5 * c.side, d);
        };
        double lo = level(m_lo), hi = level(m_hi);
        est = hi;
        err = std::abs(hi - lo);
    };

    struct Cell {
        double err;
        Cube cube;
        double val;
        bool operator<(const Cell& o) const { return err < o.err; }
    };
    std::priority_queue<Cell> heap;
    double est, err;
    cell_eval(q, est, err);
    heap.push({err, q, est});
    double total = est, total_err = err;
    long cells = 1;

    auto tol_met = [&] {
        return total_err <= std::max(abs_tol, rel_tol * std::abs(total));
    };

    while (!tol_met()) {
        if (cells >= max_cells || heap.empty()) {
            throw QuadratureFailure("adaptive cube budget exhausted, err=" +
                                    std::to_string(total_err));
        }
        Cell top = heap.top();
        heap.pop();
        if (top.cube.side < 1e-14 * q.side) {
            total_err -= top.err;  // cell at roundoff floor
            continue;
        }
        total -= top.val;
        total_err -= top.err;
        double h = 0.5 * top.cube.side;
        int children = 1 << d;
        for (int c = 0; c < children; ++c) {
            Vec ctr = top.cube.center;
            for (int i = 0; i < d; ++i) ctr[i] += ((c >> i) & 1 ? 0.25 : -0.25) * top.cube.side;
            Cube child(ctr, h);
            cell_eval(child, est, err);
            heap.push({err, child, est});
            total += est;
            total_err += err;
            ++cells;
        }
    }
    return {total, total_err, cells};
}

} // namespace zlab
