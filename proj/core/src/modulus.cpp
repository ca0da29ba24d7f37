#include "zlab/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace zlab {

namespace {

std::vector<double> geometric(double lo, double hi, int count) {
    std::vector<double> v(count);
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i) {
        v[i] = std::exp(llo + (lhi - llo) * i / (count - 1.0));
    }
    return v;
}

double eval_positive(const ModulusOfContinuity& m, double t) {
    double v = m.eval(t);
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << "omega(" << t << ") = " << v << " for '" << m.label << "'";
        throw NonPositiveValue(os.str());
    }
    return v;
}

} // namespace

std::vector<double> RegularityGrid::t_samples() const { return geometric(t_min, t_max, t_count); }
std::vector<double> RegularityGrid::s_samples() const { return geometric(s_min, s_max, s_count); }

RegularityReport check_regularity(const ModulusOfContinuity& m,
                                  const RegularityGrid& grid) {
    RegularityReport rep;
    const auto ts = grid.t_samples();
    const auto ss = grid.s_samples();

    std::vector<double> wt(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) wt[i] = eval_positive(m, ts[i]);

    const double mono_tol = 1e-12;
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
        if (wt[i] > wt[i + 1] * (1.0 + mono_tol)) {
            rep.monotonicity_violations.emplace_back(ts[i], ts[i + 1]);
        }
    }

    // limit at 0+ on a geometric tail
    double w_small = eval_positive(m, grid.t_min);
    rep.vanishes_at_zero = w_small < 1e-4 * eval_positive(m, grid.t_max) ||
                           w_small < 1e-12;

    const double decl_tol = 1.0 + 1e-12;
    for (double s : ss) {
        bool dilating = s > 1.0;
        for (size_t i = 0; i < ts.size(); ++i) {
            double t = ts[i];
            double wst = eval_positive(m, s * t);
            double base = wt[i];
            if (dilating) {
                double ratio = wst / (std::pow(s, m.q) * base);
                rep.fitted_C_q = std::max(rep.fitted_C_q, ratio);
                if (m.C_q > 0.0 && ratio > m.C_q * decl_tol) {
                    rep.almost_decreasing_violations.emplace_back(s, t);
                }
            } else if (s < 1.0) {
                double ratio = wst / (std::pow(s, m.r) * base);
                rep.fitted_C_r = std::max(rep.fitted_C_r, ratio);
                if (m.C_r > 0.0 && ratio > m.C_r * decl_tol) {
                    rep.almost_increasing_violations.emplace_back(s, t);
                }
            }
        }
    }
    return rep;
}

double xi(const ModulusOfContinuity& m, double x, const QuadOptions& opt) {
    if (!(x > 0.0) || !(x < 1.0)) throw ParameterOutOfRange("xi needs 0 < x < 1");
    const int n = m.order_n;
    auto f = [&](double t) { return m.eval(t) * std::pow(t, -n - 1); };
    return integrate_graded_left(f, x, 1.0, opt).value;
}

namespace {
struct XiCache {
    std::mutex mu;
    std::map<double, double> memo;
};
} // namespace

DerivedModulus::DerivedModulus(ModulusOfContinuity base, bool dini, QuadOptions opt)
    : base_(std::move(base)), dini_regular_(dini), opt_(opt),
      cache_(std::make_shared<XiCache>()) {}

double DerivedModulus::xi_eval(double x) const {
    auto* c = static_cast<XiCache*>(cache_.get());
    {
        std::lock_guard<std::mutex> lock(c->mu);
        auto it = c->memo.find(x);
        if (it != c->memo.end()) return it->second;
    }
    double v = xi(base_, x, opt_);
    std::lock_guard<std::mutex> lock(c->mu);
    c->memo[x] = v;
    return v;
}

double DerivedModulus::assoc_eval(double x) const {
    if (!(x > 0.0)) throw ParameterOutOfRange("assoc_eval needs x > 0");
    if (x >= 1.0) return base_.eval(x);
    return base_.eval(x) / std::max(1.0, xi_eval(x));
}

DerivedModulus associated(const ModulusOfContinuity& m, const QuadOptions& opt) {
    const double probe = std::pow(2.0, -40);
    double tail = xi(m, probe, opt);
    bool dini = tail <= 1e6;
    return DerivedModulus(m, dini, opt);
}

TailRatios tail_integral_bounds(const ModulusOfContinuity& m, double p, double t,
                                const QuadOptions& opt) {
    if (!(t > 0.0)) throw ParameterOutOfRange("t must be positive");
    TailRatios out;
    const double denom = eval_positive(m, t) * std::pow(t, -p);
    const double tol = 1e-10;

    if (p > m.q) {
        // grow T until the almost-decreasing bound certifies the remainder
        double Cq = m.C_q > 0.0 ? m.C_q : 4.0;
        auto f = [&](double s) { return m.eval(s) * std::pow(s, -p - 1.0); };
        double T = 2.0 * t, acc = 0.0, lo = t;
        for (int k = 0; k < 400; ++k) {
            acc += integrate(f, lo, T, opt).value;
            double tail_bound = Cq * m.eval(t) * std::pow(t, -m.q) *
                                std::pow(T, m.q - p) / (p - m.q);
            if (tail_bound <= tol * std::max(std::abs(acc), denom * t * 1e-6)) break;
            lo = T;
            T *= 2.0;
        }
        out.upper = acc / denom;
    }
    if (p < m.r) {
        double Cr = m.C_r > 0.0 ? m.C_r : 4.0;
        auto f = [&](double s) { return m.eval(s) * std::pow(s, -p - 1.0); };
        // cut at eps where the almost-increasing bound makes the head negligible
        double eps = t;
        for (int k = 0; k < 4000; ++k) {
            eps *= 0.5;
            double head_bound = Cr * m.eval(t) * std::pow(t, -m.r) *
                                std::pow(eps, m.r - p) / (m.r - p);
            if (head_bound <= tol * denom * std::max(t, 1.0) * 1e-3) break;
        }
        out.lower = integrate_graded_left(f, eps, t, opt).value / denom;
    }
    if (!out.upper && !out.lower) {
        std::ostringstream os;
        os << "p=" << p << " admits neither tail for (q=" << m.q << ", r=" << m.r << ")";
        throw ParameterOutOfRange(os.str());
    }
    return out;
}

namespace {

ModulusOfContinuity fit_declared_constants(ModulusOfContinuity m) {
    ModulusOfContinuity probe = m;
    probe.C_q = probe.C_r = 0.0;
    RegularityReport rep = check_regularity(probe);
    m.C_q = std::max(1.0, rep.fitted_C_q) * 1.02;
    m.C_r = std::max(1.0, rep.fitted_C_r) * 1.02;
    return m;
}

} // namespace

ModulusOfContinuity power_modulus(int n) {
    if (n < 1) throw ParameterOutOfRange("power modulus needs n >= 1");
    ModulusOfContinuity m;
    m.eval = [n](double t) { return std::pow(t, n); };
    m.order_n = n;
    m.q = static_cast<double>(n);
    m.r = n - 0.5;
    m.C_q = 1.0;  // exact: omega(st)/(s^q omega(t)) = 1
    m.C_r = 1.0;
    m.label = "power:" + std::to_string(n);
    m.dini_analytic = false;  // int t^n t^(-n-1) dt = int dt/t diverges
    return m;
}

ModulusOfContinuity powerlog_modulus(int n, double s) {
    if (n < 1) throw ParameterOutOfRange("powerlog modulus needs n >= 1");
    if (s == 0.0) return power_modulus(n);
    ModulusOfContinuity m;
    // t^n log^s(1/t) is not monotone (s > 0) or not finite (s < 0) near t = 1;
    // capping the log below keeps the evaluator a genuine modulus while leaving
    // the t -> 0 regime, which is the one every estimate quotes, untouched.
    const double u_cap = s > 0.0 ? s / n : 1e-3;
    m.eval = [n, s, u_cap](double t) {
        double u = std::max(-std::log(t), u_cap);
        return std::pow(t, n) * std::pow(u, s);
    };
    m.order_n = n;
    m.q = static_cast<double>(n);
    m.r = n - 0.5;
    {
        std::ostringstream os;
        os << "powerlog:" << n << ":" << s;
        m.label = os.str();
    }
    m.dini_analytic = s < -1.0;  // int_0 u^s du at u = inf
    return fit_declared_constants(std::move(m));
}

ModulusOfContinuity make_modulus(const std::string& family, int n, double s) {
    if (family == "power") return power_modulus(n);
    if (family == "powerlog") return powerlog_modulus(n, s);
    throw ConfigError("unknown modulus family '" + family + "'");
}

ModulusOfContinuity parse_modulus(const std::string& spec) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : spec) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    try {
        if (parts.size() == 2) return make_modulus(parts[0], std::stoi(parts[1]));
        if (parts.size() == 3) {
            return make_modulus(parts[0], std::stoi(parts[1]), std::stod(parts[2]));
        }
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    throw ConfigError("cannot parse modulus spec '" + spec +
                      "' (want family:n or family:n:s)");
}

} // namespace zlab
