#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zlab/quadrature.hpp"

namespace zlab {

// A modulus of continuity of order n: increasing on (0,inf), vanishing at 0,
// with omega(t)/t^q almost decreasing (q in [n, n+1)) and omega(t)/t^r almost
// increasing (r in (n-1, n)). Moduli are closures plus metadata; the declared
// constants C_q, C_r are the ones the regularity checker verifies.
struct ModulusOfContinuity {
    std::function<double(double)> eval;
    int order_n = 1;
    double q = 1.0;
    double r = 0.5;
    double C_q = 0.0;  // 0 means "not declared": the checker only fits
    double C_r = 0.0;
    std::string label;
    std::optional<bool> dini_analytic;  // set for built-ins

    double operator()(double t) const { return eval(t); }
};

struct RegularityGrid {
    double t_min = std::pow(2.0, -30);
    double t_max = 2.0;
    int t_count = 41;
    double s_min = std::pow(2.0, -20);
    double s_max = std::pow(2.0, 20);
    int s_count = 81;

    std::vector<double> t_samples() const;
    std::vector<double> s_samples() const;
};

struct RegularityReport {
    // (t1, t2) pairs with t1 < t2 and omega(t1) > omega(t2) (beyond roundoff)
    std::vector<std::pair<double, double>> monotonicity_violations;
    // (s, t) pairs where a *declared* constant is exceeded
    std::vector<std::pair<double, double>> almost_decreasing_violations;
    std::vector<std::pair<double, double>> almost_increasing_violations;
    double fitted_C_q = 0.0;  // smallest constants valid on the sample
    double fitted_C_r = 0.0;
    bool vanishes_at_zero = false;

    bool clean() const {
        return monotonicity_violations.empty() &&
               almost_decreasing_violations.empty() &&
               almost_increasing_violations.empty() && vanishes_at_zero;
    }
};

// Samples the Def-1 axioms on a geometric grid. Throws NonPositiveValue if
// the evaluator returns <= 0 anywhere on the sample.
RegularityReport check_regularity(const ModulusOfContinuity& m,
                                  const RegularityGrid& grid = {});

// xi(x) = int_x^1 omega(t) t^(-n-1) dt, 0 < x < 1.
double xi(const ModulusOfContinuity& m, double x, const QuadOptions& opt = {});

class DerivedModulus {
public:
    DerivedModulus(ModulusOfContinuity base, bool dini, QuadOptions opt);

    const ModulusOfContinuity& base() const { return base_; }
    bool dini_regular() const { return dini_regular_; }

    double xi_eval(double x) const;     // memoized quadrature
    double assoc_eval(double x) const;  // omega(x)/max{1, xi(x)} below 1

private:
    ModulusOfContinuity base_;
    bool dini_regular_;
    QuadOptions opt_;
    mutable std::shared_ptr<void> cache_;  // value memo, guarded internally
};

// Builds the associated modulus; Dini regularity is detected by
// xi(2^-40) <= 1e6 on top of the quadrature (and must match the analytic
// flag when the modulus carries one).
DerivedModulus associated(const ModulusOfContinuity& m, const QuadOptions& opt = {});

struct TailRatios {
    // (int_t^inf omega(s) s^(-p-1) ds) / (omega(t) t^-p), present iff p > q
    std::optional<double> upper;
    // (int_0^t omega(s) s^(-p-1) ds) / (omega(t) t^-p), present iff p < r
    std::optional<double> lower;
};

// Lemma-21 style tail ratios. Throws ParameterOutOfRange when neither side
// is admissible for the declared (q, r).
TailRatios tail_integral_bounds(const ModulusOfContinuity& m, double p, double t,
                                const QuadOptions& opt = {});

// Built-in family. power(n): t^n. powerlog(n, s): t^n log^s(1/t) with the
// log capped below at u_cap (s/n for s > 0, 1e-3 for s < 0) so that the
// evaluator stays increasing and finite up to and past t = 1.
ModulusOfContinuity power_modulus(int n);
ModulusOfContinuity powerlog_modulus(int n, double s);

// Config-facing constructor: family is "power" or "powerlog".
ModulusOfContinuity make_modulus(const std::string& family, int n, double s = 0.0);

// Parses "power:2" or "powerlog:1:-0.5".
ModulusOfContinuity parse_modulus(const std::string& spec);

} // namespace zlab
