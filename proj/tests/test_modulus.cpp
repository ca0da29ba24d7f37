#include <doctest.h>

#include <cmath>
#include <vector>

#include "zlab/modulus.hpp"

using namespace zlab;

TEST_SUITE_BEGIN("modulus");

namespace {

// independent brute-force scan of sup omega(st) / (s^p omega(t))
double brute_force_constant(const std::function<double(double)>& w, double p,
                            bool dilating, double t_lo, double t_hi, double s_lo,
                            double s_hi, int steps = 200) {
    double best = 0.0;
    for (int i = 0; i < steps; ++i) {
        double t = t_lo * std::pow(t_hi / t_lo, i / (steps - 1.0));
        for (int j = 0; j < steps; ++j) {
            double s = s_lo * std::pow(s_hi / s_lo, j / (steps - 1.0));
            if (dilating != (s > 1.0)) continue;
            best = std::max(best, w(s * t) / (std::pow(s, p) * w(t)));
        }
    }
    return best;
}

} // namespace

TEST_CASE("pure power modulus has exact constants") {
    ModulusOfContinuity m = power_modulus(2);
    CHECK(m.q == 2.0);
    RegularityGrid grid;
    RegularityReport rep = check_regularity(m, grid);
    CHECK(rep.clean());
    CHECK(rep.fitted_C_q == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.fitted_C_r == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("t log(1/t) passes with (q, r) = (1.5, 0.5) on (0, e^-2)") {
    auto w = [](double t) { return t * std::log(1.0 / t); };
    // keep every sampled product st inside (0, e^-2)
    RegularityGrid grid;
    grid.t_min = 1e-6;
    grid.t_max = std::exp(-2.0) / 4.0;
    grid.s_min = std::pow(2.0, -10);
    grid.s_max = 4.0;
    grid.s_count = 41;

    double cq = brute_force_constant(w, 1.5, true, grid.t_min, grid.t_max,
                                     grid.s_min, grid.s_max);
    double cr = brute_force_constant(w, 0.5, false, grid.t_min, grid.t_max,
                                     grid.s_min, grid.s_max);
    REQUIRE(std::isfinite(cq));
    REQUIRE(std::isfinite(cr));

    ModulusOfContinuity m;
    m.eval = w;
    m.order_n = 1;
    m.q = 1.5;
    m.r = 0.5;
    m.C_q = cq * 1.05;
    m.C_r = cr * 1.05;
    m.label = "tlog";
    RegularityReport rep = check_regularity(m, grid);
    CHECK(rep.clean());
    CHECK(rep.fitted_C_q <= cq * 1.02);
    CHECK(rep.fitted_C_r <= cr * 1.02);
    CHECK(rep.fitted_C_q >= cq / 1.2);
}

TEST_CASE("t^3 declared with order 1 is flagged") {
    ModulusOfContinuity m;
    m.eval = [](double t) { return t * t * t; };
    m.order_n = 1;
    m.q = 1.5;
    m.r = 0.5;
    m.C_q = 10.0;
    m.C_r = 10.0;
    m.label = "t3-as-order1";
    RegularityReport rep = check_regularity(m);
    CHECK(!rep.almost_decreasing_violations.empty());
    CHECK(!rep.clean());
    // the brute scan agrees: the fitted constant is astronomically large
    double cq = brute_force_constant(m.eval, 1.5, true, 1e-6, 1.0, 1.0,
                                     std::pow(2.0, 20));
    CHECK(rep.fitted_C_q > 1e6);
    CHECK(cq > 1e6);
}

TEST_CASE("non-positive evaluator raises") {
    ModulusOfContinuity m;
    m.eval = [](double t) { return t - 0.5; };
    m.order_n = 1;
    m.label = "bad";
    CHECK_THROWS_AS(check_regularity(m), NonPositiveValue);
}

TEST_CASE("xi closed forms") {
    // omega = t^2, n = 2: integrand 1/t, xi(x) = log(1/x)
    ModulusOfContinuity m2 = power_modulus(2);
    CHECK(xi(m2, 0.25) == doctest::Approx(std::log(4.0)).epsilon(1e-9));

    // x -> 1-: empty interval
    CHECK(xi(m2, 1.0 - 1e-12) == doctest::Approx(0.0).epsilon(1e-9));

    // omega = t log(1/t), n = 1: xi(x) = log^2(1/x)/2
    ModulusOfContinuity mlog;
    mlog.eval = [](double t) { return t * std::log(1.0 / t); };
    mlog.order_n = 1;
    mlog.label = "tlog-pure";
    double want = 0.5 * std::pow(std::log(10.0), 2.0);
    CHECK(xi(mlog, 0.1) == doctest::Approx(want).epsilon(1e-9));
    CHECK(want == doctest::Approx(2.650949).epsilon(1e-6));
}

TEST_CASE("xi is decreasing and additive") {
    ModulusOfContinuity m = powerlog_modulus(1, 1.0);
    double prev = -1.0;
    for (int k = 20; k >= 2; --k) {
        double v = xi(m, std::pow(2.0, -k));
        if (prev >= 0.0) CHECK(v < prev);
        prev = v;
    }
    // xi(x') = xi(x) + int_{x'}^{x} for x' < x
    double x1 = 0.01, x2 = 0.2;
    auto f = [&](double t) { return m.eval(t) * std::pow(t, -2.0); };
    double mid = integrate_graded_left(f, x1, x2).value;
    CHECK(xi(m, x1) == doctest::Approx(xi(m, x2) + mid).epsilon(1e-8));
}

TEST_CASE("associated modulus of t^n matches the closed form") {
    for (int n : {1, 2, 3}) {
        DerivedModulus dm = associated(power_modulus(n));
        CHECK(!dm.dini_regular());
        for (int k = 1; k <= 30; ++k) {
            double x = std::pow(2.0, -k);
            double want = std::pow(x, n) / std::max(1.0, std::log(1.0 / x));
            CHECK(dm.assoc_eval(x) == doctest::Approx(want).epsilon(1e-8));
        }
    }
}

TEST_CASE("associated modulus equals the base at and beyond 1") {
    DerivedModulus dm = associated(powerlog_modulus(1, 1.0));
    for (double t : {1.0, 1.5, 3.0}) {
        CHECK(dm.assoc_eval(t) == doctest::Approx(dm.base().eval(t)).epsilon(1e-14));
    }
    for (double t : {0.01, 0.2, 0.9}) {
        CHECK(dm.assoc_eval(t) <= dm.base().eval(t) * (1.0 + 1e-12));
    }
}

TEST_CASE("powerlog collapse: assoc ratio tends to s+1") {
    for (double s : {-0.5, 1.0, 2.0}) {
        DerivedModulus dm = associated(powerlog_modulus(1, s));
        double x = std::pow(2.0, -20);
        double ratio = dm.assoc_eval(x) * std::log(1.0 / x) / x;
        CHECK(ratio == doctest::Approx(s + 1.0).epsilon(0.02));
    }
}

TEST_CASE("dini regularity detection") {
    // t^2 log^-2(1/t) with n = 1: integral of log^-2 converges
    ModulusOfContinuity m;
    m.eval = [](double t) {
        double u = std::max(std::log(1.0 / t), 0.2);
        return t * t / (u * u);
    };
    m.order_n = 1;
    m.label = "t2logm2-as-n1";
    DerivedModulus dm = associated(m);
    CHECK(dm.dini_regular());
    // oracle at doubled precision on a geometric grid: values converge
    QuadOptions tight;
    tight.rel_tol = 1e-12;
    tight.max_evals = 4'000'000;
    double v30 = xi(m, std::pow(2.0, -30), tight);
    double v40 = xi(m, std::pow(2.0, -40), tight);
    CHECK(v40 - v30 < 0.05 * v30);

    // built-ins carry the analytic flag and the detector matches it
    for (auto& mm : {power_modulus(1), power_modulus(2), powerlog_modulus(1, 1.0)}) {
        CHECK(associated(mm).dini_regular() == *mm.dini_analytic);
    }
    ModulusOfContinuity dini = powerlog_modulus(2, -2.0);
    CHECK(*dini.dini_analytic);
    CHECK(associated(dini).dini_regular());
}

TEST_CASE("associated modulus passes the monotonicity probe") {
    for (auto& m : {power_modulus(1), powerlog_modulus(1, 1.0),
                    powerlog_modulus(1, -0.5), powerlog_modulus(2, -2.0)}) {
        DerivedModulus dm = associated(m);
        double prev = 0.0;
        for (int k = 30; k >= -2; --k) {
            double t = std::pow(2.0, -k / 2.0);
            double v = dm.assoc_eval(t);
            CHECK(v >= prev * (1.0 - 1e-10));
            prev = v;
        }
    }
}

TEST_CASE("tail integral ratios against closed forms") {
    // omega = t, p = 2: int_t^inf s^-2 ds = 1/t, denom = 1/t -> ratio 1
    ModulusOfContinuity m1 = power_modulus(1);
    TailRatios r = tail_integral_bounds(m1, 2.0, 0.5);
    REQUIRE(r.upper.has_value());
    CHECK(!r.lower.has_value());
    CHECK(*r.upper == doctest::Approx(1.0).epsilon(1e-8));

    // omega = t^2 (r = 1.5): p = 0 gives int_0^t s ds / t^2 = 1/2,
    // p = 1 gives int_0^t 1 ds / t = 1
    ModulusOfContinuity m2 = power_modulus(2);
    TailRatios r0 = tail_integral_bounds(m2, 0.0, 0.7);
    REQUIRE(r0.lower.has_value());
    CHECK(*r0.lower == doctest::Approx(0.5).epsilon(1e-8));
    TailRatios r1 = tail_integral_bounds(m2, 1.0, 0.7);
    REQUIRE(r1.lower.has_value());
    CHECK(*r1.lower == doctest::Approx(1.0).epsilon(1e-8));

    // Dini-regular omega: ratios stay bounded on a grid of t -> 0
    ModulusOfContinuity md = powerlog_modulus(1, -2.0);
    double worst = 0.0;
    for (int k = 2; k <= 20; k += 3) {
        TailRatios rr = tail_integral_bounds(md, 0.4, std::pow(2.0, -k));
        REQUIRE(rr.lower.has_value());
        worst = std::max(worst, *rr.lower);
    }
    CHECK(worst < 50.0);

    // p admitting neither side
    CHECK_THROWS_AS(tail_integral_bounds(m2, 1.75, 0.5), ParameterOutOfRange);
}

TEST_CASE("modulus spec parsing") {
    CHECK(parse_modulus("power:2").label == "power:2");
    CHECK(parse_modulus("powerlog:1:-0.5").order_n == 1);
    CHECK_THROWS_AS(parse_modulus("power"), ConfigError);
    CHECK_THROWS_AS(parse_modulus("exotic:1"), ConfigError);
    CHECK_THROWS_AS(parse_modulus("power:x"), ConfigError);
}

TEST_SUITE_END();
