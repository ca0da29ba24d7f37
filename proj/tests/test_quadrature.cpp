#include <doctest.h>

#include <cmath>

#include "zlab/quadrature.hpp"

using namespace zlab;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("gauss rule integrates polynomials exactly") {
    for (int m : {2, 4, 8, 16}) {
        // x^(2m-1) has zero integral, x^(2m-2) is the last exact even power
        int p = 2 * m - 2;
        auto f = [p](double x) { return std::pow(x, p); };
        double got = gauss_on_interval(f, -1.0, 1.0, m);
        double want = 2.0 / (p + 1);
        CHECK(got == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("adaptive 1-D handles smooth and peaked integrands") {
    auto smooth = [](double x) { return std::exp(-x * x); };
    double got = integrate(smooth, 0.0, 1.0).value;
    CHECK(got == doctest::Approx(0.7468241328124270).epsilon(1e-11));

    auto peaked = [](double x) { return 1.0 / (1e-6 + x * x); };
    double want = std::atan(1.0 / 1e-3) / 1e-3 * 2.0;
    got = integrate(peaked, -1.0, 1.0, {1e-10, 0.0, 2'000'000}).value;
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("budget exhaustion raises QuadratureFailure") {
    auto nasty = [](double x) { return std::sin(1.0 / (x + 1e-15)) / (x + 1e-15); };
    QuadOptions opt;
    opt.max_evals = 200;
    CHECK_THROWS_AS(integrate(nasty, 0.0, 1.0, opt), QuadratureFailure);
}

TEST_CASE("graded panels resolve power singularities toward zero") {
    // int_a^1 t^(-1/2) dt = 2(1 - sqrt(a))
    double a = 1e-12;
    auto f = [](double t) { return 1.0 / std::sqrt(t); };
    double got = integrate_graded_left(f, a, 1.0).value;
    CHECK(got == doctest::Approx(2.0 * (1.0 - std::sqrt(a))).epsilon(1e-10));
}

TEST_CASE("tensor cube quadrature on smooth 2-D integrand") {
    Cube q(Vec(0.25, -0.5), 1.5);
    auto f = [](const Vec& p) { return std::sin(p[0]) * std::exp(p[1]); };
    // separable closed form
    auto F = [&](double a, double b) { return std::cos(a) - std::cos(b); };
    double want = F(q.low(0), q.high(0)) * (std::exp(q.high(1)) - std::exp(q.low(1)));
    CHECK(integrate_cube(f, q).value == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("adaptive cube quadrature handles kinks and indicators") {
    Cube q(Vec(0.0, 0.0), 1.0);
    auto kink = [](const Vec& p) { return std::abs(p[0]); };
    CHECK(integrate_cube_adaptive(kink, q, 1e-9).value ==
          doctest::Approx(0.25).epsilon(1e-8));

    auto indicator = [](const Vec& p) { return p[0] > 0.0 && p[1] > 0.0 ? 1.0 : 0.0; };
    CHECK(integrate_cube_adaptive(indicator, q, 1e-6, 1e-9).value ==
          doctest::Approx(0.25).epsilon(1e-5));
}

TEST_CASE("cube quadrature in d=1 and d=3") {
    Cube q1(Vec::scalar(0.5), 1.0);
    auto f1 = [](const Vec& p) { return p[0] * p[0]; };
    CHECK(integrate_cube(f1, q1).value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    Cube q3(Vec(0.0, 0.0, 0.0), 2.0);
    auto f3 = [](const Vec& p) { return p[0] * p[0] + p[1] * p[1] + p[2] * p[2]; };
    CHECK(integrate_cube(f3, q3).value == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_SUITE_END();
