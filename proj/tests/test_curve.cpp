#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <fmnar/curve.hpp>
#include <fmnar/rng.hpp>

using namespace fmnar;

TEST_CASE("Curve requires at least two grid points") {
    CHECK_THROWS_AS(Curve(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(Curve(std::vector<double>{1.0}), std::invalid_argument);
    CHECK_NOTHROW(Curve(std::vector<double>{1.0, 2.0}));
}

TEST_CASE("grid points span [0, 1] with equal spacing") {
    const Curve x(std::vector<double>{0.0, 0.0, 0.0, 0.0, 0.0});
    CHECK(x.grid_point(0) == 0.0);
    CHECK(x.grid_point(4) == 1.0);
    CHECK(x.grid_point(1) == Catch::Approx(0.25).margin(0.0));
}

TEST_CASE("Curve::sample evaluates the function at the grid points") {
    auto f = [](double t) { return 3.0 * t - 1.0; };
    const Curve x = Curve::sample(f, 11);
    REQUIRE(x.grid_count() == 11);
    for (std::size_t j = 0; j < 11; ++j)
        CHECK(x[j] == f(static_cast<double>(j) / 10.0));
}

TEST_CASE("trapezoid is exact on constants and dyadic-grid linears") {
    CHECK(trapezoid(std::vector<double>(17, 1.0)) == 1.0);
    // t on a 5-point grid: all values and partial sums are dyadic, so the
    // quadrature result 1/2 is exact
    CHECK(trapezoid({0.0, 0.25, 0.5, 0.75, 1.0}) == 0.5);
    CHECK(trapezoid(Curve::sample([](double t) { return t; }, 101).values()) ==
          Catch::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("trapezoid of t^2 carries the known quadrature bias exactly") {
    // with n intervals the composite trapezoid rule gives 1/3 + 1/(6 n^2)
    const Curve x = Curve::sample([](double t) { return t * t; }, 501);
    CHECK(trapezoid(x.values()) ==
          Catch::Approx(0.33333399999999996).epsilon(1e-14));
}

TEST_CASE("trapezoid error decays at second order in the grid spacing") {
    auto f = [](double t) { return std::sin(3.14159265358979323846 * t); };
    const double exact = 2.0 / 3.14159265358979323846;
    const double e1 =
        std::fabs(trapezoid(Curve::sample(f, 11).values()) - exact);
    const double e2 =
        std::fabs(trapezoid(Curve::sample(f, 21).values()) - exact);
    // doubling the interval count must shrink the error ~4x
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
}

TEST_CASE("squared_integral matches the analytic value of a quadratic curve") {
    // x(t) = 5 (t - 1/2)^2 + 1: int x^2 = 25/80 + 10/12 + 1
    const Curve x = detail::quadratic_curve(5.0, 1.0, 500);
    CHECK(squared_integral(x) ==
          Catch::Approx(2.1458333333333335).margin(5e-5));
}

TEST_CASE("l2_distance of constant curves is the level difference, exactly") {
    const Curve a(std::vector<double>(21, 2.0));
    const Curve b(std::vector<double>(21, 5.0));
    CHECK(l2_distance(a, b) == 3.0);
    CHECK(l2_distance(b, a) == 3.0);
    CHECK(l2_distance(a, a) == 0.0);
}

TEST_CASE("l2_distance rejects mismatched grids") {
    const Curve a(std::vector<double>(21, 0.0));
    const Curve b(std::vector<double>(22, 0.0));
    CHECK_THROWS_AS(l2_distance(a, b), GridMismatchError);
}

TEST_CASE("l2_distance matches a hand quadrature") {
    // x - y = t on a 5-point grid: int t^2 = 0.34375 by trapezoid (n = 4:
    // 1/3 + 1/96), distance = sqrt of that
    const Curve x = Curve::sample([](double t) { return 2.0 + t; }, 5);
    const Curve y = Curve::sample([](double) { return 2.0; }, 5);
    CHECK(l2_distance(x, y) ==
          Catch::Approx(std::sqrt(1.0 / 3.0 + 1.0 / 96.0)).epsilon(1e-15));
}

TEST_CASE("class generators consume exactly their two documented draws") {
    CurveModelParams p;
    p.grid_count = 31;

    Rng a(99), b(99);
    const Curve c1 = generate_class1(a, p);
    const double A = b.gaussian(p.a_mean, p.a_sd);
    const double B = b.gaussian(p.b_mean, p.b_sd);
    const Curve r1 = detail::quadratic_curve(A, B, p.grid_count);
    for (std::size_t j = 0; j < c1.grid_count(); ++j) CHECK(c1[j] == r1[j]);
    CHECK(a.random() == b.random()); // streams still aligned

    Rng c(55), d(55);
    const Curve c0 = generate_class0(c, p);
    const double C = d.uniform(p.c_lo, p.c_hi);
    const double D = d.uniform(p.d_lo, p.d_hi);
    const Curve r0 = detail::quadratic_curve(C, D, p.grid_count);
    for (std::size_t j = 0; j < c0.grid_count(); ++j) CHECK(c0[j] == r0[j]);
    CHECK(c.random() == d.random());
}

TEST_CASE("class-1 curves have the documented moments at t = 1/2 and t = 0") {
    CurveModelParams p;
    p.grid_count = 3; // t = 0, 1/2, 1 — enough for the checks
    Rng rng(2024);
    const int n = 20000;
    double mid_sum = 0.0, mid_sumsq = 0.0, left_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const Curve x = generate_class1(rng, p);
        mid_sum += x[1];
        mid_sumsq += x[1] * x[1];
        left_sum += x[0];
    }
    // x(1/2) = B ~ N(1, 0.5); x(0) = A/4 + B with mean 5/4 + 1
    const double mid_mean = mid_sum / n;
    const double mid_var = mid_sumsq / n - mid_mean * mid_mean;
    CHECK(std::fabs(mid_mean - 1.0) < 3.0 * std::sqrt(0.5 / n));
    CHECK(mid_var > 0.45);
    CHECK(mid_var < 0.55);
    const double left_se = std::sqrt((4.0 / 16.0 + 0.5) / n);
    CHECK(std::fabs(left_sum / n - 2.25) < 3.0 * left_se);
}

TEST_CASE("class-0 curves have the documented moments at t = 1/2 and t = 0") {
    CurveModelParams p;
    p.grid_count = 3;
    Rng rng(4048);
    const int n = 20000;
    double mid_sum = 0.0, left_sum = 0.0;
    double mid_lo = 1e300, mid_hi = -1e300;
    for (int i = 0; i < n; ++i) {
        const Curve x = generate_class0(rng, p);
        mid_sum += x[1];
        left_sum += x[0];
        mid_lo = std::min(mid_lo, x[1]);
        mid_hi = std::max(mid_hi, x[1]);
    }
    // x(1/2) = D ~ U(0, 2.1); x(0) = C/4 + D with mean 0.5 + 1.05
    CHECK(std::fabs(mid_sum / n - 1.05) <
          3.0 * std::sqrt(2.1 * 2.1 / 12.0 / n));
    CHECK(mid_lo >= 0.0);
    CHECK(mid_hi < 2.1);
    const double left_se = std::sqrt((16.0 / 12.0 / 16.0 + 2.1 * 2.1 / 12.0) / n);
    CHECK(std::fabs(left_sum / n - 1.55) < 3.0 * left_se);
}

TEST_CASE("custom level spread is honored by the class-1 generator") {
    CurveModelParams p;
    p.grid_count = 3;
    p.b_sd = 0.05;
    Rng rng(31);
    const int n = 5000;
    double sumsq = 0.0, sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const Curve x = generate_class1(rng, p);
        sum += x[1];
        sumsq += x[1] * x[1];
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(var < 0.01); // sd 0.05 -> var 0.0025, far below the default 0.5
}
