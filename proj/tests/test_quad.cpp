#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "amalg/quad.hpp"

using namespace amalg;

constexpr double kPi = std::numbers::pi;

TEST_CASE("gauss-legendre tables") {
    const auto& g = gauss_legendre(16);
    double w = 0.0, x30 = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
        w += g.w[i];
        x30 += g.w[i] * std::pow(g.x[i], 30);
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(x30 == doctest::Approx(2.0 / 31.0).epsilon(1e-14));
    CHECK(&gauss_legendre(16) == &g);
}

TEST_CASE("rules integrate constants to the domain volume") {
    const auto one = [](const DomainPoint&) { return 1.0; };
    CHECK(integrate(make_rule(Domain::Interval, 1), one) == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(integrate(make_rule(Domain::Circle, 1), one) == doctest::Approx(2 * kPi).epsilon(1e-14));
    CHECK(integrate(make_rule(Domain::Square, 1), one) == doctest::Approx(kPi * kPi).epsilon(1e-13));
    CHECK(integrate(make_rule(Domain::Disk, 1), one) == doctest::Approx(kPi).epsilon(1e-13));
    CHECK(integrate(make_rule(Domain::QuarterDisk, 1), one) == doctest::Approx(kPi / 4).epsilon(1e-13));
    CHECK(integrate(make_rule(Domain::SphereZonal, 1), one) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("oscillatory integrands at the resolved wavenumber") {
    const auto rule = make_rule(Domain::Interval, 1, 400.0);
    const double v = integrate(rule, [](const DomainPoint& p) {
        const double x = std::get<pt::Interval>(p).x;
        return std::sin(200 * x) * std::sin(200 * x);
    });
    CHECK(v == doctest::Approx(kPi / 2).epsilon(1e-13));
    // restricted range
    RuleSpec spec{Domain::Interval, 1, 10.0, 0.5, 1.5};
    CHECK(integrate(make_rule(spec), [](const DomainPoint& p) { return std::get<pt::Interval>(p).x; }) ==
          doctest::Approx(1.0).epsilon(1e-14));
    // Gaussian on the line
    const double g = integrate(make_rule(Domain::Line, 1, 3.0), [](const DomainPoint& p) {
        const double x = std::get<pt::Line>(p).x;
        return std::exp(-x * x);
    });
    CHECK(g == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
}

TEST_CASE("checked integration detects under-resolution") {
    const RuleSpec spec{Domain::Interval, 1, 1.0};
    const auto f = [](const DomainPoint& p) {
        const double x = std::get<pt::Interval>(p).x;
        return std::cos(3000 * x) * std::exp(x);
    };
    CHECK_THROWS_AS(integrate_checked(spec, f, 1e-10), QuadratureError);
    const auto ok = integrate_checked(RuleSpec{Domain::Interval, 1, 5.0},
                                      [](const DomainPoint& p) { return std::cos(std::get<pt::Interval>(p).x); }, 1e-12);
    CHECK(ok.order == 2);
    CHECK(std::abs(ok.value) < 1e-13);
}

TEST_CASE("reduction does not depend on the thread count") {
    const auto rule = make_rule(Domain::Square, 1, 60.0);
    const auto f = [](const DomainPoint& p) {
        const auto& q = std::get<pt::Square>(p);
        return std::sin(37 * q.x) * std::cos(11 * q.y) + q.x;
    };
    setenv("AMALG_THREADS", "1", 1);
    const double serial = integrate(rule, f);
    setenv("AMALG_THREADS", "7", 1);
    const double parallel = integrate(rule, f);
    unsetenv("AMALG_THREADS");
    CHECK(serial == parallel);
}
