#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "amalg/amalg.hpp"

using namespace amalg;

constexpr double kPi = std::numbers::pi;

TEST_CASE("sign vectors use exact zero comparison") {
    const Basis circle = make_basis(BasisKind::CircleCanonical, 10, Normalization::Raw);
    const auto s = sign_vector(circle, 10, pt::Circle{0.0});
    CHECK(s.zero_count == 5);  // sin(0) vanishes exactly
    for (std::size_t k = 0; k < 10; k += 2) CHECK(s.signs[k] == 0);
    for (std::size_t k = 1; k < 10; k += 2) CHECK(s.signs[k] == 1);

    const Basis interval = make_basis(BasisKind::IntervalDirichlet, 8, Normalization::L2);
    CHECK(sign_vector(interval, 8, pt::Interval{0.0}).zero_count == 8);
    CHECK(amalg_diag(interval, 8, pt::Interval{0.0}) == 0.0);
}

TEST_CASE("diagonal of the signed sum is the sum of absolute values") {
    const Basis b = make_basis(BasisKind::DiskDirichlet, 40, Normalization::L2);
    const DomainPoint x = pt::Disk{0.5, 0.0};
    CHECK(amalg_eval(b, 40, x, x) == doctest::Approx(amalg_diag(b, 40, x)).epsilon(1e-14));
    std::vector<double> v(40);
    b.values(x, v);
    double proj = 0.0;
    for (double a : v) proj += a * a;
    CHECK(projector_eval(b, 40, x, x) == doctest::Approx(proj).epsilon(1e-14));
}

TEST_CASE("hand-computed interval kernel") {
    const Basis b = make_basis(BasisKind::IntervalDirichlet, 3, Normalization::Raw);
    // signs at x = 2: sin 2 > 0, sin 4 < 0, sin 6 < 0
    const double y = 0.7;
    CHECK(amalg_eval(b, 3, pt::Interval{2.0}, pt::Interval{y}) ==
          doctest::Approx(std::sin(y) - std::sin(2 * y) - std::sin(3 * y)));
}

TEST_CASE("mass identity on several bases") {
    struct Case {
        BasisKind kind;
        DomainPoint x;
    };
    const Case cases[] = {{BasisKind::IntervalDirichlet, pt::Interval{1.0}},
                          {BasisKind::CircleCanonical, pt::Circle{0.0}},
                          {BasisKind::SquareDirichlet, pt::Square{1.3, 1.3}},
                          {BasisKind::SphereZonal, pt::SphereZonal{0.0}},
                          {BasisKind::Hermite, pt::Line{0.0}}};
    for (const auto& c : cases) {
        const Basis b = make_basis(c.kind, 30, Normalization::L2);
        const auto s = sign_vector(b, 30, c.x);
        CHECK_MESSAGE(std::abs(l2_mass(b, 30, c.x) - double(30 - s.zero_count)) < 1e-6 * 30, to_string(c.kind));
    }
}

TEST_CASE("the kernel is invariant under flipping eigenfunction signs") {
    const Basis b = make_basis(BasisKind::QuarterDiskNeumann, 20, Normalization::L2);
    std::vector<bool> neg(20);
    for (std::size_t k = 0; k < 20; ++k) neg[k] = k % 3 == 1;
    const Basis f = b.with_negated(neg);
    const DomainPoint x = pt::QuarterDisk{0.4, 0.3}, y = pt::QuarterDisk{0.8, 1.2};
    CHECK(amalg_eval(b, 20, x, y) == doctest::Approx(amalg_eval(f, 20, x, y)).epsilon(1e-14));
}

TEST_CASE("sign-flip variant") {
    const Basis b = make_basis(BasisKind::IntervalDirichlet, 9, Normalization::L2);
    const DomainPoint x = pt::Interval{1.0};
    const std::vector<int> flips = {1, -1, 0};
    const auto star = amalg_star(b, 9, x, flips);
    const auto& perm = star.permutation();
    for (std::size_t i = 1; i < perm.size(); ++i)
        CHECK(std::abs(b.eval(perm[i - 1], x)) <= std::abs(b.eval(perm[i], x)));
    CHECK(star.coefficients()[perm[0] - 1] == 1.0);
    CHECK(star.coefficients()[perm[1] - 1] == -1.0);
    CHECK(star.coefficients()[perm[2] - 1] == 0.0);
    const std::vector<int> identity_flips = {0, 0, 0};
    // all-zero flips drop exactly three terms
    const auto dropped = amalg_star(b, 9, x, identity_flips);
    double nonzero = 0.0;
    for (double c : dropped.coefficients()) nonzero += c != 0.0;
    CHECK(nonzero == 6.0);
    const std::vector<int> bad_len = {1};
    const std::vector<int> bad_val = {2, 0, 0};
    CHECK_THROWS_AS(amalg_star(b, 9, x, bad_len), std::invalid_argument);
    CHECK_THROWS_AS(amalg_star(b, 9, x, bad_val), std::invalid_argument);
}

TEST_CASE("diagonal bounds are ordered") {
    for (auto kind : {BasisKind::IntervalDirichlet, BasisKind::SquareDirichlet, BasisKind::DiskDirichlet,
                      BasisKind::SphereZonal}) {
        const Basis b = make_basis(kind, 60, Normalization::L2);
        const auto grid = default_grid(b, 60);
        const auto r = diag_bounds_report(b, 60, grid[grid.size() / 3]);
        CHECK(r.easylower <= r.value + 1e-12);
        CHECK(r.value <= r.upper + 1e-12);
        CHECK(r.lower > 0.0);
    }
    const Basis raw = make_basis(BasisKind::IntervalDirichlet, 5, Normalization::Raw);
    CHECK_THROWS(diag_bounds_report(raw, 5, pt::Interval{1.0}));
}

TEST_CASE("L1 partial sums of the sine basis") {
    const Basis b = make_basis(BasisKind::IntervalDirichlet, 20, Normalization::L2);
    const auto sums = l1_partial_sums(b, 20);
    // ||sin kx||_1 = 2 on [0, pi]; kinks at the nodes limit the rule to ~1e-5
    const double each = 2.0 / std::sqrt(kPi / 2);
    for (std::size_t k = 0; k < 20; ++k) CHECK(sums[k] == doctest::Approx(each * (k + 1)).epsilon(1e-4));
}

TEST_CASE("fields are independent of the thread split") {
    const Basis b = make_basis(BasisKind::SquareDirichlet, 100, Normalization::L2);
    const auto grid = default_grid(b, 100);
    setenv("AMALG_THREADS", "1", 1);
    const auto a = amalg_field(b, 100, pt::Square{1.3, 1.3}, grid);
    setenv("AMALG_THREADS", "5", 1);
    const auto c = amalg_field(b, 100, pt::Square{1.3, 1.3}, grid);
    unsetenv("AMALG_THREADS");
    CHECK(a.values == c.values);
    CHECK(sign_digest(a.signs) == sign_digest(c.signs));
    CHECK(sign_digest(a.signs).size() == 64);
}

TEST_CASE("grids") {
    const Basis b = make_basis(BasisKind::CircleCanonical, 100, Normalization::L2);
    const auto g = default_grid(b, 100);
    CHECK(g.size() >= 10 * 50);
    const auto u = uniform_grid(b, 100, 17);
    CHECK(u.size() == 17);
    const Basis d = make_basis(BasisKind::DiskDirichlet, 10, Normalization::L2);
    CHECK(uniform_grid(d, 10, 9).size() == 81);
}
