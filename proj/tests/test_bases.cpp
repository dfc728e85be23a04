#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "amalg/bases.hpp"
#include "oracles.hpp"

using namespace amalg;

constexpr double kPi = std::numbers::pi;

namespace {

const BasisKind kAll[] = {BasisKind::IntervalDirichlet,   BasisKind::IntervalNeumann,    BasisKind::CircleCanonical,
                          BasisKind::CircleRandom,        BasisKind::SquareDirichlet,    BasisKind::DiskDirichlet,
                          BasisKind::QuarterDiskDirichlet, BasisKind::QuarterDiskNeumann, BasisKind::SphereZonal,
                          BasisKind::Hermite};

Basis l2(BasisKind k, std::size_t n) {
    return make_basis(k, n, Normalization::L2, k == BasisKind::CircleRandom ? std::optional<std::uint64_t>(3) : std::nullopt);
}

DomainPoint sample_point(Domain d) {
    switch (d) {
        case Domain::Interval: return pt::Interval{1.1};
        case Domain::Circle: return pt::Circle{2.2};
        case Domain::Square: return pt::Square{1.3, 0.4};
        case Domain::Disk: return pt::Disk{0.6, 2.0};
        case Domain::QuarterDisk: return pt::QuarterDisk{0.6, 0.7};
        case Domain::SphereZonal: return pt::SphereZonal{0.9};
        case Domain::Line: return pt::Line{-0.8};
    }
    return pt::Interval{0.0};
}

}  // namespace

TEST_CASE("every catalog basis is orthonormal in L2 mode") {
    for (auto kind : kAll) {
        const Basis b = l2(kind, 30);
        CHECK_MESSAGE(oracles::gram_error(b, 30) < 1e-8, to_string(kind));
    }
}

TEST_CASE("eigenvalues are nondecreasing and match closed forms") {
    for (auto kind : kAll) {
        const Basis b = l2(kind, 40);
        for (std::size_t k = 2; k <= 40; ++k) CHECK(b.eigenvalue(k) >= b.eigenvalue(k - 1));
    }
    const Basis sq = l2(BasisKind::SquareDirichlet, 10);
    CHECK(sq.eigenvalue(1) == 2.0);
    CHECK(sq.eigenvalue(2) == 5.0);
    CHECK(sq.eigenvalue(3) == 5.0);
    CHECK(sq.mode(2).freq == 1);  // (1,2) before (2,1)
    const Basis disk = l2(BasisKind::DiskDirichlet, 10);
    const double j01 = boost::math::cyl_bessel_j_zero(0.0, 1);
    CHECK(disk.eigenvalue(1) == doctest::Approx(j01 * j01).epsilon(1e-12));
    const double j11 = boost::math::cyl_bessel_j_zero(1.0, 1);
    CHECK(disk.eigenvalue(2) == doctest::Approx(j11 * j11).epsilon(1e-12));
    CHECK(disk.eigenvalue(3) == doctest::Approx(j11 * j11).epsilon(1e-12));
    const Basis h = l2(BasisKind::Hermite, 5);
    CHECK(h.eigenvalue(1) == 1.0);
    CHECK(h.eigenvalue(5) == 9.0);
    const Basis s = l2(BasisKind::SphereZonal, 3);
    CHECK(s.eigenvalue(1) == 2.0);
    CHECK(s.eigenvalue(3) == 12.0);
    const Basis c = l2(BasisKind::CircleCanonical, 4);
    CHECK(c.eigenvalue(1) == 1.0);
    CHECK(c.eigenvalue(2) == 1.0);
    CHECK(c.eigenvalue(3) == 4.0);
}

TEST_CASE("visit agrees with eval and values") {
    for (auto kind : kAll) {
        const Basis b = l2(kind, 25);
        const auto p = sample_point(b.domain());
        std::vector<double> v(25);
        b.values(p, v);
        b.visit(p, 25, [&](std::size_t k, double x) {
            CHECK(x == v[k - 1]);
            CHECK(x == b.eval(k, p));
        });
    }
}

TEST_CASE("raw and L2 differ by the stored norm") {
    for (auto kind : kAll) {
        const auto seed = kind == BasisKind::CircleRandom ? std::optional<std::uint64_t>(3) : std::nullopt;
        const Basis raw = make_basis(kind, 12, Normalization::Raw, seed);
        const Basis norm = make_basis(kind, 12, Normalization::L2, seed);
        const auto p = sample_point(raw.domain());
        for (std::size_t k = 1; k <= 12; ++k)
            CHECK(raw.eval(k, p) == doctest::Approx(norm.eval(k, p) * raw.mode(k).raw_norm).epsilon(1e-13));
    }
    const Basis raw = make_basis(BasisKind::IntervalDirichlet, 3, Normalization::Raw);
    CHECK(raw.eval(2, pt::Interval{0.3}) == doctest::Approx(std::sin(0.6)));
}

TEST_CASE("seed contract") {
    CHECK_THROWS_AS(make_basis(BasisKind::CircleRandom, 4, Normalization::Raw), std::invalid_argument);
    CHECK_THROWS_AS(make_basis(BasisKind::IntervalDirichlet, 4, Normalization::Raw, 1), std::invalid_argument);
    const Basis a = make_basis(BasisKind::CircleRandom, 20, Normalization::Raw, 9);
    const Basis b = make_basis(BasisKind::CircleRandom, 20, Normalization::Raw, 9);
    const Basis c = make_basis(BasisKind::CircleRandom, 20, Normalization::Raw, 10);
    CHECK(a.phases() == b.phases());
    CHECK(a.phases() != c.phases());
    CHECK(a.phases().size() == 10);
    CHECK(a.manifest().seed == std::optional<std::uint64_t>(9));
    // a longer catalog keeps the same leading phases
    const Basis longer = make_basis(BasisKind::CircleRandom, 40, Normalization::Raw, 9);
    for (std::size_t i = 0; i < 10; ++i) CHECK(longer.phases()[i] == a.phases()[i]);
}

TEST_CASE("index and point errors") {
    const Basis b = l2(BasisKind::IntervalDirichlet, 5);
    CHECK_THROWS_AS(b.eval(0, pt::Interval{1.0}), std::out_of_range);
    CHECK_THROWS_AS(b.eval(6, pt::Interval{1.0}), std::out_of_range);
    CHECK_THROWS(b.eval(1, pt::Circle{1.0}));
    CHECK_THROWS_AS(make_basis(BasisKind::DiskDirichlet, 100000, Normalization::L2), std::out_of_range);
}

TEST_CASE("negation flips selected eigenfunctions only") {
    const Basis b = l2(BasisKind::SphereZonal, 6);
    const Basis f = b.with_negated({true, false, true, false, false, false});
    const DomainPoint p = pt::SphereZonal{0.4};
    CHECK(f.eval(1, p) == -b.eval(1, p));
    CHECK(f.eval(2, p) == b.eval(2, p));
    CHECK(f.eval(3, p) == -b.eval(3, p));
}

TEST_CASE("names round-trip") {
    for (auto kind : kAll) CHECK(parse_basis_kind(to_string(kind)) == kind);
    CHECK(parse_basis_kind("interval") == BasisKind::IntervalDirichlet);
    CHECK(parse_basis_kind("circle") == BasisKind::CircleCanonical);
    CHECK(parse_normalization("RAW") == Normalization::Raw);
    CHECK(parse_normalization("l2") == Normalization::L2);
    CHECK_THROWS(parse_basis_kind("torus"));
}

TEST_CASE("volumes") {
    CHECK(l2(BasisKind::IntervalDirichlet, 1).volume() == doctest::Approx(kPi));
    CHECK(l2(BasisKind::CircleCanonical, 1).volume() == doctest::Approx(2 * kPi));
    CHECK(l2(BasisKind::SquareDirichlet, 1).volume() == doctest::Approx(kPi * kPi));
    CHECK(l2(BasisKind::DiskDirichlet, 1).volume() == doctest::Approx(kPi));
    CHECK(l2(BasisKind::QuarterDiskNeumann, 1).volume() == doctest::Approx(kPi / 4));
    CHECK(l2(BasisKind::SphereZonal, 1).volume() == doctest::Approx(2.0));
    CHECK(std::isinf(l2(BasisKind::Hermite, 1).volume()));
}

TEST_CASE("random waves are reproducible and unit-variance on average") {
    const auto w1 = random_wave(2, 400.0, 64, 5, kPi * kPi);
    const auto w2 = random_wave(2, 400.0, 64, 5, kPi * kPi);
    const DomainPoint p = pt::Square{1.0, 2.0};
    CHECK(eval_wave(w1, p) == eval_wave(w2, p));
    // E f^2 = 1/vol at every point, so the average over seeds approaches it
    double mean = 0.0;
    const int trials = 4000;
    for (int s = 0; s < trials; ++s) {
        const double v = eval_wave(random_wave(1, 100.0, 16, s, 2.0), pt::Interval{0.5});
        mean += v * v;
    }
    CHECK(mean / trials == doctest::Approx(0.5).epsilon(0.05));
    CHECK_THROWS(random_wave(3, 1.0, 4, 0));
}
