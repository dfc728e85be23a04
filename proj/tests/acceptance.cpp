// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "amalg/amalg.hpp"
#include "amalg/graphlap.hpp"
#include "amalg/heat.hpp"
#include "amalg/quad.hpp"
#include "amalg/spooky.hpp"
#include "oracles.hpp"

using namespace amalg;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
    bool pass = true;
    std::string detail;
};

class Report {
public:
    void note(bool ok, const std::string& what) {
        if (ok) return;
        verdict_.pass = false;
        info(what);
    }
    void info(const std::string& what) { verdict_.detail += (verdict_.detail.empty() ? "" : "; ") + what; }
    Verdict take() { return std::move(verdict_); }

private:
    Verdict verdict_;
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

Basis l2(BasisKind kind, std::size_t n) {
    return make_basis(kind, n, Normalization::L2,
                      kind == BasisKind::CircleRandom ? std::optional<std::uint64_t>(1) : std::nullopt);
}

// ---------------------------------------------------------------------------

Verdict circle_constant(double& limit) {
    limit = 1.0;
    Report r;
    double worst = 0.0;
    for (std::size_t n : {3u, 30u, 300u, 3000u, 30000u}) worst = std::max(worst, std::abs(verify_prop4(n) + n / 3.0));
    r.note(worst <= 2.0, "over the O(1) window");
    r.info("max |offset| " + fmt(worst));
    return r.take();
}

Verdict interval_limits(double& limit) {
    limit = 10.0;
    Report r;
    const auto p = verify_prop6(1.0, 100000);
    r.note(std::abs(p.diag_ratio - 2 / kPi) < 0.02, "diag ratio " + fmt(p.diag_ratio));
    r.note(std::abs(p.spooky_ratio - 2 / (3 * kPi)) < 0.02, "3x ratio " + fmt(p.spooky_ratio));
    r.info("diag " + fmt(p.diag_ratio) + ", 3x " + fmt(p.spooky_ratio));
    return r.take();
}

Verdict near_diagonal(double& limit) {
    limit = 30.0;
    Report r;
    const auto p = verify_prop3(10000);
    r.note(std::abs(p.ratio - 1.308) <= 0.01, "ratio " + fmt(p.ratio));
    r.note(std::abs(p.c_opt - 1.175) <= 0.01, "c " + fmt(p.c_opt));
    r.info("ratio " + fmt(p.ratio) + " at c " + fmt(p.c_opt));
    return r.take();
}

Verdict random_circle(double& limit) {
    limit = 60.0;
    Report r;
    const auto p = verify_prop5(250, 200, 0);
    const double scaled = p.mean_diag * kPi / (4.0 * 250);
    r.note(std::abs(scaled - 1.0) < 0.02, "scaled diagonal " + fmt(scaled));
    r.note(p.sup_bound_rate >= 0.95, "sup bound rate " + fmt(p.sup_bound_rate));
    r.info("scaled diagonal " + fmt(scaled) + ", sup rate " + fmt(p.sup_bound_rate));
    return r.take();
}

Verdict orthonormality(double& limit) {
    limit = 60.0;
    Report r;
    double worst = 0.0;
    for (auto kind : {BasisKind::IntervalDirichlet, BasisKind::IntervalNeumann, BasisKind::CircleCanonical,
                      BasisKind::CircleRandom, BasisKind::SquareDirichlet, BasisKind::DiskDirichlet,
                      BasisKind::QuarterDiskDirichlet, BasisKind::QuarterDiskNeumann, BasisKind::SphereZonal,
                      BasisKind::Hermite}) {
        const double e = oracles::gram_error(l2(kind, 50), 50);
        worst = std::max(worst, e);
        r.note(e < 1e-8, to_string(kind) + " " + fmt(e));
    }
    r.info("max Gram deviation " + fmt(worst));
    return r.take();
}

Verdict mass_identity(double& limit) {
    limit = 0.0;
    Report r;
    struct Case {
        BasisKind kind;
        std::array<DomainPoint, 3> points;
    };
    const Case cases[] = {
        {BasisKind::IntervalDirichlet, {pt::Interval{1.0}, pt::Interval{kPi / 2}, pt::Interval{2.7}}},
        {BasisKind::CircleCanonical, {pt::Circle{0.0}, pt::Circle{2 * kPi / 3}, pt::Circle{4.0}}},
        {BasisKind::SquareDirichlet, {pt::Square{1.3, 1.3}, pt::Square{kPi / 2, kPi / 2}, pt::Square{0.4, 2.2}}},
        {BasisKind::DiskDirichlet, {pt::Disk{0.0, 0.0}, pt::Disk{0.5, 1.0}, pt::Disk{0.9, 4.0}}},
        {BasisKind::SphereZonal, {pt::SphereZonal{0.0}, pt::SphereZonal{kPi / 2}, pt::SphereZonal{1.1}}}};
    double worst = 0.0, worst_order = 0.0;
    for (const auto& c : cases)
        for (std::size_t n : {20u, 50u}) {
            const Basis b = l2(c.kind, n);
            for (const auto& x : c.points) {
                const auto s = sign_vector(b, n, x);
                const double m1 = l2_mass(b, n, x, 1), m2 = l2_mass(b, n, x, 2);
                const double e = std::abs(m1 - double(n - s.zero_count)) / n;
                const double d = std::abs(m1 - m2) / n;
                worst = std::max(worst, e);
                worst_order = std::max(worst_order, d);
                r.note(e < 1e-6, to_string(c.kind) + " n=" + std::to_string(n) + " error " + fmt(e));
                r.note(d < 1e-8, to_string(c.kind) + " n=" + std::to_string(n) + " order shift " + fmt(d));
            }
        }
    r.info("max error/n " + fmt(worst) + ", order shift/n " + fmt(worst_order));
    return r.take();
}

Certificate certify(BasisKind kind, std::size_t n) {
    std::size_t size = 16 * (n + 1);
    for (;;) {
        const Basis b = l2(kind, size);
        try {
            return theorem2_certificate(b, n, default_grid(b, n + 1));
        } catch (const BasisTooShort&) {
            if (size >= (1u << 21)) throw;
            size *= 2;
        }
    }
}

Verdict proof_chain(double& limit) {
    limit = 0.0;
    Report r;
    double r_lo = 1e300, r_hi = 0.0, worst_orth = 0.0, worst_semi = 0.0;
    for (auto kind : {BasisKind::IntervalDirichlet, BasisKind::CircleCanonical})
        for (std::size_t n : {25u, 50u, 100u, 200u}) {
            const std::string tag = to_string(kind) + " n=" + std::to_string(n);
            try {
                const auto c = certify(kind, n);
                r.note(c.sandwich.holds(), tag + " sandwich");
                r.note(std::abs(c.orthogonality_residue) < 1e-6, tag + " residue " + fmt(c.orthogonality_residue));
                r.note(c.semigroup_residue < 1e-6, tag + " semigroup " + fmt(c.semigroup_residue));
                r.note(c.ratio >= 1.0 / 50 && c.ratio <= 50.0, tag + " R " + fmt(c.ratio));
                r_lo = std::min(r_lo, c.ratio);
                r_hi = std::max(r_hi, c.ratio);
                worst_orth = std::max(worst_orth, std::abs(c.orthogonality_residue));
                worst_semi = std::max(worst_semi, c.semigroup_residue);
            } catch (const std::exception& e) {
                r.note(false, tag + " threw: " + e.what());
            }
        }
    r.info("R in [" + fmt(r_lo) + ", " + fmt(r_hi) + "], residue " + fmt(worst_orth) + ", semigroup " +
           fmt(worst_semi));
    return r.take();
}

Verdict zonal(double& limit) {
    limit = 10.0;
    Report r;
    const auto f = zonal_scaling_fit({100, 200, 500, 1000, 2000, 5000, 10000});
    r.note(std::abs(f.diag_exponent - 1.5) <= 0.02, "diag exponent " + fmt(f.diag_exponent));
    r.note(std::abs(f.antipodal_exponent - 0.5) <= 0.1, "antipodal exponent " + fmt(f.antipodal_exponent));
    r.info("exponents " + fmt(f.diag_exponent) + " / " + fmt(f.antipodal_exponent) + " in K");
    return r.take();
}

Verdict correlation(double& limit) {
    limit = 0.0;
    Report r;
    const Basis sphere = l2(BasisKind::SphereZonal, 501);
    const auto s = correlation_profile(sphere, 500, pt::SphereZonal{0.0}, 0.15);
    r.note(s.inner > 0.0, "sphere inner " + fmt(s.inner));
    r.note(s.outer < 0.0, "sphere outer " + fmt(s.outer));
    r.note(std::abs(s.inner + s.outer) < 1e-6, "sphere sum " + fmt(s.inner + s.outer));
    const Basis circle = l2(BasisKind::CircleCanonical, 502);
    const auto c = correlation_profile(circle, 501, pt::Circle{0.0}, 0.15);
    r.note(c.outer < 0.0, "circle outer " + fmt(c.outer));
    r.info("sphere " + fmt(s.inner) + " / " + fmt(s.outer) + ", circle outer " + fmt(c.outer));
    return r.take();
}

Verdict classification(double& limit) {
    limit = 0.0;
    Report r;
    const std::vector<std::size_t> ns = {625, 1250, 2500, 5000};
    const DomainPoint x = pt::Circle{2 * kPi / 3}, y = pt::Circle{0.0};
    const auto canonical = spooky_scan(l2(BasisKind::CircleCanonical, 5000), x, y, ns);
    const auto randomized =
        spooky_scan(make_basis(BasisKind::CircleRandom, 5000, Normalization::L2, 0), x, y, ns);
    const auto hermite =
        spooky_scan(l2(BasisKind::Hermite, 2000), pt::Line{1.0}, pt::Line{-1.0}, {250, 500, 1000, 2000});
    r.note(canonical.classification == SpookyClass::Strong, "canonical " + to_string(canonical.classification));
    r.note(randomized.classification == SpookyClass::NoneDetected, "randomized " + to_string(randomized.classification));
    r.note(hermite.classification != SpookyClass::Strong, "hermite " + to_string(hermite.classification));
    r.info("canonical " + to_string(canonical.classification) + ", randomized " +
           to_string(randomized.classification) + ", hermite " + to_string(hermite.classification));
    return r.take();
}

Verdict independence(double& limit) {
    limit = 0.0;
    Report r;
    const std::size_t samples = 100000, n = 500;
    const auto single = independence_test(l2(BasisKind::IntervalDirichlet, n), {pt::Interval{1.1}}, n, samples, 0);
    r.note(single.ks[0] < 0.02, "KS " + fmt(single.ks[0]));
    const std::vector<DomainPoint> pair = {pt::Circle{2 * kPi / 3}, pt::Circle{0.0}};
    const auto canonical = independence_test(l2(BasisKind::CircleCanonical, n), pair, n, samples, 0);
    const auto randomized =
        independence_test(make_basis(BasisKind::CircleRandom, n, Normalization::L2, 0), pair, n, samples, 0);
    r.note(canonical.max_gap > 0.05, "canonical gap " + fmt(canonical.max_gap));
    r.note(randomized.max_gap < 0.02, "randomized gap " + fmt(randomized.max_gap));
    r.info("KS " + fmt(single.ks[0]) + ", gaps " + fmt(canonical.max_gap) + " / " + fmt(randomized.max_gap));
    return r.take();
}

Verdict graphs(double& limit) {
    limit = 0.0;
    Report r;
    const GraphSpec t = tutte();
    bool cubic = true;
    for (auto d : degrees(t)) cubic = cubic && d == 3;
    r.note(t.vertices == 46 && t.edges.size() == 69 && cubic && is_connected(t), "tutte structure");
    double worst_res = 0.0, worst_mass = 0.0;
    for (const GraphSpec& g : {t, erdos_renyi(100, 0.1, 7)}) {
        const Matrix l = laplacian(g);
        const auto s = eigh(l);
        worst_res = std::max(worst_res, max_residual(l, s));
        for (std::size_t i = 0; i < g.vertices; i += 7) {
            const auto row = graph_amalg(s, g.vertices, i);
            double m = 0.0;
            for (double v : row.values) m += v * v;
            worst_mass = std::max(worst_mass, std::abs(m - double(row.nonzero)));
        }
    }
    r.note(worst_res < 1e-8, "residual " + fmt(worst_res));
    r.note(worst_mass < 1e-8, "mass " + fmt(worst_mass));
    const auto c6 = eigh(laplacian(cycle_graph(6)));
    std::vector<double> expected;
    for (int k = 0; k < 6; ++k) expected.push_back(2 - 2 * std::cos(2 * kPi * k / 6));
    std::sort(expected.begin(), expected.end());
    double c6_err = 0.0;
    for (std::size_t k = 0; k < 6; ++k) c6_err = std::max(c6_err, std::abs(c6.values[k] - expected[k]));
    r.note(c6_err < 1e-10, "C6 " + fmt(c6_err));
    r.info("residual " + fmt(worst_res) + ", mass " + fmt(worst_mass) + ", C6 " + fmt(c6_err));
    return r.take();
}

std::string capture(const std::string& command, int& status) {
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    status = pclose(pipe);
    return out;
}

Verdict determinism(double& limit) {
    limit = 0.0;
    Report r;
    const std::string cli = AMALG_CLI_PATH;
    const std::vector<std::string> commands = {
        "field --basis square --n 200 --x0 1.3,0.7 --seed 0",
        "field --basis circle-random --seed 11 --n 100 --kind projector",
        "props --which 4",
        "props --which 5 --n 100 --trials 20 --seed 2",
        "certify --basis circle --n 50",
        "scan --basis hermite --x 1 --y -1 --n-list 100,200,400",
        "independence --basis circle --n 100 --point 2.0943951 --point 0 --samples 10000 --seed 5",
        "graph --kind er --n 60 --p 0.1 --seed 3 --vertex 2",
        "graph --kind tutte",
        "correlation --basis sphere --n 200 --x0 0",
        "zonal --k-list 100,1000",
    };
    for (const auto& c : commands) {
        int s1 = 0, s2 = 0;
        const std::string a = capture("AMALG_THREADS=1 '" + cli + "' " + c, s1);
        const std::string b = capture("AMALG_THREADS=4 '" + cli + "' " + c, s2);
        r.note(s1 != -1 && s1 == s2, c + ": exit " + std::to_string(s1) + " vs " + std::to_string(s2));
        r.note(!a.empty() && a == b, c + ": output differs");
    }
    const std::string saved = "/tmp/amalg_acceptance_scan.json";
    int s0 = 0, s1 = 0, s2 = 0;
    capture("'" + cli + "' scan --basis circle --x 2.0943951 --n-list 50,100 --out " + saved, s0);
    const std::string a = capture("'" + cli + "' --verify " + saved, s1);
    const std::string b = capture("'" + cli + "' --verify " + saved, s2);
    r.note(s0 == 0 && s1 == 0 && s2 == 0 && a == b, "--verify replay");
    r.info(std::to_string(commands.size()) + " commands plus --verify");
    return r.take();
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Verdict(double&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "circle constant at (2pi/3, 0)", circle_constant},
        {2, "interval limits at x and 3x", interval_limits},
        {3, "near-diagonal maximum constants", near_diagonal},
        {4, "randomized circle diagonal and sup bound", random_circle},
        {5, "orthonormality of every basis", orthonormality},
        {6, "mass identity", mass_identity},
        {7, "heat-kernel certificate chain", proof_chain},
        {8, "zonal ladder exponents", zonal},
        {9, "correlation sign structure", correlation},
        {10, "spooky classification", classification},
        {11, "independence Monte Carlo", independence},
        {12, "graph identities", graphs},
        {13, "CLI determinism", determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        double limit = 0.0;
        Verdict v;
        try {
            v = c.run(limit);
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (limit > 0.0 && secs >= limit) {
            v.pass = false;
            v.detail += "; over the " + fmt(limit) + " s budget";
        }
        failed += !v.pass;
        std::printf("[%s] %2d %s (%.2f s): %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, secs, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
