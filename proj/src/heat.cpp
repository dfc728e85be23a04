#include "amalg/heat.hpp"

#include <algorithm>
#include <limits>

namespace amalg {

namespace {

void require_l2(const Basis& basis, const char* what) {
    if (basis.mode() != Normalization::L2) throw std::invalid_argument(std::string(what) + " requires an L2 basis");
}

// Rule resolving the truncated kernel times eigenfunctions up to `extra`.
RuleSpec heat_rule(const Basis& basis, std::size_t n_cut, std::size_t extra, int order) {
    return rule_spec_for(basis, std::max(n_cut, extra), order);
}

}  // namespace

bool has_constant_mode(const Basis& basis) {
    switch (basis.kind()) {
        case BasisKind::IntervalNeumann:
        case BasisKind::CircleCanonical:
        case BasisKind::CircleRandom:
        case BasisKind::QuarterDiskNeumann:
        case BasisKind::SphereZonal:
            return true;
        default:
            return false;
    }
}

std::size_t heat_cutoff(const Basis& basis, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("heat kernel requires t > 0");
    const double needed = -std::log(kHeatTail) / t;
    // smallest N with lambda_N > needed
    std::size_t lo = 1, hi = basis.size();
    if (basis.eigenvalue(hi) <= needed) {
        const double tail = std::exp(-basis.eigenvalue(hi) * t);
        throw BasisTooShort("basis too short for the heat expansion: achievable tail " + std::to_string(tail), tail,
                            needed);
    }
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (basis.eigenvalue(mid) > needed) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

HeatKernel::HeatKernel(const Basis& basis, double t, const DomainPoint& z) : basis_(&basis), t_(t) {
    require_l2(basis, "heat kernel");
    const std::size_t n_cut = heat_cutoff(basis, t);
    coefficients_.resize(n_cut);
    basis.visit(z, n_cut, [&](std::size_t k, double v) { coefficients_[k - 1] = std::exp(-basis.eigenvalue(k) * t) * v; });
    if (has_constant_mode(basis)) constant_ = 1.0 / basis.volume();
}

double HeatKernel::operator()(const DomainPoint& y) const { return constant_ + signed_sum(*basis_, coefficients_, y); }

HeatWeight heat_kernel(const Basis& basis, double t, const DomainPoint& z, const std::vector<DomainPoint>& grid) {
    const HeatKernel p(basis, t, z);
    HeatWeight w;
    w.z = z;
    w.t = t;
    w.n_cut = p.cutoff();
    w.grid = grid;
    w.tail = std::exp(-basis.eigenvalue(w.n_cut) * t);
    std::vector<double> raw(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { raw[i] = p(grid[i]); });
    w.values.resize(raw.size());
    w.raw_min = raw.empty() ? 0.0 : *std::min_element(raw.begin(), raw.end());
    for (std::size_t i = 0; i < raw.size(); ++i) w.values[i] = std::max(0.0, raw[i]);
    w.p_max = std::max(0.0, p(z));
    for (double v : w.values) w.p_max = std::max(w.p_max, v);
    return w;
}

double heat_mass(const Basis& basis, double t, const DomainPoint& z) {
    const HeatKernel p(basis, t, z);
    return integrate(make_rule(heat_rule(basis, p.cutoff(), 1, 2)), p);
}

double semigroup_error(const Basis& basis, double t, const DomainPoint& z, std::size_t k) {
    const HeatKernel p(basis, t, z);
    const double lhs = integrate(make_rule(heat_rule(basis, p.cutoff(), k, 2)),
                                 [&](const DomainPoint& y) { return p(y) * basis.eval(k, y); });
    return std::abs(lhs - std::exp(-basis.eigenvalue(k) * t) * basis.eval(k, z));
}

Sandwich sandwich_check(const Basis& basis, std::size_t n, const DomainPoint& x, double alpha) {
    require_l2(basis, "sandwich_check");
    if (n == 0 || n > basis.size()) throw std::out_of_range("sandwich_check: n outside the basis");
    if (!(alpha > 0.0)) throw std::invalid_argument("sandwich_check requires alpha > 0");
    Sandwich s;
    s.alpha = alpha;
    s.t = alpha / basis.eigenvalue(n);
    const auto signs = sign_vector(basis, n, x);
    const auto coeffs = signs.as_coefficients();
    CompensatedSum identity, diag;
    basis.visit(x, n, [&](std::size_t k, double v) {
        identity.add(std::exp(-basis.eigenvalue(k) * s.t) * std::abs(v));
        diag.add(std::abs(v));
    });
    s.upper = diag.value();
    s.lower = std::exp(-alpha) * s.upper;
    s.mid_identity = identity.value();

    const HeatKernel p(basis, s.t, x);
    const auto checked = integrate_checked(
        heat_rule(basis, p.cutoff(), n, 1),
        [&](const DomainPoint& y) { return p(y) * signed_sum(basis, coeffs, y); },
        1e-7 * std::max(1.0, s.upper));
    s.mid = checked.value;
    if (std::abs(s.mid - s.mid_identity) > 1e-6 * std::max(1.0, s.upper))
        throw QuadratureError("sandwich_check: quadrature and identity disagree");
    return s;
}

Certificate theorem2_certificate(const Basis& basis, std::size_t n, const std::vector<DomainPoint>& search_grid,
                                 std::optional<DomainPoint> forced_z) {
    require_l2(basis, "theorem2_certificate");
    if (n == 0 || n + 1 > basis.size()) throw std::out_of_range("theorem2_certificate: need n + 1 <= basis size");
    if (search_grid.empty() && !forced_z) throw std::invalid_argument("theorem2_certificate: empty search grid");
    const std::size_t next = n + 1;

    Certificate c;
    c.manifest = basis.manifest();
    c.n = n;
    c.grid_size = search_grid.size();

    std::vector<double> phi_grid(search_grid.size());
    parallel_for(search_grid.size(), [&](std::size_t i) { phi_grid[i] = basis.eval(next, search_grid[i]); });
    if (forced_z) {
        c.z = *forced_z;
    } else {
        std::size_t best = 0;
        for (std::size_t i = 1; i < phi_grid.size(); ++i)
            if (std::abs(phi_grid[i]) > std::abs(phi_grid[best])) best = i;
        c.z = search_grid[best];
    }
    const double phi_z = basis.eval(next, c.z);
    c.phi_sign = phi_z < 0.0 ? -1 : 1;
    c.phi_next_z = c.phi_sign * phi_z;

    const auto signs = sign_vector(basis, n, c.z);
    if (signs.zero_count == n) throw DegenerateCertificate("amalg(z, z) = 0: every eigenfunction vanishes at z");
    const auto coeffs = signs.as_coefficients();
    c.amalg_zz = amalg_diag(basis, n, c.z);

    std::vector<double> amalg_grid(search_grid.size());
    parallel_for(search_grid.size(), [&](std::size_t i) { amalg_grid[i] = signed_sum(basis, coeffs, search_grid[i]); });
    c.amalg_max = c.amalg_zz;
    for (double v : amalg_grid) c.amalg_max = std::max(c.amalg_max, v);
    c.kappa = c.amalg_max / c.amalg_zz;
    c.alpha = 1.0 / (4.0 * c.kappa);
    c.t = c.alpha / basis.eigenvalue(next);

    const HeatKernel p(basis, c.t, c.z);
    c.n_cut = p.cutoff();

    // One fused pass per node: p_t(z, y), amalg(z, y), phi_{n+1}(y).
    struct Row {
        double p, amalg, phi;
    };
    const std::size_t reach = std::max(c.n_cut, next);
    const double constant = p.constant();
    const auto& heat = p.coefficients();
    auto rows_for = [&](const QuadRule& rule) {
        std::vector<Row> rows(rule.nodes.size());
        parallel_for(rule.nodes.size(), [&](std::size_t i) {
            CompensatedSum ps, as;
            double phi = 0.0;
            basis.visit(rule.nodes[i], reach, [&](std::size_t k, double v) {
                if (k <= heat.size()) ps.add(heat[k - 1] * v);
                if (k <= n && coeffs[k - 1] != 0.0) as.add(coeffs[k - 1] * v);
                if (k == next) phi = c.phi_sign * v;
            });
            rows[i] = {constant + ps.value(), as.value(), phi};
        });
        return rows;
    };
    auto sum = [](const QuadRule& rule, const std::vector<Row>& rows, auto&& g) {
        CompensatedSum s;
        for (std::size_t i = 0; i < rows.size(); ++i) s.add(rule.weights[i] * g(rows[i]));
        return s.value();
    };

    const RuleSpec spec = heat_rule(basis, c.n_cut, next, 1);
    const QuadRule coarse = make_rule(spec);
    const QuadRule fine = make_rule(spec.doubled());
    const auto coarse_rows = rows_for(coarse);
    const auto rows = rows_for(fine);

    c.p_max = std::max(0.0, p(c.z));
    c.p_raw_min = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        c.p_max = std::max(c.p_max, r.p);
        c.p_raw_min = std::min(c.p_raw_min, r.p);
    }

    auto weighted = [](const Row& r) { return r.p * r.amalg * r.phi; };
    c.weighted = sum(fine, rows, weighted);
    c.quadrature_error = std::abs(c.weighted - sum(coarse, coarse_rows, weighted));
    c.orthogonality_residue = sum(fine, rows, [](const Row& r) { return r.amalg * r.phi; });
    const double pm = c.p_max;
    c.integral = sum(fine, rows, [pm](const Row& r) { return (1.0 - std::max(0.0, r.p) / pm) * r.amalg * r.phi; });
    c.integral_identity = -sum(fine, rows, [pm](const Row& r) { return std::max(0.0, r.p) / pm * r.amalg * r.phi; });
    const double semigroup = sum(fine, rows, [](const Row& r) { return r.p * r.phi; });
    c.semigroup_residue = std::abs(semigroup - std::exp(-basis.eigenvalue(next) * c.t) * c.phi_next_z);

    CompensatedSum identity;
    basis.visit(c.z, n, [&](std::size_t k, double v) { identity.add(std::exp(-basis.eigenvalue(k) * c.t) * std::abs(v)); });
    c.sandwich.alpha = c.alpha;
    c.sandwich.t = c.t;
    c.sandwich.upper = c.amalg_zz;
    c.sandwich.lower = std::exp(-c.alpha) * c.amalg_zz;
    c.sandwich.mid = sum(fine, rows, [](const Row& r) { return r.p * r.amalg; });
    c.sandwich.mid_identity = identity.value();

    const double m = c.kappa * c.amalg_zz;
    c.lower_x = std::exp(-c.alpha) * (c.amalg_zz + m) - m;
    c.weighted_bound_holds = c.weighted >= c.lower_x * c.phi_next_z - 1e-6 * std::max(1.0, std::abs(c.weighted));
    c.constant_check = std::exp(-c.alpha) * (1.0 + c.kappa) - c.kappa;
    c.ratio = c.integral != 0.0 ? c.phi_next_z * c.amalg_zz / (2.0 * n * std::abs(c.integral))
                                : std::numeric_limits<double>::infinity();
    return c;
}

}  // namespace amalg
