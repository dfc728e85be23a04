#include "amalg/amalg.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "amalg/io.hpp"

namespace amalg {

namespace {

constexpr double kPi = std::numbers::pi;

void require_n(const Basis& basis, std::size_t n) {
    if (n > basis.size()) throw std::out_of_range("n exceeds the basis size");
}

std::vector<double> uniform(double a, double b, std::size_t count, bool closed) {
    std::vector<double> out(count);
    const double h = closed ? (b - a) / (count - 1) : (b - a) / count;
    for (std::size_t i = 0; i < count; ++i) out[i] = a + i * h;
    if (closed) out.back() = b;
    return out;
}

std::size_t points_for(double length, double wavenumber, double per_wavelength) {
    return std::max<std::size_t>(
        8, static_cast<std::size_t>(std::ceil(per_wavelength * wavenumber * length / (2.0 * kPi))) + 1);
}

}  // namespace

SignVector sign_vector(const Basis& basis, std::size_t n, const DomainPoint& x0) {
    require_n(basis, n);
    SignVector s{x0, n, std::vector<std::int8_t>(n, 0), 0};
    basis.visit(x0, n, [&](std::size_t k, double v) {
        s.signs[k - 1] = static_cast<std::int8_t>((v > 0.0) - (v < 0.0));
        if (v == 0.0) ++s.zero_count;
    });
    return s;
}

std::string sign_digest(const SignVector& s) {
    std::string bytes(s.signs.size(), '\0');
    for (std::size_t i = 0; i < s.signs.size(); ++i) bytes[i] = static_cast<char>(s.signs[i] + 1);
    return sha256_hex(bytes);
}

double signed_sum(const Basis& basis, std::span<const double> coeffs, const DomainPoint& y) {
    CompensatedSum sum;
    basis.visit(y, coeffs.size(), [&](std::size_t k, double v) {
        const double c = coeffs[k - 1];
        if (c != 0.0) sum.add(c * v);
    });
    return sum.value();
}

double amalg_eval(const Basis& basis, const SignVector& signs, const DomainPoint& y) {
    const auto coeffs = signs.as_coefficients();
    return signed_sum(basis, coeffs, y);
}

double amalg_eval(const Basis& basis, std::size_t n, const DomainPoint& x0, const DomainPoint& y) {
    return amalg_eval(basis, sign_vector(basis, n, x0), y);
}

double amalg_diag(const Basis& basis, std::size_t n, const DomainPoint& x) {
    require_n(basis, n);
    CompensatedSum sum;
    basis.visit(x, n, [&](std::size_t, double v) { sum.add(std::abs(v)); });
    return sum.value();
}

double projector_eval(const Basis& basis, std::size_t n, const DomainPoint& x, const DomainPoint& y) {
    require_n(basis, n);
    std::vector<double> at_x(n);
    basis.values(x, at_x);
    return signed_sum(basis, at_x, y);
}

std::string to_string(FieldKind k) {
    switch (k) {
        case FieldKind::Amalg: return "amalg";
        case FieldKind::Projector: return "projector";
        case FieldKind::ProductProfile: return "product-profile";
    }
    return "?";
}

AmalgField amalg_field(const Basis& basis, std::size_t n, const DomainPoint& x0, const std::vector<DomainPoint>& grid) {
    AmalgField f{basis.manifest(), sign_vector(basis, n, x0), grid, std::vector<double>(grid.size()), FieldKind::Amalg};
    const auto coeffs = f.signs.as_coefficients();
    parallel_for(grid.size(), [&](std::size_t i) { f.values[i] = signed_sum(basis, coeffs, grid[i]); });
    return f;
}

AmalgField projector_field(const Basis& basis, std::size_t n, const DomainPoint& x0,
                           const std::vector<DomainPoint>& grid) {
    AmalgField f{basis.manifest(), sign_vector(basis, n, x0), grid, std::vector<double>(grid.size()),
                 FieldKind::Projector};
    std::vector<double> at_x(n);
    basis.values(x0, at_x);
    parallel_for(grid.size(), [&](std::size_t i) { f.values[i] = signed_sum(basis, at_x, grid[i]); });
    return f;
}

namespace {

// `count(length)` gives the number of points along an axis of that length.
template <class Count>
std::vector<DomainPoint> build_grid(const Basis& basis, double k, Count&& count) {
    std::vector<DomainPoint> grid;
    switch (basis.domain()) {
        case Domain::Interval:
            for (double x : uniform(0.0, kPi, count(kPi), true)) grid.push_back(pt::Interval{x});
            break;
        case Domain::Circle:
            for (double x : uniform(0.0, 2.0 * kPi, count(2.0 * kPi), false)) grid.push_back(pt::Circle{x});
            break;
        case Domain::Square: {
            const auto axis = uniform(0.0, kPi, count(kPi), true);
            for (double x : axis)
                for (double y : axis) grid.push_back(pt::Square{x, y});
            break;
        }
        case Domain::Disk:
        case Domain::QuarterDisk: {
            const bool full = basis.domain() == Domain::Disk;
            const auto radii = uniform(0.0, 1.0, count(1.0), true);
            const auto angles = full ? uniform(0.0, 2.0 * kPi, count(2.0 * kPi), false)
                                     : uniform(0.0, 0.5 * kPi, count(0.5 * kPi), true);
            for (double r : radii)
                for (double t : angles)
                    grid.push_back(full ? DomainPoint{pt::Disk{r, t}} : DomainPoint{pt::QuarterDisk{r, t}});
            break;
        }
        case Domain::SphereZonal:
            for (double t : uniform(0.0, kPi, count(kPi), true)) grid.push_back(pt::SphereZonal{t});
            break;
        case Domain::Line: {
            const double extent = k + 5.0;  // past the turning point sqrt(lambda)
            for (double x : uniform(-extent, extent, count(2.0 * extent), true)) grid.push_back(pt::Line{x});
            break;
        }
    }
    return grid;
}

double grid_wavenumber(const Basis& basis, std::size_t highest_index) {
    const std::size_t idx = std::clamp<std::size_t>(highest_index, 1, basis.size());
    return std::max(1.0, std::sqrt(basis.eigenvalue(idx)));
}

}  // namespace

std::vector<DomainPoint> default_grid(const Basis& basis, std::size_t highest_index, double per_wavelength) {
    const double k = grid_wavenumber(basis, highest_index);
    return build_grid(basis, k, [&](double length) { return points_for(length, k, per_wavelength); });
}

std::vector<DomainPoint> uniform_grid(const Basis& basis, std::size_t highest_index, std::size_t per_axis) {
    if (per_axis < 2) throw std::invalid_argument("uniform_grid: need at least two points per axis");
    return build_grid(basis, grid_wavenumber(basis, highest_index), [&](double) { return per_axis; });
}

AmalgStar amalg_star(const Basis& basis, std::size_t n, const DomainPoint& x0, std::span<const int> flips) {
    require_n(basis, n);
    if (flips.size() != n / 3) throw std::invalid_argument("amalg_star: flips must have length floor(n/3)");
    std::vector<double> at_x(n);
    basis.values(x0, at_x);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{1});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(at_x[a - 1]) < std::abs(at_x[b - 1]); });
    std::vector<double> coeffs(n);
    for (std::size_t k = 0; k < n; ++k) coeffs[k] = (at_x[k] > 0.0) - (at_x[k] < 0.0);
    for (std::size_t i = 0; i < flips.size(); ++i) {
        if (flips[i] < -1 || flips[i] > 1) throw std::invalid_argument("amalg_star: flips must lie in {-1, 0, 1}");
        coeffs[order[i] - 1] = flips[i];
    }
    return AmalgStar(basis, std::move(coeffs), std::move(order));
}

double l2_mass(const Basis& basis, std::size_t n, const DomainPoint& x0, int order) {
    const auto coeffs = sign_vector(basis, n, x0).as_coefficients();
    const auto spec = rule_spec_for(basis, n, order);
    const auto result = integrate_checked(
        spec,
        [&](const DomainPoint& y) {
            const double v = signed_sum(basis, coeffs, y);
            return v * v;
        },
        1e-8 * std::max<double>(1.0, n));
    return result.value;
}

DiagBounds diag_bounds_report(const Basis& basis, std::size_t n, const DomainPoint& x) {
    if (basis.mode() != Normalization::L2) throw std::invalid_argument("diag_bounds_report requires an L2 basis");
    require_n(basis, n);
    DiagBounds r;
    std::vector<double> at_x(n);
    basis.values(x, at_x);
    CompensatedSum diag, proj;
    std::vector<double> sup(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        diag.add(std::abs(at_x[k]));
        proj.add(at_x[k] * at_x[k]);
        sup[k] = std::abs(at_x[k]);
    }
    const auto grid = default_grid(basis, n);
    std::vector<double> row(n);
    for (const auto& p : grid) {
        basis.values(p, row);
        for (std::size_t k = 0; k < n; ++k) sup[k] = std::max(sup[k], std::abs(row[k]));
    }
    const int d = dimension(basis.domain());
    r.value = diag.value();
    r.projector = proj.value();
    r.upper = std::sqrt(n * r.projector);
    r.sup_norm = *std::max_element(sup.begin(), sup.end());
    r.easylower = r.sup_norm > 0.0 ? r.projector / r.sup_norm : 0.0;
    r.lower = std::pow(double(n), (d + 1.0) / (2.0 * d));
    return r;
}

std::vector<double> l1_partial_sums(const Basis& basis, std::size_t n) {
    if (basis.mode() != Normalization::L2) throw std::invalid_argument("l1_partial_sums requires an L2 basis");
    require_n(basis, n);
    // |phi| has kinks at nodal lines, so use a refined rule
    const auto rule = rule_for(basis, n, 4);
    std::vector<std::vector<double>> rows(rule.nodes.size(), std::vector<double>(n));
    parallel_for(rule.nodes.size(), [&](std::size_t i) { basis.values(rule.nodes[i], rows[i]); });
    std::vector<double> out(n);
    double running = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        CompensatedSum s;
        for (std::size_t i = 0; i < rows.size(); ++i) s.add(rule.weights[i] * std::abs(rows[i][k]));
        running += s.value();
        out[k] = running;
    }
    return out;
}

}  // namespace amalg
