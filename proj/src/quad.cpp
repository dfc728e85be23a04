#include "amalg/quad.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace amalg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kPanelNodes = 16;
constexpr double kNodesPerWavelength = 20.0;

GaussTable compute_gauss(std::size_t n) {
    GaussTable t;
    t.x.resize(n);
    t.w.resize(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            dp = n * (z * p1 - p2) / (z * z - 1.0);
            const double step = p1 / dp;
            z -= step;
            if (std::abs(step) < 1e-16) break;
        }
        // recompute the derivative at the converged root for the weight
        double p1 = 1.0, p2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
        }
        dp = n * (z * p1 - p2) / (z * z - 1.0);
        t.x[i] = -z;
        t.x[n - 1 - i] = z;
        t.w[i] = t.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    if (n % 2 == 1) t.x[n / 2] = 0.0;
    return t;
}

std::size_t panels_for(double length, double wavenumber) {
    const double wavelengths = std::max(wavenumber, 1e-9) * length / (2.0 * kPi);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(kNodesPerWavelength * wavelengths / kPanelNodes)));
}

// Composite Gauss-Legendre abscissae and weights on [a, b].
void composite(double a, double b, std::size_t panels, std::vector<double>& x, std::vector<double>& w) {
    const auto& g = gauss_legendre(kPanelNodes);
    const double h = (b - a) / panels;
    x.clear();
    w.clear();
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (std::size_t i = 0; i < kPanelNodes; ++i) {
            x.push_back(mid + 0.5 * h * g.x[i]);
            w.push_back(0.5 * h * g.w[i]);
        }
    }
}

double or_default(double v, double d) { return std::isnan(v) ? d : v; }

}  // namespace

const GaussTable& gauss_legendre(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<GaussTable>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussTable>(compute_gauss(n));
    return *slot;
}

QuadRule make_rule(const RuleSpec& spec) {
    if (spec.order < 1) throw std::invalid_argument("make_rule: order must be >= 1");
    QuadRule rule;
    rule.domain = spec.domain;
    rule.order = spec.order;
    const auto order = static_cast<std::size_t>(spec.order);
    const double k = std::max(spec.wavenumber, 1.0);
    std::vector<double> x, w;

    switch (spec.domain) {
        case Domain::Interval:
        case Domain::Circle: {
            const double a = or_default(spec.lo, 0.0);
            const double b = or_default(spec.hi, spec.domain == Domain::Interval ? kPi : 2.0 * kPi);
            composite(a, b, order * panels_for(b - a, k), x, w);
            for (std::size_t i = 0; i < x.size(); ++i) {
                rule.nodes.push_back(spec.domain == Domain::Interval ? DomainPoint{pt::Interval{x[i]}}
                                                                     : DomainPoint{pt::Circle{wrap_angle(x[i])}});
                rule.weights.push_back(w[i]);
            }
            break;
        }
        case Domain::Line: {
            const double extent = std::sqrt(2.0) * k + 10.0;  // sqrt(2 lambda_max) + 10
            const double a = or_default(spec.lo, -extent);
            const double b = or_default(spec.hi, extent);
            composite(a, b, order * panels_for(b - a, k), x, w);
            for (std::size_t i = 0; i < x.size(); ++i) {
                rule.nodes.push_back(pt::Line{x[i]});
                rule.weights.push_back(w[i]);
            }
            break;
        }
        case Domain::Square: {
            composite(0.0, kPi, order * panels_for(kPi, k), x, w);
            for (std::size_t i = 0; i < x.size(); ++i)
                for (std::size_t j = 0; j < x.size(); ++j) {
                    rule.nodes.push_back(pt::Square{x[i], x[j]});
                    rule.weights.push_back(w[i] * w[j]);
                }
            break;
        }
        case Domain::Disk:
        case Domain::QuarterDisk: {
            composite(0.0, 1.0, order * panels_for(1.0, k), x, w);
            const std::size_t n_theta = order * (4 * static_cast<std::size_t>(std::ceil(k)) + 32);
            const bool full = spec.domain == Domain::Disk;
            const double span = full ? 2.0 * kPi : 0.5 * kPi;
            const double h = span / n_theta;
            // periodic trapezoid on the disk; closed trapezoid on the quarter sector
            const std::size_t count = full ? n_theta : n_theta + 1;
            for (std::size_t i = 0; i < x.size(); ++i)
                for (std::size_t j = 0; j < count; ++j) {
                    const double theta = j * h;
                    const double tw = (!full && (j == 0 || j == n_theta)) ? 0.5 * h : h;
                    rule.nodes.push_back(full ? DomainPoint{pt::Disk{x[i], theta}}
                                              : DomainPoint{pt::QuarterDisk{x[i], theta}});
                    rule.weights.push_back(w[i] * x[i] * tw);
                }
            break;
        }
        case Domain::SphereZonal: {
            const double t0 = or_default(spec.lo, 0.0);
            const double t1 = or_default(spec.hi, kPi);
            // Gauss-Legendre in u = cos(theta): exact for zonal polynomials of
            // degree < 2N, and du carries the sin(theta) Jacobian.
            const std::size_t n = order * (2 * static_cast<std::size_t>(std::ceil(k)) + 32);
            const auto& g = gauss_legendre(n);
            const double ua = std::cos(t1), ub = std::cos(t0);
            for (std::size_t i = 0; i < n; ++i) {
                const double u = 0.5 * (ua + ub) + 0.5 * (ub - ua) * g.x[i];
                rule.nodes.push_back(pt::SphereZonal{std::acos(std::clamp(u, -1.0, 1.0))});
                rule.weights.push_back(0.5 * (ub - ua) * g.w[i]);
            }
            break;
        }
    }
    return rule;
}

RuleSpec rule_spec_for(const Basis& basis, std::size_t highest_index, int order) {
    const std::size_t idx = std::clamp<std::size_t>(highest_index, 1, basis.size());
    double k = std::sqrt(basis.eigenvalue(idx));
    if (basis.kind() == BasisKind::SquareDirichlet) {
        const auto& m = basis.mode(idx);
        k = std::max(m.freq, m.freq2);  // per-axis frequency
        for (std::size_t i = 1; i <= idx; ++i)
            k = std::max<double>(k, std::max(basis.mode(i).freq, basis.mode(i).freq2));
    }
    return RuleSpec{basis.domain(), order, k};
}

}  // namespace amalg
