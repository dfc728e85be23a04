#include "amalg/spooky.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "amalg/rng.hpp"

namespace amalg {

namespace {

constexpr double kPi = std::numbers::pi;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double coordinate(const DomainPoint& p) { return coordinates(p)[0]; }

bool one_dimensional(Domain d) {
    return d == Domain::Interval || d == Domain::Circle || d == Domain::SphereZonal || d == Domain::Line;
}

DomainPoint point_1d(Domain d, double c) {
    switch (d) {
        case Domain::Interval: return pt::Interval{std::clamp(c, 0.0, kPi)};
        case Domain::Circle: return pt::Circle{wrap_angle(c)};
        case Domain::SphereZonal: return pt::SphereZonal{std::clamp(c, 0.0, kPi)};
        case Domain::Line: return pt::Line{c};
        default: throw std::invalid_argument("one-dimensional domain required");
    }
}

// Partial sums sum_{k<=m} coeff_k phi_k(y) at every m in `stops` (ascending).
std::vector<double> partial_sums(const Basis& basis, const std::vector<double>& coeffs, const DomainPoint& y,
                                 const std::vector<std::size_t>& stops) {
    std::vector<double> out;
    out.reserve(stops.size());
    CompensatedSum sum;
    std::size_t next = 0;
    basis.visit(y, coeffs.size(), [&](std::size_t k, double v) {
        if (coeffs[k - 1] != 0.0) sum.add(coeffs[k - 1] * v);
        while (next < stops.size() && stops[next] == k) {
            out.push_back(sum.value());
            ++next;
        }
    });
    return out;
}

}  // namespace

std::string to_string(SpookyClass c) {
    switch (c) {
        case SpookyClass::Strong: return "strong";
        case SpookyClass::NoneDetected: return "none-detected";
        case SpookyClass::Inconclusive: return "inconclusive";
        case SpookyClass::Diagonal: return "diagonal";
    }
    return "?";
}

SpookyScan spooky_scan(const Basis& basis, const DomainPoint& x, const DomainPoint& y,
                       const std::vector<std::size_t>& n_list, SpookyThresholds thresholds) {
    if (n_list.empty()) throw std::invalid_argument("spooky_scan: empty n list");
    if (!std::is_sorted(n_list.begin(), n_list.end()) || n_list.front() == 0)
        throw std::invalid_argument("spooky_scan: n list must be ascending and positive");
    SpookyScan s{x, y, n_list, {}, {}, {}, thresholds, SpookyClass::Inconclusive};
    const auto coeffs = sign_vector(basis, n_list.back(), x).as_coefficients();
    s.values = partial_sums(basis, coeffs, y, n_list);
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        const double n = static_cast<double>(n_list[i]);
        s.by_n.push_back(s.values[i] / n);
        s.by_sqrt_n.push_back(s.values[i] / std::sqrt(n));
    }
    if (distance(x, y) == 0.0) {
        s.classification = SpookyClass::Diagonal;
        return s;
    }
    bool strong = true, weak = true;
    for (std::size_t i = n_list.size() / 2; i < n_list.size(); ++i) {
        const double n = static_cast<double>(n_list[i]);
        const double v = std::abs(s.values[i]);
        if (v / n < thresholds.strong) strong = false;
        const double polylog = std::pow(std::max(1.0, std::log(n)), thresholds.log_power);
        if (v / (std::sqrt(n) * polylog) > thresholds.weak) weak = false;
    }
    if (strong) s.classification = SpookyClass::Strong;
    else if (weak) s.classification = SpookyClass::NoneDetected;
    return s;
}

// ---------------------------------------------------------------------------

double prop3_profile(std::size_t n, double c) {
    const double nn = static_cast<double>(n);
    return nn / 2.0 + nn / (4.0 * c) * (2.0 - 2.0 * std::cos(c) - 2.0 * c + 2.0 * std::sin(c));
}

Prop3Result verify_prop3(std::size_t n) {
    if (n == 0) throw std::invalid_argument("verify_prop3: n must be positive");
    const Basis basis = make_basis(BasisKind::IntervalDirichlet, n, Normalization::Raw);
    Prop3Result r;
    r.n = n;
    r.x = kPi / 2.0 + kProp3Offset;
    const DomainPoint x = pt::Interval{r.x};
    const auto coeffs = sign_vector(basis, n, x).as_coefficients();
    r.diag = amalg_diag(basis, n, x);

    const std::size_t steps = 300;
    const double h = 0.01 / static_cast<double>(n);
    std::vector<double> values(steps + 1);
    parallel_for(values.size(), [&](std::size_t j) { values[j] = signed_sum(basis, coeffs, pt::Interval{r.x + j * h}); });
    std::size_t best = 0;
    for (std::size_t j = 1; j < values.size(); ++j)
        if (values[j] > values[best]) best = j;
    r.y = r.x + best * h;
    r.value = values[best];
    r.ratio = r.value / r.diag;
    r.c_opt = best * 0.01;
    for (std::size_t j = 50; j <= 200; ++j)
        r.profile_gap = std::max(r.profile_gap, std::abs(values[j] - prop3_profile(n, j * 0.01)));
    return r;
}

double verify_prop4(std::size_t n) {
    if (n == 0) throw std::invalid_argument("verify_prop4: n must be positive");
    const Basis basis = make_basis(BasisKind::CircleCanonical, 2 * n, Normalization::Raw);
    return amalg_eval(basis, 2 * n, pt::Circle{2.0 * kPi / 3.0}, pt::Circle{0.0});
}

Prop5Result verify_prop5(std::size_t n, std::size_t trials, std::uint64_t seed, double x) {
    if (n == 0 || trials == 0) throw std::invalid_argument("verify_prop5: need n >= 1 and trials >= 1");
    Prop5Result r;
    r.n = n;
    r.trials = trials;
    r.seed = seed;
    r.x = wrap_angle(x);
    r.expected_diag = 4.0 * n / kPi;
    r.separations = {0.1, 0.3, 1.0};
    const double nn = static_cast<double>(n);
    r.sup_threshold = r.c1 * std::pow(std::log(nn), r.c2) * std::sqrt(nn);
    for (double d : r.separations) r.offdiag_expected.push_back(4.0 / kPi * specfun::dirichlet_cos_sum(n, d));

    // sup scan: amalg(x, y) = sum_k A_k sin(k y) + B_k cos(k y) over a shared grid
    const double exclusion = 1.0 / std::sqrt(nn);
    std::vector<double> ys;
    const std::size_t m = std::max<std::size_t>(64, 10 * n);
    for (std::size_t j = 0; j < m; ++j) {
        const double y = 2.0 * kPi * j / m;
        if (distance(DomainPoint{pt::Circle{y}}, DomainPoint{pt::Circle{r.x}}) >= exclusion) ys.push_back(y);
    }
    std::vector<double> sin_table(ys.size() * n), cos_table(ys.size() * n);
    for (std::size_t j = 0; j < ys.size(); ++j)
        for (std::size_t k = 1; k <= n; ++k) {
            sin_table[j * n + k - 1] = std::sin(k * ys[j]);
            cos_table[j * n + k - 1] = std::cos(k * ys[j]);
        }

    const std::size_t seps = r.separations.size();
    std::vector<double> diag(trials), sup(trials), off(trials * seps);
    parallel_for(trials, [&](std::size_t t) {
        const Basis basis = make_basis(BasisKind::CircleRandom, 2 * n, Normalization::Raw, Rng(seed, t).next());
        const DomainPoint px = pt::Circle{r.x};
        const auto signs = sign_vector(basis, 2 * n, px);
        diag[t] = amalg_diag(basis, 2 * n, px);
        for (std::size_t i = 0; i < seps; ++i)
            off[t * seps + i] = amalg_eval(basis, signs, pt::Circle{wrap_angle(r.x + r.separations[i])});
        const auto phases = basis.phases();
        std::vector<double> a(n), b(n);
        for (std::size_t k = 1; k <= n; ++k) {
            const double s = signs.signs[2 * k - 2], c = signs.signs[2 * k - 1];
            const double sp = std::sin(k * phases[k - 1]), cp = std::cos(k * phases[k - 1]);
            a[k - 1] = s * cp + c * sp;
            b[k - 1] = c * cp - s * sp;
        }
        double best = 0.0;
        for (std::size_t j = 0; j < ys.size(); ++j) {
            double v = 0.0;
            for (std::size_t k = 0; k < n; ++k) v += a[k] * sin_table[j * n + k] + b[k] * cos_table[j * n + k];
            best = std::max(best, std::abs(v));
        }
        sup[t] = best;
    });

    CompensatedSum diag_sum;
    std::size_t pass = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        diag_sum.add(diag[t]);
        if (sup[t] <= r.sup_threshold) ++pass;
        r.sup_max = std::max(r.sup_max, sup[t]);
    }
    r.mean_diag = diag_sum.value() / trials;
    r.sup_bound_rate = static_cast<double>(pass) / trials;
    for (std::size_t i = 0; i < seps; ++i) {
        CompensatedSum s, sa;
        for (std::size_t t = 0; t < trials; ++t) {
            s.add(off[t * seps + i]);
            sa.add(std::abs(off[t * seps + i]));
        }
        r.offdiag_mean.push_back(s.value() / trials);
        r.offdiag_mean_abs.push_back(sa.value() / trials);
    }
    return r;
}

double prop5_phase_average(unsigned k, double x, double y, std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("prop5_phase_average: samples must be positive");
    Rng rng(seed);
    CompensatedSum sum;
    for (std::size_t i = 0; i < samples; ++i) {
        const double s = rng.uniform(0.0, 2.0 * kPi);
        const double at_x = std::sin(k * (x - s));
        sum.add(((at_x > 0.0) - (at_x < 0.0)) * std::sin(k * (y - s)));
    }
    return sum.value() / samples;
}

Prop6Result verify_prop6(double x, std::size_t n) {
    if (!(x > 0.0 && x < kPi / 3.0)) throw std::invalid_argument("verify_prop6: need 0 < x < pi/3");
    const Basis basis = make_basis(BasisKind::IntervalDirichlet, n, Normalization::Raw);
    const DomainPoint px = pt::Interval{x};
    Prop6Result r;
    r.x = x;
    r.n = n;
    r.diag_ratio = amalg_diag(basis, n, px) / n;
    r.spooky_ratio = amalg_eval(basis, n, px, pt::Interval{3.0 * x}) / n;
    return r;
}

std::vector<double> prop6_series(double x, std::size_t n_max) {
    if (!(x > 0.0 && x < kPi / 3.0)) throw std::invalid_argument("prop6_series: need 0 < x < pi/3");
    const Basis basis = make_basis(BasisKind::IntervalDirichlet, n_max, Normalization::Raw);
    const auto coeffs = sign_vector(basis, n_max, pt::Interval{x}).as_coefficients();
    std::vector<std::size_t> stops(n_max);
    std::iota(stops.begin(), stops.end(), std::size_t{1});
    auto out = partial_sums(basis, coeffs, pt::Interval{3.0 * x}, stops);
    for (std::size_t m = 0; m < out.size(); ++m) out[m] /= static_cast<double>(m + 1);
    return out;
}

// ---------------------------------------------------------------------------

Question2Result question2_scan(const Basis& basis, std::size_t n, const DomainPoint& x) {
    if (basis.mode() != Normalization::L2) throw std::invalid_argument("question2_scan requires an L2 basis");
    Question2Result r;
    r.diag = amalg_diag(basis, n, x);
    if (!(r.diag > 0.0)) throw std::domain_error("question2_scan: amalg(x, x) = 0");
    const auto coeffs = sign_vector(basis, n, x).as_coefficients();
    const auto grid = default_grid(basis, n);
    r.grid_size = grid.size();
    std::vector<double> values(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { values[i] = signed_sum(basis, coeffs, grid[i]); });

    r.max_value = r.diag;
    r.argmax = x;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (values[i] > r.max_value) {
            r.max_value = values[i];
            r.argmax = grid[i];
        }

    const Domain d = basis.domain();
    if (one_dimensional(d) && grid.size() > 1) {
        const double h = std::abs(coordinate(grid[1]) - coordinate(grid[0]));
        const double centre = coordinate(r.argmax);
        const std::size_t fine = 400;
        std::vector<DomainPoint> local;
        for (std::size_t j = 0; j <= fine; ++j) local.push_back(point_1d(d, centre - h + 2.0 * h * j / fine));
        std::vector<double> lv(local.size());
        parallel_for(local.size(), [&](std::size_t j) { lv[j] = signed_sum(basis, coeffs, local[j]); });
        for (std::size_t j = 0; j < local.size(); ++j)
            if (lv[j] > r.max_value) {
                r.max_value = lv[j];
                r.argmax = local[j];
            }
        r.grid_size += local.size();
    }
    r.ratio = r.max_value / r.diag;
    r.argmax_distance = distance(x, r.argmax);
    r.wavelength_units = r.argmax_distance * std::pow(double(n), 1.0 / dimension(d));
    return r;
}

// ---------------------------------------------------------------------------

namespace {

struct Interval1d {
    double lo, hi;
};

struct Split {
    std::vector<Interval1d> inner, outer;
};

Split split_domain(const Basis& basis, const DomainPoint& x0, double split, double wavenumber) {
    const double c = coordinate(x0);
    double a = 0.0, b = kPi;
    switch (basis.domain()) {
        case Domain::Circle:
            split = std::min(split, kPi);
            return {{{c - split, c + split}}, {{c + split, c - split + 2.0 * kPi}}};
        case Domain::Line:
            b = std::sqrt(2.0) * wavenumber + 10.0;
            a = -b;
            break;
        case Domain::Interval:
        case Domain::SphereZonal:
            break;
        default:
            throw std::invalid_argument("correlation_profile: one-dimensional domain required");
    }
    Split s;
    const double lo = std::max(a, c - split), hi = std::min(b, c + split);
    if (hi > lo) s.inner.push_back({lo, hi});
    if (lo > a) s.outer.push_back({a, lo});
    if (b > hi) s.outer.push_back({hi, b});
    return s;
}

}  // namespace

CorrelationProfile correlation_profile(const Basis& basis, std::size_t n, const DomainPoint& x0, double split,
                                       std::size_t next_index) {
    if (!(split > 0.0)) throw std::invalid_argument("correlation_profile: split must be positive");
    if (next_index == 0) next_index = n + 1;
    const std::size_t reach = std::max(n, next_index);
    if (reach > basis.size()) throw std::out_of_range("correlation_profile: index exceeds the basis");
    CorrelationProfile p;
    p.n = n;
    p.next_index = next_index;
    p.x0 = x0;
    p.split = split;
    const auto coeffs = sign_vector(basis, n, x0).as_coefficients();
    auto integrand = [&](const DomainPoint& y) {
        CompensatedSum s;
        double phi = 0.0;
        basis.visit(y, reach, [&](std::size_t k, double v) {
            if (k <= n && coeffs[k - 1] != 0.0) s.add(coeffs[k - 1] * v);
            if (k == next_index) phi = v;
        });
        return s.value() * phi;
    };

    const RuleSpec base = rule_spec_for(basis, reach, 1);
    const Split parts = split_domain(basis, x0, split, base.wavenumber);
    auto region = [&](const std::vector<Interval1d>& pieces) {
        double total = 0.0;
        for (const auto& piece : pieces) {
            RuleSpec spec = base;
            spec.lo = piece.lo;
            spec.hi = piece.hi;
            const double coarse = integrate(make_rule(spec), integrand);
            const double fine = integrate(make_rule(spec.doubled()), integrand);
            p.quadrature_error += std::abs(fine - coarse);
            total += fine;
        }
        return total;
    };
    p.inner = region(parts.inner);
    p.outer = region(parts.outer);

    p.grid = default_grid(basis, reach);
    p.values.resize(p.grid.size());
    const bool sphere = basis.domain() == Domain::SphereZonal;
    parallel_for(p.grid.size(), [&](std::size_t i) {
        const double w = sphere ? std::sin(std::get<pt::SphereZonal>(p.grid[i]).theta) : 1.0;
        p.values[i] = integrand(p.grid[i]) * w;
    });
    return p;
}

WaveCorrelation random_wave_correlation(const Basis& basis, std::size_t n, const DomainPoint& x0, double split,
                                        std::size_t trials, std::uint64_t seed, std::size_t terms) {
    if (trials < 2) throw std::invalid_argument("random_wave_correlation: need at least two trials");
    if (n + 1 > basis.size()) throw std::out_of_range("random_wave_correlation: n + 1 exceeds the basis");
    const double lambda = basis.eigenvalue(n + 1);
    const double volume = std::isfinite(basis.volume()) ? basis.volume() : 1.0;
    const auto coeffs = sign_vector(basis, n, x0).as_coefficients();
    const RuleSpec base = rule_spec_for(basis, n + 1, 2);
    const Split parts = split_domain(basis, x0, split, base.wavenumber);

    std::vector<DomainPoint> nodes;
    std::vector<double> weights;
    for (const auto& piece : parts.outer) {
        RuleSpec spec = base;
        spec.lo = piece.lo;
        spec.hi = piece.hi;
        const auto rule = make_rule(spec);
        nodes.insert(nodes.end(), rule.nodes.begin(), rule.nodes.end());
        weights.insert(weights.end(), rule.weights.begin(), rule.weights.end());
    }
    std::vector<double> amalg(nodes.size());
    parallel_for(nodes.size(), [&](std::size_t i) { amalg[i] = signed_sum(basis, coeffs, nodes[i]); });

    WaveCorrelation w;
    w.trials = trials;
    w.outer.resize(trials);
    parallel_for(trials, [&](std::size_t t) {
        const auto wave = random_wave(1, lambda, terms, Rng(seed, t).next(), volume);
        CompensatedSum s;
        for (std::size_t i = 0; i < nodes.size(); ++i) s.add(weights[i] * amalg[i] * eval_wave(wave, nodes[i]));
        w.outer[t] = s.value();
    });
    CompensatedSum mean;
    for (double v : w.outer) mean.add(v);
    w.mean_outer = mean.value() / trials;
    CompensatedSum var;
    for (double v : w.outer) var.add((v - w.mean_outer) * (v - w.mean_outer));
    w.standard_error = std::sqrt(var.value() / (trials - 1) / trials);
    return w;
}

// ---------------------------------------------------------------------------

IndependenceReport independence_test(const Basis& basis, const std::vector<DomainPoint>& points, std::size_t n,
                                     std::size_t samples, std::uint64_t seed) {
    if (points.empty()) throw std::invalid_argument("independence_test: no points");
    if (samples < 10000) throw std::invalid_argument("independence_test: need at least 10^4 samples");
    if (n == 0 || n > basis.size()) throw std::out_of_range("independence_test: n outside the basis");
    const std::size_t m = points.size();
    IndependenceReport r;
    r.points = points;
    r.n = n;
    r.samples = samples;
    r.seed = seed;
    r.thresholds = {-1.0, 0.0, 1.0};

    const double scale = 1.0 / std::sqrt(double(n));
    std::vector<double> phi(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        basis.values(points[i], std::span<double>(phi.data() + i * n, n));
        CompensatedSum pi;
        for (std::size_t k = 0; k < n; ++k) pi.add(phi[i * n + k] * phi[i * n + k]);
        r.expected_variance.push_back(pi.value() / n);
    }

    std::vector<double> f(samples * m);
    parallel_for(samples, [&](std::size_t s) {
        Rng rng(seed, s);
        std::vector<double> acc(m, 0.0);
        std::uint64_t bits = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k % 64 == 0) bits = rng.next();
            const bool plus = (bits >> 63) != 0;
            bits <<= 1;
            for (std::size_t i = 0; i < m; ++i) acc[i] += plus ? phi[i * n + k] : -phi[i * n + k];
        }
        for (std::size_t i = 0; i < m; ++i) f[s * m + i] = acc[i] * scale;
    });

    std::vector<std::vector<double>> z(m, std::vector<double>(samples));
    for (std::size_t i = 0; i < m; ++i) {
        CompensatedSum mean;
        for (std::size_t s = 0; s < samples; ++s) mean.add(f[s * m + i]);
        const double mu = mean.value() / samples;
        CompensatedSum var;
        for (std::size_t s = 0; s < samples; ++s) var.add((f[s * m + i] - mu) * (f[s * m + i] - mu));
        r.mean.push_back(mu);
        r.variance.push_back(var.value() / (samples - 1));
        // standardize by the exact variance, not the sample one
        const double sigma = std::sqrt(r.expected_variance[i]);
        if (!(sigma > 0.0)) throw std::domain_error("independence_test: every eigenfunction vanishes at a point");
        for (std::size_t s = 0; s < samples; ++s) z[i][s] = f[s * m + i] / sigma;
        std::vector<double> sorted = z[i];
        std::sort(sorted.begin(), sorted.end());
        double ks = 0.0;
        for (std::size_t j = 0; j < samples; ++j) {
            const double F = normal_cdf(sorted[j]);
            ks = std::max({ks, double(j + 1) / samples - F, F - double(j) / samples});
        }
        r.ks.push_back(ks);
    }

    const std::size_t t = r.thresholds.size();
    std::size_t combos = 1;
    for (std::size_t i = 0; i < m; ++i) combos *= t;
    std::vector<std::vector<std::size_t>> below(m, std::vector<std::size_t>(t, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t s = 0; s < samples; ++s)
            for (std::size_t a = 0; a < t; ++a) below[i][a] += z[i][s] <= r.thresholds[a];
    for (std::size_t c = 0; c < combos; ++c) {
        std::vector<int> box(m);
        std::size_t code = c;
        double product = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            box[i] = static_cast<int>(code % t);
            code /= t;
            product *= double(below[i][box[i]]) / samples;
        }
        std::size_t hits = 0;
        for (std::size_t s = 0; s < samples; ++s) {
            bool inside = true;
            for (std::size_t i = 0; i < m && inside; ++i) inside = z[i][s] <= r.thresholds[box[i]];
            hits += inside;
        }
        const double joint = double(hits) / samples;
        r.boxes.push_back(box);
        r.joint.push_back(joint);
        r.product.push_back(product);
        r.max_gap = std::max(r.max_gap, std::abs(joint - product));
    }
    return r;
}

// ---------------------------------------------------------------------------

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need two or more points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= x.size();
    my /= y.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

ZonalFit zonal_scaling_fit(const std::vector<std::size_t>& k_list) {
    if (k_list.size() < 2) throw std::invalid_argument("zonal_scaling_fit: need two or more ladder lengths");
    const std::size_t top = *std::max_element(k_list.begin(), k_list.end()) + kEnvelopeWindow - 1;
    const Basis basis = make_basis(BasisKind::SphereZonal, top, Normalization::L2);
    const DomainPoint north = pt::SphereZonal{0.0}, south = pt::SphereZonal{kPi};
    const auto coeffs = sign_vector(basis, top, north).as_coefficients();
    std::vector<std::size_t> all(top);
    std::iota(all.begin(), all.end(), std::size_t{1});
    const auto diag = partial_sums(basis, coeffs, north, all);
    const auto anti = partial_sums(basis, coeffs, south, all);

    ZonalFit fit;
    fit.k_list = k_list;
    std::vector<double> ks;
    for (std::size_t k : k_list) {
        if (k == 0) throw std::invalid_argument("zonal_scaling_fit: ladder lengths must be positive");
        ks.push_back(double(k));
        fit.diag.push_back(diag[k - 1]);
        double env = 0.0;
        for (std::size_t j = k; j < k + kEnvelopeWindow; ++j) env = std::max(env, std::abs(anti[j - 1]));
        fit.antipodal.push_back(env);
    }
    fit.diag_exponent = loglog_slope(ks, fit.diag);
    fit.antipodal_exponent = loglog_slope(ks, fit.antipodal);
    fit.diag_exponent_n = fit.diag_exponent / 2.0;
    fit.antipodal_exponent_n = fit.antipodal_exponent / 2.0;
    return fit;
}

}  // namespace amalg
