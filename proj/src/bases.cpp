#include "amalg/bases.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <tuple>

#include "amalg/rng.hpp"

namespace amalg {

namespace {

constexpr double kPi = std::numbers::pi;

// Bessel kernels are specified up to these limits.
constexpr unsigned kMaxBesselOrder = 60;
constexpr double kMaxBesselArgument = 500.0;

struct KindName {
    BasisKind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {BasisKind::IntervalDirichlet, "interval-dirichlet"},
    {BasisKind::IntervalNeumann, "interval-neumann"},
    {BasisKind::CircleCanonical, "circle-canonical"},
    {BasisKind::CircleRandom, "circle-random"},
    {BasisKind::SquareDirichlet, "square-dirichlet"},
    {BasisKind::DiskDirichlet, "disk-dirichlet"},
    {BasisKind::QuarterDiskDirichlet, "quarterdisk-dirichlet"},
    {BasisKind::QuarterDiskNeumann, "quarterdisk-neumann"},
    {BasisKind::SphereZonal, "sphere-zonal"},
    {BasisKind::Hermite, "hermite"},
};

std::vector<double> zeros_below(unsigned order, double bound, bool derivative) {
    std::size_t guess = static_cast<std::size_t>(std::max(0.0, (bound - order) / kPi)) + 3;
    for (;;) {
        const auto table = derivative ? specfun::bessel_prime_zeros(order, guess) : specfun::bessel_zeros(order, guess);
        if (table.zeros.back() > bound) {
            std::vector<double> out;
            for (double z : table.zeros)
                if (z <= bound) out.push_back(z);
            return out;
        }
        guess *= 2;
    }
}

// Circular-sector modes J_nu(j r) {cos, sin}(nu theta) below a wavenumber bound.
// `step` is 1 for the disk, 2 for the quarter disk.
std::vector<Mode> bessel_modes(BasisKind kind, double bound) {
    std::vector<Mode> modes;
    const bool neumann = kind == BasisKind::QuarterDiskNeumann;
    const bool disk = kind == BasisKind::DiskDirichlet;
    const unsigned step = disk ? 1 : 2;
    const unsigned first = kind == BasisKind::QuarterDiskDirichlet ? 2 : 0;
    for (unsigned nu = first;; nu += step) {
        if (nu > kMaxBesselOrder) {
            // stop only once higher orders can no longer contribute
            if (nu <= bound) throw std::out_of_range("basis exceeds precomputable Bessel zero tables");
            break;
        }
        if (nu > bound + 1.0) break;
        const auto zeros = zeros_below(nu, bound, neumann);
        if (zeros.empty()) {
            if (nu > bound) break;
            continue;
        }
        for (double j : zeros) {
            Mode base;
            base.freq = static_cast<int>(nu);
            base.wavenumber = j;
            base.lambda = j * j;
            if (disk) {
                const double radial = 0.5 * std::pow(specfun::bessel_J(nu + 1, j), 2);
                const double angular = nu == 0 ? 2.0 * kPi : kPi;
                base.raw_norm = std::sqrt(radial * angular);
                base.part = 1;
                modes.push_back(base);
                if (nu > 0) {
                    base.part = 0;
                    modes.push_back(base);
                }
            } else if (neumann) {
                const double jn = specfun::bessel_J(nu, j);
                const double radial = 0.5 * (1.0 - double(nu) * nu / (j * j)) * jn * jn;
                const double angular = nu == 0 ? 0.5 * kPi : 0.25 * kPi;
                base.raw_norm = std::sqrt(radial * angular);
                base.part = 1;
                modes.push_back(base);
            } else {
                const double radial = 0.5 * std::pow(specfun::bessel_J(nu + 1, j), 2);
                base.raw_norm = std::sqrt(radial * 0.25 * kPi);
                base.part = 0;
                modes.push_back(base);
            }
        }
    }
    return modes;
}

std::vector<Mode> build_bessel(BasisKind kind, std::size_t n_max) {
    // Weyl: N(lambda) ~ area lambda / (4 pi); start with generous headroom.
    const double area = kind == BasisKind::DiskDirichlet ? kPi : 0.25 * kPi;
    double bound = std::sqrt(4.0 * kPi * n_max / area) * 1.3 + 6.0;
    for (;;) {
        if (bound > kMaxBesselArgument) throw std::out_of_range("basis exceeds precomputable Bessel zero tables");
        auto modes = bessel_modes(kind, bound);
        if (modes.size() >= n_max) {
            std::stable_sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
                // ascending eigenvalue, then angular order, then cos before sin
                return std::tuple(a.lambda, a.freq, -a.part) < std::tuple(b.lambda, b.freq, -b.part);
            });
            modes.resize(n_max);
            return modes;
        }
        bound *= 1.25;
    }
}

std::vector<Mode> build_square(std::size_t n_max) {
    double radius = std::sqrt(4.0 * n_max / kPi) + 4.0;
    for (;;) {
        std::vector<Mode> modes;
        const int r = static_cast<int>(radius);
        for (int m = 1; m <= r; ++m)
            for (int n = 1; n <= r; ++n)
                if (m * m + n * n <= r * r) {
                    Mode md;
                    md.freq = m;
                    md.freq2 = n;
                    md.lambda = double(m * m + n * n);
                    md.raw_norm = 0.5 * kPi;
                    modes.push_back(md);
                }
        std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
            return std::tuple(a.lambda, a.freq, a.freq2) < std::tuple(b.lambda, b.freq, b.freq2);
        });
        // complete once every lattice point at or below lambda_{n_max} is enumerated
        if (modes.size() >= n_max && modes[n_max - 1].lambda <= double(r * r)) {
            modes.resize(n_max);
            return modes;
        }
        radius *= 1.5;
    }
}

}  // namespace

std::string to_string(BasisKind k) {
    for (const auto& kn : kKindNames)
        if (kn.kind == k) return kn.name;
    return "?";
}

std::string to_string(Normalization m) { return m == Normalization::Raw ? "RAW" : "L2"; }

BasisKind parse_basis_kind(const std::string& s) {
    for (const auto& kn : kKindNames)
        if (s == kn.name) return kn.kind;
    // short aliases used on the command line
    if (s == "interval") return BasisKind::IntervalDirichlet;
    if (s == "circle") return BasisKind::CircleCanonical;
    if (s == "square") return BasisKind::SquareDirichlet;
    if (s == "disk") return BasisKind::DiskDirichlet;
    if (s == "quarterdisk") return BasisKind::QuarterDiskDirichlet;
    if (s == "sphere") return BasisKind::SphereZonal;
    throw std::invalid_argument("unknown basis kind: " + s);
}

Normalization parse_normalization(const std::string& s) {
    if (s == "RAW" || s == "raw") return Normalization::Raw;
    if (s == "L2" || s == "l2") return Normalization::L2;
    throw std::invalid_argument("unknown normalization mode: " + s);
}

Domain domain_of(BasisKind k) {
    switch (k) {
        case BasisKind::IntervalDirichlet:
        case BasisKind::IntervalNeumann:
            return Domain::Interval;
        case BasisKind::CircleCanonical:
        case BasisKind::CircleRandom:
            return Domain::Circle;
        case BasisKind::SquareDirichlet:
            return Domain::Square;
        case BasisKind::DiskDirichlet:
            return Domain::Disk;
        case BasisKind::QuarterDiskDirichlet:
        case BasisKind::QuarterDiskNeumann:
            return Domain::QuarterDisk;
        case BasisKind::SphereZonal:
            return Domain::SphereZonal;
        case BasisKind::Hermite:
            return Domain::Line;
    }
    throw std::invalid_argument("unknown basis kind");
}

Basis make_basis(BasisKind kind, std::size_t n_max, Normalization mode, std::optional<std::uint64_t> seed) {
    if (n_max == 0) throw std::invalid_argument("make_basis: n_max must be positive");
    if ((kind == BasisKind::CircleRandom) != seed.has_value())
        throw std::invalid_argument("make_basis: a seed is required for circle-random and only for it");

    Basis b;
    b.kind_ = kind;
    b.mode_ = mode;
    b.seed_ = seed;
    auto& modes = b.modes_;
    modes.reserve(n_max);

    switch (kind) {
        case BasisKind::IntervalDirichlet:
        case BasisKind::IntervalNeumann:
            for (std::size_t k = 1; k <= n_max; ++k) {
                Mode m;
                m.freq = static_cast<int>(k);
                m.part = kind == BasisKind::IntervalNeumann ? 1 : 0;
                m.lambda = double(k) * double(k);
                m.raw_norm = std::sqrt(0.5 * kPi);
                modes.push_back(m);
            }
            break;
        case BasisKind::CircleCanonical:
        case BasisKind::CircleRandom:
            for (std::size_t i = 0; i < n_max; ++i) {
                const std::size_t k = i / 2 + 1;
                Mode m;
                m.freq = static_cast<int>(k);
                m.part = static_cast<int>(i % 2);  // sin before cos
                m.lambda = double(k) * double(k);
                m.raw_norm = std::sqrt(kPi);
                if (kind == BasisKind::CircleRandom) {
                    Rng rng(*seed, k);
                    m.shift = rng.uniform(0.0, 2.0 * kPi);
                }
                modes.push_back(m);
            }
            break;
        case BasisKind::SquareDirichlet:
            modes = build_square(n_max);
            break;
        case BasisKind::DiskDirichlet:
        case BasisKind::QuarterDiskDirichlet:
        case BasisKind::QuarterDiskNeumann:
            modes = build_bessel(kind, n_max);
            break;
        case BasisKind::SphereZonal:
            for (std::size_t k = 1; k <= n_max; ++k) {
                Mode m;
                m.freq = static_cast<int>(k);
                m.lambda = double(k) * double(k + 1);
                modes.push_back(m);
            }
            break;
        case BasisKind::Hermite:
            for (std::size_t k = 1; k <= n_max; ++k) {
                Mode m;
                m.freq = static_cast<int>(k - 1);
                m.lambda = 2.0 * double(k - 1) + 1.0;
                modes.push_back(m);
            }
            break;
    }
    return b;
}

double Basis::volume() const {
    switch (domain()) {
        case Domain::Interval: return kPi;
        case Domain::Circle: return 2.0 * kPi;
        case Domain::Square: return kPi * kPi;
        case Domain::Disk: return kPi;
        case Domain::QuarterDisk: return 0.25 * kPi;
        case Domain::SphereZonal: return 2.0;
        case Domain::Line: return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

double Basis::eigenvalue(std::size_t k) const { return mode(k).lambda; }

const Mode& Basis::mode(std::size_t k) const {
    if (k < 1 || k > modes_.size()) throw std::out_of_range("basis index out of range");
    return modes_[k - 1];
}

void Basis::check_point(const DomainPoint& p) const {
    if (amalg::domain_of(p) != domain()) throw std::invalid_argument("point does not belong to the basis domain");
}

double Basis::eval(std::size_t k, const DomainPoint& p) const {
    mode(k);
    check_point(p);
    if (kind_ == BasisKind::SphereZonal || kind_ == BasisKind::Hermite) {
        double last = 0.0;
        visit(p, k, [&](std::size_t, double v) { last = v; });
        return last;
    }
    return eval_mode(k - 1, p) * factor(k - 1);
}

void Basis::values(const DomainPoint& p, std::span<double> out) const {
    visit(p, out.size(), [&](std::size_t k, double v) { out[k - 1] = v; });
}

double Basis::eval_mode(std::size_t idx, const DomainPoint& p) const {
    const Mode& m = modes_[idx];
    switch (kind_) {
        case BasisKind::IntervalDirichlet:
            return std::sin(m.freq * std::get<pt::Interval>(p).x);
        case BasisKind::IntervalNeumann:
            return std::cos(m.freq * std::get<pt::Interval>(p).x);
        case BasisKind::CircleCanonical:
        case BasisKind::CircleRandom: {
            const double arg = m.freq * (wrap_angle(std::get<pt::Circle>(p).x) - m.shift);
            return m.part == 0 ? std::sin(arg) : std::cos(arg);
        }
        case BasisKind::SquareDirichlet: {
            const auto& q = std::get<pt::Square>(p);
            return std::sin(m.freq * q.x) * std::sin(m.freq2 * q.y);
        }
        case BasisKind::DiskDirichlet: {
            const auto& q = std::get<pt::Disk>(p);
            const double radial = specfun::bessel_J(m.freq, m.wavenumber * q.r);
            return radial * (m.part == 1 ? std::cos(m.freq * q.theta) : std::sin(m.freq * q.theta));
        }
        case BasisKind::QuarterDiskDirichlet:
        case BasisKind::QuarterDiskNeumann: {
            const auto& q = std::get<pt::QuarterDisk>(p);
            const double radial = specfun::bessel_J(m.freq, m.wavenumber * q.r);
            return radial * (m.part == 1 ? std::cos(m.freq * q.theta) : std::sin(m.freq * q.theta));
        }
        case BasisKind::SphereZonal:
        case BasisKind::Hermite:
            break;
    }
    throw std::logic_error("eval_mode: recurrence families are evaluated through visit");
}

Basis Basis::with_negated(const std::vector<bool>& negate) const {
    if (negate.size() != modes_.size()) throw std::invalid_argument("with_negated: mask length must equal n_max");
    Basis copy = *this;
    copy.negate_ = negate;
    if (!negate_.empty())
        for (std::size_t i = 0; i < negate_.size(); ++i) copy.negate_[i] = negate_[i] != negate[i];
    return copy;
}

std::vector<double> Basis::phases() const {
    std::vector<double> out;
    if (kind_ != BasisKind::CircleRandom) return out;
    for (std::size_t i = 0; i < modes_.size(); i += 2) out.push_back(modes_[i].shift);
    return out;
}

RandomWave random_wave(int dim, double lambda, std::size_t terms, std::uint64_t seed, double volume) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("random_wave: dim must be 1 or 2");
    if (terms == 0 || !(lambda > 0.0)) throw std::invalid_argument("random_wave: need N >= 1 and lambda > 0");
    RandomWave w;
    w.dim = dim;
    w.wavenumber = std::sqrt(lambda);
    w.volume = volume;
    w.seed = seed;
    Rng amp(seed, 0), ph(seed, 1), dir(seed, 2);
    for (std::size_t i = 0; i < terms; ++i) {
        w.amplitudes.push_back(amp.normal());
        w.phases.push_back(ph.uniform(0.0, 2.0 * kPi));
        w.directions.push_back(dim == 1 ? double(dir.rademacher()) : dir.uniform(0.0, 2.0 * kPi));
    }
    return w;
}

double eval_wave(const RandomWave& w, const DomainPoint& p) {
    double x = 0.0, y = 0.0;
    if (const auto* q = std::get_if<pt::Square>(&p)) {
        x = q->x;
        y = q->y;
    } else if (const auto* d = std::get_if<pt::Disk>(&p)) {
        x = d->r * std::cos(d->theta);
        y = d->r * std::sin(d->theta);
    } else if (const auto* qd = std::get_if<pt::QuarterDisk>(&p)) {
        x = qd->r * std::cos(qd->theta);
        y = qd->r * std::sin(qd->theta);
    } else {
        x = coordinates(p)[0];
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < w.amplitudes.size(); ++i) {
        const double proj = w.dim == 1 ? w.directions[i] * x
                                       : std::cos(w.directions[i]) * x + std::sin(w.directions[i]) * y;
        sum += w.amplitudes[i] * std::cos(w.wavenumber * proj + w.phases[i]);
    }
    return std::sqrt(2.0 / w.volume) * sum / std::sqrt(double(w.amplitudes.size()));
}

}  // namespace amalg
