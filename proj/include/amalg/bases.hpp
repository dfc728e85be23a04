#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "amalg/domain.hpp"
#include "amalg/specfun.hpp"

namespace amalg {

enum class BasisKind {
    IntervalDirichlet,
    IntervalNeumann,
    CircleCanonical,
    CircleRandom,
    SquareDirichlet,
    DiskDirichlet,
    QuarterDiskDirichlet,
    QuarterDiskNeumann,
    SphereZonal,
    Hermite,
};

enum class Normalization { Raw, L2 };

inline constexpr int kTieBreakRuleVersion = 1;

std::string to_string(BasisKind k);
std::string to_string(Normalization m);
BasisKind parse_basis_kind(const std::string& s);  // accepts the kebab-case names
Normalization parse_normalization(const std::string& s);
Domain domain_of(BasisKind k);

/// One eigenfunction of a catalog basis.
///
/// The meaning of the integer fields depends on the basis kind:
///   interval/circle: freq = k, part = 0 (sin) or 1 (cos), shift = x_k;
///   square:          freq = m, freq2 = n;
///   disk/quarterdisk: freq = angular order, wavenumber = Bessel zero, part as circle;
///   sphere/hermite:  freq = degree.
struct Mode {
    int freq = 0;
    int freq2 = 0;
    int part = 0;
    double wavenumber = 0.0;
    double shift = 0.0;
    double raw_norm = 1.0;  // L2 norm of the RAW evaluator w.r.t. the domain measure
    double lambda = 0.0;
};

class Basis;

/// Descriptor embedded in every output file.
struct BasisManifest {
    BasisKind kind;
    std::size_t n_max;
    Normalization mode;
    std::optional<std::uint64_t> seed;
    int tie_break_rule_version = kTieBreakRuleVersion;
};

/// Ordered catalog of eigenpairs over one of the closed-form domains.
///
/// Immutable after construction. Indices are 1-based to match the usual
/// phi_1, ..., phi_n labelling; the constant mode of Neumann/periodic domains
/// is not part of the catalog (the heat kernel adds it explicitly).
class Basis {
public:
    BasisKind kind() const { return kind_; }
    Domain domain() const { return domain_of(kind_); }
    Normalization mode() const { return mode_; }
    std::size_t size() const { return modes_.size(); }
    std::optional<std::uint64_t> seed() const { return seed_; }
    double volume() const;
    BasisManifest manifest() const { return {kind_, modes_.size(), mode_, seed_, kTieBreakRuleVersion}; }

    /// lambda_k, nondecreasing in k.
    double eigenvalue(std::size_t k) const;
    const Mode& mode(std::size_t k) const;

    /// phi_k(p) under the basis normalization.
    double eval(std::size_t k, const DomainPoint& p) const;

    /// Calls f(k, phi_k(p)) for k = 1..n in order. Recurrence-based families
    /// (zonal ladder, Hermite) are generated in a single pass.
    template <class F>
    void visit(const DomainPoint& p, std::size_t n, F&& f) const;

    /// Fills out[k-1] = phi_k(p) for k = 1..out.size().
    void values(const DomainPoint& p, std::span<double> out) const;

    /// Copy with phi_k replaced by -phi_k wherever negate[k-1] is true.
    Basis with_negated(const std::vector<bool>& negate) const;

    /// Phases x_k of the circle-random basis (empty otherwise).
    std::vector<double> phases() const;

    friend Basis make_basis(BasisKind, std::size_t, Normalization, std::optional<std::uint64_t>);

private:
    double eval_mode(std::size_t idx, const DomainPoint& p) const;
    double factor(std::size_t idx) const {
        double s = mode_ == Normalization::L2 ? 1.0 / modes_[idx].raw_norm : 1.0;
        return negate_.empty() || !negate_[idx] ? s : -s;
    }
    void check_point(const DomainPoint& p) const;

    BasisKind kind_ = BasisKind::IntervalDirichlet;
    Normalization mode_ = Normalization::Raw;
    std::optional<std::uint64_t> seed_;
    std::vector<Mode> modes_;
    std::vector<bool> negate_;
};

/// Builds the first n_max eigenpairs of the given kind. A seed is required
/// for (and only for) circle-random.
Basis make_basis(BasisKind kind, std::size_t n_max, Normalization mode,
                 std::optional<std::uint64_t> seed = std::nullopt);

// ---------------------------------------------------------------------------
// Berry random wave surrogate

struct RandomWave {
    int dim = 1;
    double wavenumber = 1.0;  // sqrt(lambda)
    double volume = 1.0;
    std::uint64_t seed = 0;
    std::vector<double> amplitudes;
    std::vector<double> phases;
    std::vector<double> directions;  // angle in 2D; +-1 in 1D
};

/// f(p) = sqrt(2/vol) N^{-1/2} sum a_n cos(<k_n, p> + eps_n) with a_n ~ N(0,1),
/// eps_n ~ U[0, 2 pi), |k_n| = sqrt(lambda).
RandomWave random_wave(int dim, double lambda, std::size_t terms, std::uint64_t seed, double volume = 1.0);
double eval_wave(const RandomWave& w, const DomainPoint& p);

// ---------------------------------------------------------------------------

template <class F>
void Basis::visit(const DomainPoint& p, std::size_t n, F&& f) const {
    if (n > modes_.size()) throw std::out_of_range("Basis::visit: n exceeds n_max");
    check_point(p);
    if (kind_ == BasisKind::SphereZonal) {
        const double x = std::cos(std::get<pt::SphereZonal>(p).theta);
        double prev = 1.0;
        double cur = x;
        for (std::size_t k = 1; k <= n; ++k) {
            // modes_[k-1] is degree k
            f(k, cur * std::sqrt(k + 0.5) * factor(k - 1));
            const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
            prev = cur;
            cur = next;
        }
        return;
    }
    if (kind_ == BasisKind::Hermite) {
        const double x = std::get<pt::Line>(p).x;
        // rescaled orthonormal recurrence; psi = h * exp(log_scale - x^2/2) * pi^{-1/4}
        double prev = 0.0;
        double cur = 1.0;
        double log_scale = 0.0;
        const double base = -0.5 * x * x - 0.25 * std::log(3.14159265358979323846);
        double scale = std::exp(base);
        for (std::size_t k = 1; k <= n; ++k) {
            const unsigned deg = static_cast<unsigned>(k - 1);
            double value;
            if (scale > 1e-300) {
                value = cur * scale;
            } else if (cur == 0.0) {
                value = 0.0;
            } else {
                const double lm = std::log(std::abs(cur)) + log_scale + base;
                value = lm < -745.0 ? 0.0 : std::copysign(std::exp(lm), cur);
            }
            f(k, value * factor(k - 1));
            const double next = deg == 0 ? std::sqrt(2.0) * x * cur
                                         : x * std::sqrt(2.0 / (deg + 1.0)) * cur -
                                               std::sqrt(deg / (deg + 1.0)) * prev;
            prev = cur;
            cur = next;
            if (std::abs(cur) > 1e150) {
                cur *= 1e-150;
                prev *= 1e-150;
                log_scale += 150.0 * 2.302585092994045684;
                scale = std::exp(log_scale + base);
            }
        }
        return;
    }
    for (std::size_t k = 1; k <= n; ++k) f(k, eval_mode(k - 1, p) * factor(k - 1));
}

}  // namespace amalg
