#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "amalg/bases.hpp"
#include "amalg/parallel.hpp"
#include "amalg/quad.hpp"

namespace amalg {

/// sgn(phi_k(x0)) for k = 1..n, with sgn(0) = 0 by exact comparison.
struct SignVector {
    DomainPoint base;
    std::size_t n = 0;
    std::vector<std::int8_t> signs;
    std::size_t zero_count = 0;

    std::vector<double> as_coefficients() const { return {signs.begin(), signs.end()}; }
};

SignVector sign_vector(const Basis& basis, std::size_t n, const DomainPoint& x0);

/// Hex digest of the sign pattern, embedded in field headers.
std::string sign_digest(const SignVector& s);

/// sum_k c_k phi_k(y) in one fused, compensated pass over k = 1..coeffs.size().
double signed_sum(const Basis& basis, std::span<const double> coeffs, const DomainPoint& y);

/// The signed projector sum_{k<=n} sgn(phi_k(x0)) phi_k(y).
double amalg_eval(const Basis& basis, std::size_t n, const DomainPoint& x0, const DomainPoint& y);
double amalg_eval(const Basis& basis, const SignVector& signs, const DomainPoint& y);

/// sum_{k<=n} |phi_k(x)|.
double amalg_diag(const Basis& basis, std::size_t n, const DomainPoint& x);

/// Classical projector sum_{k<=n} phi_k(x) phi_k(y).
double projector_eval(const Basis& basis, std::size_t n, const DomainPoint& x, const DomainPoint& y);

enum class FieldKind { Amalg, Projector, ProductProfile };
std::string to_string(FieldKind k);

struct AmalgField {
    BasisManifest manifest;
    SignVector signs;
    std::vector<DomainPoint> grid;
    std::vector<double> values;
    FieldKind kind = FieldKind::Amalg;
};

/// Batched amalg_eval over a grid; each value is independent of how the grid
/// is partitioned across threads.
AmalgField amalg_field(const Basis& basis, std::size_t n, const DomainPoint& x0, const std::vector<DomainPoint>& grid);
AmalgField projector_field(const Basis& basis, std::size_t n, const DomainPoint& x0,
                           const std::vector<DomainPoint>& grid);

/// Uniform grid with at least `per_wavelength` points per wavelength of
/// phi_{highest_index} (boundary points included where the domain has them).
std::vector<DomainPoint> default_grid(const Basis& basis, std::size_t highest_index, double per_wavelength = 10.0);

/// Uniform grid with `per_axis` points along each coordinate; the line uses
/// the same extent as default_grid.
std::vector<DomainPoint> uniform_grid(const Basis& basis, std::size_t highest_index, std::size_t per_axis);

/// Sign-flip variant: the floor(n/3) eigenfunctions smallest in |phi(x0)|
/// take the supplied signs, the rest keep sgn(phi(x0)).
class AmalgStar {
public:
    AmalgStar(const Basis& basis, std::vector<double> coefficients, std::vector<std::size_t> order)
        : basis_(&basis), coefficients_(std::move(coefficients)), order_(std::move(order)) {}

    double operator()(const DomainPoint& y) const { return signed_sum(*basis_, coefficients_, y); }
    const std::vector<double>& coefficients() const { return coefficients_; }
    /// 1-based indices sorted by |phi_k(x0)| ascending, ties by index.
    const std::vector<std::size_t>& permutation() const { return order_; }

private:
    const Basis* basis_;
    std::vector<double> coefficients_;
    std::vector<std::size_t> order_;
};

/// `flips` has length floor(n/3) with entries in {-1, 0, +1}.
AmalgStar amalg_star(const Basis& basis, std::size_t n, const DomainPoint& x0, std::span<const int> flips);

/// int amalg(x0, y)^2 dy; equals n - zero_count for an orthonormal basis.
/// Doubling the rule order must move the estimate by less than 1e-8 n.
double l2_mass(const Basis& basis, std::size_t n, const DomainPoint& x0, int order = 1);

struct DiagBounds {
    double lower = 0.0;       // n^{(d+1)/(2d)} reference scale (no constant)
    double value = 0.0;       // amalg(x, x)
    double upper = 0.0;       // sqrt(n Pi(x, x))
    double easylower = 0.0;   // Pi(x, x) / max_k ||phi_k||_inf
    double projector = 0.0;   // Pi(x, x)
    double sup_norm = 0.0;    // max_k ||phi_k||_inf over the grid
};

/// Requires an L2 basis. Sup norms are taken over default_grid(basis, n)
/// together with x itself.
DiagBounds diag_bounds_report(const Basis& basis, std::size_t n, const DomainPoint& x);

/// Cumulative sum_{k<=m} ||phi_k||_{L1} for m = 1..n (L2 basis).
std::vector<double> l1_partial_sums(const Basis& basis, std::size_t n);

}  // namespace amalg
