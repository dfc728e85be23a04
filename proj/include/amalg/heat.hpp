#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "amalg/amalg.hpp"
#include "amalg/bases.hpp"

namespace amalg {

/// The catalog is too short to push the heat expansion tail below 1e-12.
class BasisTooShort : public std::runtime_error {
public:
    BasisTooShort(const std::string& what, double achievable_tail, double lambda_needed)
        : std::runtime_error(what), achievable_tail(achievable_tail), lambda_needed(lambda_needed) {}
    double achievable_tail;
    double lambda_needed;
};

/// Amalg(z, z) vanishes, so the certificate ratio is undefined.
class DegenerateCertificate : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kHeatTail = 1e-12;

/// Whether the domain has a lambda = 0 constant eigenfunction that the
/// catalog omits (Neumann, periodic, sphere).
bool has_constant_mode(const Basis& basis);

/// Smallest N with exp(-lambda_N t) < 1e-12.
std::size_t heat_cutoff(const Basis& basis, double t);

/// Truncated expansion p_t(z, y) = [1/vol] + sum_{k<=N} e^{-lambda_k t} phi_k(z) phi_k(y).
class HeatKernel {
public:
    HeatKernel(const Basis& basis, double t, const DomainPoint& z);

    double operator()(const DomainPoint& y) const;
    double t() const { return t_; }
    std::size_t cutoff() const { return coefficients_.size(); }
    double constant() const { return constant_; }
    const std::vector<double>& coefficients() const { return coefficients_; }

private:
    const Basis* basis_;
    double t_;
    double constant_ = 0.0;
    std::vector<double> coefficients_;
};

struct HeatWeight {
    DomainPoint z;
    double t = 0.0;
    std::size_t n_cut = 0;
    std::vector<DomainPoint> grid;
    std::vector<double> values;  // clamped at 0
    double raw_min = 0.0;        // most negative raw value before clamping
    double p_max = 0.0;
    double tail = 0.0;           // e^{-lambda_{N_cut} t}
};

HeatWeight heat_kernel(const Basis& basis, double t, const DomainPoint& z, const std::vector<DomainPoint>& grid);

/// int p_t(z, y) dy; 1 when the domain has a constant mode.
double heat_mass(const Basis& basis, double t, const DomainPoint& z);

/// |int p_t(z, y) phi_k(y) dy - e^{-lambda_k t} phi_k(z)|.
double semigroup_error(const Basis& basis, double t, const DomainPoint& z, std::size_t k);

struct Sandwich {
    double lower = 0.0;         // e^{-alpha} amalg(x, x)
    double mid = 0.0;           // int p_t(x, y) amalg(x, y) dy by quadrature
    double mid_identity = 0.0;  // sum_k e^{-lambda_k t} |phi_k(x)|
    double upper = 0.0;         // amalg(x, x)
    double t = 0.0;
    double alpha = 0.0;

    bool holds(double rel = 1e-6) const {
        const double slack = rel * std::abs(upper);
        return lower <= mid + slack && mid <= upper + slack;
    }
};

/// Heat-weighted average of amalg(x, .) at t = alpha / lambda_n.
Sandwich sandwich_check(const Basis& basis, std::size_t n, const DomainPoint& x, double alpha);

struct Certificate {
    BasisManifest manifest;
    std::size_t n = 0;
    DomainPoint z;
    double phi_next_z = 0.0;    // phi_{n+1}(z) > 0 after the sign flip
    int phi_sign = 1;           // sign applied to phi_{n+1}
    double amalg_zz = 0.0;
    double amalg_max = 0.0;     // max_w amalg(z, w) over the search grid
    double kappa = 1.0;
    double alpha = 0.0;         // 1 / (4 kappa)
    double t = 0.0;             // alpha / lambda_{n+1}
    std::size_t n_cut = 0;
    double p_max = 0.0;
    double p_raw_min = 0.0;
    Sandwich sandwich;
    double weighted = 0.0;      // int p_t amalg phi_{n+1}
    double lower_x = 0.0;       // X = e^{-alpha}(amalg_zz + M) - M
    bool weighted_bound_holds = false;  // weighted >= X phi_{n+1}(z)
    double constant_check = 0.0;        // e^{-alpha}(1 + kappa) - kappa, >= 1/2
    double integral = 0.0;      // I = int (1 - p_t/p_max) amalg phi_{n+1}
    double integral_identity = 0.0;  // -int (p_t/p_max) amalg phi_{n+1}
    double orthogonality_residue = 0.0;
    double semigroup_residue = 0.0;
    double quadrature_error = 0.0;
    double ratio = 0.0;         // R = phi(z) amalg(z,z) / (2 n |I|)
    std::size_t grid_size = 0;
};

/// Runs the full proof chain on a basis that is long enough for the heat
/// expansion at t = 1/(4 kappa lambda_{n+1}). `forced_z` skips the argmax
/// search. Throws DegenerateCertificate when amalg(z, z) = 0.
Certificate theorem2_certificate(const Basis& basis, std::size_t n, const std::vector<DomainPoint>& search_grid,
                                 std::optional<DomainPoint> forced_z = std::nullopt);

}  // namespace amalg
