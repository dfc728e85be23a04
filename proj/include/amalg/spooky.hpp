#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "amalg/amalg.hpp"
#include "amalg/bases.hpp"

namespace amalg {

// ---------------------------------------------------------------------------
// Spooky action classification

enum class SpookyClass { Strong, NoneDetected, Inconclusive, Diagonal };
std::string to_string(SpookyClass c);

/// Finite-n cutoffs for the asymptotic definition. Tool constants.
struct SpookyThresholds {
    double strong = 0.05;  // |v_n| / n
    double weak = 3.0;     // |v_n| / (sqrt(n) (log n)^c0)
    double log_power = 1.0;
};

struct SpookyScan {
    DomainPoint x;
    DomainPoint y;
    std::vector<std::size_t> n_list;
    std::vector<double> values;       // amalg^(n)(x, y)
    std::vector<double> by_n;         // v_n / n
    std::vector<double> by_sqrt_n;    // v_n / sqrt(n)
    SpookyThresholds thresholds;
    SpookyClass classification = SpookyClass::Inconclusive;
};

/// Evaluates amalg^(n)(x, y) for every n in the ascending list in one pass
/// and classifies over the top half of the list. x == y is flagged Diagonal.
SpookyScan spooky_scan(const Basis& basis, const DomainPoint& x, const DomainPoint& y,
                       const std::vector<std::size_t>& n_list, SpookyThresholds thresholds = {});

// ---------------------------------------------------------------------------
// Closed-form reference checks

struct Prop3Result {
    std::size_t n = 0;
    double x = 0.0;
    double y = 0.0;          // argmax
    double diag = 0.0;
    double value = 0.0;      // amalg(x, y) at the argmax
    double ratio = 0.0;
    double c_opt = 0.0;      // n (y - x)
    double profile_gap = 0.0;  // max |scan - analytic profile| for c in [0.5, 2]
};

inline constexpr double kProp3Offset = 1e-12;

/// Interval Dirichlet (RAW) at x = pi/2 + 1e-12; y scanned over [x, x + 3/n]
/// in steps of 0.01/n.
Prop3Result verify_prop3(std::size_t n);

/// n/2 + (n / 4c)(2 - 2 cos c - 2c + 2 sin c).
double prop3_profile(std::size_t n, double c);

/// amalg^(2n)(2 pi / 3, 0) on the canonical circle (RAW).
double verify_prop4(std::size_t n);

struct Prop5Result {
    std::size_t n = 0;  // pairs; the kernel has 2n terms
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double x = 0.0;
    double mean_diag = 0.0;
    double expected_diag = 0.0;                // 4n / pi
    std::vector<double> separations;           // |y - x|
    std::vector<double> offdiag_mean;          // mean amalg(x, x + d)
    std::vector<double> offdiag_mean_abs;      // mean |amalg(x, x + d)|
    std::vector<double> offdiag_expected;      // (4/pi) D_n(d)
    double c1 = 8.0;
    double c2 = 1.0;
    double sup_threshold = 0.0;                // c1 (log n)^c2 sqrt(n)
    double sup_max = 0.0;                      // largest sup over trials
    double sup_bound_rate = 0.0;
};

/// Monte Carlo over randomized circle bases; trial t uses a basis seed drawn
/// from stream t of `seed`.
Prop5Result verify_prop5(std::size_t n, std::size_t trials, std::uint64_t seed, double x = 1.0);

/// Average over `samples` uniform phases of sgn(sin(k(x - s))) sin(k(y - s)).
/// Its expectation is (2/pi) cos(k(y - x)).
double prop5_phase_average(unsigned k, double x, double y, std::size_t samples, std::uint64_t seed);

struct Prop6Result {
    double x = 1.0;
    std::size_t n = 0;
    double diag_ratio = 0.0;    // amalg(x, x) / n
    double spooky_ratio = 0.0;  // amalg(x, 3x) / n
};

/// Interval Dirichlet (RAW), 0 < x < pi/3.
Prop6Result verify_prop6(double x, std::size_t n);

/// amalg^(m)(x, 3x) / m for m = 1..n_max.
std::vector<double> prop6_series(double x, std::size_t n_max);

// ---------------------------------------------------------------------------
// Local structure near the diagonal

struct Question2Result {
    double diag = 0.0;
    double max_value = 0.0;
    double ratio = 0.0;            // max_y amalg(x, y) / amalg(x, x)
    DomainPoint argmax;
    double argmax_distance = 0.0;
    double wavelength_units = 0.0; // argmax_distance * n^{1/d}
    std::size_t grid_size = 0;
};

/// Grid scan (default_grid at 10 points per wavelength) plus a local refinement
/// around the best grid point on one-dimensional domains. Requires L2.
Question2Result question2_scan(const Basis& basis, std::size_t n, const DomainPoint& x);

// ---------------------------------------------------------------------------
// Correlation with the next eigenfunction

struct CorrelationProfile {
    std::size_t n = 0;
    std::size_t next_index = 0;
    DomainPoint x0;
    double split = 0.0;
    std::vector<DomainPoint> grid;
    std::vector<double> values;    // amalg(x0, y) phi_next(y) w(y)
    double inner = 0.0;            // d(x0, y) < split
    double outer = 0.0;
    double quadrature_error = 0.0;
};

/// One-dimensional domains only (interval, circle, zonal sphere, line).
/// next_index defaults to n + 1.
CorrelationProfile correlation_profile(const Basis& basis, std::size_t n, const DomainPoint& x0, double split,
                                       std::size_t next_index = 0);

struct WaveCorrelation {
    std::size_t trials = 0;
    double mean_outer = 0.0;
    double standard_error = 0.0;
    std::vector<double> outer;
};

/// Outer correlation integral with phi_next replaced by Berry random waves of
/// wavenumber sqrt(lambda_{n+1}), one wave per trial.
WaveCorrelation random_wave_correlation(const Basis& basis, std::size_t n, const DomainPoint& x0, double split,
                                        std::size_t trials, std::uint64_t seed, std::size_t terms = 64);

// ---------------------------------------------------------------------------
// Independence Monte Carlo

struct IndependenceReport {
    std::vector<DomainPoint> points;
    std::size_t n = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<double> mean;          // of f_i
    std::vector<double> variance;      // of f_i
    std::vector<double> expected_variance;  // Pi(x_i, x_i) / n
    std::vector<double> ks;            // of f_i / sigma_i against N(0, 1)
    std::vector<double> thresholds;    // box edges a in {-1, 0, 1}
    std::vector<std::vector<int>> boxes;  // threshold index per point
    std::vector<double> joint;
    std::vector<double> product;
    double max_gap = 0.0;
};

/// f_i = n^{-1/2} sum_k eps_k phi_k(x_i) with Rademacher eps. Sample s draws
/// from stream s of `seed`.
IndependenceReport independence_test(const Basis& basis, const std::vector<DomainPoint>& points, std::size_t n,
                                     std::size_t samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Zonal ladder scalings

struct ZonalFit {
    std::vector<std::size_t> k_list;
    std::vector<double> diag;       // sum_{k<=K} sqrt(k + 1/2)
    std::vector<double> antipodal;  // envelope of |sum (-1)^k sqrt(k + 1/2)|
    double diag_exponent = 0.0;     // in K
    double antipodal_exponent = 0.0;
    double diag_exponent_n = 0.0;   // K ~ sqrt(n)
    double antipodal_exponent_n = 0.0;
};

inline constexpr std::size_t kEnvelopeWindow = 10;

ZonalFit zonal_scaling_fit(const std::vector<std::size_t>& k_list);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace amalg
