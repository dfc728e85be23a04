#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace amalg::specfun {

/// Raised when a root or series routine fails to converge. For the
/// supported parameter ranges this indicates a kernel bug.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Legendre polynomial P_k(x) by upward three-term recurrence.
/// Throws std::domain_error if |x| > 1 + 1e-14.
double legendre_P(unsigned k, double x);

/// Bessel function of the first kind J_m(x), x >= 0.
///
/// Below x = max(20, 2m) the value comes from Miller's backward recurrence
/// normalised by J_0 + 2 sum J_{2k} = 1; above it J_0 and J_1 come from the
/// Hankel asymptotic expansion and are carried upward to order m (stable
/// because m < x there).
double bessel_J(unsigned m, double x);

/// dJ_m/dx = (J_{m-1} - J_{m+1}) / 2, with J_0' = -J_1.
double bessel_J_prime(unsigned m, double x);

/// Ascending list of the first positive zeros of J_m (or of J_m').
struct BesselZeroTable {
    unsigned order = 0;
    bool derivative = false;
    std::vector<double> zeros;
};

/// First `count` positive zeros of J_m, bracketed by sign changes on a grid
/// of step 0.25 and refined by bisection.
BesselZeroTable bessel_zeros(unsigned m, std::size_t count);

/// First `count` positive zeros of J_m' (the trivial zero at x = 0 for m >= 1
/// is not listed).
BesselZeroTable bessel_prime_zeros(unsigned m, std::size_t count);

/// L2(R)-orthonormal Hermite function psi_n(x), unit norm (pi^{-1/4} prefactor).
/// The recurrence runs on a rescaled sequence so that the Gaussian factor is
/// applied once at the end; returns 0 where the result underflows.
double hermite_psi(unsigned n, double x);

/// sum_{k=1}^n cos(kx) via the Dirichlet closed form; direct summation near
/// multiples of 2 pi.
double dirichlet_cos_sum(unsigned n, double x);

}  // namespace amalg::specfun
