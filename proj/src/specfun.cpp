#include "amalg/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace amalg::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

double bessel_series(unsigned m, double x) {
    // sum_k (-1)^k (x/2)^{2k+m} / (k! (k+m)!)
    const double half = 0.5 * x;
    double term = 1.0;
    for (unsigned i = 1; i <= m; ++i) term *= half / i;
    if (term == 0.0) return 0.0;
    double sum = term;
    const double q = -half * half;
    for (unsigned k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * (k + m));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

double bessel_miller(unsigned m, double x) {
    const double top = std::max(static_cast<double>(m), x);
    unsigned start = static_cast<unsigned>(top + 30.0 + std::sqrt(60.0 * top));
    start += start % 2;  // even start so the normalisation sum lines up

    double above = 0.0;
    double current = 1.0;
    double sum = 0.0;
    double result = 0.0;
    const double two_over_x = 2.0 / x;
    for (unsigned j = start; j > 0; --j) {
        const double below = j * two_over_x * current - above;
        above = current;
        current = below;
        const unsigned idx = j - 1;
        if (idx == m) result = current;
        if (idx > 0 && idx % 2 == 0) sum += 2.0 * current;
        if (std::abs(current) > 1e200) {
            current *= 1e-200;
            above *= 1e-200;
            sum *= 1e-200;
            result *= 1e-200;
        }
    }
    sum += current;
    return result / sum;
}

// Hankel expansion for orders 0 and 1, valid for x >= 20.
double bessel_hankel(unsigned nu, double x) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double last = 1e300;
    for (unsigned k = 1; k < 80; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * x);
        const double mag = std::abs(term);
        if (mag > last) break;
        last = mag;
        // term_k carries (-1)^{floor(k/2)} into P (even k) or Q (odd k)
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if (mag < 1e-17) break;
    }
    const double chi = x - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

template <class F>
double bisect(F&& f, double lo, double hi, double flo) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

template <class F>
std::vector<double> scan_zeros(F&& f, double start, std::size_t count, unsigned m) {
    constexpr double kStep = 0.25;
    std::vector<double> zeros;
    zeros.reserve(count);
    double a = start;
    double fa = f(a);
    const double limit = start + 10.0 * count + 100.0 + 2.0 * m;
    while (zeros.size() < count) {
        const double b = a + kStep;
        if (b > limit) throw ConvergenceError("bessel zero scan ran past its search window");
        const double fb = f(b);
        if (fb == 0.0) {
            zeros.push_back(b);
            a = b + 1e-9;
            fa = f(a);
            continue;
        }
        if ((fa < 0.0) != (fb < 0.0)) {
            const double z = bisect(f, a, b, fa);
            if (std::abs(f(z)) >= 1e-12) {
                throw ConvergenceError("bessel zero refinement failed for order " + std::to_string(m));
            }
            zeros.push_back(z);
        }
        a = b;
        fa = fb;
    }
    return zeros;
}

}  // namespace

double legendre_P(unsigned k, double x) {
    if (!(std::abs(x) <= 1.0 + 1e-14)) throw std::domain_error("legendre_P: |x| > 1");
    x = std::clamp(x, -1.0, 1.0);
    if (k == 0) return 1.0;
    double prev = 1.0;
    double cur = x;
    for (unsigned j = 1; j < k; ++j) {
        const double next = ((2.0 * j + 1.0) * x * cur - j * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double bessel_J(unsigned m, double x) {
    if (x < 0.0) throw std::domain_error("bessel_J: x < 0");
    if (x == 0.0) return m == 0 ? 1.0 : 0.0;
    if (x <= 1.0) return bessel_series(m, x);
    const double cut = std::max(20.0, 2.0 * m);
    if (x < cut) return bessel_miller(m, x);
    double j0 = bessel_hankel(0, x);
    if (m == 0) return j0;
    double j1 = bessel_hankel(1, x);
    for (unsigned k = 1; k < m; ++k) {
        const double j2 = 2.0 * k / x * j1 - j0;
        j0 = j1;
        j1 = j2;
    }
    return j1;
}

double bessel_J_prime(unsigned m, double x) {
    if (m == 0) return -bessel_J(1, x);
    return 0.5 * (bessel_J(m - 1, x) - bessel_J(m + 1, x));
}

BesselZeroTable bessel_zeros(unsigned m, std::size_t count) {
    if (count == 0) throw std::invalid_argument("bessel_zeros: count must be positive");
    const double start = m == 0 ? 0.25 : static_cast<double>(m);
    BesselZeroTable table{m, false, {}};
    table.zeros = scan_zeros([m](double x) { return bessel_J(m, x); }, start, count, m);
    return table;
}

BesselZeroTable bessel_prime_zeros(unsigned m, std::size_t count) {
    if (count == 0) throw std::invalid_argument("bessel_prime_zeros: count must be positive");
    const double start = m == 0 ? 0.25 : static_cast<double>(m);
    BesselZeroTable table{m, true, {}};
    auto f = [m](double x) { return bessel_J_prime(m, x); };
    table.zeros = scan_zeros(f, start, count, m);
    return table;
}

double hermite_psi(unsigned n, double x) {
    // psi_n = pi^{-1/4} exp(-x^2/2) h_n with h_0 = 1, h_1 = sqrt(2) x.
    double prev = 1.0;
    double cur = std::sqrt(2.0) * x;
    double log_scale = 0.0;
    if (n == 0) cur = 1.0;
    for (unsigned k = 1; k < n; ++k) {
        const double next = x * std::sqrt(2.0 / (k + 1.0)) * cur - std::sqrt(k / (k + 1.0)) * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > 1e150) {
            cur *= 1e-150;
            prev *= 1e-150;
            log_scale += 150.0 * std::numbers::ln10;
        }
    }
    if (cur == 0.0) return 0.0;
    const double log_mag = std::log(std::abs(cur)) + log_scale - 0.5 * x * x - 0.25 * std::log(kPi);
    if (log_mag < -745.0) return 0.0;
    return std::copysign(std::exp(log_mag), cur);
}

double dirichlet_cos_sum(unsigned n, double x) {
    const double s = std::sin(0.5 * x);
    if (std::abs(s) < 1e-3) {
        double sum = 0.0;
        for (unsigned k = 1; k <= n; ++k) sum += std::cos(k * x);
        return sum;
    }
    return std::sin(0.5 * n * x) * std::cos(0.5 * (n + 1.0) * x) / s;
}

}  // namespace amalg::specfun
