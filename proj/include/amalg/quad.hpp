#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "amalg/bases.hpp"
#include "amalg/domain.hpp"
#include "amalg/parallel.hpp"

namespace amalg {

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Nodes and positive weights over one domain. Weights carry the measure
/// (r dr dtheta on disks, sin(theta) dtheta on the zonal ladder).
struct QuadRule {
    Domain domain = Domain::Interval;
    std::vector<DomainPoint> nodes;
    std::vector<double> weights;
    int order = 1;
};

/// Gauss-Legendre nodes and weights on [-1, 1]; tables are cached per size.
struct GaussTable {
    std::vector<double> x;
    std::vector<double> w;
};
const GaussTable& gauss_legendre(std::size_t n);

/// Recipe for a rule. `wavenumber` is the largest sqrt(lambda) the
/// integrand carries; the factory places at least 20 nodes per wavelength
/// (never fewer than 10) and multiplies the resolution by `order`.
///
/// `lo`/`hi` restrict one-dimensional domains (theta for the zonal ladder,
/// x otherwise); leave them NaN for the whole domain.
struct RuleSpec {
    Domain domain = Domain::Interval;
    int order = 1;
    double wavenumber = 1.0;
    double lo = std::nan("");
    double hi = std::nan("");

    RuleSpec doubled() const {
        RuleSpec s = *this;
        s.order *= 2;
        return s;
    }
};

QuadRule make_rule(const RuleSpec& spec);
inline QuadRule make_rule(Domain d, int order, double wavenumber = 1.0) {
    return make_rule(RuleSpec{d, order, wavenumber});
}

/// Spec resolving products of eigenfunctions with index <= highest_index.
RuleSpec rule_spec_for(const Basis& basis, std::size_t highest_index, int order = 1);
inline QuadRule rule_for(const Basis& basis, std::size_t highest_index, int order = 1) {
    return make_rule(rule_spec_for(basis, highest_index, order));
}

/// sum_i w_i f(p_i). Node evaluations may run concurrently; the reduction is
/// ordered and compensated, so the result does not depend on the thread count.
template <class F>
double integrate(const QuadRule& rule, F&& f) {
    std::vector<double> values(rule.nodes.size());
    parallel_for(values.size(), [&](std::size_t i) { values[i] = f(rule.nodes[i]); });
    CompensatedSum sum;
    for (std::size_t i = 0; i < values.size(); ++i) sum.add(rule.weights[i] * values[i]);
    return sum.value();
}

struct CheckedIntegral {
    double value = 0.0;     // estimate at the doubled order
    double error = 0.0;     // |I(2 order) - I(order)|
    int order = 1;
};

/// Integrates at spec.order and at twice that order. Throws QuadratureError
/// when the two estimates differ by more than `tolerance`.
template <class F>
CheckedIntegral integrate_checked(const RuleSpec& spec, F&& f, double tolerance) {
    const double coarse = integrate(make_rule(spec), f);
    const RuleSpec fine_spec = spec.doubled();
    const double fine = integrate(make_rule(fine_spec), f);
    CheckedIntegral out{fine, std::abs(fine - coarse), fine_spec.order};
    if (!(out.error <= tolerance)) {
        throw QuadratureError("quadrature did not converge: doubling moved the estimate by " +
                              std::to_string(out.error));
    }
    return out;
}

}  // namespace amalg
