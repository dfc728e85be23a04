#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

namespace amalg {

enum class Domain { Interval, Circle, Square, Disk, QuarterDisk, SphereZonal, Line };

namespace pt {
struct Interval { double x; };            // [0, pi]
struct Circle { double x; };              // reduced to [0, 2 pi)
struct Square { double x, y; };           // [0, pi]^2
struct Disk { double r, theta; };         // unit disk, polar
struct QuarterDisk { double r, theta; };  // theta in [0, pi/2]
struct SphereZonal { double theta; };     // colatitude in [0, pi]
struct Line { double x; };                // R
}  // namespace pt

using DomainPoint =
    std::variant<pt::Interval, pt::Circle, pt::Square, pt::Disk, pt::QuarterDisk, pt::SphereZonal, pt::Line>;

inline double wrap_angle(double x) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(x, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

inline Domain domain_of(const DomainPoint& p) { return static_cast<Domain>(p.index()); }

/// Builds a point of the given domain from up to two coordinates. Circle
/// coordinates are reduced mod 2 pi; other coordinates are range-checked.
DomainPoint make_point(Domain d, double a, double b = 0.0);

/// Coordinates as stored (one or two entries).
std::vector<double> coordinates(const DomainPoint& p);

/// Column names for CSV output, in the order of coordinates().
std::vector<std::string> coordinate_names(Domain d);

/// Geodesic / Euclidean distance inside the domain (circle distance wraps).
double distance(const DomainPoint& a, const DomainPoint& b);

/// Manifold dimension used for n^{1/d} scalings (the zonal ladder lives on S^2).
int dimension(Domain d);

std::string to_string(Domain d);

}  // namespace amalg
