#include "amalg/domain.hpp"

#include <algorithm>
#include <stdexcept>

namespace amalg {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSlack = 1e-12;

void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}
}  // namespace

DomainPoint make_point(Domain d, double a, double b) {
    switch (d) {
        case Domain::Interval:
            require(a >= -kSlack && a <= kPi + kSlack, "interval point outside [0, pi]");
            return pt::Interval{a};
        case Domain::Circle:
            return pt::Circle{wrap_angle(a)};
        case Domain::Square:
            require(a >= -kSlack && a <= kPi + kSlack && b >= -kSlack && b <= kPi + kSlack,
                    "square point outside [0, pi]^2");
            return pt::Square{a, b};
        case Domain::Disk:
            require(a >= 0.0 && a <= 1.0 + kSlack, "disk radius outside [0, 1]");
            return pt::Disk{a, wrap_angle(b)};
        case Domain::QuarterDisk:
            require(a >= 0.0 && a <= 1.0 + kSlack, "quarter-disk radius outside [0, 1]");
            require(b >= -kSlack && b <= 0.5 * kPi + kSlack, "quarter-disk angle outside [0, pi/2]");
            return pt::QuarterDisk{a, b};
        case Domain::SphereZonal:
            require(a >= -kSlack && a <= kPi + kSlack, "colatitude outside [0, pi]");
            return pt::SphereZonal{std::clamp(a, 0.0, kPi)};
        case Domain::Line:
            return pt::Line{a};
    }
    throw std::invalid_argument("unknown domain");
}

std::vector<double> coordinates(const DomainPoint& p) {
    return std::visit(
        [](const auto& q) -> std::vector<double> {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, pt::Square>) {
                return {q.x, q.y};
            } else if constexpr (std::is_same_v<T, pt::Disk> || std::is_same_v<T, pt::QuarterDisk>) {
                return {q.r, q.theta};
            } else if constexpr (std::is_same_v<T, pt::SphereZonal>) {
                return {q.theta};
            } else {
                return {q.x};
            }
        },
        p);
}

std::vector<std::string> coordinate_names(Domain d) {
    switch (d) {
        case Domain::Square:
            return {"x", "y"};
        case Domain::Disk:
        case Domain::QuarterDisk:
            return {"r", "theta"};
        case Domain::SphereZonal:
            return {"theta"};
        default:
            return {"x"};
    }
}

double distance(const DomainPoint& a, const DomainPoint& b) {
    if (a.index() != b.index()) throw std::invalid_argument("distance: points from different domains");
    switch (domain_of(a)) {
        case Domain::Circle: {
            const double d = std::abs(std::get<pt::Circle>(a).x - std::get<pt::Circle>(b).x);
            return std::min(d, 2.0 * kPi - d);
        }
        case Domain::Square: {
            const auto& p = std::get<pt::Square>(a);
            const auto& q = std::get<pt::Square>(b);
            return std::hypot(p.x - q.x, p.y - q.y);
        }
        case Domain::Disk:
        case Domain::QuarterDisk: {
            const auto ca = coordinates(a);
            const auto cb = coordinates(b);
            return std::hypot(ca[0] * std::cos(ca[1]) - cb[0] * std::cos(cb[1]),
                              ca[0] * std::sin(ca[1]) - cb[0] * std::sin(cb[1]));
        }
        default:
            return std::abs(coordinates(a)[0] - coordinates(b)[0]);
    }
}

int dimension(Domain d) {
    switch (d) {
        case Domain::Square:
        case Domain::Disk:
        case Domain::QuarterDisk:
        case Domain::SphereZonal:
            return 2;
        default:
            return 1;
    }
}

std::string to_string(Domain d) {
    switch (d) {
        case Domain::Interval: return "interval";
        case Domain::Circle: return "circle";
        case Domain::Square: return "square";
        case Domain::Disk: return "disk";
        case Domain::QuarterDisk: return "quarterdisk";
        case Domain::SphereZonal: return "sphere-zonal";
        case Domain::Line: return "line";
    }
    return "?";
}

}  // namespace amalg
