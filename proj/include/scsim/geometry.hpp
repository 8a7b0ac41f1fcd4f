#pragma once

#include <cmath>
#include <stdexcept>

namespace scsim {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Disc-shaped deployment region.
struct Region {
    Point center;
    double radius = 0.0;

    Region() = default;
    Region(Point c, double r) : center(c), radius(r) {
        if (r <= 0.0) throw std::invalid_argument("Region: radius must be positive");
    }

    double area() const { return M_PI * radius * radius; }

    bool contains(const Point& p) const {
        const double dx = p.x - center.x;
        const double dy = p.y - center.y;
        return dx * dx + dy * dy <= radius * radius;
    }
};

inline double pairwise_distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

} // namespace scsim
