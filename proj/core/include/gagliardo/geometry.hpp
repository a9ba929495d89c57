#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace gagliardo {

/// Points are small dense coordinate vectors (d <= 3 in practice).
using Point = std::vector<double>;

inline constexpr double inf = std::numeric_limits<double>::infinity();

inline double dist(const Point& x, const Point& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = x[i] - y[i];
        s += t * t;
    }
    return std::sqrt(s);
}

/// Axis-aligned box, possibly with infinite extents.
struct Box {
    Point lo, hi;

    int dim() const { return static_cast<int>(lo.size()); }

    bool contains(const Point& x) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (x[i] < lo[i] || x[i] > hi[i]) return false;
        return true;
    }

    bool contains_open(const Point& x) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (x[i] <= lo[i] || x[i] >= hi[i]) return false;
        return true;
    }

    Point center() const {
        Point c(lo.size());
        for (std::size_t i = 0; i < lo.size(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
        return c;
    }

    double diameter() const {
        double s = 0.0;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            const double t = hi[i] - lo[i];
            if (std::isinf(t)) return inf;
            s += t * t;
        }
        return std::sqrt(s);
    }

    /// Euclidean distance from a point to the (closed) box.
    double distance(const Point& x) const {
        double s = 0.0;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            double t = 0.0;
            if (x[i] < lo[i]) t = lo[i] - x[i];
            else if (x[i] > hi[i]) t = x[i] - hi[i];
            s += t * t;
        }
        return std::sqrt(s);
    }

    /// Euclidean set distance between two closed boxes.
    double distance(const Box& other) const {
        double s = 0.0;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            double t = 0.0;
            if (other.hi[i] < lo[i]) t = lo[i] - other.hi[i];
            else if (other.lo[i] > hi[i]) t = other.lo[i] - hi[i];
            s += t * t;
        }
        return std::sqrt(s);
    }

    /// Whether the open interiors overlap (positive-volume intersection).
    bool overlaps_open(const Box& other) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (!(lo[i] < other.hi[i] && other.lo[i] < hi[i])) return false;
        return true;
    }

    /// Whether the closed boxes touch or overlap.
    bool touches(const Box& other) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (lo[i] > other.hi[i] || other.lo[i] > hi[i]) return false;
        return true;
    }
};

/// Surface measure of the unit sphere S^{d-1} in R^d.
inline double sphere_area(int d) {
    // 2 pi^{d/2} / Gamma(d/2); d is small so handle the usual cases directly.
    const double pi = 3.14159265358979323846;
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * pi;
        case 3: return 4.0 * pi;
        default: {
            return 2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d);
        }
    }
}

}  // namespace gagliardo
