#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gagliardo/geometry.hpp"

namespace gagliardo {

/// Open domains the library supports: intervals, boxes, strips R^k x (0,1)^l,
/// and finite unions of axis-aligned boxes (L-shapes and friends).
///
/// delta(x) = d(x, boundary) is computed exactly against a precomputed cell
/// decomposition of the complement, so it is correct for overlapping unions.
class Domain {
  public:
    enum class Kind { Interval, BoxDomain, Strip, BoxUnion };

    static Domain interval(double a, double b);
    static Domain box(std::vector<std::pair<double, double>> sides);
    static Domain strip(int unbounded_axes, int bounded_axes);
    static Domain box_union(std::vector<Box> parts);
    /// [0,2]x[0,1] u [0,1]x[1,2] with the reentrant corner at (1,1).
    static Domain l_shape();

    Kind kind() const { return kind_; }
    int dimension() const { return dim_; }
    bool contains(const Point& x) const;
    /// Distance to the boundary; 0 outside the domain. 1-Lipschitz.
    double delta(const Point& x) const;
    double diam() const { return diam_; }
    bool bounded() const { return !std::isinf(diam_); }
    int strip_unbounded_axes() const { return strip_k_; }
    int strip_bounded_axes() const { return strip_l_; }

    /// Bounding box; infinite extents for strips.
    const Box& bounding_box() const { return bbox_; }
    const std::vector<Box>& parts() const { return parts_; }

    /// Distance from a closed box to the domain boundary (0 if the box meets
    /// the complement).
    double boundary_distance(const Box& b) const;
    /// Whether the closed box contains any domain point.
    bool intersects(const Box& b) const;

    std::string name() const;

  private:
    Domain() = default;
    void finalize();

    Kind kind_ = Kind::Interval;
    int dim_ = 1;
    int strip_k_ = 0, strip_l_ = 0;
    double diam_ = 0.0;
    Box bbox_;
    std::vector<Box> parts_;       // covering boxes
    std::vector<Box> complement_;  // cell decomposition of the complement
};

}  // namespace gagliardo
