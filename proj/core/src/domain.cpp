#include "gagliardo/domain.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gagliardo {

Domain Domain::interval(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("interval: need a < b");
    Domain d;
    d.kind_ = Kind::Interval;
    d.dim_ = 1;
    d.parts_ = {Box{{a}, {b}}};
    d.finalize();
    return d;
}

Domain Domain::box(std::vector<std::pair<double, double>> sides) {
    if (sides.empty()) throw std::invalid_argument("box: need >= 1 axis");
    Box b;
    for (auto& [lo, hi] : sides) {
        if (!(lo < hi)) throw std::invalid_argument("box: need lo < hi on every axis");
        b.lo.push_back(lo);
        b.hi.push_back(hi);
    }
    Domain d;
    d.kind_ = Kind::BoxDomain;
    d.dim_ = b.dim();
    d.parts_ = {b};
    d.finalize();
    return d;
}

Domain Domain::strip(int unbounded_axes, int bounded_axes) {
    if (unbounded_axes < 1 || bounded_axes < 1)
        throw std::invalid_argument("strip: need k >= 1 unbounded and l >= 1 bounded axes");
    Domain d;
    d.kind_ = Kind::Strip;
    d.strip_k_ = unbounded_axes;
    d.strip_l_ = bounded_axes;
    d.dim_ = unbounded_axes + bounded_axes;
    Box b;
    for (int i = 0; i < unbounded_axes; ++i) {
        b.lo.push_back(-inf);
        b.hi.push_back(inf);
    }
    for (int i = 0; i < bounded_axes; ++i) {
        b.lo.push_back(0.0);
        b.hi.push_back(1.0);
    }
    d.parts_ = {b};
    d.finalize();
    return d;
}

Domain Domain::box_union(std::vector<Box> parts) {
    if (parts.empty()) throw std::invalid_argument("box_union: need >= 1 part");
    const int dim = parts.front().dim();
    for (const Box& b : parts)
        if (b.dim() != dim) throw std::invalid_argument("box_union: mixed dimensions");
    Domain d;
    d.kind_ = Kind::BoxUnion;
    d.dim_ = dim;
    d.parts_ = std::move(parts);
    d.finalize();
    return d;
}

Domain Domain::l_shape() {
    return box_union({Box{{0.0, 0.0}, {2.0, 1.0}}, Box{{0.0, 1.0}, {1.0, 2.0}}});
}

void Domain::finalize() {
    // bounding box
    bbox_.lo.assign(dim_, inf);
    bbox_.hi.assign(dim_, -inf);
    for (const Box& p : parts_) {
        for (int i = 0; i < dim_; ++i) {
            bbox_.lo[i] = std::min(bbox_.lo[i], p.lo[i]);
            bbox_.hi[i] = std::max(bbox_.hi[i], p.hi[i]);
        }
    }
    // diameter: max pairwise corner distance (attained at part corners)
    if (kind_ == Kind::Strip) {
        diam_ = inf;
    } else {
        std::vector<Point> corners;
        for (const Box& p : parts_) {
            const int n = 1 << dim_;
            for (int mask = 0; mask < n; ++mask) {
                Point c(dim_);
                for (int i = 0; i < dim_; ++i) c[i] = (mask >> i) & 1 ? p.hi[i] : p.lo[i];
                corners.push_back(std::move(c));
            }
        }
        diam_ = 0.0;
        for (std::size_t i = 0; i < corners.size(); ++i)
            for (std::size_t j = i + 1; j < corners.size(); ++j)
                diam_ = std::max(diam_, dist(corners[i], corners[j]));
    }
    // complement cells: slab decomposition induced by all part coordinates,
    // plus the unbounded outside slabs
    std::vector<std::vector<double>> cuts(dim_);
    for (int i = 0; i < dim_; ++i) {
        std::set<double> s;
        s.insert(-inf);
        s.insert(inf);
        for (const Box& p : parts_) {
            s.insert(p.lo[i]);
            s.insert(p.hi[i]);
        }
        cuts[i].assign(s.begin(), s.end());
    }
    complement_.clear();
    std::vector<std::size_t> idx(dim_, 0);
    for (;;) {
        Box cell;
        cell.lo.resize(dim_);
        cell.hi.resize(dim_);
        bool degenerate = false;
        for (int i = 0; i < dim_; ++i) {
            cell.lo[i] = cuts[i][idx[i]];
            cell.hi[i] = cuts[i][idx[i] + 1];
            if (!(cell.lo[i] < cell.hi[i])) degenerate = true;
        }
        if (!degenerate) {
            // cells never straddle part boundaries, so one interior
            // representative decides coverage; infinite extents pick any
            // finite point inside the slab
            Point mid(dim_);
            for (int i = 0; i < dim_; ++i) {
                if (std::isinf(cell.lo[i]) && std::isinf(cell.hi[i]))
                    mid[i] = 0.0;
                else if (std::isinf(cell.lo[i]))
                    mid[i] = cell.hi[i] - 1.0;
                else if (std::isinf(cell.hi[i]))
                    mid[i] = cell.lo[i] + 1.0;
                else
                    mid[i] = 0.5 * (cell.lo[i] + cell.hi[i]);
            }
            bool covered = false;
            for (const Box& p : parts_)
                if (p.contains_open(mid)) {
                    covered = true;
                    break;
                }
            if (!covered) complement_.push_back(cell);
        }
        int axis = 0;
        for (; axis < dim_; ++axis) {
            if (++idx[axis] + 1 < cuts[axis].size()) break;
            idx[axis] = 0;
        }
        if (axis == dim_) break;
    }
}

bool Domain::contains(const Point& x) const {
    for (const Box& p : parts_)
        if (p.contains_open(x)) return true;
    return false;
}

double Domain::delta(const Point& x) const {
    if (!contains(x)) return 0.0;
    double d = inf;
    for (const Box& c : complement_) d = std::min(d, c.distance(x));
    return d;
}

double Domain::boundary_distance(const Box& b) const {
    double d = inf;
    for (const Box& c : complement_) d = std::min(d, c.distance(b));
    return d;
}

bool Domain::intersects(const Box& b) const {
    for (const Box& p : parts_)
        if (p.overlaps_open(b)) return true;
    return false;
}

std::string Domain::name() const {
    switch (kind_) {
        case Kind::Interval: return "interval";
        case Kind::BoxDomain: return "box";
        case Kind::Strip:
            return "strip(R^" + std::to_string(strip_k_) + " x (0,1)^" + std::to_string(strip_l_) +
                   ")";
        case Kind::BoxUnion: return "box_union";
    }
    return "?";
}

}  // namespace gagliardo
