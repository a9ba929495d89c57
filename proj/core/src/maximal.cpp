#include "gagliardo/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gagliardo/gauss.hpp"

namespace gagliardo {

GridFunction::GridFunction(Box box, std::vector<int> cells_per_axis, std::vector<double> values)
    : box_(std::move(box)), cells_(std::move(cells_per_axis)), values_(std::move(values)) {
    if (cells_.empty() || cells_.size() != box_.lo.size())
        throw std::invalid_argument("GridFunction: cell counts must match the box dimension");
    std::size_t total = 1;
    cell_volume_ = 1.0;
    step_.resize(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (cells_[i] < 1) throw std::invalid_argument("GridFunction: cells must be >= 1");
        total *= static_cast<std::size_t>(cells_[i]);
        step_[i] = (box_.hi[i] - box_.lo[i]) / cells_[i];
        cell_volume_ *= step_[i];
    }
    if (values_.size() != total)
        throw std::invalid_argument("GridFunction: value count mismatch");
    for (double v : values_)
        if (v < 0.0) throw std::invalid_argument("GridFunction: values must be nonnegative");
    // inclusion-exclusion prefix sums on a (n+1)^d lattice
    std::vector<int> dims(cells_.size());
    std::size_t ptotal = 1;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        dims[i] = cells_[i] + 1;
        ptotal *= static_cast<std::size_t>(dims[i]);
    }
    prefix_.assign(ptotal, 0.0);
    std::vector<int> idx(cells_.size(), 0);
    for (;;) {
        bool on_face = false;
        for (std::size_t i = 0; i < idx.size(); ++i)
            if (idx[i] == 0) on_face = true;
        if (!on_face) {
            std::vector<int> cell_idx(idx.size());
            for (std::size_t i = 0; i < idx.size(); ++i) cell_idx[i] = idx[i] - 1;
            double v = values_[flat_value_index(cell_idx)];
            // prefix(idx) = value(idx-1) + sum of lower prefixes (incl-excl)
            const int d = static_cast<int>(cells_.size());
            for (int mask = 1; mask < (1 << d); ++mask) {
                std::vector<int> j = idx;
                int bits = 0;
                for (int b = 0; b < d; ++b)
                    if (mask & (1 << b)) {
                        --j[static_cast<std::size_t>(b)];
                        ++bits;
                    }
                const double p = prefix_[flat(j, dims)];
                v += (bits % 2 == 1) ? p : -p;
            }
            prefix_[flat(idx, dims)] = v;
        }
        std::size_t ax = 0;
        for (; ax < idx.size(); ++ax) {
            if (++idx[ax] < dims[ax]) break;
            idx[ax] = 0;
        }
        if (ax == idx.size()) break;
    }
}

std::size_t GridFunction::flat(const std::vector<int>& idx, const std::vector<int>& dims) const {
    std::size_t f = 0;
    for (std::size_t i = dims.size(); i-- > 0;)
        f = f * static_cast<std::size_t>(dims[i]) + static_cast<std::size_t>(idx[i]);
    return f;
}

std::size_t GridFunction::flat_value_index(const std::vector<int>& cell_idx) const {
    return flat(cell_idx, cells_);
}

GridFunction GridFunction::constant(Box box, std::vector<int> cells_per_axis, double value) {
    std::size_t total = 1;
    for (int c : cells_per_axis) total *= static_cast<std::size_t>(c);
    return GridFunction(std::move(box), std::move(cells_per_axis),
                        std::vector<double>(total, value));
}

GridFunction GridFunction::indicator1d(double box_lo, double box_hi, int cells, double lo,
                                       double hi) {
    std::vector<double> vals(static_cast<std::size_t>(cells), 0.0);
    const double step = (box_hi - box_lo) / cells;
    for (int i = 0; i < cells; ++i) {
        const double a = box_lo + i * step;
        const double b = a + step;
        const double cover = std::max(0.0, std::min(b, hi) - std::max(a, lo));
        vals[static_cast<std::size_t>(i)] = cover / step;  // cell average of the indicator
    }
    return GridFunction(Box{{box_lo}, {box_hi}}, {cells}, std::move(vals));
}

double GridFunction::value_cell(const std::vector<int>& idx) const {
    return values_[flat_value_index(idx)];
}

double GridFunction::value_at(const Point& x) const {
    std::vector<int> idx(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        const int c = static_cast<int>(std::floor((x[i] - box_.lo[i]) / step_[i]));
        idx[i] = std::clamp(c, 0, cells_[i] - 1);
    }
    return value_cell(idx);
}

GridFunction GridFunction::scaled(double c) const {
    std::vector<double> vals = values_;
    for (double& v : vals) v *= c;
    return GridFunction(box_, cells_, std::move(vals));
}

GridFunction GridFunction::plus(const GridFunction& other) const {
    std::vector<double> vals = values_;
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] += other.values_[i];
    return GridFunction(box_, cells_, std::move(vals));
}

double GridFunction::box_sum(const std::vector<int>& lo, const std::vector<int>& hi) const {
    std::vector<int> dims(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i) dims[i] = cells_[i] + 1;
    const int d = static_cast<int>(cells_.size());
    double total = 0.0;
    for (int mask = 0; mask < (1 << d); ++mask) {
        std::vector<int> corner(cells_.size());
        int bits = 0;
        for (int b = 0; b < d; ++b) {
            if (mask & (1 << b)) {
                corner[static_cast<std::size_t>(b)] = lo[static_cast<std::size_t>(b)];
                ++bits;
            } else {
                corner[static_cast<std::size_t>(b)] = hi[static_cast<std::size_t>(b)];
            }
        }
        total += (bits % 2 == 0 ? 1.0 : -1.0) * prefix_[flat(corner, dims)];
    }
    return total * cell_volume_;
}

double maximal_function(const GridFunction& g, const Point& x) {
    const Box& box = g.box();
    const int d = g.dim();
    for (int i = 0; i < d; ++i)
        if (x[static_cast<std::size_t>(i)] < box.lo[static_cast<std::size_t>(i)] ||
            x[static_cast<std::size_t>(i)] > box.hi[static_cast<std::size_t>(i)])
            throw std::domain_error("maximal_function: x outside the grid box");
    // anchor cells per axis: a box contains x iff it contains one adjacent
    // cell on every axis (two candidates when x sits exactly on a grid line)
    std::vector<std::vector<int>> anchors(static_cast<std::size_t>(d));
    const auto& cells = g.cells_per_axis();
    for (int i = 0; i < d; ++i) {
        const double step = (box.hi[static_cast<std::size_t>(i)] - box.lo[static_cast<std::size_t>(i)]) /
                            cells[static_cast<std::size_t>(i)];
        const double t = (x[static_cast<std::size_t>(i)] - box.lo[static_cast<std::size_t>(i)]) / step;
        const int c = std::clamp(static_cast<int>(std::floor(t)), 0,
                                 cells[static_cast<std::size_t>(i)] - 1);
        anchors[static_cast<std::size_t>(i)].push_back(c);
        if (std::abs(t - std::round(t)) < 1e-12) {
            const int r = static_cast<int>(std::round(t));
            for (int cand : {r - 1, r}) {
                cand = std::clamp(cand, 0, cells[static_cast<std::size_t>(i)] - 1);
                if (cand != c) anchors[static_cast<std::size_t>(i)].push_back(cand);
            }
        }
    }
    double best = 0.0;
    std::vector<int> a(static_cast<std::size_t>(d)), b(static_cast<std::size_t>(d));
    std::vector<int> anchor(static_cast<std::size_t>(d));
    std::function<void(int)> rec = [&](int axis) {
        if (axis == d) {
            double vol = 1.0;
            for (int i = 0; i < d; ++i)
                vol *= static_cast<double>(b[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(i)]);
            const double avg = g.box_sum(a, b) / (vol * g.cell_volume());
            best = std::max(best, avg);
            return;
        }
        for (int aa = 0; aa <= anchor[static_cast<std::size_t>(axis)]; ++aa) {
            for (int bb = anchor[static_cast<std::size_t>(axis)] + 1;
                 bb <= cells[static_cast<std::size_t>(axis)]; ++bb) {
                a[static_cast<std::size_t>(axis)] = aa;
                b[static_cast<std::size_t>(axis)] = bb;
                rec(axis + 1);
            }
        }
    };
    std::function<void(int)> pick = [&](int axis) {
        if (axis == d) {
            rec(0);
            return;
        }
        for (int c : anchors[static_cast<std::size_t>(axis)]) {
            anchor[static_cast<std::size_t>(axis)] = c;
            pick(axis + 1);
        }
    };
    pick(0);
    return best;
}

namespace {

// integral of g(y) * w(|x-y|) over the grid box with the ball |x-y|<=r
// removed; in 1D the ball boundary splits cells exactly, in higher
// dimensions cells near the sphere are subdivided
double far_field_integral(const GridFunction& g, const Point& x, double r,
                          const std::function<double(double)>& w) {
    const Box& box = g.box();
    const int d = g.dim();
    const auto& cells = g.cells_per_axis();
    if (d == 1) {
        KahanSum acc;
        const double step = (box.hi[0] - box.lo[0]) / cells[0];
        auto wy = [&](double y) { return w(std::abs(y - x[0])); };
        for (int i = 0; i < cells[0]; ++i) {
            const double gval = g.value_cell({i});
            if (gval <= 0.0) continue;
            const double lo = box.lo[0] + i * step, hi = lo + step;
            // left of the removed ball; the kernel is steep approaching x-r
            {
                const double b = std::min(hi, x[0] - r);
                if (b > lo) {
                    if (b == x[0] - r)
                        acc.add(gval * integrate_power_endpoint(wy, lo, b, false, 30, 8));
                    else
                        acc.add(gval * gauss_panel(wy, lo, b, 8));
                }
            }
            // right of the removed ball
            {
                const double a = std::max(lo, x[0] + r);
                if (hi > a) {
                    if (a == x[0] + r)
                        acc.add(gval * integrate_power_endpoint(wy, a, hi, true, 30, 8));
                    else
                        acc.add(gval * gauss_panel(wy, a, hi, 8));
                }
            }
        }
        return acc.value();
    }
    KahanSum total;
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (;;) {
        Box cell;
        cell.lo.resize(static_cast<std::size_t>(d));
        cell.hi.resize(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            const double step = (box.hi[static_cast<std::size_t>(i)] - box.lo[static_cast<std::size_t>(i)]) /
                                cells[static_cast<std::size_t>(i)];
            cell.lo[static_cast<std::size_t>(i)] = box.lo[static_cast<std::size_t>(i)] + idx[static_cast<std::size_t>(i)] * step;
            cell.hi[static_cast<std::size_t>(i)] = cell.lo[static_cast<std::size_t>(i)] + step;
        }
        const double gval = g.value_cell(idx);
        if (gval > 0.0) {
            // refine cells that straddle the circle or sit close to x
            const double dist_near = cell.distance(x);
            double far2 = 0.0;
            for (int i = 0; i < d; ++i) {
                const double m = std::max(std::abs(cell.lo[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]),
                                          std::abs(cell.hi[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]));
                far2 += m * m;
            }
            const double dist_far = std::sqrt(far2);
            if (dist_far > r) {
                const int refine = dist_near <= r ? 6 : (dist_near < 2.0 * r ? 3 : 1);
                // tensor panels within the cell
                std::vector<int> sub(static_cast<std::size_t>(d), 0);
                const int nsub = 1 << refine;
                std::vector<int> sidx(static_cast<std::size_t>(d), 0);
                for (;;) {
                    Box piece;
                    piece.lo.resize(static_cast<std::size_t>(d));
                    piece.hi.resize(static_cast<std::size_t>(d));
                    for (int i = 0; i < d; ++i) {
                        const double step = (cell.hi[static_cast<std::size_t>(i)] - cell.lo[static_cast<std::size_t>(i)]) / nsub;
                        piece.lo[static_cast<std::size_t>(i)] = cell.lo[static_cast<std::size_t>(i)] + sidx[static_cast<std::size_t>(i)] * step;
                        piece.hi[static_cast<std::size_t>(i)] = piece.lo[static_cast<std::size_t>(i)] + step;
                    }
                    // Gauss product rule with the indicator |x-y|>r
                    const GaussRule& rule = gauss_rule(4);
                    std::vector<std::size_t> gi(static_cast<std::size_t>(d), 0);
                    double piece_sum = 0.0;
                    for (;;) {
                        Point y(static_cast<std::size_t>(d));
                        double wgt = 1.0;
                        for (int i = 0; i < d; ++i) {
                            const double mid = 0.5 * (piece.lo[static_cast<std::size_t>(i)] + piece.hi[static_cast<std::size_t>(i)]);
                            const double half = 0.5 * (piece.hi[static_cast<std::size_t>(i)] - piece.lo[static_cast<std::size_t>(i)]);
                            y[static_cast<std::size_t>(i)] = mid + half * rule.nodes[gi[static_cast<std::size_t>(i)]];
                            wgt *= half * rule.weights[gi[static_cast<std::size_t>(i)]];
                        }
                        const double rr = dist(x, y);
                        if (rr > r) piece_sum += wgt * w(rr);
                        std::size_t ax = 0;
                        for (; ax < gi.size(); ++ax) {
                            if (++gi[ax] < rule.nodes.size()) break;
                            gi[ax] = 0;
                        }
                        if (ax == gi.size()) break;
                    }
                    total.add(gval * piece_sum);
                    std::size_t ax = 0;
                    for (; ax < sidx.size(); ++ax) {
                        if (++sidx[ax] < static_cast<std::size_t>(nsub)) break;
                        sidx[ax] = 0;
                    }
                    if (ax == sidx.size()) break;
                }
                (void)sub;
            }
        }
        std::size_t ax = 0;
        for (; ax < idx.size(); ++ax) {
            if (++idx[ax] < cells[ax]) break;
            idx[ax] = 0;
        }
        if (ax == idx.size()) break;
    }
    return total.value();
}

}  // namespace

RatioReport check_maximal_far(const GridFunction& g, const Kernel& kernel, double eta, double r,
                              const Point& x) {
    RatioReport rep;
    const int d = g.dim();
    auto w = [&](double rr) {
        return std::pow(rr, -static_cast<double>(d)) * std::pow(kernel.profile(rr), -eta);
    };
    rep.lhs = far_field_integral(g, x, r, w);
    rep.maximal = maximal_function(g, x);
    const double scale = std::pow(kernel.profile(r), eta);
    if (rep.maximal > 0.0) {
        rep.ratio = rep.lhs * scale / rep.maximal;
    } else if (rep.lhs > 0.0) {
        rep.infinite = true;
    } else {
        rep.ratio = 0.0;
    }
    return rep;
}

RatioReport check_maximal_far_log(const GridFunction& g, double r, const Point& x) {
    RatioReport rep;
    const int d = g.dim();
    auto w = [&](double rr) { return std::pow(rr, -static_cast<double>(d)); };
    rep.lhs = far_field_integral(g, x, r, w);
    rep.maximal = maximal_function(g, x);
    const double logterm = std::max(std::abs(std::log(r)), 1.0);
    if (rep.maximal > 0.0) {
        rep.ratio = rep.lhs / (rep.maximal * logterm);
    } else if (rep.lhs > 0.0) {
        rep.infinite = true;
    } else {
        rep.ratio = 0.0;
    }
    return rep;
}

}  // namespace gagliardo
