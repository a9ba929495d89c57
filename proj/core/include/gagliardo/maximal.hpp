#pragma once

#include <vector>

#include "gagliardo/geometry.hpp"
#include "gagliardo/kernel.hpp"

namespace gagliardo {

/// Nonnegative piecewise-constant data on a uniform grid over a box.
/// cells[i] holds the value on the i-th cell (row-major over axes).
class GridFunction {
  public:
    GridFunction(Box box, std::vector<int> cells_per_axis, std::vector<double> values);

    static GridFunction constant(Box box, std::vector<int> cells_per_axis, double value);
    /// 1D convenience: indicator of [lo, hi] sampled onto the grid.
    static GridFunction indicator1d(double box_lo, double box_hi, int cells, double lo, double hi);

    const Box& box() const { return box_; }
    int dim() const { return static_cast<int>(cells_.size()); }
    const std::vector<int>& cells_per_axis() const { return cells_; }
    double cell_volume() const { return cell_volume_; }
    double value_at(const Point& x) const;
    double value_cell(const std::vector<int>& idx) const;
    GridFunction scaled(double c) const;
    GridFunction plus(const GridFunction& other) const;

    /// Prefix sums for O(1) box averages.
    double box_sum(const std::vector<int>& lo, const std::vector<int>& hi) const;  // [lo,hi) cells

  private:
    Box box_;
    std::vector<int> cells_;
    std::vector<double> values_;
    std::vector<double> prefix_;
    std::vector<double> step_;
    double cell_volume_ = 1.0;
    std::size_t flat(const std::vector<int>& idx, const std::vector<int>& dims) const;
    std::size_t flat_value_index(const std::vector<int>& cell_idx) const;
};

/// Non-centered Hardy-Littlewood maximal value at x: sup over axis-aligned
/// grid-corner boxes containing x of the average of g. Exact for the
/// piecewise-constant data.
double maximal_function(const GridFunction& g, const Point& x);

struct RatioReport {
    double lhs = 0.0;
    double maximal = 0.0;
    double ratio = 0.0;   // lhs normalized per the corresponding lemma
    bool infinite = false;
};

/// Far-field bound: LHS = int_{box ^ {|x-y|>r}} g(y) / (|x-y|^d phi^eta) dy,
/// ratio = LHS * phi(r)^eta / Mg(x).
RatioReport check_maximal_far(const GridFunction& g, const Kernel& kernel, double eta, double r,
                              const Point& x);

/// 0-order variant: LHS = int_{|y-x|>r} g/|y-x|^d, normalized by
/// Mg(x) * (|log r| v 1).
RatioReport check_maximal_far_log(const GridFunction& g, double r, const Point& x);

}  // namespace gagliardo
