#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace gagliardo {

/// Gauss-Legendre rule on [-1,1]. Nodes/weights are computed once per order
/// by Newton iteration and cached (thread safe).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_rule(int order);

/// Integrate f over [a,b] with a single Gauss panel.
template <class F>
double gauss_panel(F&& f, double a, double b, int order) {
    const GaussRule& rule = gauss_rule(order);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return s * half;
}

/// Composite Gauss over [a,b] with geometric grading of panel widths toward
/// flagged endpoints; handles integrable endpoint singularities. `levels`
/// dyadic panels are spent per graded endpoint.
double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        bool grade_left, bool grade_right, int levels, int order);

/// Globally adaptive 1D quadrature (interval bisection, embedded error
/// estimate). Mainly used by tests as an independent oracle and by the
/// CLI for one-off integrals.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10, double abs_tol = 1e-14,
                          int max_depth = 48);

/// Integrate f over [a,b] with an integrable power-type singularity at one
/// endpoint: dyadic panels toward it plus a geometric closure of the
/// remainder (exact for pure powers x^s, s > -1).
double integrate_power_endpoint(const std::function<double(double)>& f, double a, double b,
                                bool singular_at_a, int levels = 36, int order = 6);

/// Neumaier compensated accumulator; fixed summation order makes reductions
/// reproducible bit for bit.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

/// Deterministic parallel map-reduce over [0,n): the index range is split
/// into a fixed number of chunks (independent of the thread count), chunk
/// results are produced in parallel and combined in index order.
double parallel_sum(std::int64_t n, const std::function<double(std::int64_t)>& term);

/// Thread count used by parallel_sum (GAGLIARDO_THREADS overrides).
int worker_threads();

}  // namespace gagliardo
