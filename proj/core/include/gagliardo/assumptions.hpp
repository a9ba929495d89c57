#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gagliardo/kernel.hpp"

#include "json.hpp"

namespace gagliardo {

/// Result of the A1 Levy-integrability check
/// integral over R^d of (1 ^ |y|^q) K(0,y) dy, reduced to a radial integral.
struct A1Result {
    double value = 0.0;      // surface-factored total (near + far + tails)
    double near_part = 0.0;  // |y| <= 1 contribution
    double far_part = 0.0;   // |y| > 1 contribution
    double abs_error = 0.0;  // geometric tail estimates
    bool finite = true;
    bool finite_near = true;
    bool finite_far = true;
    double cap = 0.0;
    int panels_used = 0;
};

A1Result check_a1(const Kernel& kernel, double cap = 1e6);

struct A2Row {
    double r = 0.0;
    double s1 = 0.0;       // sum_{k=1}^{min(N(r),k_max)} [phi(r)/phi(2^k r)]^{t1}
    double s2 = 0.0;       // sum_{k=1}^{k_max} [phi(2^{-k} r)/phi(r)]^{t2}
    double tail1 = 0.0;    // geometric bound on the truncated part of s1
    double tail2 = 0.0;    // same for s2
    long n_r = -1;         // N(r); -1 when the domain is unbounded
    bool tail_ok = true;   // last term ratios < 1 (or the sum completed)
};

struct A2Result {
    double c2_empirical = 0.0;  // sup over the grid of both series
    double tail_bound = 0.0;    // sup of the attached geometric tails
    bool finite = true;         // no series flagged divergent
    int k_max = 0;
    std::vector<A2Row> rows;
};

/// A2 series check; domain_diam may be infinite. Throws std::invalid_argument
/// when a tabulated profile is not monotone on the induced grid.
A2Result check_a2(const Kernel& kernel, const ExponentPair& exps, double domain_diam,
                  const std::vector<double>& r_grid, int k_max = 64);

struct A3Result {
    double c3 = 1.0;  // sup over the grid of phi(2r)/phi(r)
    std::vector<std::pair<double, double>> rows;  // (r, ratio)
};

A3Result check_a3(const KernelProfile& profile, double diam, const std::vector<double>& r_grid);

/// 48 logarithmic points on [1e-6*diam, diam] (bounded) or [1e-6, 1e6].
std::vector<double> default_r_grid(double diam, int points = 48);

struct AssumptionCaps {
    double a1_cap = 1e6;
    double c2_cap = 1e6;
    double c3_cap = 64.0;
};

struct AssumptionReport {
    A1Result a1;
    A2Result a2;
    A3Result a3;
    std::vector<double> r_grid;
    int truncation_terms = 0;
    bool pass_a1 = false, pass_a2 = false, pass_a3 = false;

    nlohmann::json to_json() const;
    /// CSV rows: r, S1, S2, ratio (one line per grid point, with header).
    std::string to_csv() const;
};

AssumptionReport audit_kernel(const Kernel& kernel, const ExponentPair& exps, double domain_diam,
                              const AssumptionCaps& caps = {}, int k_max = 64,
                              std::optional<std::vector<double>> r_grid = std::nullopt);

enum class FitEnd { Zero, Infinity };

struct MatuszewskaEstimate {
    double lower_index_at_zero = std::numeric_limits<double>::quiet_NaN();
    double lower_index_at_infinity = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> fit_range;
    double fit_residual = 0.0;
    bool low_confidence = false;
};

/// Least-squares slope of log phi against log r over the fit range restricted
/// to the requested end. Requires >= 8 logarithmically spaced points.
MatuszewskaEstimate estimate_matuszewska_lower(const KernelProfile& profile, FitEnd end,
                                               const std::vector<double>& fit_range,
                                               double residual_threshold = 0.05);

/// Default fit ranges for the two ends.
std::vector<double> default_fit_range(FitEnd end, int points = 16);

}  // namespace gagliardo
