#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gagliardo/domain.hpp"
#include "gagliardo/kernel.hpp"
#include "gagliardo/test_function.hpp"

#include "json.hpp"

namespace gagliardo {

struct QuadratureConfig {
    double rel_tol = 1e-4;
    double abs_tol = 1e-12;
    int max_refine = 2;        // extra refinement passes allowed for the error estimate
    int sing_split = 40;       // dyadic annuli around the inner singularity
    int gauss_radial = 4;      // Gauss order per radial panel
    int gauss_outer = 4;       // Gauss order per outer panel
    int angular = 16;          // angular nodes per full circle (2D)
    int boundary_layers = 10;  // dyadic outer layers toward the boundary
    int refine_factor = 1;     // >1 scales panel counts/orders (refinement studies)
    enum class TailMode { Report, Add };
    TailMode tail_mode = TailMode::Add;
    bool error_pass = true;    // second pass at doubled refinement for abs_error
};

/// Scaled copy for refinement-doubling studies.
QuadratureConfig refined(QuadratureConfig cfg, int factor = 2);

struct SeminormEstimate {
    double value = 0.0;          // outer 1/p power applied
    double value_squared = 0.0;  // value^2, for p=q=2 comparisons
    double inner_power = 1.0;    // p/q
    double abs_error = 0.0;
    double tail_bound = 0.0;
    long evaluations = 0;
    bool truncated_domain = false;
    bool diverged = false;
    bool low_confidence = false;

    nlohmann::json to_json() const;
};

/// Full and truncated estimates sharing one quadrature node set; the
/// truncated sums are sub-sums of the full sum, so the theta ladder and
/// truncated <= full are exact inequalities on these numbers.
struct SeminormPair {
    SeminormEstimate full;
    std::vector<double> thetas;
    std::vector<SeminormEstimate> truncated;
    bool monotone_exact = false;  // binned engine (exact) vs checked numerically
};

SeminormPair seminorm_pair(const TestFunction& f, const Domain& domain, const Kernel& kernel,
                           const ExponentPair& exps, std::vector<double> thetas,
                           const QuadratureConfig& cfg = {});

SeminormEstimate full_seminorm(const TestFunction& f, const Domain& domain, const Kernel& kernel,
                               const ExponentPair& exps, const QuadratureConfig& cfg = {});

SeminormEstimate truncated_seminorm(const TestFunction& f, const Domain& domain,
                                    const Kernel& kernel, const ExponentPair& exps, double theta,
                                    const QuadratureConfig& cfg = {});

/// full / truncated with shared nodes; >= 1 by region inclusion. A zero
/// truncated estimate with positive full reports infinity.
double comparability_ratio(const TestFunction& f, const Domain& domain, const Kernel& kernel,
                           const ExponentPair& exps, double theta,
                           const QuadratureConfig& cfg = {});

/// int_0^1 int_0^1 (x^{-g} - y^{-g})^2 dy dx = 2(1/(1-2g) - 1/(1-g)^2).
double exact_const_kernel_full(double gamma);

/// Closed upper bound for the truncated counterpart over |y-x| < eps*x:
/// eps/(1-g) - [(1+eps)^{1-g}-(1-eps)^{1-g}]/(1-g)^2
///           + [(1+eps)^{1-2g}-(1-eps)^{1-2g}]/((1-2g)(2-2g)).
double exact_const_kernel_truncated_bound(double gamma, double eps);

/// n ln n - 2n + ln n + 2: the {1/n < y < x < 1} part of the K = |x-y|^{-1}
/// example with f_n = n ^ 1/x.
double exact_hilbert_subintegral(double n);

/// Full energy int_0^1 int_0^1 (f_n(x)-f_n(y))^2 |x-y|^{-1} dy dx for
/// f_n = n ^ 1/x, reduced to the exact subintegral plus a 1D quadrature of
/// the mixed region.
double hilbert_example_full_squared(double n);

struct StripKernelReport {
    double kappa = 0.0;      // int_0^1 int_0^1 |x-y|^{-2-alpha} dy2 dx2
    double reference = 0.0;  // |x1-y1|^{-2-alpha} (far) or |x1-y1|^{-1-alpha} (near)
    double ratio = 0.0;
};

/// Effective 1D kernel on the strip R x (0,1) with the comparability ratio
/// against the pertinent power of |x1-y1|.
StripKernelReport strip_effective_kernel(double x1, double y1, double alpha);

/// Strip seminorms, R^1 x (0,1)^l with l in {1,2}, p=q=2, for functions
/// constant along the bounded axes. The unbounded coordinate is integrated
/// out exactly through the displacement energy. Used by seminorm_pair when
/// the domain is a strip.
SeminormPair strip_seminorm_pair(const TestFunction& f, const Domain& domain, double alpha,
                                 std::vector<double> thetas, const QuadratureConfig& cfg = {});

}  // namespace gagliardo
