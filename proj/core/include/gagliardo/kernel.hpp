#pragma once

#include <string>
#include <vector>

#include "gagliardo/geometry.hpp"

#include "json.hpp"

namespace gagliardo {

/// Radial profile phi: (0,inf) -> (0,inf) entering the jump kernel
/// K(x,y) = |x-y|^{-d} phi(|x-y|)^{-q}.
class KernelProfile {
  public:
    enum class Kind { Power, Log1pPower, ConstantOne, InvLogPower, Tabulated };

    /// phi(r) = c * r^s, s > 0, c > 0.
    static KernelProfile power(double exponent, double scale = 1.0);
    /// phi(r) = [log(1+r)]^gamma, gamma in (0,1).
    static KernelProfile log1p_power(double gamma);
    /// phi == 1 (the 0-order kernel).
    static KernelProfile constant_one();
    /// phi(r) = (|log r| v 1)^{-beta}, beta > 0. Decreasing; used as the
    /// log-corrected comparison kernel, not as an A2 candidate.
    static KernelProfile inv_log_power(double beta);
    /// Monotone piecewise-linear interpolation in log-log coordinates,
    /// clamped outside the knot hull.
    static KernelProfile tabulated(std::vector<double> knots, std::vector<double> values);

    double operator()(double r) const;

    Kind kind() const { return kind_; }
    double param_a() const { return a_; }  // exponent / gamma / beta
    double param_b() const { return b_; }  // scale for Power

    /// Pairwise grid check of the monotonicity required by A2.
    bool nondecreasing_on(const std::vector<double>& grid) const;

    /// True for the variants that are increasing by construction.
    bool increasing_by_construction() const;

    std::string name() const;

    nlohmann::json to_json() const;
    static KernelProfile from_json(const nlohmann::json& j);

  private:
    KernelProfile() = default;
    Kind kind_ = Kind::ConstantOne;
    double a_ = 0.0, b_ = 1.0;
    std::vector<double> log_knots_, log_values_;
};

/// phi(r); throws std::domain_error for r <= 0.
double phi_eval(const KernelProfile& profile, double r);

/// Exponent bookkeeping for 1 < q <= p < infinity.
struct ExponentPair {
    double p = 2.0;
    double q = 2.0;

    ExponentPair() = default;
    ExponentPair(double p_, double q_);

    double t1() const { return std::min(q, p - p / q); }
    double t2() const { return 1.0 / (q - 1.0); }
    double p_conj() const { return p / (p - 1.0); }
};

/// Jump kernel K(x,y) = |x-y|^{-d} phi(|x-y|)^{-q}, plus the explicit flat
/// variant K == 1 used by the integrable-kernel counterexample.
struct Kernel {
    int dim = 1;
    double q = 2.0;
    KernelProfile profile = KernelProfile::constant_one();
    bool flat = false;

    static Kernel product(int d, double q, KernelProfile profile);
    static Kernel flat_one(int d);

    /// K as a function of the radius r = |x-y|.
    double radial(double r) const;

    /// K(x,y); throws std::domain_error when x == y (for non-flat kernels).
    double operator()(const Point& x, const Point& y) const;

    nlohmann::json to_json() const;
    static Kernel from_json(const nlohmann::json& j);
};

double kernel_eval(const Kernel& k, const Point& x, const Point& y);

}  // namespace gagliardo
