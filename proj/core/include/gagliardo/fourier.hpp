#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace gagliardo {

/// Sparse period-1 Fourier series: coefficient map m -> complex value with
/// the convention f_hat(m) = int_0^1 f(x) e^{-2 pi i m x} dx.
struct FourierSeries {
    std::map<std::int64_t, std::complex<double>> coeff;
    std::int64_t max_index = 0;

    void set(std::int64_t m, std::complex<double> v);
    std::complex<double> get(std::int64_t m) const;
    /// Conjugate symmetry f_hat(-m) == conj(f_hat(m)) iff the function is real.
    bool conjugate_symmetric(double tol = 1e-12) const;
    /// Pointwise evaluation sum_m f_hat(m) e^{2 pi i m x}.
    std::complex<double> eval(double x) const;

    nlohmann::json to_json() const;
    static FourierSeries from_json(const nlohmann::json& j);
};

/// f_hat(m) for |m| <= max_index via oscillation-resolving panel quadrature.
FourierSeries fourier_coefficients(const std::function<double(double)>& f, int max_index);

/// I0(m) = int_0^1 (1-cos(2 pi m h))/h dh and
/// Ilog(m) = int_0^1 (1-cos(2 pi m h)) ((-log h) v 1)/h dh.
/// m = 0 returns (0,0).
std::pair<double, double> cosine_log_integrals(long m);

enum class SumWeight { Log, LogSquared };

struct WeightedSumReport {
    SumWeight weight = SumWeight::Log;
    std::vector<std::int64_t> cutoffs;
    std::vector<double> partial_sums;  // nondecreasing in the cutoff
    bool likely_divergent = false;

    /// CSV rows: cutoff, partial_sum.
    std::string to_csv() const;
};

/// Partial sums of sum_{0<|m|<=M} |f_hat(m)|^2 w(|m|) over a cutoff ladder.
WeightedSumReport weighted_sum(const FourierSeries& series, SumWeight weight,
                               const std::vector<std::int64_t>& cutoffs);

/// The sparse counterexample series: f_hat((2n+1) 2^l) = l^{-3/2} for
/// l = 1..L, all other coefficients zero. The represented function is
/// 1/(2n+1)-periodic. L <= 62 so indices fit an int64.
FourierSeries step3_counterexample(int n, int levels);

/// Exact level-space partial sums for the counterexample at scales where the
/// coefficient indices overflow machine integers:
/// sum_{l<=L} l^{-3} w((2n+1) 2^l), returned at each ladder point.
std::vector<double> step3_weighted_ladder(int n, SumWeight weight,
                                          const std::vector<long>& level_cutoffs);

}  // namespace gagliardo
