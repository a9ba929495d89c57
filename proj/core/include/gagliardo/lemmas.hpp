#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gagliardo/kernel.hpp"
#include "gagliardo/whitney.hpp"

namespace gagliardo {

/// Empirical constant of a cube-sum inequality: sup over cubes (or sampled
/// pairs) of the ratio between the computed sum and its asserted bound.
struct LemmaReport {
    double sup_constant = 0.0;
    int argmax_cube = -1;
    double exponent = 0.0;  // eta or kappa
    double rho = 0.0;       // shadow radius, when one was used
    struct Row {
        int cube = 0;
        int other = -1;  // partner cube for pair-indexed sums
        double sum = 0.0;
        double ratio = 0.0;
    };
    std::vector<Row> rows;

    /// CSV rows: cube id, sum, ratio.
    std::string to_csv() const;
};

/// sup_Q phi(l(Q))^eta * sum_S l(S)^d / (D(Q,S)^d phi(D(Q,S))^eta).
/// Requires eta >= t1 = min(q, p - p/q).
LemmaReport lemma_sum_all_over(const WhitneyDecomposition& w, const KernelProfile& profile,
                               double eta, const ExponentPair& exps);

/// sup_P phi(l(P))^eta * sum_{R : P in Sh_rho(R)} phi(l(R))^{-eta}.
LemmaReport lemma_shadow_sum(const WhitneyDecomposition& w, const KernelProfile& profile,
                             double eta, double rho = 0.0);

/// sup over sampled shadow pairs (S,R) of
/// phi(l(R))^{-kappa} * sum_{P in [S,R]} phi(l(P))^kappa.
/// Requires kappa >= t2 = 1/(q-1); propagates NoChainError.
LemmaReport lemma_chain_sum(const WhitneyDecomposition& w, const KernelProfile& profile,
                            double kappa, const ExponentPair& exps, int n_pairs = 200,
                            std::uint64_t seed = 1, double rho = 0.0);

}  // namespace gagliardo
