#include "gagliardo/lemmas.hpp"

#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gagliardo/gauss.hpp"

namespace gagliardo {

std::string LemmaReport::to_csv() const {
    std::ostringstream os;
    os << "cube,sum,ratio\n";
    os.precision(12);
    for (const Row& r : rows) os << r.cube << ',' << r.sum << ',' << r.ratio << '\n';
    return os.str();
}

LemmaReport lemma_sum_all_over(const WhitneyDecomposition& w, const KernelProfile& profile,
                               double eta, const ExponentPair& exps) {
    if (eta < exps.t1() - 1e-12)
        throw std::invalid_argument("lemma_sum_all_over: eta must be >= min(q, p - p/q)");
    const int n = w.size();
    const int d = w.domain().dimension();
    LemmaReport rep;
    rep.exponent = eta;
    rep.rows.resize(static_cast<std::size_t>(n));

    // l(S)^d is per-level; for power profiles phi(D)^eta folds into a single
    // power of D, which matters at n^2 pair counts
    std::vector<double> side_d(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) side_d[static_cast<std::size_t>(i)] = std::pow(w.cube(i).side, d);
    const bool is_power = profile.kind() == KernelProfile::Kind::Power;
    const double pow_expo = is_power ? -(d + profile.param_a() * eta) : 0.0;
    const double pow_scale = is_power ? std::pow(profile.param_b(), -eta) : 1.0;

    // rows are independent; chunked deterministic parallel fill
    std::vector<double> sums(static_cast<std::size_t>(n), 0.0);
    parallel_sum(n, [&](std::int64_t qi) {
        const DyadicCube& q = w.cube(static_cast<int>(qi));
        KahanSum acc;
        for (int si = 0; si < n; ++si) {
            const DyadicCube& s = w.cube(si);
            const double D = long_distance(q, s);
            if (is_power)
                acc.add(side_d[static_cast<std::size_t>(si)] * pow_scale * std::pow(D, pow_expo));
            else
                acc.add(side_d[static_cast<std::size_t>(si)] /
                        (std::pow(D, d) * std::pow(profile(D), eta)));
        }
        sums[static_cast<std::size_t>(qi)] = acc.value();
        return 0.0;
    });
    for (int qi = 0; qi < n; ++qi) {
        const double ratio = sums[static_cast<std::size_t>(qi)] *
                             std::pow(profile(w.cube(qi).side), eta);
        rep.rows[static_cast<std::size_t>(qi)] = {qi, -1, sums[static_cast<std::size_t>(qi)], ratio};
        if (ratio > rep.sup_constant) {
            rep.sup_constant = ratio;
            rep.argmax_cube = qi;
        }
    }
    return rep;
}

LemmaReport lemma_shadow_sum(const WhitneyDecomposition& w, const KernelProfile& profile,
                             double eta, double rho) {
    const int n = w.size();
    const double r = rho > 0.0 ? rho : w.rho();
    LemmaReport rep;
    rep.exponent = eta;
    rep.rho = r;
    rep.rows.resize(static_cast<std::size_t>(n));
    // phi(l)^{-eta} takes a handful of distinct values (one per level)
    std::map<int, double> phi_neg;
    for (int i = 0; i < n; ++i) {
        const int lvl = w.cube(i).level;
        if (!phi_neg.count(lvl)) phi_neg[lvl] = std::pow(profile(w.cube(i).side), -eta);
    }
    // P in Sh_rho(R) forces |center(R) - P| <= rho * l(R) <= rho * max side;
    // sweep on axis 0 to prune the pair scan
    double max_side = 0.0;
    for (int i = 0; i < n; ++i) max_side = std::max(max_side, w.cube(i).side);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return w.cube(a).lo[0] < w.cube(b).lo[0]; });
    std::vector<double> lo0(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) lo0[static_cast<std::size_t>(i)] = w.cube(order[static_cast<std::size_t>(i)]).lo[0];
    const double slack = (r + 1.0) * max_side;

    std::vector<double> sums(static_cast<std::size_t>(n), 0.0);
    parallel_sum(n, [&](std::int64_t pi) {
        const DyadicCube& p = w.cube(static_cast<int>(pi));
        const auto first = std::lower_bound(lo0.begin(), lo0.end(), p.lo[0] - slack);
        const auto last = std::upper_bound(lo0.begin(), lo0.end(), p.lo[0] + p.side + slack);
        KahanSum acc;
        for (auto it = first; it != last; ++it) {
            const int ri = order[static_cast<std::size_t>(it - lo0.begin())];
            if (w.in_shadow(static_cast<int>(pi), ri, r))
                acc.add(phi_neg.at(w.cube(ri).level));
        }
        sums[static_cast<std::size_t>(pi)] = acc.value();
        return 0.0;
    });
    for (int pi = 0; pi < n; ++pi) {
        const double ratio = sums[static_cast<std::size_t>(pi)] /
                             phi_neg.at(w.cube(pi).level);
        rep.rows[static_cast<std::size_t>(pi)] = {pi, -1, sums[static_cast<std::size_t>(pi)], ratio};
        if (ratio > rep.sup_constant) {
            rep.sup_constant = ratio;
            rep.argmax_cube = pi;
        }
    }
    return rep;
}

LemmaReport lemma_chain_sum(const WhitneyDecomposition& w, const KernelProfile& profile,
                            double kappa, const ExponentPair& exps, int n_pairs,
                            std::uint64_t seed, double rho) {
    if (kappa < exps.t2() - 1e-12)
        throw std::invalid_argument("lemma_chain_sum: kappa must be >= 1/(q-1)");
    const double r = rho > 0.0 ? rho : w.rho();
    LemmaReport rep;
    rep.exponent = kappa;
    rep.rho = r;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, w.size() - 1);
    for (int k = 0; k < n_pairs; ++k) {
        const int ri = pick(rng);
        const std::vector<int> sh = w.shadow(ri, r);
        if (sh.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick_s(0, sh.size() - 1);
        const int si = sh[pick_s(rng)];
        const Chain ch = w.admissible_chain(si, ri);
        KahanSum acc;
        for (int id : ch.cubes) acc.add(std::pow(profile(w.cube(id).side), kappa));
        const double ratio = acc.value() / std::pow(profile(w.cube(ri).side), kappa);
        rep.rows.push_back({si, ri, acc.value(), ratio});
        if (ratio > rep.sup_constant) {
            rep.sup_constant = ratio;
            rep.argmax_cube = ri;
        }
    }
    return rep;
}

}  // namespace gagliardo
