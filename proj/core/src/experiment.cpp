#include "gagliardo/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "gagliardo/assumptions.hpp"
#include "gagliardo/domain.hpp"
#include "gagliardo/fourier.hpp"
#include "gagliardo/gauss.hpp"
#include "gagliardo/kernel.hpp"
#include "gagliardo/lemmas.hpp"
#include "gagliardo/seminorm.hpp"
#include "gagliardo/test_function.hpp"
#include "gagliardo/version.hpp"
#include "gagliardo/whitney.hpp"

namespace gagliardo {

std::string format_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string ExperimentReport::to_csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
    os << "# verdict: " << (pass ? "pass" : "fail") << " (" << verdict << ")\n";
    os << "# provenance: " << provenance << '\n';
    return os.str();
}

nlohmann::json ExperimentReport::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["columns"] = columns;
    j["rows"] = rows;
    j["pass"] = pass;
    j["verdict"] = verdict;
    j["provenance"] = provenance;
    return j;
}

namespace {

// ---- parameter helpers ----------------------------------------------------

double get_double(const std::map<std::string, std::string>& p, const std::string& key,
                  double fallback) {
    const auto it = p.find(key);
    if (it == p.end()) return fallback;
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size())
        throw std::invalid_argument("parameter " + key + ": not a number: " + it->second);
    return v;
}

int get_int(const std::map<std::string, std::string>& p, const std::string& key, int fallback) {
    return static_cast<int>(get_double(p, key, fallback));
}

std::vector<double> get_list(const std::map<std::string, std::string>& p, const std::string& key,
                             std::vector<double> fallback) {
    const auto it = p.find(key);
    if (it == p.end()) return fallback;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw std::invalid_argument("parameter " + key + ": empty list");
    return out;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string provenance_for(const ExperimentSpec& spec) {
    std::ostringstream os;
    os << spec.name << "|seed=" << spec.seed;
    for (const auto& [k, v] : spec.params) os << '|' << k << '=' << v;
    std::ostringstream out;
    out << "config=" << std::hex << fnv1a(os.str()) << " version=" << version_string;
    return out.str();
}

using Runner = std::function<void(const ExperimentSpec&, ExperimentReport&)>;

struct Entry {
    std::string schema;
    std::string claim;
    Runner run;
};

// ---- kernel-audit ----------------------------------------------------------

// sum over n >= 1 of the kernel mass outside B(0,n); certified finite when the
// terms decay like n^{-s} with s safely above 1
std::pair<double, bool> radial_tail_series(const Kernel& k, int terms) {
    const double area = sphere_area(k.dim);
    KahanSum acc;
    double prev = -1.0, prev2 = -1.0, last = 0.0;
    for (int n = 1; n <= terms; ++n) {
        // int_n^inf r^{-1} phi(r)^{-q} dr by dyadic panels with geometric tail
        KahanSum one;
        double t_prev = -1.0, t_last = 0.0;
        bool ok = false;
        for (int j = 0; j < 200; ++j) {
            const double a = n * std::ldexp(1.0, j);
            const double b = 2.0 * a;
            const double inc = gauss_panel(
                [&](double r) { return std::pow(k.profile(r), -k.q) / r; }, a, b, 8);
            one.add(inc);
            if (t_prev >= 0.0 && t_last > 0.0) {
                const double rho = inc / t_last;
                if (rho < 0.95 && inc < 1e-14 * std::max(one.value(), 1.0)) {
                    ok = true;
                    break;
                }
                if (rho >= 0.999 && j > 4) break;  // not decaying
            }
            t_prev = t_last;
            t_last = inc;
        }
        if (!ok && t_last > 1e-12 * std::max(one.value(), 1.0)) return {inf, false};
        const double term = area * one.value();
        acc.add(term);
        prev2 = prev;
        prev = last;
        last = term;
    }
    // integral-test certification on the term sequence
    if (last <= 1e-14 * std::max(1.0, acc.value())) return {acc.value(), true};
    if (prev > 0.0 && last > 0.0) {
        const double s = std::log(prev / last) /
                         std::log(static_cast<double>(terms) / (terms - 1.0));
        if (s > 1.05) return {acc.value() + last * terms / (s - 1.0), true};
    }
    (void)prev2;
    return {acc.value(), false};
}

void run_kernel_audit(const ExperimentSpec& spec, ExperimentReport& rep) {
    const int d = get_int(spec.params, "d", 1);
    const int kmax = get_int(spec.params, "kmax", 64);
    const double diam = get_double(spec.params, "diam", 1.0);
    const ExponentPair exps(get_double(spec.params, "p", 2.0), get_double(spec.params, "q", 2.0));

    struct Zoo {
        std::string label;
        KernelProfile profile;
        bool expect_a2;
    };
    std::vector<Zoo> zoo;
    zoo.push_back({"power(0.25)", KernelProfile::power(0.25), true});
    zoo.push_back({"power(0.5)", KernelProfile::power(0.5), true});
    zoo.push_back({"power(0.75)", KernelProfile::power(0.75), true});
    zoo.push_back({"log1p_power(0.5)", KernelProfile::log1p_power(0.5), true});
    zoo.push_back({"constant_one", KernelProfile::constant_one(), false});
    {
        std::vector<double> knots, values;
        for (int i = 0; i <= 16; ++i) {
            const double r = std::pow(10.0, -6.0 + 0.5 * i);
            knots.push_back(r);
            values.push_back(std::pow(r, 0.3));
        }
        // clamped extrapolation flattens phi outside the knot hull, so the
        // r -> 0 series eventually stalls: the honest verdict is a2 = fail
        zoo.push_back({"tabulated(r^0.3,clamped)", KernelProfile::tabulated(knots, values), false});
    }

    rep.columns = {"kernel", "a1_value",  "a1_finite", "c2",       "c2_tail", "a2_pass",
                   "c3",     "mat_zero",  "mat_inf",   "tail_sum", "tail_finite"};
    bool all_expected = true;
    for (const auto& z : zoo) {
        const Kernel kern = Kernel::product(d, exps.q, z.profile);
        const AssumptionReport ar = audit_kernel(kern, exps, diam, {}, kmax);
        const auto mz = estimate_matuszewska_lower(z.profile, FitEnd::Zero,
                                                   default_fit_range(FitEnd::Zero));
        const auto mi = estimate_matuszewska_lower(z.profile, FitEnd::Infinity,
                                                   default_fit_range(FitEnd::Infinity));
        const auto [tail_sum, tail_fin] = radial_tail_series(kern, 64);
        rep.rows.push_back({z.label, format_cell(ar.a1.value), ar.a1.finite ? "1" : "0",
                            format_cell(ar.a2.c2_empirical), format_cell(ar.a2.tail_bound),
                            ar.pass_a2 ? "1" : "0", format_cell(ar.a3.c3),
                            format_cell(mz.lower_index_at_zero),
                            format_cell(mi.lower_index_at_infinity),
                            std::isinf(tail_sum) ? "inf" : format_cell(tail_sum),
                            tail_fin ? "1" : "0"});
        if (ar.pass_a2 != z.expect_a2) all_expected = false;
    }
    rep.pass = all_expected;
    rep.verdict = all_expected ? "assumption checks match the expected kernel classification"
                               : "unexpected assumption verdict in the kernel zoo";
}

// ---- const-kernel-blowup ----------------------------------------------------

void run_const_kernel_blowup(const ExperimentSpec& spec, ExperimentReport& rep) {
    const std::vector<double> gammas = get_list(spec.params, "gamma", {0.25, 0.40, 0.49});
    const double eps = get_double(spec.params, "eps", 0.5);
    for (double g : gammas)
        if (!(g > 0.0 && g < 0.5))
            throw std::invalid_argument("const-kernel-blowup: gamma must be in (0, 1/2)");
    rep.columns = {"gamma", "full_sq", "trunc_sq_bound", "ratio_sq"};
    std::vector<double> ratios;
    for (double g : gammas) {
        const double full = exact_const_kernel_full(g);
        const double trunc = exact_const_kernel_truncated_bound(g, eps);
        const double ratio = full / trunc;
        ratios.push_back(ratio);
        rep.rows.push_back(
            {format_cell(g), format_cell(full), format_cell(trunc), format_cell(ratio)});
    }
    bool monotone = true;
    for (std::size_t i = 1; i < ratios.size(); ++i)
        if (ratios[i] <= ratios[i - 1]) monotone = false;
    const double growth = ratios.back() / ratios.front();
    rep.pass = monotone && growth >= 9.0;
    std::ostringstream v;
    v << "ratio_sq growth " << format_cell(growth) << " (need >= 9, monotone)";
    rep.verdict = v.str();
}

// ---- hilbert-kernel-blowup --------------------------------------------------

void run_hilbert_kernel_blowup(const ExperimentSpec& spec, ExperimentReport& rep) {
    const std::vector<double> ns = get_list(spec.params, "n", {16, 64, 256});
    const double theta = get_double(spec.params, "theta", 0.5);
    QuadratureConfig cfg;
    cfg.error_pass = false;
    const Kernel kern = Kernel::product(1, 2.0, KernelProfile::constant_one());
    const Domain dom = Domain::interval(0.0, 1.0);
    const ExponentPair exps(2.0, 2.0);
    rep.columns = {"n", "full_sq", "trunc_sq", "ratio_sq"};
    std::vector<double> ratios;
    for (double n : ns) {
        const double full_sq = hilbert_example_full_squared(n);
        const SeminormEstimate tr =
            truncated_seminorm(TestFunction::capped_reciprocal(n), dom, kern, exps, theta, cfg);
        const double ratio = full_sq / tr.value_squared;
        ratios.push_back(ratio);
        rep.rows.push_back({format_cell(n), format_cell(full_sq), format_cell(tr.value_squared),
                            format_cell(ratio)});
    }
    const double growth = ratios.back() / ratios.front();
    rep.pass = growth >= 1.5;
    std::ostringstream v;
    v << "ratio_sq growth " << format_cell(growth) << " over n ladder (need >= 1.5)";
    rep.verdict = v.str();
}

// ---- uniform-square-ratio ----------------------------------------------------

std::vector<std::pair<std::string, TestFunction>> square_suite() {
    return {
        {"coordinate_x1", TestFunction::coordinate(0)},
        {"coordinate_x2", TestFunction::coordinate(1)},
        {"product_x1x2", TestFunction::coord_product()},
        {"bump_center", TestFunction::bump({0.5, 0.5}, 0.45)},
        {"bump_offset", TestFunction::bump({0.35, 0.6}, 0.3)},
        {"power_gamma_x1", TestFunction::power_gamma(0.25)},
    };
}

void run_uniform_square_ratio(const ExperimentSpec& spec, ExperimentReport& rep) {
    const std::vector<double> alphas = get_list(spec.params, "alpha", {0.5, 1.0, 1.5});
    const std::vector<double> thetas = get_list(spec.params, "theta", {0.25, 1.0});
    const int check_refine = get_int(spec.params, "check_refine", 1);
    QuadratureConfig cfg;
    cfg.error_pass = false;
    cfg.boundary_layers = 8;  // ample for ratio verdicts; the refine pass doubles it
    const Domain dom = Domain::box({{0.0, 1.0}, {0.0, 1.0}});
    const ExponentPair exps(2.0, 2.0);

    rep.columns = {"f", "alpha", "theta", "full", "trunc", "ratio"};
    std::map<double, double> suite_max;  // theta -> max ratio
    double max_ratio = -1.0;
    double max_alpha = 0.0;
    bool all_finite = true;
    for (double a : alphas) {
        const Kernel kern = Kernel::product(2, 2.0, KernelProfile::power(a / 2.0));
        for (const auto& [label, f] : square_suite()) {
            const SeminormPair pr = seminorm_pair(f, dom, kern, exps, thetas, cfg);
            for (std::size_t t = 0; t < thetas.size(); ++t) {
                const double ratio = pr.truncated[t].value > 0.0
                                         ? pr.full.value / pr.truncated[t].value
                                         : inf;
                if (!std::isfinite(ratio) || pr.full.diverged) all_finite = false;
                suite_max[thetas[t]] = std::max(suite_max[thetas[t]], ratio);
                if (ratio > max_ratio) {
                    max_ratio = ratio;
                    max_alpha = a;
                }
                rep.rows.push_back({label, format_cell(a), format_cell(thetas[t]),
                                    format_cell(pr.full.value),
                                    format_cell(pr.truncated[t].value), format_cell(ratio)});
            }
        }
    }
    bool theta_order = true;
    if (thetas.size() >= 2) theta_order = suite_max.begin()->second >= suite_max.rbegin()->second;

    bool stable = true;
    double drift = 0.0;
    if (check_refine) {
        // recompute the suite-max entry under doubled refinement
        std::string max_label;
        double max_theta = thetas.front();
        double best = -1.0;
        for (const auto& row : rep.rows) {
            const double ratio = std::stod(row[5]);
            if (ratio > best && std::stod(row[1]) == max_alpha) {
                best = ratio;
                max_label = row[0];
                max_theta = std::stod(row[2]);
            }
        }
        const Kernel kern = Kernel::product(2, 2.0, KernelProfile::power(max_alpha / 2.0));
        const QuadratureConfig fine = refined(cfg, 2);
        double fine_max = -1.0;
        for (const auto& [label, f] : square_suite()) {
            if (label != max_label) continue;
            const SeminormPair pr = seminorm_pair(f, dom, kern, exps, thetas, fine);
            for (std::size_t t = 0; t < thetas.size(); ++t)
                if (thetas[t] == max_theta && pr.truncated[t].value > 0.0)
                    fine_max = pr.full.value / pr.truncated[t].value;
        }
        drift = std::abs(fine_max - max_ratio) / max_ratio;
        stable = drift <= 0.25;
        rep.rows.push_back({"suite_max_refined", format_cell(max_alpha), format_cell(max_theta),
                            format_cell(fine_max), format_cell(max_ratio), format_cell(drift)});
    }
    rep.pass = all_finite && theta_order && stable;
    std::ostringstream v;
    v << "finite=" << all_finite << " theta_order=" << theta_order << " refine_drift="
      << format_cell(drift) << " (need <= 0.25)";
    rep.verdict = v.str();
}

// ---- strips ------------------------------------------------------------------

void run_strip(const ExperimentSpec& spec, ExperimentReport& rep, int l_fixed) {
    const int l = l_fixed > 0 ? l_fixed : get_int(spec.params, "l", 1);
    const int k = get_int(spec.params, "k", 1);
    if (k != 1) throw std::invalid_argument("strip experiments support k = 1");
    if (l < 1 || l > 2) throw std::invalid_argument("strip experiments support l in {1,2}");
    const double alpha = get_double(spec.params, "alpha", 1.5);
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("strip experiments: alpha must be in (0,2)");
    const std::vector<double> ns = get_list(spec.params, "n", {4, 8, 16, 32});
    const double theta = get_double(spec.params, "theta", 0.5);
    QuadratureConfig cfg;
    cfg.error_pass = false;
    const Domain dom = Domain::strip(1, l);
    const Kernel kern = Kernel::product(1 + l, 2.0, KernelProfile::power(alpha / 2.0));
    const ExponentPair exps(2.0, 2.0);

    rep.columns = {"n", "full_sq", "trunc_sq", "ratio_sq"};
    std::vector<double> ratio_sq;
    for (double n : ns) {
        const SeminormPair pr =
            seminorm_pair(TestFunction::strip_ramp(n), dom, kern, exps, {theta}, cfg);
        const double r2 = pr.full.value_squared / pr.truncated.front().value_squared;
        ratio_sq.push_back(r2);
        rep.rows.push_back({format_cell(n), format_cell(pr.full.value_squared),
                            format_cell(pr.truncated.front().value_squared), format_cell(r2)});
    }
    std::vector<double> ratio;
    for (double r2 : ratio_sq) ratio.push_back(std::sqrt(r2));
    const double spread = *std::max_element(ratio.begin(), ratio.end()) /
                          *std::min_element(ratio.begin(), ratio.end());
    const double growth = ratio_sq.back() / ratio_sq.front();
    bool monotone_up = true;
    for (std::size_t i = 1; i < ratio_sq.size(); ++i)
        if (ratio_sq[i] <= ratio_sq[i - 1]) monotone_up = false;
    const bool bounded = spread <= 2.0;
    const bool growing = growth >= 1.5 && monotone_up;
    const bool expect_bounded = (k - l - alpha) < -1.0;
    rep.pass = expect_bounded ? bounded : growing;
    std::ostringstream v;
    v << "k-l-alpha=" << format_cell(k - l - alpha) << " expect="
      << (expect_bounded ? "bounded" : "growing") << " spread=" << format_cell(spread)
      << " growth=" << format_cell(growth);
    rep.verdict = v.str();
    rep.rows.push_back({"flag", expect_bounded ? "bounded_expected" : "growing_expected",
                        bounded ? "bounded" : "not_bounded", growing ? "growing" : "not_growing"});
}

// ---- zero-order-log -----------------------------------------------------------

void run_zero_order_log(const ExperimentSpec& spec, ExperimentReport& rep) {
    const double theta = get_double(spec.params, "theta", 0.5);
    const int n = get_int(spec.params, "n", 2);
    QuadratureConfig cfg;
    cfg.error_pass = false;
    const Domain dom = Domain::interval(0.0, 1.0);
    const ExponentPair exps(2.0, 2.0);
    const Kernel k0 = Kernel::product(1, 2.0, KernelProfile::constant_one());
    const Kernel klog = Kernel::product(1, 2.0, KernelProfile::inv_log_power(1.0));

    FourierSeries cosine;
    cosine.set(1, {0.5, 0.0});
    cosine.set(-1, {0.5, 0.0});
    std::vector<std::pair<std::string, TestFunction>> suite = {
        {"coordinate", TestFunction::coordinate(0)},
        {"ramp", TestFunction::strip_ramp(1.0)},
        {"cosine", TestFunction::sparse_fourier(cosine)},
        {"capped_reciprocal_4", TestFunction::capped_reciprocal(4.0)},
    };
    rep.columns = {"row", "a", "b", "c"};
    bool ok = true;
    double worst = 0.0;
    for (const auto& [label, f] : suite) {
        const SeminormEstimate full0 = full_seminorm(f, dom, k0, exps, cfg);
        const SeminormEstimate trlog = truncated_seminorm(f, dom, klog, exps, theta, cfg);
        const double ratio = trlog.value > 0.0 ? full0.value / trlog.value : inf;
        worst = std::max(worst, ratio);
        if (!std::isfinite(ratio) || full0.diverged || trlog.diverged) ok = false;
        rep.rows.push_back({"forward_" + label, format_cell(full0.value),
                            format_cell(trlog.value), format_cell(ratio)});
    }
    // Fourier side: the sparse series keeps the log-weighted sums summable and
    // the log^2-weighted sums divergent
    const auto s_log = step3_weighted_ladder(n, SumWeight::Log, {100, 9999, 10000, 20000});
    const auto s_log2 = step3_weighted_ladder(n, SumWeight::LogSquared, {100, 10000});
    const double last_term = s_log[2] - s_log[1];
    const double spread2 = s_log2[1] - s_log2[0];
    const double ln2 = std::log(2.0);
    const double need2 = 0.8 * std::log(100.0) * ln2 * ln2;
    const bool cauchy = last_term < 1e-6;
    const bool diverging = spread2 >= need2;
    rep.rows.push_back({"fourier_log_term_at_1e4", format_cell(last_term), "<1e-6",
                        cauchy ? "1" : "0"});
    rep.rows.push_back({"fourier_log2_spread", format_cell(spread2), format_cell(need2),
                        diverging ? "1" : "0"});
    rep.pass = ok && cauchy && diverging;
    std::ostringstream v;
    v << "forward_max_ratio=" << format_cell(worst) << " log_cauchy=" << cauchy
      << " log2_diverging=" << diverging;
    rep.verdict = v.str();
}

// ---- whitney-lemmas -----------------------------------------------------------

void run_whitney_lemmas(const ExperimentSpec& spec, ExperimentReport& rep) {
    const std::vector<double> depths = get_list(spec.params, "depth", {6, 8});
    const double s = get_double(spec.params, "s", 0.5);
    const double eta = get_double(spec.params, "eta", 2.0);
    const double kappa = get_double(spec.params, "kappa", 1.0);
    const int pairs = get_int(spec.params, "pairs", 200);
    const Domain dom = Domain::box({{0.0, 1.0}, {0.0, 1.0}});
    const KernelProfile prof = KernelProfile::power(s);
    const ExponentPair exps(2.0, 2.0);

    rep.columns = {"depth", "cubes", "allover", "shadow", "chain", "violations"};
    std::vector<std::array<double, 3>> sups;
    bool axioms_ok = true;
    for (double dd : depths) {
        WhitneyParams wp;
        wp.max_depth = static_cast<int>(dd);
        const WhitneyDecomposition w = whitney_decompose(dom, wp);
        const LemmaReport a = lemma_sum_all_over(w, prof, eta, exps);
        const LemmaReport b = lemma_shadow_sum(w, prof, eta);
        const LemmaReport c = lemma_chain_sum(w, prof, kappa, exps, pairs, spec.seed);
        const WhitneyViolations viol = verify_whitney(w);
        if (viol.total() != 0) axioms_ok = false;
        sups.push_back({a.sup_constant, b.sup_constant, c.sup_constant});
        rep.rows.push_back({format_cell(dd), std::to_string(w.size()),
                            format_cell(a.sup_constant), format_cell(b.sup_constant),
                            format_cell(c.sup_constant), std::to_string(viol.total())});
    }
    bool stable = true;
    double worst_drift = 0.0;
    if (sups.size() >= 2) {
        for (int i = 0; i < 3; ++i) {
            const double drift =
                std::abs(sups.back()[static_cast<std::size_t>(i)] - sups.front()[static_cast<std::size_t>(i)]) /
                sups.front()[static_cast<std::size_t>(i)];
            worst_drift = std::max(worst_drift, drift);
        }
        stable = worst_drift <= 0.20;
    }
    rep.pass = axioms_ok && stable;
    std::ostringstream v;
    v << "axioms_ok=" << axioms_ok << " depth_drift=" << format_cell(worst_drift)
      << " (need <= 0.20)";
    rep.verdict = v.str();
}

// ---- registry -------------------------------------------------------------

const std::map<std::string, Entry>& registry() {
    static const std::map<std::string, Entry> reg = [] {
        std::map<std::string, Entry> r;
        r["kernel-audit"] = {
            "d:int=1, p:double=2, q:double=2, kmax:int=64, diam:double=1",
            "integrability, dyadic-series and doubling checks plus regular-variation "
            "indices for the built-in kernel zoo",
            run_kernel_audit};
        r["const-kernel-blowup"] = {
            "gamma:list<double> in (0,1/2) =0.25,0.40,0.49, eps:double=0.5",
            "closed-form full vs truncated energies of x^-gamma under the constant "
            "kernel blow up as gamma -> 1/2",
            run_const_kernel_blowup};
        r["hilbert-kernel-blowup"] = {
            "n:list<double>=16,64,256, theta:double=0.5",
            "full/truncated energy ratio for n ^ 1/x under |x-y|^-1 grows like log n",
            run_hilbert_kernel_blowup};
        r["uniform-square-ratio"] = {
            "alpha:list<double>=0.5,1.0,1.5, theta:list<double>=0.25,1.0, check_refine:int=1",
            "full and truncated seminorms stay comparable on the unit square for "
            "fractional kernels across a six-function suite",
            run_uniform_square_ratio};
        r["strip-1d"] = {
            "alpha:double=1.5, n:list<double>=4,8,16,32, theta:double=0.5",
            "on R x (0,1) the ratio ladder stays bounded for alpha > 1 and grows "
            "like n^(1-alpha) for alpha < 1",
            [](const ExperimentSpec& s, ExperimentReport& rr) { run_strip(s, rr, 1); }};
        r["strip-kl"] = {
            "k:int=1, l:int in {1,2}, alpha:double, n:list<double>=4,8,16,32, theta:double=0.5",
            "comparability on R^k x (0,1)^l holds iff k - l - alpha < -1 "
            "(k = 1 at desk scale)",
            [](const ExperimentSpec& s, ExperimentReport& rr) { run_strip(s, rr, 0); }};
        r["zero-order-log"] = {
            "theta:double=0.5, n:int=2",
            "the 0-order kernel energy is dominated by the log-corrected truncated "
            "energy, while the log^2-weighted spectral sums of the sparse series diverge",
            run_zero_order_log};
        r["whitney-lemmas"] = {
            "depth:list<double>=6,8, s:double=0.5, eta:double=2, kappa:double=1, pairs:int=200",
            "cube-sum, shadow-sum and chain-sum constants are depth-stable and the "
            "construction satisfies all four decomposition axioms",
            run_whitney_lemmas};
        return r;
    }();
    return reg;
}

}  // namespace

std::vector<ExperimentInfo> list_experiments() {
    std::vector<ExperimentInfo> out;
    for (const auto& [name, e] : registry()) out.push_back({name, e.schema, e.claim});
    return out;
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    const auto it = registry().find(spec.name);
    if (it == registry().end())
        throw std::invalid_argument("unknown experiment: " + spec.name);
    ExperimentReport rep;
    rep.name = spec.name;
    rep.provenance = provenance_for(spec);
    it->second.run(spec, rep);
    return rep;
}

}  // namespace gagliardo
