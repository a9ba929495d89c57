#include "gagliardo/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gagliardo/gauss.hpp"

namespace gagliardo {

namespace {

// Integrate h over dyadic panels going toward 0 (direction=-1, anchored at
// `anchor`) or toward infinity (direction=+1). Stops when increments fall
// below eps relative or divergence is detected: nondecreasing increments with
// the partial sum beyond `cap`.
struct DyadicTally {
    double sum = 0.0;
    double tail = 0.0;
    bool finite = true;
    int panels = 0;
};

template <class F>
DyadicTally dyadic_integrate(F&& h, double anchor, int direction, double cap, int max_panels,
                             int order) {
    DyadicTally out;
    KahanSum acc;
    double inc0 = -1.0, inc1 = -1.0, inc2 = -1.0;  // last three increments, inc0 newest
    for (int j = 0; j < max_panels; ++j) {
        double a, b;
        if (direction < 0) {
            a = anchor * std::ldexp(1.0, -(j + 1));
            b = anchor * std::ldexp(1.0, -j);
        } else {
            a = anchor * std::ldexp(1.0, j);
            b = anchor * std::ldexp(1.0, j + 1);
        }
        const double inc = gauss_panel(h, a, b, order);
        acc.add(inc);
        ++out.panels;
        inc2 = inc1;
        inc1 = inc0;
        inc0 = inc;
        // divergence: three consecutive non-shrinking increments past the cap
        if (inc2 >= 0.0 && inc0 >= inc1 * (1.0 - 1e-12) && inc1 >= inc2 * (1.0 - 1e-12) &&
            acc.value() > cap) {
            out.finite = false;
            out.sum = acc.value();
            return out;
        }
        if (j > 2 && std::abs(inc) < 1e-16 * std::max(1.0, std::abs(acc.value()))) {
            inc0 = 0.0;  // increments vanished; no tail
            break;
        }
    }
    out.sum = acc.value();
    if (inc0 <= 1e-14 * std::max(1.0, std::abs(out.sum))) return out;
    if (inc1 > 0.0 && inc2 > 0.0) {
        const double rho0 = inc0 / inc1;
        const double rho1 = inc1 / inc2;
        if (rho0 < 0.999 && rho0 <= rho1 * (1.0 + 1e-9)) {
            // increment ratios stable or improving: geometric tail bound
            out.tail = inc0 * rho0 / (1.0 - rho0);
            return out;
        }
        // ratios creeping toward 1: increments behave like j^{-s}; certify via
        // the integral test only when s is safely above 1
        const double k = static_cast<double>(out.panels);
        const double s = std::log(inc1 / inc0) / std::log(k / (k - 1.0));
        if (s > 1.05) {
            out.tail = inc0 * k / (s - 1.0);
            return out;
        }
    }
    out.finite = false;
    return out;
}

}  // namespace

A1Result check_a1(const Kernel& kernel, double cap) {
    A1Result res;
    res.cap = cap;
    if (kernel.flat) {
        // K == 1: (1 ^ r^q) r^{d-1} integrable near 0, divergent at infinity,
        // but the flat kernel is only used on bounded reproductions. Report
        // the unit-ball part and flag the tail infinite.
        res.near_part = sphere_area(kernel.dim) / (kernel.q + kernel.dim);
        res.finite_far = false;
        res.finite = false;
        res.value = res.near_part;
        return res;
    }
    const double area = sphere_area(kernel.dim);
    const auto& phi = kernel.profile;
    const double q = kernel.q;
    // radial reduction: integral = area * [ int_0^1 r^{q-1} phi(r)^{-q} dr
    //                                     + int_1^inf r^{-1} phi(r)^{-q} dr ]
    auto near = [&](double r) { return std::pow(r, q - 1.0) * std::pow(phi(r), -q); };
    auto far = [&](double r) { return std::pow(phi(r), -q) / r; };
    const DyadicTally tn = dyadic_integrate(near, 1.0, -1, cap / area, 200, 8);
    const DyadicTally tf = dyadic_integrate(far, 1.0, +1, cap / area, 200, 8);
    res.near_part = area * (tn.sum + tn.tail);
    res.far_part = area * (tf.sum + tf.tail);
    res.abs_error = area * (tn.tail + tf.tail);
    res.finite_near = tn.finite;
    res.finite_far = tf.finite;
    res.finite = tn.finite && tf.finite;
    res.value = res.near_part + res.far_part;
    res.panels_used = tn.panels + tf.panels;
    return res;
}

A2Result check_a2(const Kernel& kernel, const ExponentPair& exps, double domain_diam,
                  const std::vector<double>& r_grid, int k_max) {
    if (kernel.flat) throw std::invalid_argument("check_a2: flat kernel has no profile");
    const auto& phi = kernel.profile;
    if (phi.kind() == KernelProfile::Kind::Tabulated) {
        if (!phi.nondecreasing_on(r_grid))
            throw std::invalid_argument("check_a2: tabulated profile must be nondecreasing");
    }
    const double t1 = exps.t1();
    const double t2 = exps.t2();
    const bool unbounded = std::isinf(domain_diam);

    A2Result res;
    res.k_max = k_max;
    for (double r : r_grid) {
        if (!(r > 0.0) || (!unbounded && r >= domain_diam)) continue;
        A2Row row;
        row.r = r;
        // N(r) = inf{k : 2^k r > diam}
        long n_r = -1;
        if (!unbounded) {
            n_r = 1;
            while (std::ldexp(r, static_cast<int>(n_r)) <= domain_diam && n_r < 4096) ++n_r;
        }
        row.n_r = n_r;
        const long k1 = unbounded ? k_max : std::min<long>(n_r, k_max);
        const double phir = phi(r);
        double prev = -1.0, last = 0.0;
        KahanSum s1;
        for (long k = 1; k <= k1; ++k) {
            const double term = std::pow(phir / phi(std::ldexp(r, static_cast<int>(k))), t1);
            s1.add(term);
            prev = last;
            last = term;
        }
        row.s1 = s1.value();
        const bool s1_truncated = unbounded || n_r > k_max;
        if (s1_truncated && k1 >= 2) {
            const double rho = prev > 0.0 ? last / prev : 1.0;
            if (rho < 0.999)
                row.tail1 = last * rho / (1.0 - rho);
            else if (last > 1e-14)
                row.tail_ok = false;
        }
        prev = -1.0;
        last = 0.0;
        KahanSum s2;
        for (long k = 1; k <= k_max; ++k) {
            const double term = std::pow(phi(std::ldexp(r, -static_cast<int>(k))) / phir, t2);
            s2.add(term);
            prev = last;
            last = term;
        }
        row.s2 = s2.value();
        {
            const double rho = prev > 0.0 ? last / prev : 1.0;
            if (rho < 0.999)
                row.tail2 = last * rho / (1.0 - rho);
            else if (last > 1e-14)
                row.tail_ok = false;
        }
        res.c2_empirical = std::max({res.c2_empirical, row.s1, row.s2});
        res.tail_bound = std::max({res.tail_bound, row.tail1, row.tail2});
        if (!row.tail_ok) res.finite = false;
        res.rows.push_back(row);
    }
    return res;
}

A3Result check_a3(const KernelProfile& profile, double diam, const std::vector<double>& r_grid) {
    A3Result res;
    const double r_cap = std::isinf(diam) ? inf : 3.0 * diam;
    for (double r : r_grid) {
        if (!(r > 0.0) || r >= r_cap) continue;
        const double ratio = profile(2.0 * r) / profile(r);
        res.rows.emplace_back(r, ratio);
        res.c3 = std::max(res.c3, ratio);
    }
    return res;
}

std::vector<double> default_r_grid(double diam, int points) {
    double lo, hi;
    if (std::isinf(diam)) {
        lo = 1e-6;
        hi = 1e6;
    } else {
        lo = 1e-6 * diam;
        hi = diam;
    }
    std::vector<double> grid(points);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        grid[i] = std::exp(llo + t * (lhi - llo));
    }
    // keep strictly below hi so A2's r < diam precondition holds
    grid.back() = std::nextafter(hi, lo);
    return grid;
}

nlohmann::json AssumptionReport::to_json() const {
    nlohmann::json j;
    j["a1_integral"] = {{"value", a1.value},
                        {"abs_error", a1.abs_error},
                        {"near", a1.near_part},
                        {"far", a1.far_part},
                        {"finite", a1.finite}};
    j["a2_constant"] = a2.c2_empirical;
    j["a2_tail_bound"] = a2.tail_bound;
    j["a2_finite"] = a2.finite;
    j["a3_constant"] = a3.c3;
    j["r_grid"] = r_grid;
    j["truncation_terms"] = truncation_terms;
    j["pass"] = {{"a1", pass_a1}, {"a2", pass_a2}, {"a3", pass_a3}};
    return j;
}

std::string AssumptionReport::to_csv() const {
    std::ostringstream os;
    os << "r,S1,S2,ratio\n";
    os.precision(12);
    const std::size_t n = std::min(a2.rows.size(), a3.rows.size());
    for (std::size_t i = 0; i < n; ++i) {
        os << a2.rows[i].r << ',' << a2.rows[i].s1 << ',' << a2.rows[i].s2 << ','
           << a3.rows[i].second << '\n';
    }
    return os.str();
}

AssumptionReport audit_kernel(const Kernel& kernel, const ExponentPair& exps, double domain_diam,
                              const AssumptionCaps& caps, int k_max,
                              std::optional<std::vector<double>> r_grid) {
    AssumptionReport rep;
    rep.r_grid = r_grid ? std::move(*r_grid) : default_r_grid(domain_diam);
    rep.truncation_terms = k_max;
    rep.a1 = check_a1(kernel, caps.a1_cap);
    rep.a2 = check_a2(kernel, exps, domain_diam, rep.r_grid, k_max);
    rep.a3 = check_a3(kernel.profile, domain_diam, rep.r_grid);
    rep.pass_a1 = rep.a1.finite && rep.a1.value <= caps.a1_cap;
    rep.pass_a2 = rep.a2.finite && rep.a2.c2_empirical + rep.a2.tail_bound <= caps.c2_cap &&
                  kernel.profile.nondecreasing_on(rep.r_grid);
    rep.pass_a3 = rep.a3.c3 <= caps.c3_cap;
    return rep;
}

MatuszewskaEstimate estimate_matuszewska_lower(const KernelProfile& profile, FitEnd end,
                                               const std::vector<double>& fit_range,
                                               double residual_threshold) {
    if (fit_range.size() < 8)
        throw std::invalid_argument("estimate_matuszewska_lower: need >= 8 fit points");
    MatuszewskaEstimate est;
    est.fit_range = fit_range;
    // OLS slope of log phi vs log r; the pairwise dyadic slopes of an
    // O-regularly varying profile bracket this value.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(fit_range.size());
    std::vector<double> lx(fit_range.size()), ly(fit_range.size());
    for (std::size_t i = 0; i < fit_range.size(); ++i) {
        lx[i] = std::log(fit_range[i]);
        ly[i] = std::log(profile(fit_range[i]));
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    const double intercept = (sy - slope * sx) / n;
    double rss = 0.0;
    for (std::size_t i = 0; i < fit_range.size(); ++i) {
        const double r = ly[i] - (intercept + slope * lx[i]);
        rss += r * r;
    }
    est.fit_residual = std::sqrt(rss / n);
    est.low_confidence = est.fit_residual > residual_threshold;
    if (end == FitEnd::Zero)
        est.lower_index_at_zero = slope;
    else
        est.lower_index_at_infinity = slope;
    return est;
}

std::vector<double> default_fit_range(FitEnd end, int points) {
    const double lo = end == FitEnd::Zero ? 1e-8 : 1e4;
    const double hi = end == FitEnd::Zero ? 1e-4 : 1e8;
    std::vector<double> grid(points);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < points; ++i)
        grid[i] = std::exp(llo + (lhi - llo) * i / (points - 1.0));
    return grid;
}

}  // namespace gagliardo
