#include "gagliardo/fourier.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gagliardo/gauss.hpp"

namespace gagliardo {

void FourierSeries::set(std::int64_t m, std::complex<double> v) {
    if (v == std::complex<double>(0.0, 0.0)) {
        coeff.erase(m);
    } else {
        coeff[m] = v;
        max_index = std::max<std::int64_t>(max_index, std::llabs(m));
    }
}

std::complex<double> FourierSeries::get(std::int64_t m) const {
    const auto it = coeff.find(m);
    return it == coeff.end() ? std::complex<double>(0.0, 0.0) : it->second;
}

bool FourierSeries::conjugate_symmetric(double tol) const {
    for (const auto& [m, v] : coeff) {
        const std::complex<double> w = get(-m);
        if (std::abs(std::conj(v) - w) > tol) return false;
    }
    return true;
}

std::complex<double> FourierSeries::eval(double x) const {
    std::complex<double> s(0.0, 0.0);
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (const auto& [m, v] : coeff)
        s += v * std::polar(1.0, two_pi * static_cast<double>(m) * x);
    return s;
}

nlohmann::json FourierSeries::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [m, v] : coeff)
        entries.push_back({{"m", m}, {"re", v.real()}, {"im", v.imag()}});
    j["coefficients"] = entries;
    j["max_index"] = max_index;
    return j;
}

FourierSeries FourierSeries::from_json(const nlohmann::json& j) {
    FourierSeries s;
    for (const auto& e : j.at("coefficients"))
        s.set(e.at("m").get<std::int64_t>(),
              {e.at("re").get<double>(), e.value("im", 0.0)});
    return s;
}

FourierSeries fourier_coefficients(const std::function<double(double)>& f, int max_index) {
    if (max_index < 1) throw std::invalid_argument("fourier_coefficients: max_index must be >= 1");
    FourierSeries out;
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (std::int64_t m = -max_index; m <= max_index; ++m) {
        // panels fine enough to resolve the oscillation of e^{-2 pi i m x}
        const int panels = std::max<int>(8, 4 * static_cast<int>(std::llabs(m)));
        KahanSum re, im;
        for (int p = 0; p < panels; ++p) {
            const double a = static_cast<double>(p) / panels;
            const double b = static_cast<double>(p + 1) / panels;
            re.add(gauss_panel([&](double x) { return f(x) * std::cos(two_pi * m * x); }, a, b, 8));
            im.add(gauss_panel([&](double x) { return -f(x) * std::sin(two_pi * m * x); }, a, b, 8));
        }
        std::complex<double> v(re.value(), im.value());
        if (std::abs(v) > 1e-14) out.set(m, v);
    }
    out.max_index = max_index;
    return out;
}

std::pair<double, double> cosine_log_integrals(long m) {
    if (m == 0) return {0.0, 0.0};
    const double am = std::abs(static_cast<double>(m));
    const double two_pi = 2.0 * 3.14159265358979323846;
    // split at h = 1/|m|: below, 1-cos is smooth and vanishes quadratically;
    // above, integrate per oscillation period
    auto base = [&](double h) { return 2.0 * std::pow(std::sin(0.5 * two_pi * am * h), 2) / h; };
    auto logw = [&](double h) { return std::max(-std::log(h), 1.0); };

    KahanSum i0, il;
    const double split = 1.0 / am;
    // graded panels below the split remove the h -> 0 scale spread
    {
        const int levels = 40;
        for (int j = levels - 1; j >= 0; --j) {
            const double a = split * std::ldexp(1.0, -(j + 1));
            const double b = split * std::ldexp(1.0, -j);
            i0.add(gauss_panel(base, a, b, 8));
            il.add(gauss_panel([&](double h) { return base(h) * logw(h); }, a, b, 8));
        }
        // remaining [0, split*2^-levels] contributes O((m h)^2/h) ~ negligible
    }
    // one panel per period above the split
    const long periods = static_cast<long>(std::ceil(am));
    for (long p = 0; p < periods; ++p) {
        const double a = split + (1.0 - split) * static_cast<double>(p) / periods;
        const double b = split + (1.0 - split) * static_cast<double>(p + 1) / periods;
        i0.add(gauss_panel(base, a, b, 10));
        il.add(gauss_panel([&](double h) { return base(h) * logw(h); }, a, b, 10));
    }
    return {i0.value(), il.value()};
}

std::string WeightedSumReport::to_csv() const {
    std::ostringstream os;
    os << "cutoff,partial_sum\n";
    os.precision(12);
    for (std::size_t i = 0; i < cutoffs.size(); ++i)
        os << cutoffs[i] << ',' << partial_sums[i] << '\n';
    return os.str();
}

WeightedSumReport weighted_sum(const FourierSeries& series, SumWeight weight,
                               const std::vector<std::int64_t>& cutoffs) {
    WeightedSumReport rep;
    rep.weight = weight;
    rep.cutoffs = cutoffs;
    for (std::int64_t cut : cutoffs) {
        KahanSum acc;
        for (const auto& [m, v] : series.coeff) {
            if (m == 0 || std::llabs(m) > cut) continue;
            const double lm = std::log(static_cast<double>(std::llabs(m)));
            const double w = weight == SumWeight::Log ? lm : lm * lm;
            acc.add(std::norm(v) * w);
        }
        rep.partial_sums.push_back(acc.value());
    }
    // crude divergence signal: last two ladder increments not shrinking
    if (rep.partial_sums.size() >= 3) {
        const std::size_t n = rep.partial_sums.size();
        const double d1 = rep.partial_sums[n - 1] - rep.partial_sums[n - 2];
        const double d2 = rep.partial_sums[n - 2] - rep.partial_sums[n - 3];
        rep.likely_divergent = d1 > 0.5 * d2 && d1 > 1e-9;
    }
    return rep;
}

FourierSeries step3_counterexample(int n, int levels) {
    if (n < 2) throw std::invalid_argument("step3_counterexample: n must be >= 2");
    if (levels < 1 || levels > 62)
        throw std::invalid_argument("step3_counterexample: levels must be in [1,62]");
    FourierSeries s;
    const std::int64_t base = 2 * static_cast<std::int64_t>(n) + 1;
    for (int l = 1; l <= levels; ++l) {
        const std::int64_t m = base << l;
        s.set(m, std::complex<double>(std::pow(static_cast<double>(l), -1.5), 0.0));
    }
    return s;
}

std::vector<double> step3_weighted_ladder(int n, SumWeight weight,
                                          const std::vector<long>& level_cutoffs) {
    if (n < 2) throw std::invalid_argument("step3_weighted_ladder: n must be >= 2");
    const double ln2 = std::log(2.0);
    const double lnb = std::log(2.0 * n + 1.0);
    std::vector<double> out;
    KahanSum acc;
    long done = 0;
    for (long cut : level_cutoffs) {
        for (long l = done + 1; l <= cut; ++l) {
            const double lm = static_cast<double>(l) * ln2 + lnb;  // log of (2n+1) 2^l
            const double w = weight == SumWeight::Log ? lm : lm * lm;
            acc.add(w / (static_cast<double>(l) * l * l));
        }
        done = std::max(done, cut);
        out.push_back(acc.value());
    }
    return out;
}

}  // namespace gagliardo
