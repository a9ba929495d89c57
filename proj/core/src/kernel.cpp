#include "gagliardo/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gagliardo {

KernelProfile KernelProfile::power(double exponent, double scale) {
    if (!(exponent > 0.0)) throw std::invalid_argument("power profile: exponent must be > 0");
    if (!(scale > 0.0)) throw std::invalid_argument("power profile: scale must be > 0");
    KernelProfile p;
    p.kind_ = Kind::Power;
    p.a_ = exponent;
    p.b_ = scale;
    return p;
}

KernelProfile KernelProfile::log1p_power(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("log1p_power profile: gamma must be in (0,1)");
    KernelProfile p;
    p.kind_ = Kind::Log1pPower;
    p.a_ = gamma;
    return p;
}

KernelProfile KernelProfile::constant_one() {
    KernelProfile p;
    p.kind_ = Kind::ConstantOne;
    return p;
}

KernelProfile KernelProfile::inv_log_power(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("inv_log_power profile: beta must be > 0");
    KernelProfile p;
    p.kind_ = Kind::InvLogPower;
    p.a_ = beta;
    return p;
}

KernelProfile KernelProfile::tabulated(std::vector<double> knots, std::vector<double> values) {
    if (knots.size() < 2 || knots.size() != values.size())
        throw std::invalid_argument("tabulated profile: need >= 2 matching knots/values");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!(knots[i] > 0.0) || !(values[i] > 0.0))
            throw std::invalid_argument("tabulated profile: knots and values must be positive");
        if (i > 0 && !(knots[i] > knots[i - 1]))
            throw std::invalid_argument("tabulated profile: knots must be strictly increasing");
        if (i > 0 && values[i] < values[i - 1])
            throw std::invalid_argument("tabulated profile: values must be nondecreasing");
    }
    KernelProfile p;
    p.kind_ = Kind::Tabulated;
    p.log_knots_.resize(knots.size());
    p.log_values_.resize(values.size());
    for (std::size_t i = 0; i < knots.size(); ++i) {
        p.log_knots_[i] = std::log(knots[i]);
        p.log_values_[i] = std::log(values[i]);
    }
    return p;
}

double KernelProfile::operator()(double r) const {
    if (!(r > 0.0)) throw std::domain_error("phi_eval: r must be > 0");
    switch (kind_) {
        case Kind::Power: return b_ * std::pow(r, a_);
        case Kind::Log1pPower: return std::pow(std::log1p(r), a_);
        case Kind::ConstantOne: return 1.0;
        case Kind::InvLogPower: {
            const double l = std::max(std::abs(std::log(r)), 1.0);
            return std::pow(l, -a_);
        }
        case Kind::Tabulated: {
            const double lr = std::log(r);
            // clamped extrapolation outside the knot hull
            if (lr <= log_knots_.front()) return std::exp(log_values_.front());
            if (lr >= log_knots_.back()) return std::exp(log_values_.back());
            const auto it = std::upper_bound(log_knots_.begin(), log_knots_.end(), lr);
            const std::size_t i = static_cast<std::size_t>(it - log_knots_.begin());
            const double t = (lr - log_knots_[i - 1]) / (log_knots_[i] - log_knots_[i - 1]);
            return std::exp(log_values_[i - 1] + t * (log_values_[i] - log_values_[i - 1]));
        }
    }
    return 1.0;
}

bool KernelProfile::nondecreasing_on(const std::vector<double>& grid) const {
    double prev = -inf;
    double prev_r = 0.0;
    for (double r : grid) {
        if (!(r > 0.0)) continue;
        const double v = (*this)(r);
        if (r > prev_r && v < prev * (1.0 - 1e-13)) return false;
        prev = v;
        prev_r = r;
    }
    return true;
}

bool KernelProfile::increasing_by_construction() const {
    switch (kind_) {
        case Kind::Power:
        case Kind::Log1pPower:
        case Kind::Tabulated: return true;
        case Kind::ConstantOne: return true;  // nondecreasing
        case Kind::InvLogPower: return false;
    }
    return false;
}

std::string KernelProfile::name() const {
    switch (kind_) {
        case Kind::Power: return "power";
        case Kind::Log1pPower: return "log1p_power";
        case Kind::ConstantOne: return "constant_one";
        case Kind::InvLogPower: return "inv_log_power";
        case Kind::Tabulated: return "tabulated";
    }
    return "?";
}

nlohmann::json KernelProfile::to_json() const {
    nlohmann::json j;
    j["variant"] = name();
    nlohmann::json params = nlohmann::json::object();
    switch (kind_) {
        case Kind::Power:
            params["s"] = a_;
            params["c"] = b_;
            break;
        case Kind::Log1pPower: params["gamma"] = a_; break;
        case Kind::ConstantOne: break;
        case Kind::InvLogPower: params["beta"] = a_; break;
        case Kind::Tabulated: {
            std::vector<double> knots, values;
            for (std::size_t i = 0; i < log_knots_.size(); ++i) {
                knots.push_back(std::exp(log_knots_[i]));
                values.push_back(std::exp(log_values_[i]));
            }
            params["knots"] = knots;
            params["values"] = values;
            break;
        }
    }
    j["params"] = params;
    return j;
}

KernelProfile KernelProfile::from_json(const nlohmann::json& j) {
    const std::string variant = j.at("variant").get<std::string>();
    const nlohmann::json params = j.value("params", nlohmann::json::object());
    if (variant == "power")
        return power(params.at("s").get<double>(), params.value("c", 1.0));
    if (variant == "log1p_power") return log1p_power(params.at("gamma").get<double>());
    if (variant == "constant_one") return constant_one();
    if (variant == "inv_log_power") return inv_log_power(params.at("beta").get<double>());
    if (variant == "tabulated")
        return tabulated(params.at("knots").get<std::vector<double>>(),
                         params.at("values").get<std::vector<double>>());
    throw std::invalid_argument("unknown kernel profile variant: " + variant);
}

double phi_eval(const KernelProfile& profile, double r) { return profile(r); }

ExponentPair::ExponentPair(double p_, double q_) : p(p_), q(q_) {
    if (!(q > 1.0 && q <= p)) throw std::invalid_argument("ExponentPair: need 1 < q <= p");
}

Kernel Kernel::product(int d, double q, KernelProfile profile) {
    if (d < 1) throw std::invalid_argument("Kernel: dimension must be >= 1");
    Kernel k;
    k.dim = d;
    k.q = q;
    k.profile = std::move(profile);
    k.flat = false;
    return k;
}

Kernel Kernel::flat_one(int d) {
    Kernel k;
    k.dim = d;
    k.q = 2.0;
    k.flat = true;
    return k;
}

double Kernel::radial(double r) const {
    if (flat) return 1.0;
    if (!(r > 0.0)) throw std::domain_error("kernel radial: r must be > 0");
    return std::pow(r, -static_cast<double>(dim)) * std::pow(profile(r), -q);
}

double Kernel::operator()(const Point& x, const Point& y) const {
    if (flat) return 1.0;
    const double r = dist(x, y);
    if (!(r > 0.0)) throw std::domain_error("kernel_eval: x == y hits the singularity");
    return radial(r);
}

nlohmann::json Kernel::to_json() const {
    nlohmann::json j;
    j["d"] = dim;
    j["q"] = q;
    if (flat)
        j["flat"] = true;
    else
        j["profile"] = profile.to_json();
    return j;
}

Kernel Kernel::from_json(const nlohmann::json& j) {
    const int d = j.at("d").get<int>();
    if (j.value("flat", false)) return flat_one(d);
    return product(d, j.at("q").get<double>(), KernelProfile::from_json(j.at("profile")));
}

double kernel_eval(const Kernel& k, const Point& x, const Point& y) { return k(x, y); }

}  // namespace gagliardo
