#include "gagliardo/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "gagliardo/gauss.hpp"

namespace gagliardo {

TestFunction TestFunction::power_gamma(double gamma) {
    if (!(gamma > 0.0 && gamma < 0.5))
        throw std::invalid_argument("power_gamma: gamma must be in (0, 1/2)");
    TestFunction f;
    f.kind_ = Kind::PowerGamma;
    f.a_ = gamma;
    return f;
}

TestFunction TestFunction::capped_reciprocal(double n) {
    if (!(n >= 1.0)) throw std::invalid_argument("capped_reciprocal: n must be >= 1");
    TestFunction f;
    f.kind_ = Kind::CappedReciprocal;
    f.a_ = n;
    return f;
}

TestFunction TestFunction::strip_ramp(double n) {
    if (!(n >= 1.0)) throw std::invalid_argument("strip_ramp: n must be >= 1");
    TestFunction f;
    f.kind_ = Kind::StripRamp;
    f.a_ = n;
    return f;
}

TestFunction TestFunction::coordinate(int axis) {
    if (axis < 0) throw std::invalid_argument("coordinate: axis must be >= 0");
    TestFunction f;
    f.kind_ = Kind::Coordinate;
    f.axis_ = axis;
    return f;
}

TestFunction TestFunction::constant(double c) {
    TestFunction f;
    f.kind_ = Kind::Constant;
    f.a_ = c;
    return f;
}

TestFunction TestFunction::sparse_fourier(FourierSeries series) {
    TestFunction f;
    f.kind_ = Kind::SparseFourier;
    f.series_ = std::make_shared<FourierSeries>(std::move(series));
    return f;
}

TestFunction TestFunction::coord_product() {
    TestFunction f;
    f.kind_ = Kind::CoordProduct;
    return f;
}

TestFunction TestFunction::bump(Point center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("bump: radius must be > 0");
    TestFunction f;
    f.kind_ = Kind::Bump;
    f.center_ = std::move(center);
    f.radius_ = radius;
    return f;
}

double TestFunction::eval1(double t) const {
    switch (kind_) {
        case Kind::PowerGamma: return scale_ * std::pow(t, -a_);
        case Kind::CappedReciprocal: return scale_ * std::min(a_, 1.0 / t);
        case Kind::StripRamp: return scale_ * std::max(0.0, 1.0 - std::abs(t) / a_);
        case Kind::Coordinate: return scale_ * t;
        case Kind::Constant: return scale_ * a_;
        case Kind::SparseFourier: return scale_ * series_->eval(t).real();
        default: throw std::logic_error("eval1: function is not one-dimensional");
    }
}

TestFunction TestFunction::times(double c) const {
    TestFunction f = *this;
    f.scale_ *= c;
    return f;
}

double TestFunction::operator()(const Point& x) const {
    switch (kind_) {
        case Kind::Coordinate: return scale_ * x[static_cast<std::size_t>(axis_)];
        case Kind::Constant: return scale_ * a_;
        case Kind::CoordProduct: return scale_ * x[0] * x[1];
        case Kind::Bump: {
            double s2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double t = (x[i] - center_[i]) / radius_;
                s2 += t * t;
            }
            if (s2 >= 1.0) return 0.0;
            return scale_ * std::exp(1.0 - 1.0 / (1.0 - s2));
        }
        default: return eval1(x[0]);
    }
}

bool TestFunction::depends_on_first_only() const {
    switch (kind_) {
        case Kind::PowerGamma:
        case Kind::CappedReciprocal:
        case Kind::StripRamp:
        case Kind::SparseFourier: return true;
        case Kind::Coordinate: return axis_ == 0;
        case Kind::Constant: return true;
        default: return false;
    }
}

std::string TestFunction::name() const {
    switch (kind_) {
        case Kind::PowerGamma: return "power_gamma(" + std::to_string(a_) + ")";
        case Kind::CappedReciprocal: return "capped_reciprocal(" + std::to_string(a_) + ")";
        case Kind::StripRamp: return "strip_ramp(" + std::to_string(a_) + ")";
        case Kind::Coordinate: return "coordinate(" + std::to_string(axis_) + ")";
        case Kind::Constant: return "constant(" + std::to_string(a_) + ")";
        case Kind::SparseFourier: return "sparse_fourier";
        case Kind::CoordProduct: return "coord_product";
        case Kind::Bump: return "bump";
    }
    return "?";
}

double displacement_energy(const TestFunction& f, double h) {
    if (f.kind() == TestFunction::Kind::Constant) return 0.0;
    if (f.kind() != TestFunction::Kind::StripRamp)
        throw std::invalid_argument("displacement_energy: only compactly supported profiles");
    const double n = f.param();
    if (h < 0.0) h = -h;
    if (h == 0.0) return 0.0;
    // integrand kinks: where t or t+h crosses {-n, 0, n}
    std::set<double> cuts;
    for (double k : {-n, 0.0, n}) {
        cuts.insert(k);
        cuts.insert(k - h);
    }
    std::vector<double> pts(cuts.begin(), cuts.end());
    KahanSum acc;
    auto g = [&](double t) {
        const double d = f.eval1(t + h) - f.eval1(t);
        return d * d;
    };
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] > pts[i]) acc.add(gauss_panel(g, pts[i], pts[i + 1], 3));
    }
    return acc.value();
}

}  // namespace gagliardo
