#include <cmath>
#include <vector>

#include "doctest.h"
#include "gagliardo/domain.hpp"
#include "gagliardo/gauss.hpp"
#include "gagliardo/kernel.hpp"
#include "gagliardo/seminorm.hpp"
#include "gagliardo/test_function.hpp"

using namespace gagliardo;

namespace {

const Domain& unit_interval() {
    static const Domain d = Domain::interval(0.0, 1.0);
    return d;
}

QuadratureConfig fast_cfg() {
    QuadratureConfig cfg;
    cfg.error_pass = false;
    return cfg;
}

// independent 2D oracle over {1/n < y < x < 1} of (1/x-1/y)^2/(x-y):
// composite Simpson in both variables, graded in log space toward 1/n
double hilbert_region_oracle(double n) {
    const double a = 1.0 / n;
    auto inner = [&](double x) {
        // int_a^x (x-y)/(x^2 y^2) dy with Simpson on log-spaced panels
        const int panels = 600;
        double total = 0.0;
        const double la = std::log(a), lb = std::log(x);
        for (int i = 0; i < panels; ++i) {
            const double t0 = la + (lb - la) * i / panels;
            const double t1 = la + (lb - la) * (i + 1) / panels;
            auto g = [&](double t) {
                const double y = std::exp(t);
                return (x - y) / (x * x * y * y) * y;  // dy = y dt
            };
            total += (t1 - t0) / 6.0 * (g(t0) + 4.0 * g(0.5 * (t0 + t1)) + g(t1));
        }
        return total;
    };
    const int panels = 600;
    double total = 0.0;
    const double la = std::log(a), lb = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double t0 = la + (lb - la) * i / panels;
        const double t1 = la + (lb - la) * (i + 1) / panels;
        auto g = [&](double t) { return inner(std::exp(t)) * std::exp(t); };
        total += (t1 - t0) / 6.0 * (g(t0) + 4.0 * g(0.5 * (t0 + t1)) + g(t1));
    }
    return total;
}

}  // namespace

TEST_CASE("closed forms: constant-kernel example") {
    CHECK(exact_const_kernel_full(1e-8) < 1e-7);
    CHECK(exact_const_kernel_full(0.25) == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
    CHECK(exact_const_kernel_full(0.49) == doctest::Approx(92.31064975009612).epsilon(1e-12));
    CHECK_THROWS_AS(exact_const_kernel_full(0.5), std::domain_error);
    CHECK_THROWS_AS(exact_const_kernel_full(0.65), std::domain_error);
    // truncated bound at gamma -> 0 collapses toward 0 as well
    CHECK(exact_const_kernel_truncated_bound(1e-8, 0.5) < 1e-6);
    CHECK_THROWS_AS(exact_const_kernel_truncated_bound(0.25, 1.5), std::domain_error);
}

TEST_CASE("closed forms: hilbert subintegral") {
    CHECK(exact_hilbert_subintegral(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    const double e = std::exp(1.0);
    CHECK(exact_hilbert_subintegral(e) == doctest::Approx(3.0 - e).epsilon(1e-12));
    CHECK(exact_hilbert_subintegral(10.0) ==
          doctest::Approx(11.0 * std::log(10.0) - 18.0).epsilon(1e-12));
    CHECK(exact_hilbert_subintegral(10.0) == doctest::Approx(7.3284).epsilon(1e-4));
    CHECK_THROWS_AS(exact_hilbert_subintegral(0.5), std::domain_error);
    // 2D quadrature oracle agrees
    for (double n : {5.0, 10.0}) {
        CHECK(hilbert_region_oracle(n) ==
              doctest::Approx(exact_hilbert_subintegral(n)).epsilon(1e-5));
    }
}

TEST_CASE("constant functions have zero seminorm exactly") {
    const Kernel kern = Kernel::product(1, 2.0, KernelProfile::power(0.5));
    const SeminormPair pr = seminorm_pair(TestFunction::constant(3.7), unit_interval(), kern,
                                          {2.0, 2.0}, {0.5}, fast_cfg());
    CHECK(pr.full.value == 0.0);
    CHECK(pr.truncated.front().value == 0.0);
}

TEST_CASE("coordinate on (0,1) with the flat kernel: analytic values") {
    const Kernel flat = Kernel::flat_one(1);
    const ExponentPair exps(2.0, 2.0);
    const SeminormPair pr = seminorm_pair(TestFunction::coordinate(0), unit_interval(), flat,
                                          exps, {1.0}, fast_cfg());
    // int int (x-y)^2 = 1/6; truncated at theta=1: int (2/3) delta^3 = 1/48
    CHECK(pr.full.value_squared == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
    CHECK(pr.full.value == doctest::Approx(0.40825).epsilon(1e-4));
    CHECK(pr.truncated.front().value_squared == doctest::Approx(1.0 / 48.0).epsilon(1e-10));
    const double ratio =
        comparability_ratio(TestFunction::coordinate(0), unit_interval(), flat, exps, 1.0,
                            fast_cfg());
    CHECK(ratio == doctest::Approx(std::sqrt(8.0)).epsilon(1e-8));
}

TEST_CASE("power_gamma full seminorm hits the closed form") {
    const Kernel flat = Kernel::flat_one(1);
    for (double g : {0.1, 0.25, 0.4}) {
        const SeminormEstimate est = full_seminorm(TestFunction::power_gamma(g), unit_interval(),
                                                   flat, {2.0, 2.0}, fast_cfg());
        CHECK(est.value_squared ==
              doctest::Approx(exact_const_kernel_full(g)).epsilon(5e-5));
        CHECK_FALSE(est.diverged);
    }
}

TEST_CASE("truncated power_gamma respects the closed upper bound") {
    const Kernel flat = Kernel::flat_one(1);
    for (double g : {0.25, 0.4}) {
        for (double eps : {0.25, 0.5}) {
            const SeminormEstimate tr = truncated_seminorm(
                TestFunction::power_gamma(g), unit_interval(), flat, {2.0, 2.0}, eps, fast_cfg());
            // B(x, eps*delta(x)) is contained in (x(1-eps), x(1+eps))
            CHECK(tr.value_squared <=
                  exact_const_kernel_truncated_bound(g, eps) * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("theta ladder is exactly monotone on shared nodes") {
    const ExponentPair exps(2.0, 2.0);
    const std::vector<double> thetas{0.1, 0.25, 0.5, 0.75, 1.0};
    // 1D, singular function, flat kernel
    {
        const SeminormPair pr = seminorm_pair(TestFunction::power_gamma(0.3), unit_interval(),
                                              Kernel::flat_one(1), exps, thetas, fast_cfg());
        REQUIRE(pr.monotone_exact);
        for (std::size_t i = 1; i < thetas.size(); ++i)
            CHECK(pr.truncated[i - 1].value <= pr.truncated[i].value);
        CHECK(pr.truncated.back().value <= pr.full.value);
    }
    // 1D, fractional kernel
    {
        const Kernel kern = Kernel::product(1, 2.0, KernelProfile::power(0.5));
        const SeminormPair pr = seminorm_pair(TestFunction::capped_reciprocal(8.0),
                                              unit_interval(), kern, exps, thetas, fast_cfg());
        REQUIRE(pr.monotone_exact);
        for (std::size_t i = 1; i < thetas.size(); ++i)
            CHECK(pr.truncated[i - 1].value <= pr.truncated[i].value);
        CHECK(pr.truncated.back().value <= pr.full.value);
    }
    // 2D square
    {
        const Domain sq = Domain::box({{0.0, 1.0}, {0.0, 1.0}});
        const Kernel kern = Kernel::product(2, 2.0, KernelProfile::power(0.5));
        QuadratureConfig cfg = fast_cfg();
        cfg.boundary_layers = 6;
        const SeminormPair pr =
            seminorm_pair(TestFunction::coord_product(), sq, kern, exps, thetas, cfg);
        REQUIRE(pr.monotone_exact);
        for (std::size_t i = 1; i < thetas.size(); ++i)
            CHECK(pr.truncated[i - 1].value <= pr.truncated[i].value);
        CHECK(pr.truncated.back().value <= pr.full.value);
    }
}

TEST_CASE("homogeneity: scaling f scales the seminorm") {
    const Kernel kern = Kernel::product(1, 2.0, KernelProfile::power(0.5));
    const ExponentPair exps(2.0, 2.0);
    const TestFunction f = TestFunction::capped_reciprocal(4.0);
    const SeminormPair base = seminorm_pair(f, unit_interval(), kern, exps, {0.5}, fast_cfg());
    const SeminormPair scaled =
        seminorm_pair(f.times(-2.5), unit_interval(), kern, exps, {0.5}, fast_cfg());
    CHECK(scaled.full.value == doctest::Approx(2.5 * base.full.value).epsilon(1e-13));
    CHECK(scaled.truncated.front().value ==
          doctest::Approx(2.5 * base.truncated.front().value).epsilon(1e-13));
}

TEST_CASE("translation invariance of the kernel") {
    const ExponentPair exps(2.0, 2.0);
    const Kernel kern = Kernel::product(1, 2.0, KernelProfile::power(0.5));
    // coordinate differences are translation invariant
    const SeminormPair a = seminorm_pair(TestFunction::coordinate(0), Domain::interval(0.0, 1.0),
                                         kern, exps, {0.5}, fast_cfg());
    const SeminormPair b = seminorm_pair(TestFunction::coordinate(0), Domain::interval(3.0, 4.0),
                                         kern, exps, {0.5}, fast_cfg());
    CHECK(a.full.value == doctest::Approx(b.full.value).epsilon(1e-12));
    CHECK(a.truncated.front().value ==
          doctest::Approx(b.truncated.front().value).epsilon(1e-12));
    // 2D: a bump translated with its box
    const Kernel k2 = Kernel::product(2, 2.0, KernelProfile::power(0.5));
    QuadratureConfig cfg = fast_cfg();
    cfg.boundary_layers = 6;
    const SeminormPair c = seminorm_pair(TestFunction::bump({0.5, 0.5}, 0.4),
                                         Domain::box({{0.0, 1.0}, {0.0, 1.0}}), k2, exps, {0.5},
                                         cfg);
    const SeminormPair d = seminorm_pair(TestFunction::bump({0.7, 0.7}, 0.4),
                                         Domain::box({{0.2, 1.2}, {0.2, 1.2}}), k2, exps, {0.5},
                                         cfg);
    CHECK(c.full.value == doctest::Approx(d.full.value).epsilon(1e-6));
}

TEST_CASE("divergence is reported, not thrown") {
    // phi(r) = r fails the integrability assumption; a Lipschitz f makes the
    // inner integral diverge logarithmically at the singularity
    const Kernel bad = Kernel::product(1, 2.0, KernelProfile::power(1.0));
    const SeminormEstimate est = full_seminorm(TestFunction::coordinate(0), unit_interval(), bad,
                                               {2.0, 2.0}, fast_cfg());
    CHECK(est.diverged);
}

TEST_CASE("2D truncated seminorm matches the analytic coordinate oracle") {
    const Domain sq = Domain::box({{0.0, 1.0}, {0.0, 1.0}});
    const ExponentPair exps(2.0, 2.0);
    const double pi = 3.14159265358979323846;
    QuadratureConfig cfg = fast_cfg();
    for (double alpha : {0.5, 1.0, 1.5}) {
        const Kernel kern = Kernel::product(2, 2.0, KernelProfile::power(alpha / 2.0));
        const SeminormPair pr =
            seminorm_pair(TestFunction::coordinate(0), sq, kern, exps, {0.25, 1.0}, cfg);
        const double beta = 2.0 - alpha;
        // inner ball integral: pi r^{2-a}/(2-a); outer: int delta^{2-a} over
        // the square = 2^{1-b}/((b+1)(b+2))
        auto expected = [&](double th) {
            return pi * std::pow(th, 2.0 - alpha) / (2.0 - alpha) * std::exp2(1.0 - beta) /
                   ((beta + 1.0) * (beta + 2.0));
        };
        CHECK(pr.truncated[0].value_squared ==
              doctest::Approx(expected(0.25)).epsilon(1e-2));
        CHECK(pr.truncated[1].value_squared ==
              doctest::Approx(expected(1.0)).epsilon(1e-2));
    }
}

TEST_CASE("2D full seminorm matches an independent displacement oracle") {
    // alpha = 0.5, f = x1: 4 int int z1^2 (z1^2+z2^2)^{-(2+a)/2} (1-z1)(1-z2)
    const Domain sq = Domain::box({{0.0, 1.0}, {0.0, 1.0}});
    const Kernel kern = Kernel::product(2, 2.0, KernelProfile::power(0.25));
    const SeminormEstimate est =
        full_seminorm(TestFunction::coordinate(0), sq, kern, {2.0, 2.0}, fast_cfg());
    const double alpha = 0.5;
    auto z2_integral = [&](double z1) {
        return integrate_power_endpoint(
            [&](double z2) {
                return (1.0 - z2) * std::pow(z1 * z1 + z2 * z2, -(2.0 + alpha) / 2.0);
            },
            0.0, 1.0, true, 40, 10);
    };
    const double oracle =
        4.0 * integrate_power_endpoint(
                  [&](double z1) { return z1 * z1 * (1.0 - z1) * z2_integral(z1); }, 0.0, 1.0,
                  true, 40, 10);
    CHECK(est.value_squared == doctest::Approx(oracle).epsilon(2e-3));
}

TEST_CASE("strip effective kernel comparability") {
    // symmetric in the abscissae
    CHECK(strip_effective_kernel(3.0, 13.0, 1.0).kappa ==
          doctest::Approx(strip_effective_kernel(13.0, 3.0, 1.0).kappa).epsilon(1e-14));
    // long range: the dy2 dx2 factor is about 1
    const StripKernelReport far = strip_effective_kernel(0.0, 10.0, 1.0);
    CHECK(far.ratio > 0.9);
    CHECK(far.ratio < 1.1);
    // short range: kappa * a^{1+alpha} stabilizes to a positive constant
    const StripKernelReport near1 = strip_effective_kernel(0.0, 0.01, 0.5);
    const StripKernelReport near2 = strip_effective_kernel(0.0, 0.001, 0.5);
    CHECK(near1.ratio > 0.0);
    CHECK(near2.ratio / near1.ratio > 0.9);
    CHECK(near2.ratio / near1.ratio < 1.1);
    CHECK_THROWS_AS(strip_effective_kernel(1.0, 1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(strip_effective_kernel(0.0, 1.0, 2.5), std::domain_error);
}

TEST_CASE("strip seminorms agree with an independent cartesian oracle") {
    const Domain strip = Domain::strip(1, 1);
    const ExponentPair exps(2.0, 2.0);
    const double alpha = 0.75, n = 2.0, theta = 0.5;
    const Kernel kern = Kernel::product(2, 2.0, KernelProfile::power(alpha / 2.0));
    const SeminormPair pr =
        seminorm_pair(TestFunction::strip_ramp(n), strip, kern, exps, {theta}, fast_cfg());

    // full: 2 int_0^inf G(h) kappa(h) dh with G from the panel-based
    // displacement energy and kappa from the tent reduction
    const TestFunction ramp = TestFunction::strip_ramp(n);
    auto kappa = [&](double h) {
        return 2.0 * integrate_power_endpoint(
                         [&](double u) {
                             return (1.0 - u) *
                                    std::pow(h * h + u * u, -(2.0 + alpha) / 2.0);
                         },
                         0.0, 1.0, true, 40, 10);
    };
    double full_oracle = 0.0;
    for (int j = -40; j <= 12; ++j) {
        const double a = std::exp2(j), b = std::exp2(j + 1);
        full_oracle += gauss_panel(
            [&](double h) { return displacement_energy(ramp, h) * kappa(h); }, a, b, 10);
    }
    full_oracle *= 2.0;
    CHECK(pr.full.value_squared == doctest::Approx(full_oracle).epsilon(1e-4));

    // truncated: int_0^1 dx2 over the disk |z| < theta*delta(x2) in cartesian
    // coordinates (independent of the polar-bin route); fixed panel layout
    auto disk = [&](double r0) {
        auto z2_part = [&](double z1) {
            const double s = std::sqrt(std::max(0.0, r0 * r0 - z1 * z1));
            if (s <= 0.0) return 0.0;
            double total = 0.0;
            double a = 0.0;
            for (double b = std::min(z1, s);; b = std::min(2.0 * b, s)) {
                total += gauss_panel(
                    [&](double z2) {
                        return std::pow(z1 * z1 + z2 * z2, -(2.0 + alpha) / 2.0);
                    },
                    a, b, 10);
                if (b >= s) break;
                a = b;
            }
            return 2.0 * total;
        };
        double total = 0.0;
        for (int j = -40; j <= -1; ++j) {
            const double a = r0 * std::exp2(j), b = r0 * std::exp2(j + 1);
            total += gauss_panel(
                [&](double z1) { return displacement_energy(ramp, z1) * z2_part(z1); }, a, b, 8);
        }
        return 2.0 * total;
    };
    // x2-integral: 2 * int_0^{1/2}, dyadic panels toward the boundary
    double trunc_oracle = 0.0;
    for (int j = -30; j <= -1; ++j) {
        const double a = 0.5 * std::exp2(j), b = 0.5 * std::exp2(j + 1);
        trunc_oracle += gauss_panel([&](double x2) { return disk(theta * x2); }, a, b, 6);
    }
    trunc_oracle *= 2.0;
    CHECK(pr.truncated.front().value_squared == doctest::Approx(trunc_oracle).epsilon(2e-3));
    // theta ladder nests exactly on the strip too
    const SeminormPair ladder =
        seminorm_pair(TestFunction::strip_ramp(n), strip, kern, exps, {0.25, 0.5, 1.0},
                      fast_cfg());
    CHECK(ladder.truncated[0].value <= ladder.truncated[1].value);
    CHECK(ladder.truncated[1].value <= ladder.truncated[2].value);
    CHECK(ladder.truncated[2].value <= ladder.full.value * (1.0 + 1e-9));
}

TEST_CASE("strip kernel scale folds into the seminorm") {
    const Domain strip = Domain::strip(1, 1);
    const ExponentPair exps(2.0, 2.0);
    const Kernel k1 = Kernel::product(2, 2.0, KernelProfile::power(0.5, 1.0));
    const Kernel k2 = Kernel::product(2, 2.0, KernelProfile::power(0.5, 2.0));
    const SeminormPair a =
        seminorm_pair(TestFunction::strip_ramp(4.0), strip, k1, exps, {0.5}, fast_cfg());
    const SeminormPair b =
        seminorm_pair(TestFunction::strip_ramp(4.0), strip, k2, exps, {0.5}, fast_cfg());
    // K scales by c^{-q} = 1/4
    CHECK(b.full.value_squared == doctest::Approx(a.full.value_squared / 4.0).epsilon(1e-12));
}

TEST_CASE("seminorm input validation") {
    const Kernel kern = Kernel::product(1, 2.0, KernelProfile::power(0.5));
    CHECK_THROWS_AS(truncated_seminorm(TestFunction::coordinate(0), unit_interval(), kern,
                                       {2.0, 2.0}, 1.5, fast_cfg()),
                    std::invalid_argument);
    CHECK_THROWS_AS(seminorm_pair(TestFunction::coordinate(0), Domain::l_shape(),
                                  Kernel::product(2, 2.0, KernelProfile::power(0.5)), {2.0, 2.0},
                                  {0.5}, fast_cfg()),
                    std::invalid_argument);
    // strips want p = q = 2 and a power profile
    CHECK_THROWS_AS(seminorm_pair(TestFunction::strip_ramp(2.0), Domain::strip(1, 1),
                                  Kernel::product(2, 2.0, KernelProfile::log1p_power(0.5)),
                                  {2.0, 2.0}, {0.5}, fast_cfg()),
                    std::invalid_argument);
    CHECK_THROWS_AS(seminorm_pair(TestFunction::strip_ramp(2.0), Domain::strip(1, 1),
                                  Kernel::product(2, 2.0, KernelProfile::power(0.5)),
                                  {3.0, 2.0}, {0.5}, fast_cfg()),
                    std::invalid_argument);
}

TEST_CASE("estimate serialization") {
    const SeminormEstimate est = full_seminorm(TestFunction::coordinate(0), unit_interval(),
                                               Kernel::flat_one(1), {2.0, 2.0}, fast_cfg());
    const auto j = est.to_json();
    CHECK(j.contains("value"));
    CHECK(j.contains("value_squared"));
    CHECK(j.contains("abs_error"));
    CHECK(j.contains("evaluations"));
    CHECK(j["flags"].contains("diverged"));
    CHECK(j["evaluations"].get<long>() > 0);
}
