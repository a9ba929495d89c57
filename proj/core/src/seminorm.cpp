#include "gagliardo/seminorm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "gagliardo/gauss.hpp"

namespace gagliardo {

QuadratureConfig refined(QuadratureConfig cfg, int factor) {
    cfg.refine_factor *= factor;
    cfg.gauss_radial *= factor;
    cfg.gauss_outer *= factor;
    cfg.angular *= factor;
    cfg.boundary_layers += 2 * (factor - 1);
    cfg.sing_split += 8 * (factor - 1);
    return cfg;
}

nlohmann::json SeminormEstimate::to_json() const {
    return nlohmann::json{{"value", value},
                          {"value_squared", value_squared},
                          {"inner_power", inner_power},
                          {"abs_error", abs_error},
                          {"tail_bound", tail_bound},
                          {"evaluations", evaluations},
                          {"flags",
                           {{"truncated_domain", truncated_domain},
                            {"diverged", diverged},
                            {"low_confidence", low_confidence}}}};
}

namespace {

constexpr double pi = 3.14159265358979323846;

struct OuterNode {
    Point x;
    double w = 0.0;
    double delta = 0.0;
};

// dyadic layers toward both endpoints of [a,b]; the midpoint is a breakpoint
// so the kink of delta(x) falls on a panel boundary
std::vector<double> layered_breakpoints(double a, double b, int layers) {
    std::vector<double> pts{a, b, 0.5 * (a + b)};
    const double half = 0.5 * (b - a);
    for (int j = layers; j >= 1; --j) {
        pts.push_back(a + half * std::ldexp(1.0, -j));
        pts.push_back(b - half * std::ldexp(1.0, -j));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<OuterNode> outer_nodes(const Domain& dom, const QuadratureConfig& cfg) {
    const Box& bb = dom.bounding_box();
    const int d = dom.dimension();
    std::vector<std::vector<std::pair<double, double>>> axis(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        const auto pts = layered_breakpoints(bb.lo[static_cast<std::size_t>(i)],
                                             bb.hi[static_cast<std::size_t>(i)],
                                             cfg.boundary_layers);
        const GaussRule& rule = gauss_rule(cfg.gauss_outer);
        for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
            const double mid = 0.5 * (pts[p] + pts[p + 1]);
            const double half = 0.5 * (pts[p + 1] - pts[p]);
            for (std::size_t k = 0; k < rule.nodes.size(); ++k)
                axis[static_cast<std::size_t>(i)].emplace_back(mid + half * rule.nodes[k],
                                                               half * rule.weights[k]);
        }
    }
    std::vector<OuterNode> nodes;
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    for (;;) {
        OuterNode n;
        n.x.resize(static_cast<std::size_t>(d));
        n.w = 1.0;
        for (int i = 0; i < d; ++i) {
            n.x[static_cast<std::size_t>(i)] = axis[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]].first;
            n.w *= axis[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]].second;
        }
        n.delta = dom.delta(n.x);
        if (n.delta > 0.0) nodes.push_back(std::move(n));
        std::size_t ax = 0;
        for (; ax < idx.size(); ++ax) {
            if (++idx[ax] < axis[ax].size()) break;
            idx[ax] = 0;
        }
        if (ax == idx.size()) break;
    }
    return nodes;
}

// ---- inner integral machinery -------------------------------------------

struct InnerResult {
    std::vector<double> theta_vals;  // per requested theta (ascending)
    double ball_full = 0.0;          // over B(x, delta)
    double beyond = 0.0;             // over Omega \ B(x, delta)
    double tail = 0.0;               // geometric estimate below the radius cutoff
    bool diverged = false;
    long evals = 0;
};

struct InnerCtx {
    const TestFunction* f;
    const Domain* dom;
    const Kernel* kern;
    double q;
    const std::vector<double>* thetas;  // ascending
    const QuadratureConfig* cfg;
};

inline double qpow(double v, double q) {
    const double a = std::abs(v);
    return q == 2.0 ? a * a : std::pow(a, q);
}

// 1D: integral of |f(y)-f(x)|^q k(|x-y|) over the two rays of an annulus
double annulus_value_1d(const InnerCtx& c, const Point& x, double ra, double rb, long& evals) {
    const double fx = c.f->eval1(x[0]);
    double s = 0.0;
    // grade the left arm once the singular endpoint y = 0 sits within one
    // panel width of it (covers the exact-touch case rb = delta = x)
    if (c.f->singular_at_zero() && x[0] - rb < rb) {
        s += integrate_power_endpoint(
            [&](double y) {
                ++evals;
                return qpow(c.f->eval1(y) - fx, c.q) * c.kern->radial(x[0] - y);
            },
            x[0] - rb, x[0] - ra, true, 36, c.cfg->gauss_radial + 2);
        s += gauss_panel(
            [&](double r) {
                ++evals;
                return c.kern->radial(r) * qpow(c.f->eval1(x[0] + r) - fx, c.q);
            },
            ra, rb, c.cfg->gauss_radial);
        return s;
    }
    const GaussRule& rule = gauss_rule(c.cfg->gauss_radial);
    const double mid = 0.5 * (ra + rb), half = 0.5 * (rb - ra);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double r = mid + half * rule.nodes[k];
        const double kr = c.kern->radial(r);
        const double dm = c.f->eval1(x[0] - r) - fx;
        const double dp = c.f->eval1(x[0] + r) - fx;
        evals += 2;
        s += half * rule.weights[k] * kr * (qpow(dm, c.q) + qpow(dp, c.q));
    }
    return s;
}

// 2D: full-circle annulus (contained in the domain)
double annulus_value_2d(const InnerCtx& c, const Point& x, double ra, double rb, long& evals) {
    const double fx = (*c.f)(x);
    const GaussRule& rule = gauss_rule(c.cfg->gauss_radial);
    const double mid = 0.5 * (ra + rb), half = 0.5 * (rb - ra);
    int m_ang = c.cfg->angular;
    // boost the angular resolution when the annulus approaches the singular edge
    if (c.f->singular_at_zero() && x[0] - rb < 0.25 * x[0]) m_ang *= 4;
    const double dphi = 2.0 * pi / m_ang;
    double s = 0.0;
    Point y(2);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double r = mid + half * rule.nodes[k];
        const double kr = c.kern->radial(r);
        double ang = 0.0;
        for (int m = 0; m < m_ang; ++m) {
            const double phi = dphi * (m + 0.5);
            y[0] = x[0] + r * std::cos(phi);
            y[1] = x[1] + r * std::sin(phi);
            ang += qpow((*c.f)(y)-fx, c.q);
            ++evals;
        }
        s += half * rule.weights[k] * r * kr * ang * dphi;
    }
    return s;
}

// angle set {phi in [-pi,pi] : x + r e(phi) in box}, as sorted arcs
std::vector<std::pair<double, double>> box_arcs(const Point& x, double r, const Box& box) {
    using Arc = std::pair<double, double>;
    std::vector<Arc> arcs{{-pi, pi}};
    auto intersect = [&](const std::vector<Arc>& cur, const std::vector<Arc>& with) {
        std::vector<Arc> out;
        for (const Arc& a : cur)
            for (const Arc& b : with) {
                const double lo = std::max(a.first, b.first);
                const double hi = std::min(a.second, b.second);
                if (hi > lo + 1e-15) out.emplace_back(lo, hi);
            }
        return out;
    };
    // cos phi >= a_lo, cos phi <= a_hi
    {
        const double a_lo = (box.lo[0] - x[0]) / r;
        const double a_hi = (box.hi[0] - x[0]) / r;
        if (a_lo > 1.0 || a_hi < -1.0) return {};
        if (a_lo > -1.0) {
            const double A = std::acos(std::min(1.0, a_lo));
            arcs = intersect(arcs, {{-A, A}});
        }
        if (a_hi < 1.0) {
            const double B = std::acos(std::max(-1.0, a_hi));
            arcs = intersect(arcs, {{-pi, -B}, {B, pi}});
        }
    }
    // sin phi >= b_lo, sin phi <= b_hi; the solution arcs wrap at +-pi when
    // the asin lands in the lower half
    {
        const double b_lo = (box.lo[1] - x[1]) / r;
        const double b_hi = (box.hi[1] - x[1]) / r;
        if (b_lo > 1.0 || b_hi < -1.0) return {};
        if (b_lo > -1.0) {
            const double A = std::asin(std::max(-1.0, std::min(1.0, b_lo)));
            if (A >= 0.0)
                arcs = intersect(arcs, {{A, pi - A}});
            else
                arcs = intersect(arcs, {{-pi, -pi - A}, {A, pi}});
        }
        if (b_hi < 1.0) {
            const double B = std::asin(std::max(-1.0, std::min(1.0, b_hi)));
            if (B >= 0.0)
                arcs = intersect(arcs, {{-pi, B}, {pi - B, pi}});
            else
                arcs = intersect(arcs, {{-pi - B, B}});
        }
    }
    return arcs;
}

// 2D beyond-ball contribution over Omega \ B(x, delta)
double beyond_value_2d(const InnerCtx& c, const Point& x, double delta, long& evals) {
    const Box& bb = c.dom->bounding_box();
    const double fx = (*c.f)(x);
    // radial breakpoints: dyadic doubling, split where the circle meets a
    // corner or an edge line (kinks of the angular measure)
    std::vector<double> cuts{delta};
    double rmax = 0.0;
    for (int m = 0; m < 4; ++m) {
        Point corner{m & 1 ? bb.hi[0] : bb.lo[0], m & 2 ? bb.hi[1] : bb.lo[1]};
        rmax = std::max(rmax, dist(x, corner));
        const double dc = dist(x, corner);
        if (dc > delta) cuts.push_back(dc);
    }
    for (double e : {x[0] - bb.lo[0], bb.hi[0] - x[0], x[1] - bb.lo[1], bb.hi[1] - x[1]})
        if (e > delta && e < rmax) cuts.push_back(e);
    for (double t = delta; t < rmax; t *= 2.0) cuts.push_back(t);
    cuts.push_back(rmax);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    KahanSum total;
    const GaussRule& rule = gauss_rule(c.cfg->gauss_radial + 2);
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double mid = 0.5 * (cuts[p] + cuts[p + 1]), half = 0.5 * (cuts[p + 1] - cuts[p]);
        if (!(half > 0.0)) continue;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double r = mid + half * rule.nodes[k];
            const double kr = c.kern->radial(r);
            const auto arcs = box_arcs(x, r, bb);
            double ang = 0.0;
            for (const auto& [lo, hi] : arcs) {
                // grade toward arc endpoints where the circle grazes the boundary
                ang += integrate_graded(
                    [&](double phi) {
                        Point y{x[0] + r * std::cos(phi), x[1] + r * std::sin(phi)};
                        ++evals;
                        if (!c.dom->contains(y)) return 0.0;
                        return qpow((*c.f)(y)-fx, c.q);
                    },
                    lo, hi, true, true, 3, 4);
            }
            total.add(half * rule.weights[k] * r * kr * ang);
        }
    }
    return total.value();
}

// 1D beyond-ball: the two outer rays, the boundary-touching panel handled by
// the power-endpoint integrator
double beyond_value_1d(const InnerCtx& c, const Point& x, double delta, long& evals) {
    const Box& bb = c.dom->bounding_box();
    const double fx = c.f->eval1(x[0]);
    KahanSum total;
    auto integrand = [&](double y) {
        ++evals;
        return qpow(c.f->eval1(y) - fx, c.q) * c.kern->radial(std::abs(y - x[0]));
    };
    auto ray = [&](int dir) {
        const double dom_end = dir > 0 ? bb.hi[0] : bb.lo[0];
        double ra = delta;
        const double rmax = std::abs(dom_end - x[0]);
        while (ra < rmax) {
            const double rb = std::min(2.0 * ra, rmax);
            const double ya = dir > 0 ? x[0] + ra : x[0] - rb;
            const double yb = dir > 0 ? x[0] + rb : x[0] - ra;
            const bool near_zero =
                c.f->singular_at_zero() && dir < 0 && ya - bb.lo[0] <= (yb - ya);
            if (near_zero)
                total.add(integrate_power_endpoint(integrand, ya, yb, true, 36,
                                                   c.cfg->gauss_radial + 2));
            else
                total.add(gauss_panel(integrand, ya, yb, c.cfg->gauss_radial));
            ra = rb;
        }
    };
    ray(-1);
    ray(+1);
    return total.value();
}

InnerResult inner_at(const InnerCtx& c, const Point& x, double delta) {
    InnerResult out;
    const auto& thetas = *c.thetas;
    out.theta_vals.assign(thetas.size(), 0.0);
    const int d = c.dom->dimension();

    // radius breakpoints: dyadic toward 0 anchored at delta, plus the theta
    // radii; radii below the floating-point resolution of f(x +- r) - f(x)
    // only produce rounding noise, so the ladder stops there and the
    // geometric tail covers the remainder
    double scale = delta;
    for (double xi : x) scale = std::max(scale, std::abs(xi));
    const double r_floor = 1e-8 * scale;
    std::vector<double> cuts;
    for (int j = 0; j <= c.cfg->sing_split; ++j) {
        const double cut = delta * std::ldexp(1.0, -j);
        if (cut < r_floor && j > 6) break;
        cuts.push_back(cut);
    }
    for (double th : thetas) cuts.push_back(th * delta);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-300; }),
               cuts.end());

    // panel values ascending in radius; vals[i] covers (cuts[i-1], cuts[i]],
    // the sub-cutoff region below cuts[0] is handled by the tail estimate
    std::vector<double> vals(cuts.size(), 0.0);
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        if (cuts[i] > cuts[i - 1]) {
            vals[i] = d == 1 ? annulus_value_1d(c, x, cuts[i - 1], cuts[i], out.evals)
                             : annulus_value_2d(c, x, cuts[i - 1], cuts[i], out.evals);
        }
    }
    if (cuts.size() >= 4) {
        const double t0 = vals[1], t1 = vals[2], t2 = vals[3];
        double total_probe = 0.0;
        for (double v : vals) total_probe += v;
        // divergence: no decay across two octaves (robust against the
        // rounding noise of individual panels)
        if (t0 >= t2 * (1.0 - 1e-6) && t0 > 1e-12 * std::max(1.0, total_probe)) {
            out.diverged = true;
        } else if (t1 > 0.0) {
            const double rho = t0 / t1;
            if (rho < 0.995) out.tail = t0 * rho / (1.0 - rho);
        }
    }
    const bool add_tail = c.cfg->tail_mode == QuadratureConfig::TailMode::Add;
    // cumulative sums: bin i covers radii <= thetas[i]*delta
    KahanSum run;
    std::size_t ti = 0;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        run.add(vals[i]);
        while (ti < thetas.size() && std::abs(cuts[i] - thetas[ti] * delta) < 1e-12 * delta) {
            out.theta_vals[ti] = run.value() + (add_tail ? out.tail : 0.0);
            ++ti;
        }
    }
    while (ti < thetas.size()) {
        out.theta_vals[ti] = run.value() + (add_tail ? out.tail : 0.0);
        ++ti;
    }
    out.ball_full = run.value() + (add_tail ? out.tail : 0.0);
    out.beyond = d == 1 ? beyond_value_1d(c, x, delta, out.evals)
                        : beyond_value_2d(c, x, delta, out.evals);
    return out;
}

struct PassResult {
    double full_sum = 0.0;
    std::vector<double> theta_sums;
    double tail_sum = 0.0;
    bool diverged = false;
    long evals = 0;
};

// 1D outer pass: per-panel accumulation, boundary panels replaced by a
// geometric closure (exact for power-type boundary behavior of the outer
// integrand). The closure ratio comes from the full bin and is applied to
// every bin, preserving the exact theta ladder.
PassResult run_pass_1d(const TestFunction& f, const Domain& dom, const Kernel& kern,
                       const ExponentPair& exps, const std::vector<double>& thetas,
                       const QuadratureConfig& cfg) {
    const Box& bb = dom.bounding_box();
    const int layers = std::max(cfg.boundary_layers, 32);
    const std::vector<double> pts = layered_breakpoints(bb.lo[0], bb.hi[0], layers);
    const std::size_t m = pts.size() - 1;
    const double pq = exps.p / exps.q;
    // octave-wide inner panels want a higher radial order in 1D; it is cheap
    QuadratureConfig icfg = cfg;
    icfg.gauss_radial = cfg.gauss_radial + 4;
    InnerCtx ctx{&f, &dom, &kern, exps.q, &thetas, &icfg};
    const GaussRule& rule = gauss_rule(cfg.gauss_outer);

    PassResult res;
    res.theta_sums.assign(thetas.size(), 0.0);
    std::vector<double> pan_full(m, 0.0);
    std::vector<std::vector<double>> pan_theta(thetas.size(), std::vector<double>(m, 0.0));
    KahanSum tail_acc;
    for (std::size_t p = 0; p < m; ++p) {
        const double mid = 0.5 * (pts[p] + pts[p + 1]);
        const double half = 0.5 * (pts[p + 1] - pts[p]);
        KahanSum pf;
        std::vector<KahanSum> pt(thetas.size());
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const Point x{mid + half * rule.nodes[k]};
            const double delta = dom.delta(x);
            if (!(delta > 0.0)) continue;
            const double w = half * rule.weights[k];
            const InnerResult ir = inner_at(ctx, x, delta);
            pf.add(w * std::pow(ir.ball_full + ir.beyond, pq));
            for (std::size_t t = 0; t < thetas.size(); ++t)
                pt[t].add(w * std::pow(ir.theta_vals[t], pq));
            tail_acc.add(w * ir.tail);
            res.diverged = res.diverged || ir.diverged;
            res.evals += ir.evals;
        }
        pan_full[p] = pf.value();
        for (std::size_t t = 0; t < thetas.size(); ++t) pan_theta[t][p] = pt[t].value();
    }
    // closure multipliers from the full bin's boundary panel ratios
    auto closure_ratio = [&](std::size_t p0, std::size_t p1) {
        if (pan_full[p1] <= 0.0) return -1.0;
        const double rho = pan_full[p0] / pan_full[p1];
        return (rho > 0.0 && rho < 0.995) ? rho : -1.0;
    };
    const double rho_lo = m >= 3 ? closure_ratio(1, 2) : -1.0;
    const double rho_hi = m >= 3 ? closure_ratio(m - 2, m - 3) : -1.0;
    auto combine = [&](const std::vector<double>& pan) {
        KahanSum acc;
        for (std::size_t p = 1; p + 1 < m; ++p) acc.add(pan[p]);
        acc.add(rho_lo > 0.0 ? pan[1] * rho_lo / (1.0 - rho_lo) : pan[0]);
        acc.add(rho_hi > 0.0 ? pan[m - 2] * rho_hi / (1.0 - rho_hi) : pan[m - 1]);
        return acc.value();
    };
    res.full_sum = combine(pan_full);
    for (std::size_t t = 0; t < thetas.size(); ++t) res.theta_sums[t] = combine(pan_theta[t]);
    res.tail_sum = tail_acc.value();
    return res;
}

PassResult run_pass_2d(const TestFunction& f, const Domain& dom, const Kernel& kern,
                       const ExponentPair& exps, const std::vector<double>& thetas,
                       const QuadratureConfig& cfg) {
    const std::vector<OuterNode> nodes = outer_nodes(dom, cfg);
    const double pq = exps.p / exps.q;
    InnerCtx ctx{&f, &dom, &kern, exps.q, &thetas, &cfg};

    const std::int64_t n = static_cast<std::int64_t>(nodes.size());
    const std::int64_t chunks = std::min<std::int64_t>(n, 128);
    struct ChunkOut {
        KahanSum full;
        std::vector<KahanSum> theta;
        KahanSum tail;
        bool diverged = false;
        long evals = 0;
    };
    std::vector<ChunkOut> parts(static_cast<std::size_t>(chunks));
    for (auto& p : parts) p.theta.resize(thetas.size());

    std::atomic<std::int64_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::int64_t ci = next.fetch_add(1);
            if (ci >= chunks) return;
            ChunkOut& out = parts[static_cast<std::size_t>(ci)];
            const std::int64_t lo = ci * n / chunks, hi = (ci + 1) * n / chunks;
            for (std::int64_t i = lo; i < hi; ++i) {
                const OuterNode& nd = nodes[static_cast<std::size_t>(i)];
                InnerResult ir = inner_at(ctx, nd.x, nd.delta);
                out.full.add(nd.w * std::pow(ir.ball_full + ir.beyond, pq));
                for (std::size_t t = 0; t < thetas.size(); ++t)
                    out.theta[t].add(nd.w * std::pow(ir.theta_vals[t], pq));
                out.tail.add(nd.w * ir.tail);
                out.diverged = out.diverged || ir.diverged;
                out.evals += ir.evals;
            }
        }
    };
    const int nt = std::min<int>(worker_threads(), static_cast<int>(chunks));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();

    PassResult res;
    res.theta_sums.assign(thetas.size(), 0.0);
    KahanSum fs, ts;
    std::vector<KahanSum> th_acc(thetas.size());
    for (const auto& p : parts) {
        fs.add(p.full.value());
        ts.add(p.tail.value());
        for (std::size_t t = 0; t < thetas.size(); ++t) th_acc[t].add(p.theta[t].value());
        res.diverged = res.diverged || p.diverged;
        res.evals += p.evals;
    }
    res.full_sum = fs.value();
    res.tail_sum = ts.value();
    for (std::size_t t = 0; t < thetas.size(); ++t) res.theta_sums[t] = th_acc[t].value();
    return res;
}

SeminormPair bounded_pair(const TestFunction& f, const Domain& dom, const Kernel& kern,
                          const ExponentPair& exps, std::vector<double> thetas,
                          const QuadratureConfig& cfg) {
    std::sort(thetas.begin(), thetas.end());
    for (double th : thetas)
        if (!(th > 0.0 && th <= 1.0))
            throw std::invalid_argument("seminorm: theta must lie in (0,1]");

    auto pass = [&](const QuadratureConfig& c) {
        return dom.dimension() == 1 ? run_pass_1d(f, dom, kern, exps, thetas, c)
                                    : run_pass_2d(f, dom, kern, exps, thetas, c);
    };
    const PassResult base = pass(cfg);
    PassResult fine;
    bool have_fine = false;
    if (cfg.error_pass) {
        QuadratureConfig fcfg = cfg;
        fcfg.gauss_radial += 2;
        fcfg.gauss_outer += 2;
        fcfg.angular += cfg.angular / 2;
        fcfg.error_pass = false;
        fine = pass(fcfg);
        have_fine = true;
    }

    SeminormPair pair;
    pair.thetas = thetas;
    pair.monotone_exact = true;
    const double inv_p = 1.0 / exps.p;
    auto mk = [&](double sum, double sum_fine, double tail, bool truncated) {
        SeminormEstimate e;
        e.inner_power = exps.p / exps.q;
        e.value = std::pow(std::max(0.0, sum), inv_p);
        e.value_squared = std::pow(std::max(0.0, sum), 2.0 * inv_p);
        e.tail_bound = tail;
        e.truncated_domain = truncated;
        e.diverged = base.diverged;
        e.evaluations = base.evals + (have_fine ? fine.evals : 0);
        if (have_fine) {
            const double v2 = std::pow(std::max(0.0, sum_fine), inv_p);
            e.abs_error = std::abs(v2 - e.value);
            e.low_confidence = e.abs_error > cfg.rel_tol * std::max(e.value, 1e-300) + cfg.abs_tol;
        }
        return e;
    };
    pair.full = mk(base.full_sum, have_fine ? fine.full_sum : 0.0, base.tail_sum, false);
    for (std::size_t t = 0; t < thetas.size(); ++t)
        pair.truncated.push_back(
            mk(base.theta_sums[t], have_fine ? fine.theta_sums[t] : 0.0, base.tail_sum, true));
    return pair;
}

}  // namespace

SeminormPair seminorm_pair(const TestFunction& f, const Domain& domain, const Kernel& kernel,
                           const ExponentPair& exps, std::vector<double> thetas,
                           const QuadratureConfig& cfg) {
    if (f.kind() == TestFunction::Kind::Constant) {
        // seminorms of constants vanish identically
        SeminormPair pair;
        std::sort(thetas.begin(), thetas.end());
        pair.thetas = thetas;
        pair.monotone_exact = true;
        pair.full.inner_power = exps.p / exps.q;
        pair.truncated.assign(thetas.size(), pair.full);
        return pair;
    }
    switch (domain.kind()) {
        case Domain::Kind::Interval:
        case Domain::Kind::BoxDomain: {
            if (domain.dimension() > 2)
                throw std::invalid_argument("seminorm: boxes supported up to dimension 2");
            return bounded_pair(f, domain, kernel, exps, std::move(thetas), cfg);
        }
        case Domain::Kind::Strip: {
            if (exps.p != 2.0 || exps.q != 2.0)
                throw std::invalid_argument("seminorm: strip route requires p = q = 2");
            if (kernel.flat) throw std::invalid_argument("seminorm: flat kernel on a strip");
            if (kernel.profile.kind() != KernelProfile::Kind::Power)
                throw std::invalid_argument("seminorm: strip route requires a power profile");
            const double alpha = kernel.q * kernel.profile.param_a();
            QuadratureConfig c = cfg;
            SeminormPair pair = strip_seminorm_pair(f, domain, alpha, std::move(thetas), c);
            // fold in the profile scale: K = c^{-q} |x-y|^{-d-alpha}
            const double scale2 = std::pow(kernel.profile.param_b(), -kernel.q);
            pair.full.value_squared *= scale2;
            pair.full.value = std::sqrt(pair.full.value_squared);
            pair.full.tail_bound *= scale2;
            pair.full.abs_error *= std::sqrt(scale2);
            for (auto& e : pair.truncated) {
                e.value_squared *= scale2;
                e.value = std::sqrt(e.value_squared);
                e.tail_bound *= scale2;
                e.abs_error *= std::sqrt(scale2);
            }
            return pair;
        }
        case Domain::Kind::BoxUnion:
            throw std::invalid_argument("seminorm: box unions are not supported");
    }
    throw std::logic_error("seminorm: unreachable");
}

SeminormEstimate full_seminorm(const TestFunction& f, const Domain& domain, const Kernel& kernel,
                               const ExponentPair& exps, const QuadratureConfig& cfg) {
    return seminorm_pair(f, domain, kernel, exps, {}, cfg).full;
}

SeminormEstimate truncated_seminorm(const TestFunction& f, const Domain& domain,
                                    const Kernel& kernel, const ExponentPair& exps, double theta,
                                    const QuadratureConfig& cfg) {
    return seminorm_pair(f, domain, kernel, exps, {theta}, cfg).truncated.front();
}

double comparability_ratio(const TestFunction& f, const Domain& domain, const Kernel& kernel,
                           const ExponentPair& exps, double theta, const QuadratureConfig& cfg) {
    const SeminormPair pair = seminorm_pair(f, domain, kernel, exps, {theta}, cfg);
    const double full = pair.full.value;
    const double trunc = pair.truncated.front().value;
    if (trunc == 0.0) return full > 0.0 ? inf : 1.0;
    return full / trunc;
}

double exact_const_kernel_full(double gamma) {
    if (!(gamma > 0.0 && gamma < 0.5))
        throw std::domain_error("exact_const_kernel_full: gamma must be in (0, 1/2)");
    return 2.0 * (1.0 / (1.0 - 2.0 * gamma) - 1.0 / ((1.0 - gamma) * (1.0 - gamma)));
}

double exact_const_kernel_truncated_bound(double gamma, double eps) {
    if (!(gamma > 0.0 && gamma < 0.5))
        throw std::domain_error("exact_const_kernel_truncated_bound: gamma must be in (0, 1/2)");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::domain_error("exact_const_kernel_truncated_bound: eps must be in (0,1)");
    const double g1 = 1.0 - gamma, g2 = 1.0 - 2.0 * gamma;
    const double a = std::pow(1.0 + eps, g1) - std::pow(1.0 - eps, g1);
    const double b = std::pow(1.0 + eps, g2) - std::pow(1.0 - eps, g2);
    return eps / g1 - a / (g1 * g1) + b / (g2 * (2.0 - 2.0 * gamma));
}

double exact_hilbert_subintegral(double n) {
    if (!(n >= 1.0)) throw std::domain_error("exact_hilbert_subintegral: n must be >= 1");
    return n * std::log(n) - 2.0 * n + std::log(n) + 2.0;
}

double hilbert_example_full_squared(double n) {
    // 2 * [ (both > 1/n part) + int_{1/n}^1 (n - 1/x)^2 log(x/(x - 1/n)) dx ]
    const double part1 = exact_hilbert_subintegral(n);
    const double part2 = integrate_graded(
        [&](double x) {
            const double c = n - 1.0 / x;
            return c * c * (std::log(x) - std::log(x - 1.0 / n));
        },
        1.0 / n, 1.0, true, false, 40, 8);
    return 2.0 * (part1 + part2);
}

StripKernelReport strip_effective_kernel(double x1, double y1, double alpha) {
    if (x1 == y1) throw std::domain_error("strip_effective_kernel: coincident abscissae");
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::domain_error("strip_effective_kernel: alpha must be in (0,2)");
    const double a = std::abs(x1 - y1);
    // kappa(a) = 2 int_0^1 (1-u) (a^2+u^2)^{-(2+alpha)/2} du (tent reduction)
    std::vector<double> pts{0.0};
    for (double t = a; t < 1.0; t *= 2.0) pts.push_back(t);
    pts.push_back(1.0);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    KahanSum acc;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        acc.add(gauss_panel(
            [&](double u) { return (1.0 - u) * std::pow(a * a + u * u, -(2.0 + alpha) / 2.0); },
            pts[i], pts[i + 1], 10));
    StripKernelReport rep;
    rep.kappa = 2.0 * acc.value();
    rep.reference = a >= 1.0 ? std::pow(a, -2.0 - alpha) : std::pow(a, -1.0 - alpha);
    rep.ratio = rep.kappa / rep.reference;
    return rep;
}

}  // namespace gagliardo
