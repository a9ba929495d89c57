#include "gagliardo/gauss.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace gagliardo {

namespace {

GaussRule compute_rule(int n) {
    // Newton iteration on Legendre P_n, symmetric nodes.
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = 3.14159265358979323846;
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 1; k < n; ++k) {
                const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_rule(int order) {
    if (order < 1) throw std::invalid_argument("gauss_rule: order must be >= 1");
    // common orders sit on a lock-free fast path; this is called once per panel
    constexpr int k_max_fast = 64;
    if (order <= k_max_fast) {
        static GaussRule rules[k_max_fast + 1];
        static std::once_flag flags[k_max_fast + 1];
        std::call_once(flags[order], [order] { rules[order] = compute_rule(order); });
        return rules[order];
    }
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        bool grade_left, bool grade_right, int levels, int order) {
    if (!(b > a)) return 0.0;
    // Panel breakpoints: geometric toward graded endpoints, single panel else.
    std::vector<double> pts;
    pts.push_back(a);
    const double len = b - a;
    if (grade_left && grade_right) {
        const double mid = a + 0.5 * len;
        for (int j = levels; j >= 1; --j) pts.push_back(a + 0.5 * len * std::ldexp(1.0, -j));
        pts.push_back(mid);
        for (int j = 1; j <= levels; ++j) pts.push_back(b - 0.5 * len * std::ldexp(1.0, -j));
    } else if (grade_left) {
        for (int j = levels; j >= 1; --j) pts.push_back(a + len * std::ldexp(1.0, -j));
    } else if (grade_right) {
        for (int j = 1; j <= levels; ++j) pts.push_back(b - len * std::ldexp(1.0, -j));
    }
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    KahanSum acc;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] > pts[i]) acc.add(gauss_panel(f, pts[i], pts[i + 1], order));
    }
    return acc.value();
}

namespace {

struct AdaptiveCtx {
    const std::function<double(double)>* f;
    double rel_tol, abs_tol;
};

double adapt(const AdaptiveCtx& ctx, double a, double b, double whole, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gauss_panel(*ctx.f, a, m, 8);
    const double right = gauss_panel(*ctx.f, m, b, 8);
    const double err = std::abs(left + right - whole);
    if (depth <= 0 || err <= ctx.abs_tol + ctx.rel_tol * std::abs(left + right))
        return left + right;
    return adapt(ctx, a, m, left, depth - 1) + adapt(ctx, m, b, right, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol, int max_depth) {
    if (!(b > a)) return 0.0;
    AdaptiveCtx ctx{&f, rel_tol, abs_tol};
    return adapt(ctx, a, b, gauss_panel(f, a, b, 8), max_depth);
}

double integrate_power_endpoint(const std::function<double(double)>& f, double a, double b,
                                bool singular_at_a, int levels, int order) {
    if (!(b > a)) return 0.0;
    const double len = b - a;
    KahanSum acc;
    double v_last = 0.0, v_prev = 0.0;
    for (int j = 0; j < levels; ++j) {
        // panel j: width len*2^{-j-1}, adjacent to the singular endpoint last
        const double w_hi = len * std::ldexp(1.0, -j);
        const double w_lo = 0.5 * w_hi;
        double pa, pb;
        if (singular_at_a) {
            pa = a + w_lo;
            pb = a + w_hi;
        } else {
            pa = b - w_hi;
            pb = b - w_lo;
        }
        const double v = gauss_panel(f, pa, pb, order);
        acc.add(v);
        v_prev = v_last;
        v_last = v;
    }
    // geometric closure of the sub-panel remainder
    if (v_prev != 0.0) {
        const double rho = v_last / v_prev;
        if (rho > 0.0 && rho < 0.995) acc.add(v_last * rho / (1.0 - rho));
    }
    return acc.value();
}

int worker_threads() {
    static int n = [] {
        if (const char* env = std::getenv("GAGLIARDO_THREADS")) {
            const int v = std::atoi(env);
            if (v >= 1) return v;
        }
        const unsigned hc = std::thread::hardware_concurrency();
        return hc == 0 ? 1 : static_cast<int>(hc);
    }();
    return n;
}

double parallel_sum(std::int64_t n, const std::function<double(std::int64_t)>& term) {
    if (n <= 0) return 0.0;
    const int nthreads = worker_threads();
    // Chunk layout is independent of the thread count so results never depend
    // on the machine's core count.
    const std::int64_t chunks = std::min<std::int64_t>(n, 256);
    std::vector<double> partial(chunks, 0.0);
    if (nthreads == 1 || n < 64) {
        KahanSum acc;
        for (std::int64_t i = 0; i < n; ++i) acc.add(term(i));
        return acc.value();
    }
    std::vector<std::thread> pool;
    std::atomic<std::int64_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::int64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            const std::int64_t lo = c * n / chunks;
            const std::int64_t hi = (c + 1) * n / chunks;
            KahanSum acc;
            for (std::int64_t i = lo; i < hi; ++i) acc.add(term(i));
            partial[c] = acc.value();
        }
    };
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    KahanSum total;
    for (double v : partial) total.add(v);
    return total.value();
}

}  // namespace gagliardo
