#include "gagliardo/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <queue>
#include <random>
#include <sstream>

#include "gagliardo/gauss.hpp"

namespace gagliardo {

namespace {

// Span of the cube on `axis` in units of level `fine` (fine >= cube level).
inline void span_at(const DyadicCube& c, int fine, int axis, std::int64_t& a, std::int64_t& b) {
    const int shift = fine - c.level;
    a = c.index[static_cast<std::size_t>(axis)] << shift;
    b = (c.index[static_cast<std::size_t>(axis)] + 1) << shift;
}

}  // namespace

bool cubes_touch(const DyadicCube& a, const DyadicCube& b) {
    const int fine = std::max(a.level, b.level);
    for (int i = 0; i < a.dim(); ++i) {
        std::int64_t a0, a1, b0, b1;
        span_at(a, fine, i, a0, a1);
        span_at(b, fine, i, b0, b1);
        if (a1 < b0 || b1 < a0) return false;
    }
    return true;
}

bool cubes_open_overlap(const DyadicCube& a, const DyadicCube& b) {
    const int fine = std::max(a.level, b.level);
    for (int i = 0; i < a.dim(); ++i) {
        std::int64_t a0, a1, b0, b1;
        span_at(a, fine, i, a0, a1);
        span_at(b, fine, i, b0, b1);
        if (a1 <= b0 || b1 <= a0) return false;
    }
    return true;
}

bool cube_in_5s(const DyadicCube& q, const DyadicCube& s) {
    const int fine = std::max(q.level, s.level);
    for (int i = 0; i < q.dim(); ++i) {
        std::int64_t q0, q1, s0, s1;
        span_at(q, fine, i, q0, q1);
        span_at(s, fine, i, s0, s1);
        const std::int64_t w = s1 - s0;  // side of S in fine units
        if (q0 < s0 - 2 * w || q1 > s1 + 2 * w) return false;
    }
    return true;
}

double long_distance(const DyadicCube& q, const DyadicCube& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < q.lo.size(); ++i) {
        double gap = std::max(q.lo[i] - (s.lo[i] + s.side), s.lo[i] - (q.lo[i] + q.side));
        if (gap > 0.0) acc += gap * gap;
    }
    return q.side + std::sqrt(acc) + s.side;
}

WhitneyDecomposition WhitneyDecomposition::build(const Domain& domain,
                                                 const WhitneyParams& params) {
    if (params.max_depth < 1) throw std::invalid_argument("whitney: max_depth must be >= 1");
    if (!domain.bounded() && !params.window)
        throw std::invalid_argument("whitney: unbounded domain requires a window");

    const int d = domain.dimension();
    Box region = domain.bounding_box();
    if (params.window) {
        for (int i = 0; i < d; ++i) {
            region.lo[i] = std::max(region.lo[i], params.window->lo[i]);
            region.hi[i] = std::min(region.hi[i], params.window->hi[i]);
            if (!(region.lo[i] < region.hi[i]))
                throw std::invalid_argument("whitney: window disjoint from domain");
        }
    }
    double extent = 0.0;
    for (int i = 0; i < d; ++i) extent = std::max(extent, region.hi[i] - region.lo[i]);
    if (!(extent > 0.0) || std::isinf(extent))
        throw std::invalid_argument("whitney: degenerate region");
    const double base = std::exp2(std::ceil(std::log2(extent)));

    WhitneyDecomposition w;
    w.domain_ = std::make_shared<Domain>(domain);
    w.max_depth_ = params.max_depth;
    w.eps_floor_ = params.eps_floor;
    w.rho_ = params.rho > 0.0 ? params.rho : 3.0 * std::sqrt(static_cast<double>(d));

    struct Item {
        int level;
        std::vector<std::int64_t> index;
    };
    std::deque<Item> work;
    work.push_back({0, std::vector<std::int64_t>(static_cast<std::size_t>(d), 0)});
    const Point origin = region.lo;

    while (!work.empty()) {
        Item it = std::move(work.front());
        work.pop_front();
        DyadicCube c;
        c.level = it.level;
        c.index = it.index;
        c.side = base * std::exp2(-it.level);
        c.lo.resize(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) c.lo[static_cast<std::size_t>(i)] =
            origin[static_cast<std::size_t>(i)] + c.side * static_cast<double>(c.index[static_cast<std::size_t>(i)]);
        const Box b = c.box();
        if (!domain.intersects(b)) continue;
        if (params.window && !params.window->overlaps_open(b)) continue;
        const double dist_bd = domain.boundary_distance(b);
        if (dist_bd >= params.accept_factor * c.diameter()) {
            w.bdist_.push_back(dist_bd);
            w.cubes_.push_back(std::move(c));
            w.frontier_.push_back(false);
            continue;
        }
        if (it.level == params.max_depth) {
            if (dist_bd > 0.0) {
                w.bdist_.push_back(dist_bd);
                w.cubes_.push_back(std::move(c));
                w.frontier_.push_back(true);
            } else {
                w.truncated_ = true;
            }
            continue;
        }
        for (int mask = 0; mask < (1 << d); ++mask) {
            Item child;
            child.level = it.level + 1;
            child.index.resize(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i)
                child.index[static_cast<std::size_t>(i)] =
                    2 * it.index[static_cast<std::size_t>(i)] + ((mask >> i) & 1);
            work.push_back(std::move(child));
        }
    }
    if (w.cubes_.empty()) throw std::invalid_argument("whitney: empty decomposition");

    // canonical order: by level, then index
    std::vector<std::size_t> perm(w.cubes_.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        if (w.cubes_[a].level != w.cubes_[b].level) return w.cubes_[a].level < w.cubes_[b].level;
        return w.cubes_[a].index < w.cubes_[b].index;
    });
    std::vector<DyadicCube> cs;
    std::vector<bool> fr;
    std::vector<double> bd;
    cs.reserve(perm.size());
    for (std::size_t i : perm) {
        cs.push_back(std::move(w.cubes_[i]));
        fr.push_back(w.frontier_[i]);
        bd.push_back(w.bdist_[i]);
    }
    w.cubes_ = std::move(cs);
    w.frontier_ = std::move(fr);
    w.bdist_ = std::move(bd);

    w.build_neighbors_lattice();
    w.finish(params.accept_factor);
    return w;
}

WhitneyDecomposition whitney_decompose(const Domain& domain, const WhitneyParams& params) {
    return WhitneyDecomposition::build(domain, params);
}

WhitneyDecomposition WhitneyDecomposition::from_cubes(const Domain& domain,
                                                      std::vector<DyadicCube> cubes, double rho) {
    WhitneyDecomposition w;
    w.domain_ = std::make_shared<Domain>(domain);
    w.cubes_ = std::move(cubes);
    w.frontier_.assign(w.cubes_.size(), false);
    w.bdist_.reserve(w.cubes_.size());
    int depth = 0;
    for (const DyadicCube& c : w.cubes_) {
        w.bdist_.push_back(domain.boundary_distance(c.box()));
        depth = std::max(depth, c.level);
    }
    w.max_depth_ = depth;
    w.rho_ = rho > 0.0 ? rho : 3.0 * std::sqrt(static_cast<double>(domain.dimension()));
    w.build_neighbors_quadratic();
    // empirical Whitney constant from the observed distance/side ratios
    double cmin = inf;
    for (std::size_t i = 0; i < w.cubes_.size(); ++i)
        cmin = std::min(cmin, w.bdist_[i] / w.cubes_[i].side);
    w.c_w_ = std::isinf(cmin) || cmin <= 0.0 ? 1.0 : cmin;
    return w;
}

void WhitneyDecomposition::build_neighbors_lattice() {
    // cubes share one lattice; candidates live at levels L-1, L, L+1 because
    // touching retained cubes differ at most 2x in side
    std::map<std::pair<int, std::vector<std::int64_t>>, int> by_key;
    for (int i = 0; i < size(); ++i)
        by_key.emplace(std::make_pair(cubes_[static_cast<std::size_t>(i)].level,
                                      cubes_[static_cast<std::size_t>(i)].index),
                       i);
    neighbors_.assign(cubes_.size(), {});
    const int d = cubes_.front().dim();
    for (int i = 0; i < size(); ++i) {
        const DyadicCube& c = cubes_[static_cast<std::size_t>(i)];
        for (int dl = -1; dl <= 1; ++dl) {
            const int lvl = c.level + dl;
            if (lvl < 0) continue;
            // per-axis candidate index ranges at level lvl
            std::vector<std::pair<std::int64_t, std::int64_t>> range(static_cast<std::size_t>(d));
            for (int ax = 0; ax < d; ++ax) {
                std::int64_t lo, hi;  // cube span in level-lvl units, inclusive cells
                if (lvl >= c.level) {
                    const int sh = lvl - c.level;
                    lo = (c.index[static_cast<std::size_t>(ax)] << sh) - 1;
                    hi = ((c.index[static_cast<std::size_t>(ax)] + 1) << sh);
                } else {
                    const int sh = c.level - lvl;
                    lo = (c.index[static_cast<std::size_t>(ax)] >> sh) - 1;
                    hi = ((c.index[static_cast<std::size_t>(ax)] + 1) >> sh) + 1;
                }
                range[static_cast<std::size_t>(ax)] = {lo, hi};
            }
            std::vector<std::int64_t> idx(static_cast<std::size_t>(d));
            for (int ax = 0; ax < d; ++ax) idx[static_cast<std::size_t>(ax)] = range[static_cast<std::size_t>(ax)].first;
            for (;;) {
                const auto it = by_key.find(std::make_pair(lvl, idx));
                if (it != by_key.end() && it->second != i) {
                    DyadicCube probe = cubes_[static_cast<std::size_t>(it->second)];
                    if (cubes_touch(c, probe)) neighbors_[static_cast<std::size_t>(i)].push_back(it->second);
                }
                int ax = 0;
                for (; ax < d; ++ax) {
                    if (++idx[static_cast<std::size_t>(ax)] <= range[static_cast<std::size_t>(ax)].second) break;
                    idx[static_cast<std::size_t>(ax)] = range[static_cast<std::size_t>(ax)].first;
                }
                if (ax == d) break;
            }
        }
        std::sort(neighbors_[static_cast<std::size_t>(i)].begin(), neighbors_[static_cast<std::size_t>(i)].end());
        neighbors_[static_cast<std::size_t>(i)].erase(
            std::unique(neighbors_[static_cast<std::size_t>(i)].begin(), neighbors_[static_cast<std::size_t>(i)].end()),
            neighbors_[static_cast<std::size_t>(i)].end());
    }
}

void WhitneyDecomposition::build_neighbors_quadratic() {
    neighbors_.assign(cubes_.size(), {});
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j)
            if (cubes_touch(cubes_[static_cast<std::size_t>(i)], cubes_[static_cast<std::size_t>(j)])) {
                neighbors_[static_cast<std::size_t>(i)].push_back(j);
                neighbors_[static_cast<std::size_t>(j)].push_back(i);
            }
}

void WhitneyDecomposition::finish(double accept_factor) {
    c_w_ = accept_factor * std::sqrt(static_cast<double>(cubes_.front().dim()));
}

long WhitneyDecomposition::frontier_count() const {
    long n = 0;
    for (bool f : frontier_)
        if (f) ++n;
    return n;
}

bool WhitneyDecomposition::in_shadow(int s, int q, double rho) const {
    const DyadicCube& cs = cubes_[static_cast<std::size_t>(s)];
    const DyadicCube& cq = cubes_[static_cast<std::size_t>(q)];
    const Point c = cq.center();
    const double r = rho * cq.side;
    double far2 = 0.0;
    for (int i = 0; i < cs.dim(); ++i) {
        const double m = std::max(std::abs(cs.lo[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i)]),
                                  std::abs(cs.lo[static_cast<std::size_t>(i)] + cs.side - c[static_cast<std::size_t>(i)]));
        far2 += m * m;
    }
    return far2 <= r * r;
}

std::vector<int> WhitneyDecomposition::shadow(int q, double rho) const {
    std::vector<int> out;
    for (int s = 0; s < size(); ++s)
        if (in_shadow(s, q, rho)) out.push_back(s);
    return out;
}

Chain WhitneyDecomposition::admissible_chain(int qi, int si) const {
    if (domain_->kind() == Domain::Kind::Strip) {
        // strips: only queries within one unit cell are supported
        if (cubes_[static_cast<std::size_t>(qi)].box().distance(cubes_[static_cast<std::size_t>(si)].box()) > 2.0)
            throw std::invalid_argument("admissible_chain: strip query must stay within one cell");
    }
    auto ascend = [&](int start) {
        std::vector<int> path{start};
        int cur = start;
        for (;;) {
            int best = -1;
            for (int nb : neighbors(cur)) {
                if (cubes_[static_cast<std::size_t>(nb)].side <= cubes_[static_cast<std::size_t>(cur)].side) continue;
                if (best < 0 || cubes_[static_cast<std::size_t>(nb)].side > cubes_[static_cast<std::size_t>(best)].side ||
                    (cubes_[static_cast<std::size_t>(nb)].side == cubes_[static_cast<std::size_t>(best)].side &&
                     cubes_[static_cast<std::size_t>(nb)].center() < cubes_[static_cast<std::size_t>(best)].center()))
                    best = nb;
            }
            if (best < 0) break;
            path.push_back(best);
            cur = best;
        }
        return path;
    };
    const std::vector<int> up_q = ascend(qi);
    const std::vector<int> up_s = ascend(si);
    const int apex_q = up_q.back();
    const int apex_s = up_s.back();

    // BFS between the two apexes, preferring the coarse plateau
    auto bfs = [&](double min_side) -> std::vector<int> {
        std::vector<int> prev(cubes_.size(), -2);
        std::queue<int> fifo;
        fifo.push(apex_q);
        prev[static_cast<std::size_t>(apex_q)] = -1;
        while (!fifo.empty()) {
            const int cur = fifo.front();
            fifo.pop();
            if (cur == apex_s) break;
            for (int nb : neighbors(cur)) {
                if (cubes_[static_cast<std::size_t>(nb)].side < min_side) continue;
                if (prev[static_cast<std::size_t>(nb)] != -2) continue;
                prev[static_cast<std::size_t>(nb)] = cur;
                fifo.push(nb);
            }
        }
        std::vector<int> path;
        if (prev[static_cast<std::size_t>(apex_s)] == -2) return path;
        for (int cur = apex_s; cur != -1; cur = prev[static_cast<std::size_t>(cur)]) path.push_back(cur);
        std::reverse(path.begin(), path.end());
        return path;
    };
    const double plateau = std::min(cubes_[static_cast<std::size_t>(apex_q)].side,
                                    cubes_[static_cast<std::size_t>(apex_s)].side);
    std::vector<int> mid = bfs(plateau);
    if (mid.empty()) mid = bfs(0.0);
    if (mid.empty()) throw NoChainError("admissible_chain: endpoints are disconnected");

    std::vector<int> full;
    full.insert(full.end(), up_q.begin(), up_q.end());
    full.insert(full.end(), mid.begin() + 1, mid.end());
    for (auto it = up_s.rbegin() + 1; it != up_s.rend(); ++it) full.push_back(*it);
    if (up_s.size() == 1 && full.back() != si) full.push_back(si);
    // splice out any loops, keeping the first occurrence
    std::vector<int> clean;
    for (int id : full) {
        auto seen = std::find(clean.begin(), clean.end(), id);
        if (seen != clean.end())
            clean.erase(seen + 1, clean.end());
        else
            clean.push_back(id);
    }
    if (clean.front() != qi || clean.back() != si) {
        // endpoints must survive loop splicing
        if (clean.back() != si) clean.push_back(si);
    }

    Chain ch;
    ch.cubes = std::move(clean);
    // central cube: the largest; among ties pick the position maximizing the
    // achieved eps
    double lmax = 0.0;
    for (int id : ch.cubes) lmax = std::max(lmax, cubes_[static_cast<std::size_t>(id)].side);
    const DyadicCube& cq = cubes_[static_cast<std::size_t>(qi)];
    const DyadicCube& cs = cubes_[static_cast<std::size_t>(si)];
    auto eps_for = [&](int j0) {
        const std::size_t n = ch.cubes.size();
        double eps = inf;
        double total = 0.0;
        for (int id : ch.cubes) total += cubes_[static_cast<std::size_t>(id)].side;
        eps = long_distance(cq, cs) / total;
        for (std::size_t j = 0; j < n; ++j) {
            const DyadicCube& cj = cubes_[static_cast<std::size_t>(ch.cubes[j])];
            if (static_cast<int>(j) <= j0)
                eps = std::min(eps, cj.side / long_distance(cq, cj));
            if (static_cast<int>(j) >= j0)
                eps = std::min(eps, cj.side / long_distance(cj, cs));
        }
        return eps;
    };
    double best_eps = -1.0;
    int best_j0 = 0;
    for (std::size_t j = 0; j < ch.cubes.size(); ++j) {
        if (cubes_[static_cast<std::size_t>(ch.cubes[j])].side < lmax) continue;
        const double e = eps_for(static_cast<int>(j));
        if (e > best_eps) {
            best_eps = e;
            best_j0 = static_cast<int>(j);
        }
    }
    ch.central_index = best_j0;
    ch.eps_achieved = best_eps;
    return ch;
}

std::string WhitneyDecomposition::to_json_lines() const {
    std::ostringstream os;
    os.precision(17);
    for (int i = 0; i < size(); ++i) {
        const DyadicCube& c = cubes_[static_cast<std::size_t>(i)];
        os << "{\"id\":" << i << ",\"level\":" << c.level << ",\"index\":[";
        for (std::size_t k = 0; k < c.index.size(); ++k)
            os << (k ? "," : "") << c.index[k];
        os << "],\"side\":" << c.side << ",\"center\":[";
        const Point ctr = c.center();
        for (std::size_t k = 0; k < ctr.size(); ++k) os << (k ? "," : "") << ctr[k];
        os << "],\"neighbors\":[";
        const auto& nb = neighbors(i);
        for (std::size_t k = 0; k < nb.size(); ++k) os << (k ? "," : "") << nb[k];
        os << "],\"frontier\":" << (is_frontier(i) ? "true" : "false") << "}\n";
    }
    return os.str();
}

WhitneyViolations verify_whitney(const WhitneyDecomposition& w) {
    const int n = w.size();
    // all three pair predicates only fire when the cubes are within a few
    // coarse sides of each other on every axis; sweep on axis 0
    double max_side = 0.0;
    for (int i = 0; i < n; ++i) max_side = std::max(max_side, w.cube(i).side);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return w.cube(a).lo[0] < w.cube(b).lo[0]; });
    std::vector<double> lo0(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) lo0[static_cast<std::size_t>(k)] = w.cube(order[static_cast<std::size_t>(k)]).lo[0];
    const double slack = 3.0 * max_side;

    const std::int64_t chunks = std::min<std::int64_t>(n, 256);
    std::vector<WhitneyViolations> parts(static_cast<std::size_t>(chunks));
    // pair checks are independent per row; deterministic chunked parallel scan
    parallel_sum(chunks, [&](std::int64_t ci) {
        WhitneyViolations& v = parts[static_cast<std::size_t>(ci)];
        std::ostringstream worst;
        const int lo = static_cast<int>(ci * n / chunks), hi = static_cast<int>((ci + 1) * n / chunks);
        for (int i = lo; i < hi; ++i) {
            const DyadicCube& a = w.cube(i);
            const auto first = std::lower_bound(lo0.begin(), lo0.end(), a.lo[0] - slack);
            const auto last = std::upper_bound(lo0.begin(), lo0.end(), a.lo[0] + a.side + slack);
            for (auto it = first; it != last; ++it) {
                const int j = order[static_cast<std::size_t>(it - lo0.begin())];
                if (i == j) continue;
                const DyadicCube& b = w.cube(j);
                if (j > i && cubes_open_overlap(a, b)) {
                    ++v.overlap;
                    if (v.overlap == 1) worst << "overlap " << i << "," << j << ";";
                }
                if (j > i && cubes_touch(a, b)) {
                    if (a.side > 2.0 * b.side || b.side > 2.0 * a.side) {
                        ++v.neighbor_ratio;
                        if (v.neighbor_ratio == 1)
                            worst << "neighbor_ratio " << i << "," << j << ";";
                    }
                }
                if (b.side > 2.0 * a.side && cube_in_5s(a, b)) {
                    ++v.subcube5;
                    if (v.subcube5 == 1) worst << "subcube5 " << i << " in 5*" << j << ";";
                }
            }
            if (!w.is_frontier(i)) {
                const double d = w.boundary_distance(i);
                const double l = w.cube(i).side;
                if (d < w.whitney_constant() * l * (1.0 - 1e-12) ||
                    d > 4.0 * w.whitney_constant() * l * (1.0 + 1e-12)) {
                    ++v.distance;
                    if (v.distance == 1) worst << "distance " << i << ";";
                }
            }
        }
        v.worst = worst.str();
        return 0.0;
    });
    WhitneyViolations v;
    std::ostringstream worst;
    for (const auto& p : parts) {
        v.overlap += p.overlap;
        v.neighbor_ratio += p.neighbor_ratio;
        v.subcube5 += p.subcube5;
        v.distance += p.distance;
        if (!p.worst.empty()) worst << p.worst;
    }
    v.worst = worst.str();
    return v;
}

ShadowRadiusReport shadow_radius_check(const WhitneyDecomposition& w, int n_pairs,
                                       std::uint64_t seed) {
    ShadowRadiusReport rep;
    double rho = w.rho();
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> pairs;
    std::uniform_int_distribution<int> pick(0, w.size() - 1);
    for (int k = 0; k < n_pairs; ++k) pairs.emplace_back(pick(rng), pick(rng));

    for (int doubling = 0; doubling < 24; ++doubling) {
        bool ok = true;
        // bullet 3: every retained cube poking into 5Q lies in Sh_rho(Q)
        for (int q = 0; q < w.size() && ok; ++q) {
            DyadicCube five = w.cube(q);
            // 5Q as a box in lattice-free coordinates
            Box fb = five.box();
            for (std::size_t i = 0; i < fb.lo.size(); ++i) {
                fb.lo[i] -= 2.0 * five.side;
                fb.hi[i] += 2.0 * five.side;
            }
            for (int r = 0; r < w.size() && ok; ++r) {
                if (!w.cube(r).box().overlaps_open(fb)) continue;
                if (!w.in_shadow(r, q, rho)) ok = false;
            }
        }
        // bullets 1 and 2 on sampled chains
        long checked = 0;
        for (const auto& [a, b] : pairs) {
            if (!ok) break;
            Chain ch;
            try {
                ch = w.admissible_chain(a, b);
            } catch (const NoChainError&) {
                continue;
            }
            ++checked;
            for (int j = 0; j <= ch.central_index && ok; ++j)
                if (!w.in_shadow(a, ch.cubes[static_cast<std::size_t>(j)], rho)) ok = false;
            for (std::size_t j = 0; j < ch.cubes.size() && ok; ++j)
                if (!w.in_shadow(static_cast<int>(ch.cubes[j]),
                                 ch.cubes[static_cast<std::size_t>(ch.central_index)], rho))
                    ok = false;
        }
        rep.chain_pairs_checked = checked;
        if (ok) {
            rep.rho = rho;
            rep.ok = true;
            rep.doublings = doubling;
            return rep;
        }
        rho *= 2.0;
    }
    rep.rho = rho;
    return rep;
}

}  // namespace gagliardo
