#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gagliardo/domain.hpp"
#include "gagliardo/geometry.hpp"

namespace gagliardo {

/// Closed dyadic cube of the decomposition lattice: side = base * 2^{-level},
/// lower corner at origin + index * side.
struct DyadicCube {
    int level = 0;
    std::vector<std::int64_t> index;
    Point lo;
    double side = 1.0;

    int dim() const { return static_cast<int>(index.size()); }
    Point center() const {
        Point c(lo.size());
        for (std::size_t i = 0; i < lo.size(); ++i) c[i] = lo[i] + 0.5 * side;
        return c;
    }
    Box box() const {
        Box b{lo, lo};
        for (std::size_t i = 0; i < lo.size(); ++i) b.hi[i] = lo[i] + side;
        return b;
    }
    double diameter() const { return side * std::sqrt(static_cast<double>(dim())); }
};

/// Exact lattice predicates (integer arithmetic, no floating error).
bool cubes_touch(const DyadicCube& a, const DyadicCube& b);
bool cubes_open_overlap(const DyadicCube& a, const DyadicCube& b);
/// Q subset of 5S (the concentric 5x dilation of S).
bool cube_in_5s(const DyadicCube& q, const DyadicCube& s);

/// D(Q,S) = l(Q) + d(Q,S) + l(S).
double long_distance(const DyadicCube& q, const DyadicCube& s);

struct WhitneyParams {
    int max_depth = 8;
    /// Accept a cube once d(Q, boundary) >= accept_factor * diam(Q). The
    /// recursion then yields d < (2*accept_factor+1) * diam automatically,
    /// and accept_factor >= 5.5 makes all four axioms provable.
    double accept_factor = 6.0;
    /// Shadow radius rho_eps; 0 picks 3*sqrt(d).
    double rho = 0.0;
    double eps_floor = 0.02;
    /// Required for unbounded domains.
    std::optional<Box> window;
};

struct Chain {
    std::vector<int> cubes;  // ids into the decomposition, Q first, S last
    int central_index = 0;   // position of Q_S within `cubes`
    double eps_achieved = 0.0;
};

struct NoChainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WhitneyViolations {
    long overlap = 0;        // axiom 1
    long neighbor_ratio = 0; // axiom 2
    long subcube5 = 0;       // axiom 3
    long distance = 0;       // axiom 4 (non-frontier cubes only)
    std::string worst;
    long total() const { return overlap + neighbor_ratio + subcube5 + distance; }
};

class WhitneyDecomposition {
  public:
    static WhitneyDecomposition build(const Domain& domain, const WhitneyParams& params = {});
    /// Hand-built decompositions for tests and lemma checks.
    static WhitneyDecomposition from_cubes(const Domain& domain, std::vector<DyadicCube> cubes,
                                           double rho = 0.0);

    int size() const { return static_cast<int>(cubes_.size()); }
    const std::vector<DyadicCube>& cubes() const { return cubes_; }
    const DyadicCube& cube(int i) const { return cubes_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& neighbors(int i) const {
        return neighbors_[static_cast<std::size_t>(i)];
    }
    bool is_frontier(int i) const { return frontier_[static_cast<std::size_t>(i)]; }
    long frontier_count() const;

    const Domain& domain() const { return *domain_; }
    double whitney_constant() const { return c_w_; }
    double rho() const { return rho_; }
    double eps_floor() const { return eps_floor_; }
    int max_depth() const { return max_depth_; }
    bool truncated() const { return truncated_; }
    double boundary_distance(int i) const { return bdist_[static_cast<std::size_t>(i)]; }

    /// Cubes S with S contained in the closed ball B(center(Q), rho * l(Q)).
    std::vector<int> shadow(int q, double rho) const;
    bool in_shadow(int s, int q, double rho) const;

    /// eps-admissible chain via greedy ascent from both endpoints joined
    /// across the coarse plateau. Throws NoChainError when the (possibly
    /// truncated) cube family is disconnected between the endpoints.
    Chain admissible_chain(int q, int s) const;

    /// JSON-lines export: one object per cube.
    std::string to_json_lines() const;

  private:
    WhitneyDecomposition() = default;
    void build_neighbors_lattice();
    void build_neighbors_quadratic();
    void finish(double accept_factor);

    std::vector<DyadicCube> cubes_;
    std::vector<std::vector<int>> neighbors_;
    std::vector<bool> frontier_;
    std::vector<double> bdist_;
    std::shared_ptr<const Domain> domain_;
    double c_w_ = 0.0;
    double rho_ = 0.0;
    double eps_floor_ = 0.02;
    int max_depth_ = 0;
    bool truncated_ = false;
};

WhitneyDecomposition whitney_decompose(const Domain& domain, const WhitneyParams& params = {});

/// Exhaustive check of the four Whitney axioms.
WhitneyViolations verify_whitney(const WhitneyDecomposition& w);

struct ShadowRadiusReport {
    double rho = 0.0;        // radius that satisfied the three bullet checks
    bool ok = false;
    int doublings = 0;
    long chain_pairs_checked = 0;
};

/// Checks the three defining properties of rho_eps on sampled chains and the
/// 5Q-coverage property on every cube, doubling rho until they hold.
ShadowRadiusReport shadow_radius_check(const WhitneyDecomposition& w, int n_pairs = 64,
                                       std::uint64_t seed = 1);

}  // namespace gagliardo
