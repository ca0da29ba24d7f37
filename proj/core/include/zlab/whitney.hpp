#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "zlab/domain.hpp"
#include "zlab/geometry.hpp"

namespace zlab {

struct WhitneyOptions {
    int k_max = 14;
    // target for |region| - sum |Q|, as a fraction of |bounding box|
    double uncovered_target_frac = 1e-6;
    // when false, a missed target is recorded on the covering instead of
    // raising DepthExhausted
    bool throw_on_depth_exhausted = true;
};

// Whitney covering of a domain (or of its bounding-box-clipped complement):
// disjoint dyadic cubes with diam(Q) <= dist(Q, boundary) <= 4 diam(Q).
class WhitneyCovering {
public:
    enum class Region { Interior, Complement };

    const std::vector<Cube>& cubes() const { return cubes_; }
    const LipschitzDomain& domain() const { return domain_; }
    Region region() const { return region_; }
    const Cube& root() const { return root_; }
    int k_max() const { return k_max_; }

    double side_at(int level) const { return root_.side * std::pow(0.5, level); }
    const std::map<int, std::vector<size_t>>& side_index() const { return side_index_; }

    double uncovered_volume() const { return uncovered_volume_; }
    double covered_volume() const { return covered_volume_; }
    double region_volume() const { return region_volume_; }
    bool depth_exhausted() const { return depth_exhausted_; }

    // distance from a cube to the boundary of the covered region (for the
    // complement this includes the clipping box edge)
    double region_dist(const Cube& q) const;

    bool has_cube(int level, std::int64_t ix, std::int64_t iy) const;
    // lattice lookup; returns index into cubes() or npos
    size_t find(int level, std::int64_t ix, std::int64_t iy) const;
    static constexpr size_t npos = static_cast<size_t>(-1);

    // all cubes of the given level whose closed box meets [lo, hi] inflated
    // by `pad`
    std::vector<size_t> level_range_query(int level, const Cube& box, double pad) const;

private:
    friend WhitneyCovering build_whitney(const LipschitzDomain&, Region,
                                         const WhitneyOptions&);
    LipschitzDomain domain_ = make_domain("square");
    Region region_ = Region::Interior;
    Cube root_;
    int k_max_ = 0;
    std::vector<Cube> cubes_;
    std::map<int, std::vector<size_t>> side_index_;
    std::unordered_map<std::uint64_t, size_t> lattice_;  // (level, ix, iy) -> cube
    double uncovered_volume_ = 0.0;
    double covered_volume_ = 0.0;
    double region_volume_ = 0.0;
    bool depth_exhausted_ = false;

    static std::uint64_t key(int level, std::int64_t ix, std::int64_t iy);
};

WhitneyCovering build_whitney(const LipschitzDomain& d, WhitneyCovering::Region r,
                              const WhitneyOptions& opt);

WhitneyCovering whitney(const LipschitzDomain& d, const WhitneyOptions& opt = {});
// Covering of (3x inflated bounding box) minus the closed domain.
WhitneyCovering whitney_complement(const LipschitzDomain& d,
                                   const WhitneyOptions& opt = {});

// Maximal-side cube of W within distance 2*dist(q, boundary of D) of q;
// ties broken by lexicographic dyadic index. q comes from the complement
// covering.
const Cube& reflective_cube(const Cube& q, const WhitneyCovering& W);

// Property (vii): max number of same-side cubes meeting a vertical line of
// the window; lines are sampled at cube-corner abscissas plus midpoints.
int vertical_count(const WhitneyCovering& W, const Window& window, double side);

struct WhitneyAxiomReport {
    int n_cubes = 0;
    int disjointness_violations = 0;
    int dist_ratio_violations = 0;   // (iv) outside [1, 4]
    int neighbor_ratio_violations = 0;  // (v) side ratio > 4
    double min_dist_over_diam = 0.0;
    double max_dist_over_diam = 0.0;
    int max_overlap_65 = 0;          // (vi) superposition of (6/5)Q, measured
    double uncovered_volume = 0.0;
    double uncovered_fraction_of_bbox = 0.0;

    bool clean() const {
        return disjointness_violations == 0 && dist_ratio_violations == 0 &&
               neighbor_ratio_violations == 0;
    }
};

WhitneyAxiomReport check_whitney_axioms(const WhitneyCovering& W);

} // namespace zlab
