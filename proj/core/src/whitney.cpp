#include "zlab/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace zlab {

namespace {

// classification of a cube against the covered region
struct RegionOracle {
    const LipschitzDomain* dom;
    WhitneyCovering::Region region;
    Cube root;

    double root_edge_dist(const Cube& q) const {
        double d = 1e300;
        for (int i = 0; i < 2; ++i) {
            d = std::min(d, q.low(i) - root.low(i));
            d = std::min(d, root.high(i) - q.high(i));
        }
        return std::max(0.0, d);
    }
    double point_dist(const Vec& p) const {
        double d = dom->boundary_dist(p);
        if (region == WhitneyCovering::Region::Complement) {
            double e = 1e300;
            for (int i = 0; i < 2; ++i) {
                e = std::min(e, std::min(p[i] - root.low(i), root.high(i) - p[i]));
            }
            d = std::min(d, std::max(0.0, e));
        }
        return d;
    }
    double cube_dist(const Cube& q) const {
        double d = dom->cube_boundary_dist(q);
        if (region == WhitneyCovering::Region::Complement) {
            d = std::min(d, root_edge_dist(q));
        }
        return d;
    }
    bool point_in_region(const Vec& p) const {
        bool in_d = dom->contains(p);
        if (region == WhitneyCovering::Region::Interior) return in_d;
        if (in_d) return false;
        for (int i = 0; i < 2; ++i) {
            if (p[i] <= root.low(i) || p[i] >= root.high(i)) return false;
        }
        return dom->boundary_dist(p) > 0.0;
    }
    // -1 out, +1 in, 0 straddle (w.r.t. the region)
    int classify(const Cube& q) const {
        int against_d = dom->classify(q);
        if (region == WhitneyCovering::Region::Interior) return against_d;
        if (against_d > 0) return -1;  // inside D means outside the complement
        if (against_d == 0) return 0;
        // outside D: check the clipping box
        double edge = root_edge_dist(q);
        bool strictly_inside_root = q.low(0) > root.low(0) && q.low(1) > root.low(1) &&
                                    q.high(0) < root.high(0) && q.high(1) < root.high(1);
        (void)edge;
        return strictly_inside_root ? +1 : 0;
    }
    double region_fraction(const Cube& q) const {
        double f = dom->cell_area_fraction(q);
        if (region == WhitneyCovering::Region::Interior) return f;
        // clip by the root box (cells are inside the root by construction)
        return 1.0 - f;
    }
};

} // namespace

std::uint64_t WhitneyCovering::key(int level, std::int64_t ix, std::int64_t iy) {
    return (static_cast<std::uint64_t>(level) << 58) ^
           (static_cast<std::uint64_t>(ix & 0x1FFFFFFF) << 29) ^
           static_cast<std::uint64_t>(iy & 0x1FFFFFFF);
}

bool WhitneyCovering::has_cube(int level, std::int64_t ix, std::int64_t iy) const {
    return lattice_.count(key(level, ix, iy)) > 0;
}

size_t WhitneyCovering::find(int level, std::int64_t ix, std::int64_t iy) const {
    auto it = lattice_.find(key(level, ix, iy));
    return it == lattice_.end() ? npos : it->second;
}

double WhitneyCovering::region_dist(const Cube& q) const {
    RegionOracle oracle{&domain_, region_, root_};
    return oracle.cube_dist(q);
}

std::vector<size_t> WhitneyCovering::level_range_query(int level, const Cube& box,
                                                       double pad) const {
    std::vector<size_t> out;
    auto it = side_index_.find(level);
    if (it == side_index_.end()) return out;
    double side = side_at(level);
    auto lo_idx = [&](double x, double origin) {
        return static_cast<std::int64_t>(std::floor((x - origin) / side));
    };
    std::int64_t max_idx = (static_cast<std::int64_t>(1) << level) - 1;
    std::int64_t ix0 = std::max<std::int64_t>(0, lo_idx(box.low(0) - pad, root_.low(0)));
    std::int64_t ix1 = std::min(max_idx, lo_idx(box.high(0) + pad, root_.low(0)));
    std::int64_t iy0 = std::max<std::int64_t>(0, lo_idx(box.low(1) - pad, root_.low(1)));
    std::int64_t iy1 = std::min(max_idx, lo_idx(box.high(1) + pad, root_.low(1)));
    // fall back to the level list when the lattice window is larger
    std::uint64_t window = static_cast<std::uint64_t>(ix1 - ix0 + 1) *
                           static_cast<std::uint64_t>(iy1 - iy0 + 1);
    if (window > it->second.size()) {
        for (size_t idx : it->second) {
            const Cube& c = cubes_[idx];
            if (box_distance(c, box) <= pad) out.push_back(idx);
        }
        return out;
    }
    for (std::int64_t ix = ix0; ix <= ix1; ++ix) {
        for (std::int64_t iy = iy0; iy <= iy1; ++iy) {
            size_t idx = find(level, ix, iy);
            if (idx != npos) out.push_back(idx);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

WhitneyCovering build_whitney(const LipschitzDomain& d, WhitneyCovering::Region region,
                              const WhitneyOptions& opt) {
    WhitneyCovering W;
    W.domain_ = d;
    W.region_ = region;
    W.k_max_ = opt.k_max;
    Cube root = d.bounding_box();
    if (region == WhitneyCovering::Region::Complement) root = root.dilated(3.0);
    W.root_ = root;

    RegionOracle oracle{&W.domain_, region, root};

    double uncovered = 0.0;

    // explicit stack; children pushed in reverse so traversal order is
    // (level, iy, ix) ascending -- deterministic
    struct Node {
        int level;
        std::int64_t ix, iy;
    };
    std::vector<Node> stack;
    stack.push_back({0, 0, 0});
    while (!stack.empty()) {
        Node nd = stack.back();
        stack.pop_back();
        double side = root.side * std::pow(0.5, nd.level);
        Vec ctr(root.low(0) + (nd.ix + 0.5) * side, root.low(1) + (nd.iy + 0.5) * side);
        Cube q(ctr, side);
        q.dyadic = DyadicCoords{nd.level, {nd.ix, nd.iy, 0}};

        int cls = oracle.classify(q);
        if (cls < 0) continue;
        bool accept = false;
        if (cls > 0) {
            // conservative center-based bound: dist(center) - diam/2; accepted
            // cubes then satisfy diam <= true dist <= 4 diam (see tests)
            double lower = oracle.point_dist(q.center) - 0.5 * q.diameter();
            accept = q.diameter() <= lower;
        }
        if (accept) {
            size_t idx = W.cubes_.size();
            W.cubes_.push_back(q);
            W.side_index_[nd.level].push_back(idx);
            W.lattice_[WhitneyCovering::key(nd.level, nd.ix, nd.iy)] = idx;
            continue;
        }
        if (nd.level >= opt.k_max) {
            uncovered += (cls > 0 ? 1.0 : oracle.region_fraction(q)) * q.volume();
            continue;
        }
        for (int c = 3; c >= 0; --c) {
            stack.push_back({nd.level + 1, 2 * nd.ix + (c & 1), 2 * nd.iy + (c >> 1)});
        }
    }

    W.uncovered_volume_ = uncovered;
    double covered = 0.0;
    for (const Cube& q : W.cubes_) covered += q.volume();
    W.covered_volume_ = covered;
    W.region_volume_ = region == WhitneyCovering::Region::Interior
                           ? d.area()
                           : root.volume() - d.area();
    double target = opt.uncovered_target_frac * root.volume();
    W.depth_exhausted_ = uncovered > target;
    if (W.depth_exhausted_ && opt.throw_on_depth_exhausted) {
        std::ostringstream os;
        os << "uncovered volume " << uncovered << " exceeds target " << target
           << " at k_max=" << opt.k_max << " for domain '" << d.name() << "'";
        throw DepthExhausted(os.str());
    }
    return W;
}

WhitneyCovering whitney(const LipschitzDomain& d, const WhitneyOptions& opt) {
    return build_whitney(d, WhitneyCovering::Region::Interior, opt);
}

WhitneyCovering whitney_complement(const LipschitzDomain& d, const WhitneyOptions& opt) {
    return build_whitney(d, WhitneyCovering::Region::Complement, opt);
}

const Cube& reflective_cube(const Cube& q, const WhitneyCovering& W) {
    if (W.cubes().empty()) throw NoReflectiveCube("interior covering is empty");
    double h = W.domain().cube_boundary_dist(q);
    double limit = 2.0 * h;
    for (const auto& [level, idxs] : W.side_index()) {
        std::vector<size_t> cands = W.level_range_query(level, q, limit);
        size_t best = WhitneyCovering::npos;
        for (size_t idx : cands) {
            const Cube& c = W.cubes()[idx];
            if (box_distance(q, c) <= limit) {
                if (best == WhitneyCovering::npos) {
                    best = idx;
                } else {
                    const auto& a = W.cubes()[idx].dyadic;
                    const auto& b = W.cubes()[best].dyadic;
                    if (std::make_pair(a->index[0], a->index[1]) <
                        std::make_pair(b->index[0], b->index[1])) {
                        best = idx;
                    }
                }
            }
        }
        if (best != WhitneyCovering::npos) return W.cubes()[best];
    }
    throw NoReflectiveCube("no interior cube within 2*dist for " + q.str());
}

int vertical_count(const WhitneyCovering& W, const Window& window, double side) {
    // find the side class
    int level = -1;
    for (const auto& [lv, idxs] : W.side_index()) {
        if (std::abs(W.side_at(lv) - side) < 1e-12 * side) {
            level = lv;
            break;
        }
    }
    if (level < 0) return 0;

    const double ca = std::cos(window.up_angle), sa = std::sin(window.up_angle);
    Vec up(ca, sa);
    Vec horiz(sa, -ca);
    double half = 0.5 * window.side;

    Cube wbox(window.center, window.side * std::sqrt(2.0));  // covers the rotated square
    std::vector<size_t> in_window = W.level_range_query(level, wbox, 0.0);

    // abscissas: projections of cube corners on the horizontal axis, plus
    // midpoints and the center line
    std::vector<double> xs = {0.0};
    for (size_t idx : in_window) {
        const Cube& c = W.cubes()[idx];
        for (int k = 0; k < c.corner_count(); ++k) {
            double x = (c.corner(k) - window.center).dot(horiz);
            if (std::abs(x) <= half) xs.push_back(x);
        }
    }
    std::sort(xs.begin(), xs.end());
    std::vector<double> lines = xs;
    for (size_t i = 0; i + 1 < xs.size(); ++i) lines.push_back(0.5 * (xs[i] + xs[i + 1]));

    int best = 0;
    for (double x : lines) {
        Vec base = window.center + horiz * x;
        Vec a = base - up * half, b = base + up * half;
        int count = 0;
        for (size_t idx : in_window) {
            if (box_segment_distance(W.cubes()[idx], a, b) <= 1e-13) ++count;
        }
        best = std::max(best, count);
    }
    return best;
}

WhitneyAxiomReport check_whitney_axioms(const WhitneyCovering& W) {
    WhitneyAxiomReport rep;
    const auto& cubes = W.cubes();
    rep.n_cubes = static_cast<int>(cubes.size());
    if (cubes.empty()) return rep;

    // (ii) disjointness: no accepted cube may have an accepted ancestor
    std::set<std::tuple<int, std::int64_t, std::int64_t>> accepted;
    for (const Cube& q : cubes) {
        accepted.insert({q.dyadic->level, q.dyadic->index[0], q.dyadic->index[1]});
    }
    for (const Cube& q : cubes) {
        int lv = q.dyadic->level;
        std::int64_t ix = q.dyadic->index[0], iy = q.dyadic->index[1];
        while (lv > 0) {
            --lv;
            ix >>= 1;
            iy >>= 1;
            if (accepted.count({lv, ix, iy})) ++rep.disjointness_violations;
        }
    }

    // (iv) 1 <= dist/diam <= 4 against the exact region distance
    rep.min_dist_over_diam = 1e300;
    rep.max_dist_over_diam = 0.0;
    for (const Cube& q : cubes) {
        double ratio = W.region_dist(q) / q.diameter();
        rep.min_dist_over_diam = std::min(rep.min_dist_over_diam, ratio);
        rep.max_dist_over_diam = std::max(rep.max_dist_over_diam, ratio);
        if (ratio < 1.0 - 1e-12 || ratio > 4.0 + 1e-12) ++rep.dist_ratio_violations;
    }

    // (v) neighbours differ by at most two levels
    for (const Cube& q : cubes) {
        for (const auto& [lv, idxs] : W.side_index()) {
            if (std::abs(lv - q.dyadic->level) <= 2) continue;
            for (size_t idx : W.level_range_query(lv, q, 1e-13)) {
                if (box_distance(q, cubes[idx]) <= 1e-13) ++rep.neighbor_ratio_violations;
            }
        }
    }

    // (vi) measured superposition of (6/5)Q at cube corners and centers
    for (const Cube& q : cubes) {
        std::vector<Vec> samples = {q.center};
        for (int c = 0; c < q.corner_count(); ++c) samples.push_back(q.corner(c));
        for (const Vec& p : samples) {
            int count = 0;
            for (const auto& [lv, idxs] : W.side_index()) {
                double side = W.side_at(lv);
                Cube probe(p, 1e-30);
                for (size_t idx : W.level_range_query(lv, probe, 0.11 * side)) {
                    if (cubes[idx].dilated(1.2).contains_closed(p)) ++count;
                }
            }
            rep.max_overlap_65 = std::max(rep.max_overlap_65, count);
        }
    }

    rep.uncovered_volume = W.uncovered_volume();
    rep.uncovered_fraction_of_bbox = W.uncovered_volume() / W.root().volume();
    return rep;
}

} // namespace zlab
