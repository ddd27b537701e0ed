// Orbits, pseudo-orbits, and inverse-branch search.
//
// A delta-pseudo-orbit is a finite sequence x_0..x_L with
// |f(x_i) - x_{i+1}| < delta at every step (strict). validate_pseudo_orbit
// measures the worst gap; find_preimage_in runs a breadth-first search over
// inverse branches to land a preimage of a target point inside a window,
// which is how the witness constructions realize "by transitivity there
// exists y ...".
#pragma once

#include <set>
#include <vector>

#include "maps.hpp"

namespace betashadow {

template <class S>
struct Orbit {
    std::vector<S> points;
};

template <class S>
struct PseudoOrbit {
    std::vector<S> points;
    S delta{0};
};

template <class S>
struct GapReport {
    S max_gap{0};
    std::size_t argmax_index{0};
    Ternary valid{Ternary::Yes};
};

template <class S>
Orbit<S> iterate(const PiecewiseAffineMap<S>& map, const S& x, std::size_t n)
{
    Orbit<S> orbit;
    orbit.points.reserve(n + 1);
    S y = x;
    orbit.points.push_back(y);
    for (std::size_t i = 0; i < n; ++i) {
        y = map.evaluate(y);
        orbit.points.push_back(y);
    }
    return orbit;
}

template <class S>
GapReport<S> validate_pseudo_orbit(const PiecewiseAffineMap<S>& map,
                                   const std::vector<S>& points, const S& delta)
{
    if (points.size() < 2)
        fail(errc::empty_sequence, "need at least two points to validate");
    GapReport<S> report;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        S gap = abs_val(S(map.evaluate(points[i]) - points[i + 1]));
        if (gap > report.max_gap) {
            report.max_gap = gap;
            report.argmax_index = i;
        }
    }
    report.valid = lt(report.max_gap, delta);
    return report;
}

// all q with evaluate(q) = p, i.e. inverse images through each branch whose
// closed cell contains the algebraic preimage AND whose side convention
// actually selects that branch at q; sorted ascending, deduplicated.
// In binary64 the re-evaluation check allows a guard-sized defect, since
// dividing and re-multiplying rarely round-trips bit for bit; exact mode
// demands equality.
template <class S>
std::vector<S> preimages_of(const PiecewiseAffineMap<S>& map, const S& p)
{
    if (p < S(0) || p > S(1))
        fail(errc::out_of_domain, "point outside [0,1]");
    std::vector<S> out;
    for (std::size_t j = 0; j < map.branch_count(); ++j) {
        const auto& br = map.branches()[j];
        S q = (p - br.intercept) / br.slope;
        Interval<S> c = map.cell(j);
        if (q < c.lo || q > c.hi)
            continue;
        if (q < S(0) || q > S(1))
            continue;
        S back = map.evaluate(q); // sides convention decides closure points
        bool ok = scalar_traits<S>::is_exact
                      ? back == p
                      : abs_val(S(back - p)) <= scalar_traits<S>::guard(back, p);
        if (ok)
            out.push_back(q);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

template <class S>
struct PreimageHit {
    S y{0};
    std::size_t m{0};
};

// Smallest m >= 1 with evaluate^m(y) = p and y inside the open window;
// ties broken by smallest y. Breadth-first over inverse branches with a
// node budget so degenerate searches stop instead of flooding memory.
template <class S>
PreimageHit<S> find_preimage_in(const PiecewiseAffineMap<S>& map, const S& p,
                                const Interval<S>& window, std::size_t max_depth = 64,
                                std::size_t node_budget = 4000000)
{
    if (p < S(0) || p > S(1))
        fail(errc::out_of_domain, "target outside [0,1]");
    if (window.empty())
        fail(errc::invalid_params, "empty preimage window");

    std::vector<S> layer{p};
    std::size_t visited = 1;
    for (std::size_t depth = 1; depth <= max_depth; ++depth) {
        std::set<S> next;
        for (const S& q : layer)
            for (const S& r : preimages_of(map, q))
                next.insert(r);
        visited += next.size();
        for (const S& r : next)
            if (window.contains(r))
                return PreimageHit<S>{r, depth}; // set iterates ascending
        if (next.empty() || visited > node_budget)
            break;
        layer.assign(next.begin(), next.end());
    }
    fail(errc::not_found, "no preimage of target found in window (depth/budget cap)");
}

} // namespace betashadow
