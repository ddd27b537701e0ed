// Transitivity detection via invariant hulls.
//
// A map is transitive when the iterated images of every open interval
// eventually cover (0,1). We operationalize this: seed a small window,
// accumulate V <- V u f(V) until the union stops moving, and look at the
// result. A stabilized union covering (tol, 1-tol) certifies the window;
// a stabilized union whose closure omits an interval wider than 2*tol is a
// definite counterexample. Seeds are placed around every breakpoint and
// every cell midpoint.
#pragma once

#include "shadowing.hpp"

namespace betashadow {

struct HullOptions {
    std::size_t max_rounds = 10000;
};

template <class S>
S default_merge_tol()
{
    return scalar_traits<S>::is_exact ? S(0) : S(1e-12);
}

template <class S>
S default_transitivity_tol()
{
    return scalar_traits<S>::from_double(1e-9);
}

template <class S>
IntervalUnion<S> invariant_hull(const PiecewiseAffineMap<S>& map, const IntervalUnion<S>& u,
                                std::size_t max_rounds = 10000)
{
    if (u.empty())
        fail(errc::invalid_params, "invariant hull of an empty union");
    S merge_tol = default_merge_tol<S>();
    S stab_tol = merge_tol;
    IntervalUnion<S> v = normalize(std::vector<Interval<S>>(u.parts), merge_tol);
    for (std::size_t round = 0; round < max_rounds; ++round) {
        IntervalUnion<S> w = merge_unions(v, forward_image(map, v, merge_tol), merge_tol);
        if (same_union(w, v, stab_tol))
            return w;
        v = std::move(w);
    }
    fail(errc::no_stabilization,
         "invariant hull did not stabilize within " + std::to_string(max_rounds) + " rounds");
}

// true / false / Uncertain, with tol controlling both the seed window width
// and how much slack the covering test allows near 0 and 1
template <class S>
Ternary is_transitive(const PiecewiseAffineMap<S>& map, const S& tol,
                      const HullOptions& opts = {})
{
    std::vector<S> centers;
    for (const S& z : map.breakpoints())
        centers.push_back(z);
    for (std::size_t j = 0; j < map.branch_count(); ++j)
        centers.push_back(map.cell(j).mid());

    bool all_cover = true;
    bool any_uncertain = false;
    for (const S& c : centers) {
        Interval<S> seed{std::max(S(0), S(c - tol)), std::min(S(1), S(c + tol))};
        IntervalUnion<S> hull = invariant_hull(map, IntervalUnion<S>{{seed}}, opts.max_rounds);

        bool covers = false;
        for (const auto& comp : hull.parts)
            if (comp.lo <= tol && comp.hi >= S(1) - tol) {
                covers = true;
                break;
            }
        if (covers)
            continue;
        all_cover = false;

        // widest gap left uncovered by the closure of the hull
        S worst(0);
        S cursor(0);
        for (const auto& comp : hull.parts) {
            if (comp.lo - cursor > worst)
                worst = comp.lo - cursor;
            cursor = std::max(cursor, comp.hi);
        }
        if (S(1) - cursor > worst)
            worst = S(1) - cursor;
        if (worst > tol + tol)
            return Ternary::No; // an interval this wide is never reached
        any_uncertain = true;
    }
    if (all_cover)
        return Ternary::Yes;
    return any_uncertain ? Ternary::Uncertain : Ternary::No;
}

template <class S>
Ternary is_transitive(const PiecewiseAffineMap<S>& map)
{
    return is_transitive(map, default_transitivity_tol<S>());
}

} // namespace betashadow
