// Independent oracles and helpers for the test suite. These reimplement the
// questions the library answers using different algorithms (itinerary search
// instead of piece tracking, plain power sums instead of Horner, direct
// simulation instead of interval images) so that agreement is meaningful.
#pragma once

#include "betashadow/betashadow.hpp"

#include <random>
#include <vector>

namespace oracles {

using namespace betashadow;

// interval with explicit endpoint membership, exact when S is rational
template <class S>
struct EInt {
    S lo{}, hi{};
    bool lo_in = false, hi_in = false;
};

template <class S>
bool eempty(const EInt<S>& u)
{
    if (u.lo > u.hi)
        return true;
    if (u.lo == u.hi)
        return !(u.lo_in && u.hi_in);
    return false;
}

template <class S>
EInt<S> einter(const EInt<S>& a, const EInt<S>& b)
{
    EInt<S> r;
    if (a.lo > b.lo) {
        r.lo = a.lo;
        r.lo_in = a.lo_in;
    } else if (b.lo > a.lo) {
        r.lo = b.lo;
        r.lo_in = b.lo_in;
    } else {
        r.lo = a.lo;
        r.lo_in = a.lo_in && b.lo_in;
    }
    if (a.hi < b.hi) {
        r.hi = a.hi;
        r.hi_in = a.hi_in;
    } else if (b.hi < a.hi) {
        r.hi = b.hi;
        r.hi_in = b.hi_in;
    } else {
        r.hi = a.hi;
        r.hi_in = a.hi_in && b.hi_in;
    }
    return r;
}

template <class S>
EInt<S> eimage(const S& slope, const S& intercept, const EInt<S>& u)
{
    EInt<S> r;
    S a = S(slope * u.lo + intercept);
    S b = S(slope * u.hi + intercept);
    if (slope >= S(0)) {
        r = {a, b, u.lo_in, u.hi_in};
    } else {
        r = {b, a, u.hi_in, u.lo_in};
    }
    return r;
}

// branch domain under the side conventions: z_{j-1} belongs to branch j
// exactly when breakpoint j-1 points right, z_j belongs when j points left
template <class S>
EInt<S> branch_domain(const PiecewiseAffineMap<S>& map, std::size_t j)
{
    Interval<S> c = map.cell(j);
    EInt<S> d;
    d.lo = c.lo;
    d.hi = c.hi;
    d.lo_in = j == 0 ? true : map.side(j - 1) == Side::Right;
    d.hi_in = j + 1 == map.branch_count() ? true : map.side(j) == Side::Left;
    return d;
}

namespace detail {

template <class S>
bool itin_dfs(const PiecewiseAffineMap<S>& map, const std::vector<S>& pts, const S& eps,
              std::size_t i, const EInt<S>& at)
{
    if (eempty(at))
        return false;
    if (i + 1 == pts.size())
        return true;
    const EInt<S> box{S(0), S(1), true, true};
    for (std::size_t j = 0; j < map.branch_count(); ++j) {
        EInt<S> q = einter(at, branch_domain(map, j));
        if (eempty(q))
            continue;
        EInt<S> img = eimage(map.branch(j).slope, map.branch(j).intercept, q);
        EInt<S> win{S(pts[i + 1] - eps), S(pts[i + 1] + eps), false, false};
        EInt<S> nx = einter(einter(img, win), box);
        if (itin_dfs(map, pts, eps, i + 1, nx))
            return true;
    }
    return false;
}

} // namespace detail

// does any true orbit track the entries within eps (strict)? depth-first
// search over branch itineraries with interval pruning; exact for rationals
template <class S>
bool itinerary_shadow_exists(const PiecewiseAffineMap<S>& map, const std::vector<S>& pts,
                             const S& eps)
{
    if (pts.empty())
        return false;
    EInt<S> start{S(pts[0] - eps), S(pts[0] + eps), false, false};
    start = einter(start, EInt<S>{S(0), S(1), true, true});
    return detail::itin_dfs(map, pts, eps, std::size_t{0}, start);
}

// largest deviation of the true orbit of z from the given entries
template <class S>
S orbit_deviation(const PiecewiseAffineMap<S>& map, const S& z, const std::vector<S>& pts)
{
    S v = z;
    S worst = abs_val(S(v - pts[0]));
    for (std::size_t i = 1; i < pts.size(); ++i) {
        v = map.evaluate(v);
        S d = abs_val(S(v - pts[i]));
        if (d > worst)
            worst = d;
    }
    return worst;
}

inline double urand(std::mt19937_64& g, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

// random rational in [0,1] with a bounded denominator
inline rational rat_unit(std::mt19937_64& g, int qmax = 64)
{
    std::uniform_int_distribution<int> qd(2, qmax);
    int q = qd(g);
    std::uniform_int_distribution<int> pd(0, q);
    return rational(pd(g)) / rational(q);
}

// random rational beta-map parameters inside the admissible wedge
inline BetaParams<rational> rat_params(std::mt19937_64& g, int qmax = 32)
{
    std::uniform_int_distribution<int> qd(3, qmax);
    int q = qd(g);
    std::uniform_int_distribution<int> pd(1, q - 1);
    rational beta = rational(1) + rational(pd(g)) / rational(q); // (1, 2)
    rational room = rational(2) - beta;
    int r = qd(g);
    rational alpha = room * rational(pd(g) % r) / rational(r);
    return {beta, alpha};
}

} // namespace oracles
