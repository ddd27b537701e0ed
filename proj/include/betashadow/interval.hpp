// Open intervals, finite unions of them, and one-dimensional affine maps.
// These are the workhorses of the shadowing checker (constraint sets) and
// of the invariant-hull computation (forward images of open sets).
#pragma once

#include <vector>

#include "scalar.hpp"

namespace betashadow {

// Open interval (lo, hi); empty whenever hi <= lo.
template <class S>
struct Interval {
    S lo{0};
    S hi{0};

    S width() const { return hi - lo; }
    bool empty() const { return !(lo < hi); }
    bool contains(const S& x) const { return lo < x && x < hi; }
    S mid() const { return midpoint(lo, hi); }
};

template <class S>
Interval<S> intersect(const Interval<S>& a, const Interval<S>& b)
{
    return Interval<S>{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

// x + ax + b business: y = a*x + b with a != 0.
template <class S>
struct Affine {
    S a{1};
    S b{0};

    S operator()(const S& x) const { return a * x + b; }
    S invert(const S& y) const { return (y - b) / a; }

    // composition: (this o g)(x) = a*(g.a*x + g.b) + b
    Affine after(const Affine& g) const { return Affine{a * g.a, a * g.b + b}; }

    Interval<S> image(const Interval<S>& u) const
    {
        S p = (*this)(u.lo);
        S q = (*this)(u.hi);
        return a > S(0) ? Interval<S>{p, q} : Interval<S>{q, p};
    }
};

// Sorted, pairwise disjoint open intervals. Kept normalized by the helpers
// below; components with a gap at or below merge_tol are fused (this
// deliberately paints over isolated breakpoints sitting between two open
// images: the hull computation wants density, not measure-zero holes).
template <class S>
struct IntervalUnion {
    std::vector<Interval<S>> parts;

    bool empty() const { return parts.empty(); }
};

template <class S>
IntervalUnion<S> normalize(std::vector<Interval<S>> parts, const S& merge_tol)
{
    std::vector<Interval<S>> in;
    in.reserve(parts.size());
    for (auto& p : parts)
        if (p.lo < p.hi)
            in.push_back(p);
    std::sort(in.begin(), in.end(),
              [](const Interval<S>& x, const Interval<S>& y) { return x.lo < y.lo; });

    IntervalUnion<S> out;
    for (auto& p : in) {
        if (!out.parts.empty() && p.lo <= out.parts.back().hi + merge_tol) {
            if (out.parts.back().hi < p.hi)
                out.parts.back().hi = p.hi;
        } else {
            out.parts.push_back(p);
        }
    }
    return out;
}

template <class S>
IntervalUnion<S> merge_unions(const IntervalUnion<S>& a, const IntervalUnion<S>& b,
                              const S& merge_tol)
{
    std::vector<Interval<S>> parts = a.parts;
    parts.insert(parts.end(), b.parts.begin(), b.parts.end());
    return normalize(std::move(parts), merge_tol);
}

// componentwise equality up to tol (exact when tol == 0)
template <class S>
bool same_union(const IntervalUnion<S>& a, const IntervalUnion<S>& b, const S& tol)
{
    if (a.parts.size() != b.parts.size())
        return false;
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
        if (abs_val(S(a.parts[i].lo - b.parts[i].lo)) > tol)
            return false;
        if (abs_val(S(a.parts[i].hi - b.parts[i].hi)) > tol)
            return false;
    }
    return true;
}

} // namespace betashadow
