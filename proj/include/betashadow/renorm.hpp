// Renormalization of non-transitive beta-like maps.
//
// When T_{beta,alpha} fails transitivity, the orbit of the breakpoint c is
// trapped in a proper invariant region. Inside it sits a return window J
// containing c: the first-return map R = T^n restricted to J is, after the
// affine change of coordinates h mapping J onto (0,1), again a map of the
// same two-branch family with parameters (beta^n, alpha_hat). renormalize()
// locates J, computes n and the renormalized parameters, and measures how
// well T^n(J) = J and h o T^n = T_hat o h actually hold. If the renormalized
// map is still not transitive the analysis recurses and the composite window
// is re-verified against the original map from scratch.
//
// theorem_b_witness() then defeats shadowing on a non-transitive map by
// building a witness for the renormalized map in hat coordinates, splicing
// in a detour through the middle of the hat interval, pulling the sequence
// back through h, and interleaving true iterates so the lifted sequence is a
// delta-pseudo-orbit of T itself.
#pragma once

#include "witness.hpp"

#include <string>

namespace betashadow {

template <class S>
struct RenormalizationData {
    Interval<S> j;              // return window, open, contains the breakpoint
    std::size_t n = 0;          // return time of J
    BetaParams<S> renormalized; // (beta^n, alpha_hat)
    Affine<S> h;                // conjugacy: h(x) = (x - j.lo)/|J|
    S invariance_residual{};    // defect of T^n(J) = J (endpoint + gap error)
    S conjugacy_residual{};     // max |h(T^n(x)) - T_hat(h(x))| over the grid
    std::size_t depth = 1;      // number of renormalization steps composed
    std::string warning;        // non-empty for fragile windows (n = 2)
};

struct RenormOptions {
    std::size_t depth_cap = 5;
    std::size_t grid = 1000;       // conjugacy check resolution
    double residual_tol = 1e-9;    // enforced bound on both residuals
    std::size_t return_cap = 4096; // max forward steps when searching for n
    std::size_t hull_rounds = 10000;
};

namespace detail {

template <class S>
S iter_n(const PiecewiseAffineMap<S>& map, S u, std::size_t steps)
{
    for (std::size_t i = 0; i < steps; ++i)
        u = map.evaluate(u);
    return u;
}

// Iterate a one-sided limit value: when an iterate lands exactly on a
// breakpoint, the branch is chosen by the approach side rather than the
// map's stored side convention. Negative slopes flip the approach side.
template <class S>
S iter_limit(const PiecewiseAffineMap<S>& map, S u, std::size_t steps, bool from_below)
{
    for (std::size_t i = 0; i < steps; ++i) {
        std::size_t j = 0;
        bool hit = false;
        for (std::size_t m = 0; m < map.breakpoint_count(); ++m)
            if (u == map.breakpoints()[m]) {
                j = from_below ? m : m + 1;
                hit = true;
                break;
            }
        if (!hit)
            j = map.branch_index_at(u);
        bool neg = map.branch(j).slope < S(0);
        u = std::min(S(1), std::max(S(0), map.branch(j)(u)));
        if (neg)
            from_below = !from_below;
    }
    return u;
}

template <class S>
struct VerifiedWindow {
    BetaParams<S> renormalized;
    S invariance_residual;
    S conjugacy_residual;
};

// Ground-truth verification of a candidate window against the original map:
// early-return disjointness, invariance of J under T^n, and the conjugacy
// defect on a midpoint grid. Throws when any residual exceeds the bound.
template <class S>
VerifiedWindow<S> verify_window(const PiecewiseAffineMap<S>& map, const Interval<S>& j,
                                std::size_t n, const S& c, const RenormOptions& opts)
{
    S tol = scalar_traits<S>::from_double(opts.residual_tol);
    S width = j.width();
    if (!yes(gt(width, S(0))))
        fail(errc::verification_failed, "degenerate return window");

    S merge_tol = default_merge_tol<S>();
    IntervalUnion<S> u{{j}};
    for (std::size_t i = 1; i <= n; ++i) {
        u = forward_image(map, u, merge_tol);
        if (i == n)
            break;
        for (const auto& comp : u.parts) {
            S overlap = std::min(comp.hi, j.hi) - std::max(comp.lo, j.lo);
            if (overlap > tol)
                fail(errc::verification_failed,
                     "window re-enters itself before the stated return time");
        }
    }
    if (u.empty())
        fail(errc::verification_failed, "window image collapsed");

    // endpoint drift plus any interior gap of the n-step image
    S inv = abs_val(u.parts.front().lo - j.lo);
    inv = std::max(inv, abs_val(u.parts.back().hi - j.hi));
    for (std::size_t i = 1; i < u.parts.size(); ++i)
        inv = std::max(inv, S(u.parts[i].lo - u.parts[i - 1].hi));
    if (inv > tol)
        fail(errc::verification_failed,
             "window is not invariant under the return map: residual " +
                 scalar_traits<S>::to_decimal(inv));

    S betan(1);
    {
        // slopes multiply along the return; for the two-branch family this
        // is beta^n on either side of the breakpoint
        S beta = map.branch(0).slope;
        for (std::size_t i = 0; i < n; ++i)
            betan = betan * beta;
    }
    if (!yes(gt(betan, S(1))) || yes(gt(betan, S(2))))
        fail(errc::verification_failed,
             "renormalized slope " + scalar_traits<S>::to_decimal(betan) +
                 " falls outside (1,2]");

    Affine<S> h{S(1) / width, S(-j.lo / width)};
    S xm = midpoint(j.lo, c);
    S ahat = h(iter_n(map, xm, n)) - betan * h(xm);
    S ahat_max = S(2) - betan;
    if (ahat < S(0)) {
        if (S(0) - ahat > tol)
            fail(errc::verification_failed, "renormalized offset below 0");
        ahat = S(0);
    }
    if (ahat > ahat_max) {
        if (ahat - ahat_max > tol)
            fail(errc::verification_failed, "renormalized offset above 2 - beta^n");
        ahat = ahat_max;
    }
    BetaParams<S> rp{betan, ahat};
    PiecewiseAffineMap<S> rmap = beta_map(rp);

    S conj(0);
    S g = S(static_cast<long long>(opts.grid));
    for (std::size_t i = 0; i < opts.grid; ++i) {
        S x = j.lo + (S(static_cast<long long>(i)) + S(1) / S(2)) * width / g;
        S xh = std::min(S(1), std::max(S(0), h(x)));
        S d = abs_val(h(iter_n(map, x, n)) - rmap.evaluate(xh));
        conj = std::max(conj, d);
    }
    if (conj > tol)
        fail(errc::verification_failed,
             "conjugacy defect " + scalar_traits<S>::to_decimal(conj) + " exceeds tolerance");

    return VerifiedWindow<S>{rp, inv, conj};
}

template <class S>
RenormalizationData<S> renormalize_impl(const BetaParams<S>& params, const RenormOptions& opts,
                                        std::size_t level)
{
    validate_beta_params(params);
    PiecewiseAffineMap<S> map = beta_map(params);
    const S c = map.breakpoints()[0];

    Ternary t = is_transitive(map);
    if (t == Ternary::Yes)
        fail(errc::is_transitive, "map is transitive; there is nothing to renormalize");
    if (t == Ternary::Uncertain)
        fail(errc::verification_failed, "transitivity is undecided at the working tolerance");

    // hull of a small window at the breakpoint; its component through c is
    // the first approximation of the return window
    S tol = default_transitivity_tol<S>();
    Interval<S> seed{std::max(S(0), S(c - tol)), std::min(S(1), S(c + tol))};
    IntervalUnion<S> hull =
        invariant_hull(map, IntervalUnion<S>{{seed}}, opts.hull_rounds);
    const Interval<S>* j0 = nullptr;
    for (const auto& comp : hull.parts)
        if (comp.contains(c)) {
            j0 = &comp;
            break;
        }
    if (!j0)
        fail(errc::verification_failed, "breakpoint fell on a hull component boundary");

    S merge_tol = default_merge_tol<S>();
    std::size_t n = 0;
    {
        IntervalUnion<S> u{{*j0}};
        for (std::size_t i = 1; i <= opts.return_cap; ++i) {
            u = forward_image(map, u, merge_tol);
            bool meets = false;
            for (const auto& comp : u.parts) {
                S overlap = std::min(comp.hi, j0->hi) - std::max(comp.lo, j0->lo);
                if (overlap > merge_tol) {
                    meets = true;
                    break;
                }
            }
            if (meets) {
                n = i;
                break;
            }
        }
    }
    if (n == 0)
        fail(errc::no_stabilization,
             "window never returned within " + std::to_string(opts.return_cap) + " steps");

    // sharpen the window: the return maps c+ to the orbit of T(c) and the
    // left limit at c to the orbit of the left limit 1, so the exact window
    // endpoints are the (n-1)-step images of T(c) and 1 as one-sided limits
    Interval<S> j{iter_limit(map, map.evaluate(c), n - 1, false),
                  iter_limit(map, S(1), n - 1, true)};
    if (!yes(lt(j.lo, c)) || !yes(lt(c, j.hi)))
        fail(errc::verification_failed, "refined window does not straddle the breakpoint");

    auto ver = verify_window(map, j, n, c, opts);

    RenormalizationData<S> data;
    data.j = j;
    data.n = n;
    data.renormalized = ver.renormalized;
    data.h = Affine<S>{S(1) / j.width(), S(-j.lo / j.width())};
    data.invariance_residual = ver.invariance_residual;
    data.conjugacy_residual = ver.conjugacy_residual;
    data.depth = 1;
    if (n == 2)
        data.warning = "return time 2: window endpoints hug the orbit of the boundary; "
                       "residuals are the only safeguard here";

    // if the renormalized map is again definitely non-transitive, go deeper
    // and splice the windows together, then re-verify the composite window
    // directly against the original map
    Ternary inner_t = is_transitive(beta_map(data.renormalized));
    if (inner_t == Ternary::No) {
        if (level >= opts.depth_cap)
            fail(errc::depth_exceeded,
                 "renormalization nested deeper than " + std::to_string(opts.depth_cap));
        RenormalizationData<S> inner = renormalize_impl(data.renormalized, opts, level + 1);
        Interval<S> jt{S(j.lo + j.width() * inner.j.lo), S(j.lo + j.width() * inner.j.hi)};
        std::size_t nt = n * inner.n;
        auto cver = verify_window(map, jt, nt, c, opts);

        RenormalizationData<S> total;
        total.j = jt;
        total.n = nt;
        total.renormalized = cver.renormalized;
        total.h = Affine<S>{S(1) / jt.width(), S(-jt.lo / jt.width())};
        total.invariance_residual = cver.invariance_residual;
        total.conjugacy_residual = cver.conjugacy_residual;
        total.depth = inner.depth + 1;
        total.warning = !data.warning.empty() ? data.warning : inner.warning;
        return total;
    }
    return data;
}

} // namespace detail

template <class S>
RenormalizationData<S> renormalize(const BetaParams<S>& params, const RenormOptions& opts = {})
{
    return detail::renormalize_impl(params, opts, 1);
}

// smallest i >= 1 with T^i(x) back in the open window
template <class S>
std::size_t first_return_time(const PiecewiseAffineMap<S>& map, const S& x, const Interval<S>& j,
                              std::size_t cap = 100000)
{
    S v = x;
    for (std::size_t i = 1; i <= cap; ++i) {
        v = map.evaluate(v);
        if (j.contains(v))
            return i;
    }
    fail(errc::not_found, "orbit did not return to the window within the cap");
}

// Interleave n-1 true iterates between consecutive entries of a pseudo-orbit
// for the return map, producing a pseudo-orbit of the base map at the same
// delta. Entries must lie inside the (closed) window.
template <class S>
PseudoOrbit<S> lift_pseudo_orbit(const BetaParams<S>& params, const RenormalizationData<S>& data,
                                 const PseudoOrbit<S>& inner)
{
    PiecewiseAffineMap<S> map = beta_map(params);
    if (inner.points.empty())
        fail(errc::empty_sequence, "nothing to lift");
    for (const S& x : inner.points)
        if (x < data.j.lo || x > data.j.hi)
            fail(errc::point_outside_j, "pseudo-orbit entry lies outside the return window");

    std::vector<S> out;
    out.reserve((inner.points.size() - 1) * data.n + 1);
    for (std::size_t i = 0; i + 1 < inner.points.size(); ++i) {
        std::vector<S> block;
        block.reserve(data.n);
        block.push_back(inner.points[i]);
        for (std::size_t l = 1; l < data.n; ++l)
            block.push_back(map.evaluate(block.back()));

        // Entries conjugate to a one-sided hit of the return-map breakpoint
        // pass exactly through a breakpoint of the base map mid-block, and
        // in floating point the chain can land on the wrong side of it. That
        // shows up as the block exit missing the next entry by a full jump;
        // flip the step closest to a breakpoint and replay the tail.
        S exit = map.evaluate(block.back());
        S miss = abs_val(S(exit - inner.points[i + 1]));
        if (!yes(lt(miss, inner.delta)) && !scalar_traits<S>::is_exact) {
            std::vector<S> flipped = block;
            std::size_t lstar = 0;
            S best{};
            bool first = true;
            S znear{};
            for (std::size_t l = 0; l < flipped.size(); ++l)
                for (const S& z : map.breakpoints()) {
                    S d = abs_val(S(flipped[l] - z));
                    if (first || d < best) {
                        first = false;
                        best = d;
                        lstar = l;
                        znear = z;
                    }
                }
            flipped[lstar] = flipped[lstar] < znear
                                 ? znear
                                 : S(std::nextafter(scalar_traits<S>::to_double(znear), 0.0));
            for (std::size_t l = lstar + 1; l < flipped.size(); ++l)
                flipped[l] = map.evaluate(flipped[l - 1]);
            S exit2 = map.evaluate(flipped.back());
            if (abs_val(S(exit2 - inner.points[i + 1])) < miss)
                block = std::move(flipped);
        }
        out.insert(out.end(), block.begin(), block.end());
    }
    out.push_back(inner.points.back());
    return PseudoOrbit<S>{std::move(out), inner.delta};
}

// Witness against shadowing for a (possibly non-transitive) two-branch map.
// Transitive maps delegate to the direct construction. Otherwise build the
// witness for the renormalized map, extend it with a round trip through the
// midpoint of the hat interval, pull back through the conjugacy and lift.
template <class S>
WitnessTrace<S> theorem_b_witness(const BetaParams<S>& params, const S& eps,
                                  const WitnessOptions<S>& wopts = {},
                                  const RenormOptions& ropts = {})
{
    validate_beta_params(params);
    PiecewiseAffineMap<S> map = beta_map(params);

    Ternary t = is_transitive(map);
    if (t == Ternary::Yes)
        return theorem_a_witness(map, eps, wopts);
    if (t == Ternary::Uncertain)
        fail(errc::verification_failed, "transitivity is undecided at the working tolerance");

    RenormalizationData<S> data = renormalize(params, ropts);
    S width = data.j.width();
    if (!yes(lt(eps, width / S(2))))
        fail(errc::epsilon_too_large,
             "epsilon must be below half the window width " +
                 scalar_traits<S>::to_decimal(width));

    PiecewiseAffineMap<S> rmap = beta_map(data.renormalized);
    S eps_hat = eps / width;
    WitnessOptions<S> hopts = wopts;
    if (wopts.delta)
        hopts.delta = S(*wopts.delta / width);
    WitnessTrace<S> inner = theorem_a_witness(rmap, eps_hat, hopts);

    const std::vector<S>& base = inner.pseudo.points;
    S dhat = inner.pseudo.delta;
    S half = dhat / S(2);
    S a_star = S(1) / S(2);

    // climb from just after the block's end up to the midpoint...
    S exit1 = rmap.evaluate(base.back());
    Interval<S> win1 = intersect(Interval<S>{S(exit1 - half), S(exit1 + half)},
                                 Interval<S>{S(0), S(1)});
    auto up = find_preimage_in(rmap, a_star, win1, wopts.max_depth, wopts.node_budget);
    // ...and from just after the midpoint back down to the block's start
    S exit2 = rmap.evaluate(a_star);
    Interval<S> win2 = intersect(Interval<S>{S(exit2 - half), S(exit2 + half)},
                                 Interval<S>{S(0), S(1)});
    auto down = find_preimage_in(rmap, base.front(), win2, wopts.max_depth, wopts.node_budget);

    std::vector<S> hat;
    hat.reserve(base.size() * 2 + up.m + down.m + 1);
    hat.insert(hat.end(), base.begin(), base.end());
    detail::append_iterates(rmap, up.y, up.m, hat);
    hat.push_back(a_star);
    detail::append_iterates(rmap, down.y, down.m, hat);
    hat.insert(hat.end(), base.begin(), base.end());

    // pull back to the window and interleave true iterates of the base map
    std::vector<S> pulled;
    pulled.reserve(hat.size());
    for (const S& xh : hat)
        pulled.push_back(std::min(data.j.hi, std::max(data.j.lo, S(data.j.lo + width * xh))));
    S delta_j = dhat * width;
    PseudoOrbit<S> lifted = lift_pseudo_orbit(params, data, PseudoOrbit<S>{pulled, delta_j});
    detail::certify_gaps(map, lifted);

    auto rep = check_shadowing(map, lifted, eps, ShadowOptions{wopts.max_pieces});

    WitnessTrace<S> tr;
    tr.pseudo = std::move(lifted);
    tr.epsilon = eps;
    tr.case_tag = WitnessCase::TheoremB;
    tr.k = 0;
    tr.y = data.j.lo + width * up.y;
    tr.m = up.m;
    tr.orientation_m = inner.orientation_m;
    tr.w = S(data.j.lo + width * down.y);
    tr.l = down.m;
    tr.orientation_l = 1;
    tr.reflected = inner.reflected;
    tr.certified = rep.status == ShadowStatus::NotShadowed;
    tr.strategy = "lift+" + inner.strategy;
    return tr;
}

} // namespace betashadow
