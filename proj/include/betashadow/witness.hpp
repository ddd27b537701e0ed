// Constructions of finite pseudo-orbits that defeat epsilon-shadowing.
//
// Two strategies are implemented.
//
// "climb": start at a breakpoint z_k, jump down to a preimage y of z_k (or of
// a point just below the gap image) so that the pseudo-orbit climbs back to
// z_k along true iterates, then apply one final nudge of size p = delta/2 to
// the side of z_k chosen by the orientation of the climb. Any orbit that
// tracks the sequence within epsilon is forced through contradictory branch
// choices at the breakpoint. This is the shape that works when epsilon is
// small against both the cell widths and the jump sizes.
//
// "drag": start at a breakpoint z_k and enter its right-branch image exactly.
// Every orbit that shadows the first two entries now sits in a band whose
// lower edge is pinned to the true orbit of f(z_k). Each later entry is
// placed delta/2 below the image of the previous entry, so the admissible
// window slides down relative to the pin while the offset between them is
// amplified by the branch slope. The band [pin, entry + eps) loses width at
// a geometric rate and empties after about log(eps/delta)/log(slope) steps.
// This shape needs the jump margin and orientation-preserving branches but
// no bound relating epsilon to cell widths, and it does not depend on the
// recurrence of any orbit. It stalls only when the pinned orbit leaves no
// room below it (f(z_k) = 0 with 0 fixed, say), and then reports nothing.
#pragma once

#include "orbits.hpp"
#include "shadowing.hpp"
#include "transitivity.hpp"

#include <optional>
#include <string>

namespace betashadow {

enum class WitnessCase { Case1, Case2, TheoremB };

inline const char* witness_case_name(WitnessCase c)
{
    switch (c) {
    case WitnessCase::Case1: return "case1";
    case WitnessCase::Case2: return "case2";
    case WitnessCase::TheoremB: return "theorem_b";
    }
    return "?";
}

template <class S>
struct WitnessMargins {
    S eta;         // admissible perturbation scale; valid deltas are (0, eta)
    S epsilon_max; // sup of epsilons this construction shape supports
    S min_cell;
    S min_jump;
};

template <class S>
struct WitnessTrace {
    PseudoOrbit<S> pseudo;
    S epsilon;
    WitnessCase case_tag = WitnessCase::Case1;
    std::size_t k = 0; // breakpoint index the construction pivots on
    S y{};             // first climb start (drag: the first entry after z_k)
    std::size_t m = 0; // first climb length (drag: dragged steps)
    int orientation_m = 1;
    std::optional<S> w;          // second climb start (case 2)
    std::optional<std::size_t> l; // second climb length (case 2)
    std::optional<int> orientation_l;
    bool reflected = false; // construction ran on the reflected map
    bool certified = false; // check_shadowing confirmed NotShadowed
    std::string strategy;   // "climb" or "drag"
};

template <class S>
struct WitnessOptions {
    std::optional<S> delta;      // default: eta/2 from the margin analysis
    std::size_t max_depth = 64;  // preimage search depth cap
    std::size_t node_budget = 4000000;
    std::size_t drag_budget = 0; // 0: scalar-specific default
    std::size_t max_pieces = 100000;
};

namespace detail {

// The climb construction needs room for a window of width 2*epsilon around
// every entry to meet at most one breakpoint, and the jump at z_k must not
// be absorbed by slope * epsilon stretching. Case 1 additionally needs the
// left limit at z_k to sit above the perturbation scale.
template <class S>
void check_jump_margin(const PiecewiseAffineMap<S>& map, const S& eps)
{
    S need = (S(1) + map.max_abs_slope()) * eps;
    if (!yes(gt(map.min_jump(), need)))
        fail(errc::epsilon_too_large,
             "epsilon too large: smallest jump " + scalar_traits<S>::to_decimal(map.min_jump()) +
                 " must exceed (1+max|slope|)*epsilon = " +
                 scalar_traits<S>::to_decimal(need));
}

} // namespace detail

template <class S>
WitnessMargins<S> witness_margins(const PiecewiseAffineMap<S>& map, std::size_t k, const S& eps)
{
    if (k >= map.breakpoint_count())
        fail(errc::index_out_of_range, "breakpoint index out of range");
    if (map.side(k) != Side::Right)
        fail(errc::wrong_case, "construction requires the breakpoint to take its right branch");
    if (!yes(gt(eps, S(0))))
        fail(errc::invalid_params, "epsilon must be positive");

    S min_cell = map.min_cell_width();
    S min_jump = map.min_jump();
    S max_s = map.max_abs_slope();
    S eps_max = std::min(min_cell, S(min_jump / (S(1) + max_s)));

    if (!yes(lt(eps, min_cell)))
        fail(errc::epsilon_too_large,
             "epsilon too large: must be below the smallest cell width " +
                 scalar_traits<S>::to_decimal(min_cell));
    detail::check_jump_margin(map, eps);

    S fz = map.evaluate(map.breakpoints()[k]);
    bool case1 = yes(gt(fz, S(0)));

    S eta = std::min(eps, S(min_cell - eps));
    if (case1) {
        auto lim = map.one_sided_limits(k);
        S fminus = lim.first;
        if (!yes(gt(fminus, S(0))))
            fail(errc::wrong_case, "left limit at the breakpoint vanishes; no room below it");
        eta = std::min(eta, fminus);
    }
    eta = eta / S(2);
    return WitnessMargins<S>{eta, eps_max, min_cell, min_jump};
}

namespace detail {

template <class S>
void append_iterates(const PiecewiseAffineMap<S>& map, const S& start, std::size_t count,
                     std::vector<S>& out)
{
    // start, f(start), ..., f^{count-1}(start)
    S v = start;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(v);
        v = map.evaluate(v);
    }
}

template <class S>
void certify_gaps(const PiecewiseAffineMap<S>& map, const PseudoOrbit<S>& po)
{
    auto rep = validate_pseudo_orbit(map, po.points, po.delta);
    if (!yes(rep.valid))
        fail(errc::verification_failed,
             "constructed sequence is not a valid pseudo-orbit: max gap " +
                 scalar_traits<S>::to_decimal(rep.max_gap) + " vs delta " +
                 scalar_traits<S>::to_decimal(po.delta));
}

} // namespace detail

// Gap image strictly positive at z_k: climb into (f(z_k)-delta, f(z_k)),
// then nudge past z_k against the climb orientation.
template <class S>
WitnessTrace<S> case1_witness(const PiecewiseAffineMap<S>& map, std::size_t k, const S& eps,
                              const S& delta, const WitnessOptions<S>& opts = {})
{
    auto margins = witness_margins(map, k, eps);
    const S& zk = map.breakpoints()[k];
    S fz = map.evaluate(zk);
    if (!yes(gt(fz, S(0))))
        fail(errc::wrong_case, "breakpoint image is zero; use the zero-image construction");
    if (!yes(gt(delta, S(0))) || !yes(lt(delta, margins.eta)))
        fail(errc::invalid_params, "delta must lie in (0, eta)");

    Interval<S> window{std::max(S(0), S(fz - delta)), fz};
    auto hit = find_preimage_in(map, zk, window, opts.max_depth, opts.node_budget);

    int om = map.orientation(hit.m, hit.y);
    S p = delta / S(2);
    S pert = om < 0 ? S(zk + p) : S(zk - p);

    std::vector<S> pts;
    pts.push_back(zk);
    detail::append_iterates(map, hit.y, hit.m, pts);
    pts.push_back(pert);
    pts.push_back(map.evaluate(pert));

    WitnessTrace<S> tr;
    tr.pseudo = PseudoOrbit<S>{std::move(pts), delta};
    tr.epsilon = eps;
    tr.case_tag = WitnessCase::Case1;
    tr.k = k;
    tr.y = hit.y;
    tr.m = hit.m;
    tr.orientation_m = om;
    tr.strategy = "climb";
    detail::certify_gaps(map, tr.pseudo);
    return tr;
}

// Breakpoint image zero: climb out of (0, delta) back to z_k, fall to zero
// again, climb once more from a sub-window chosen by the first climb's
// orientation, then nudge. The two climbs force the combined orientation.
template <class S>
WitnessTrace<S> case2_witness(const PiecewiseAffineMap<S>& map, std::size_t k, const S& eps,
                              const S& delta, const WitnessOptions<S>& opts = {})
{
    auto margins = witness_margins(map, k, eps);
    const S& zk = map.breakpoints()[k];
    S fz = map.evaluate(zk);
    if (yes(gt(fz, S(0))))
        fail(errc::wrong_case, "breakpoint image is positive; use the positive-image construction");
    if (!yes(gt(delta, S(0))) || !yes(lt(delta, margins.eta)))
        fail(errc::invalid_params, "delta must lie in (0, eta)");

    Interval<S> wy{S(0), delta};
    auto first = find_preimage_in(map, zk, wy, opts.max_depth, opts.node_budget);
    int om = map.orientation(first.m, first.y);

    // second climb starts below or above y so that landing epsilon-left of y
    // (resp. right) keeps the final branch decision pinned
    Interval<S> ww = om < 0 ? Interval<S>{first.y, delta} : Interval<S>{S(0), first.y};
    auto second = find_preimage_in(map, zk, ww, opts.max_depth, opts.node_budget);
    int ol = map.orientation(second.m, second.y);

    S p = delta / S(2);
    S pert = (om * ol) < 0 ? S(zk + p) : S(zk - p);

    std::vector<S> pts;
    pts.push_back(zk);
    detail::append_iterates(map, first.y, first.m, pts);
    pts.push_back(zk);
    detail::append_iterates(map, second.y, second.m, pts);
    pts.push_back(pert);

    WitnessTrace<S> tr;
    tr.pseudo = PseudoOrbit<S>{std::move(pts), delta};
    tr.epsilon = eps;
    tr.case_tag = WitnessCase::Case2;
    tr.k = k;
    tr.y = first.y;
    tr.m = first.m;
    tr.orientation_m = om;
    tr.w = second.y;
    tr.l = second.m;
    tr.orientation_l = ol;
    tr.strategy = "climb";
    detail::certify_gaps(map, tr.pseudo);
    return tr;
}

// Window-drag construction; see the file comment for the idea. The survivor
// band is tracked exactly: each step pushes it through the map and clips it
// by the next entry window, and the sequence ends the moment the band dies.
// The jump margin guarantees at most one branch piece can meet any window,
// so the band stays a single interval throughout.
template <class S>
std::optional<WitnessTrace<S>> drag_witness(const PiecewiseAffineMap<S>& map, std::size_t k,
                                            const S& eps, const S& delta, std::size_t budget = 0)
{
    if (k >= map.breakpoint_count())
        fail(errc::index_out_of_range, "breakpoint index out of range");
    if (map.side(k) != Side::Right)
        fail(errc::wrong_case, "construction requires the breakpoint to take its right branch");
    if (!yes(gt(eps, S(0))) || !yes(gt(delta, S(0))) || !yes(lt(delta, eps)))
        fail(errc::invalid_params, "need 0 < delta < epsilon");
    for (std::size_t j = 0; j < map.branch_count(); ++j)
        if (!yes(gt(map.branch(j).slope, S(0))))
            fail(errc::wrong_case, "window-drag needs orientation-preserving branches");
    detail::check_jump_margin(map, eps);
    if (budget == 0)
        budget = scalar_traits<S>::default_drag_budget();

    const S zk = map.breakpoints()[k];
    const S drop = delta / S(2);

    std::vector<S> entries{zk};
    S entry = map.evaluate(zk); // right-branch image, gap 0
    entries.push_back(entry);

    // band after the first entry: the upper half-window [z_k, z_k + eps)
    // maps to [entry, entry + slope * eps), clipped by the new window;
    // the lower half-window lands a full jump away and dies immediately
    S s_above = map.branch(k + 1).slope;
    S lo = entry;
    S hi = std::min(S(entry + eps), S(entry + s_above * (std::min(S(1), S(zk + eps)) - zk)));

    S prev_entry = entry, prev_lo = lo, prev_hi = hi;
    for (std::size_t t = 0; t < budget; ++t) {
        S next = map.evaluate(entry) - drop;
        if (!yes(gt(next, S(0))))
            next = S(0); // floor at the domain edge; the gap is then below drop

        IntervalUnion<S> img = forward_image(map, IntervalUnion<S>{{Interval<S>{lo, hi}}});
        Interval<S> win{next - eps, next + eps};
        std::optional<Interval<S>> keep;
        for (const auto& piece : img.parts) {
            Interval<S> cut = intersect(piece, win);
            if (cut.empty())
                continue;
            if (!keep)
                keep = cut;
            else {
                keep->lo = std::min(keep->lo, cut.lo);
                keep->hi = std::max(keep->hi, cut.hi);
            }
        }

        entries.push_back(next);
        if (!keep) {
            // no candidate survives this window; the sequence is complete
            WitnessTrace<S> tr;
            tr.pseudo = PseudoOrbit<S>{std::move(entries), delta};
            tr.epsilon = eps;
            tr.case_tag = yes(gt(map.evaluate(zk), S(0))) ? WitnessCase::Case1
                                                          : WitnessCase::Case2;
            tr.k = k;
            tr.y = tr.pseudo.points[1];
            tr.m = tr.pseudo.points.size() - 2;
            tr.orientation_m = 1;
            tr.strategy = "drag";
            detail::certify_gaps(map, tr.pseudo);
            return tr;
        }

        lo = keep->lo;
        hi = keep->hi;
        if (next == prev_entry && lo == prev_lo && hi == prev_hi) {
            // stationary state: the pinned orbit leaves no room to drag
            return std::nullopt;
        }
        prev_entry = next;
        prev_lo = lo;
        prev_hi = hi;
        entry = next;
    }
    return std::nullopt;
}

namespace detail {

template <class S>
WitnessTrace<S> reflect_trace(const PiecewiseAffineMap<S>& original, WitnessTrace<S> tr)
{
    for (S& x : tr.pseudo.points)
        x = S(1) - x;
    tr.k = original.breakpoint_count() - 1 - tr.k;
    tr.y = S(1) - tr.y;
    if (tr.w)
        tr.w = S(1) - *tr.w;
    tr.reflected = true;
    return tr;
}

} // namespace detail

// End-to-end dispatcher: pick the pivot breakpoint, build a witness sequence,
// and certify it with the shadowing decision procedure. Maps declared through
// beta parameters are required to be transitive (non-transitive ones need the
// renormalization lift instead); hand-built maps are taken at face value.
template <class S>
WitnessTrace<S> theorem_a_witness(const PiecewiseAffineMap<S>& map, const S& eps,
                                  const WitnessOptions<S>& opts = {})
{
    if (map.beta_origin()) {
        Ternary t = is_transitive(map);
        if (t != Ternary::Yes)
            fail(errc::not_transitive,
                 t == Ternary::No ? "map is not transitive; renormalize first"
                                  : "transitivity could not be established");
    }

    // pivot on the smallest breakpoint owned by its right branch; if none
    // exists, run on the reflection (which flips every side) and pull back
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < map.breakpoint_count(); ++i)
        if (map.side(i) == Side::Right) {
            pivot = i;
            break;
        }
    if (!pivot) {
        PiecewiseAffineMap<S> r = map.reflect();
        WitnessTrace<S> tr = detail::reflect_trace(map, theorem_a_witness(r, eps, opts));
        auto rep = check_shadowing(map, tr.pseudo, eps, ShadowOptions{opts.max_pieces});
        tr.certified = rep.status == ShadowStatus::NotShadowed;
        detail::certify_gaps(map, tr.pseudo);
        return tr;
    }
    std::size_t k = *pivot;
    S fz = map.evaluate(map.breakpoints()[k]);
    bool case2 = !yes(gt(fz, S(0)));

    std::optional<WitnessMargins<S>> margins;
    std::optional<error> margin_error;
    try {
        margins = witness_margins(map, k, eps);
    } catch (const error& e) {
        if (e.code() != errc::epsilon_too_large)
            throw;
        margin_error = e;
    }

    std::optional<WitnessTrace<S>> fallback;
    if (margins) {
        S delta = opts.delta ? *opts.delta : S(margins->eta / S(2));
        WitnessTrace<S> tr = case2 ? case2_witness(map, k, eps, delta, opts)
                                   : case1_witness(map, k, eps, delta, opts);
        auto rep = check_shadowing(map, tr.pseudo, eps, ShadowOptions{opts.max_pieces});
        if (rep.status == ShadowStatus::NotShadowed) {
            tr.certified = true;
            return tr;
        }
        fallback = std::move(tr);
    }

    // The climb shape can be shadowable (some maps genuinely shadow it) or
    // out of margin. The drag only needs the jump margin and positive
    // slopes, so try it whenever the map qualifies.
    bool slopes_positive = true;
    for (std::size_t j = 0; j < map.branch_count(); ++j)
        if (!yes(gt(map.branch(j).slope, S(0))))
            slopes_positive = false;
    bool jump_ok = yes(gt(map.min_jump(), (S(1) + map.max_abs_slope()) * eps));
    if (slopes_positive && jump_ok) {
        S delta = opts.delta ? *opts.delta
                             : (margins ? S(margins->eta / S(2)) : S(eps / S(4)));
        auto dt = drag_witness(map, k, eps, delta, opts.drag_budget);
        if (dt) {
            auto rep = check_shadowing(map, dt->pseudo, eps, ShadowOptions{opts.max_pieces});
            if (rep.status == ShadowStatus::NotShadowed) {
                dt->certified = true;
                return *dt;
            }
            if (!fallback)
                fallback = std::move(*dt);
        }
    }

    if (fallback)
        return *fallback; // best effort, certified stays false
    if (margin_error)
        throw *margin_error;
    fail(errc::not_found, "no construction produced a sequence for this map");
}

} // namespace betashadow
