// Decision procedure for finite epsilon-shadowing.
//
// Question: given a pseudo-orbit x_0..x_L and epsilon > 0, does some z in
// [0,1] satisfy |f^i(z) - x_i| < epsilon for every i (strict)?
//
// The set of admissible z is propagated as a worklist of open intervals
// ("pieces"), each carrying the affine map equal to f^i on it. One step:
// split the current image at breakpoints, apply the branch on each open
// part, intersect with the next constraint window, pull the result back to
// starting coordinates. Because branches are affine this bookkeeping is
// exact over the rationals, so an empty final worklist is a proof.
//
// Shadows whose orbit passes exactly through a breakpoint slip between open
// pieces; a separate candidate-point track (split points, the endpoints 0
// and 1) is simulated directly to restore completeness.
//
// binary64 mode plays the same game with a relative guard band: any
// elimination or survival decided inside the band degrades the verdict to
// Uncertain instead of guessing.
#pragma once

#include <optional>

#include "orbits.hpp"

namespace betashadow {

enum class ShadowStatus { Shadowed, NotShadowed, Uncertain };

inline const char* shadow_status_name(ShadowStatus s)
{
    switch (s) {
    case ShadowStatus::Shadowed:    return "shadowed";
    case ShadowStatus::NotShadowed: return "not_shadowed";
    case ShadowStatus::Uncertain:   return "uncertain";
    }
    return "?";
}

template <class S>
struct ShadowReport {
    ShadowStatus status{ShadowStatus::Uncertain};
    std::optional<S> witness;
    std::optional<S> max_deviation;
    std::size_t pieces_peak{0};
    std::size_t candidate_points_checked{0};
};

struct ShadowOptions {
    std::size_t max_pieces = 100000;
};

// image of an interval union, treating every point as interior to a branch;
// isolated breakpoint images are intentionally dropped (open components)
template <class S>
IntervalUnion<S> forward_image(const PiecewiseAffineMap<S>& map, const IntervalUnion<S>& u,
                               const S& merge_tol)
{
    std::vector<Interval<S>> out;
    for (const auto& comp : u.parts) {
        std::vector<S> cuts{comp.lo};
        for (const S& z : map.breakpoints())
            if (comp.contains(z))
                cuts.push_back(z);
        cuts.push_back(comp.hi);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            Interval<S> part{cuts[i], cuts[i + 1]};
            if (part.empty())
                continue;
            // any interior point identifies the branch
            std::size_t j = map.branch_index_at(part.mid());
            Affine<S> br{map.branches()[j].slope, map.branches()[j].intercept};
            Interval<S> img = br.image(part);
            img = intersect(img, Interval<S>{S(0), S(1)});
            if (!img.empty())
                out.push_back(img);
        }
    }
    return normalize(std::move(out), merge_tol);
}

template <class S>
IntervalUnion<S> forward_image(const PiecewiseAffineMap<S>& map, const IntervalUnion<S>& u)
{
    S merge_tol = scalar_traits<S>::is_exact ? S(0) : S(1e-12);
    return forward_image(map, u, merge_tol);
}

namespace detail {

template <class S>
struct TrackedPiece {
    Interval<S> seed;   // candidate starting points (open)
    Interval<S> image;  // f^i(seed), already inside the step-i window
    Affine<S> comp;     // f^i restricted to seed
    bool frozen{false}; // binary64: composition overflowed; seed is final
};

// simulate one starting point against every constraint window
template <class S>
struct CandidateRun {
    bool survives{false};
    bool uncertain{false};
    S max_dev{0};
};

template <class S>
CandidateRun<S> run_candidate(const PiecewiseAffineMap<S>& map, const std::vector<S>& pts,
                              const S& eps, const S& z)
{
    CandidateRun<S> r;
    S y = z;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0)
            y = map.evaluate(y);
        S dev = abs_val(S(y - pts[i]));
        if (dev > r.max_dev)
            r.max_dev = dev;
        Ternary ok = lt(dev, eps);
        if (no(ok))
            return r; // clean elimination
        if (uncertain(ok)) {
            r.uncertain = true;
            return r;
        }
    }
    r.survives = true;
    return r;
}

} // namespace detail

template <class S>
ShadowReport<S> check_shadowing(const PiecewiseAffineMap<S>& map, const PseudoOrbit<S>& pseudo,
                                const S& eps, const ShadowOptions& opts = {})
{
    if (!(eps > S(0)))
        fail(errc::invalid_params, "epsilon must be positive");
    const auto& pts = pseudo.points;
    if (pts.empty())
        fail(errc::empty_sequence, "empty pseudo-orbit");
    for (const S& x : pts)
        if (x < S(0) || x > S(1))
            fail(errc::out_of_domain, "pseudo-orbit leaves [0,1]");

    using Piece = detail::TrackedPiece<S>;
    // binary64: beyond this scale a composed slope pins the seed to one ulp,
    // so stop pulling constraints back and keep the seed frozen
    const double freeze_at = 1e15;

    ShadowReport<S> report;
    bool uncertain_elim = false;

    // candidate-point track
    std::set<S> tried;
    std::vector<std::pair<S, S>> candidate_survivors; // (point, max deviation)
    auto push_candidate = [&](const S& z) {
        if (z < S(0) || z > S(1))
            return;
        if (!tried.insert(z).second)
            return;
        auto run = detail::run_candidate(map, pts, eps, z);
        if (run.survives)
            candidate_survivors.emplace_back(z, run.max_dev);
        else if (run.uncertain)
            uncertain_elim = true;
    };
    push_candidate(S(0));
    push_candidate(S(1));

    // seed pieces
    std::vector<Piece> pieces;
    {
        Interval<S> seed{std::max(S(0), S(pts[0] - eps)), std::min(S(1), S(pts[0] + eps))};
        if (!seed.empty())
            pieces.push_back(Piece{seed, seed, Affine<S>{S(1), S(0)}, false});
    }
    report.pieces_peak = pieces.size();

    for (std::size_t i = 0; i + 1 < pts.size() && !pieces.empty(); ++i) {
        Interval<S> window{pts[i + 1] - eps, pts[i + 1] + eps};
        std::vector<Piece> next;
        for (const Piece& piece : pieces) {
            // split the image at breakpoints in its interior
            std::vector<S> cuts{piece.image.lo};
            for (const S& z : map.breakpoints())
                if (piece.image.contains(z)) {
                    cuts.push_back(z);
                    // the preimage of the cut shadows through the breakpoint
                    push_candidate(piece.frozen ? piece.seed.mid() : piece.comp.invert(z));
                }
            cuts.push_back(piece.image.hi);

            for (std::size_t kk = 0; kk + 1 < cuts.size(); ++kk) {
                Interval<S> part{cuts[kk], cuts[kk + 1]};
                if (part.empty())
                    continue;
                std::size_t j = map.branch_index_at(part.mid());
                Affine<S> br{map.branches()[j].slope, map.branches()[j].intercept};
                Interval<S> img = intersect(br.image(part), window);
                img = intersect(img, Interval<S>{S(0), S(1)});

                S w = img.width();
                if constexpr (scalar_traits<S>::is_exact) {
                    if (!(w > S(0)))
                        continue; // clean elimination
                } else {
                    S g = scalar_traits<S>::guard(img.lo, img.hi);
                    if (w <= g) {
                        if (w >= -g) {
                            // decided inside the guard band: remember the
                            // near-miss point, flag the verdict
                            uncertain_elim = true;
                            Affine<S> comp2 = br.after(piece.comp);
                            S probe = midpoint(img.lo, img.hi);
                            push_candidate(piece.frozen ? piece.seed.mid()
                                                        : comp2.invert(probe));
                        }
                        continue;
                    }
                }

                Piece child;
                child.comp = br.after(piece.comp);
                child.image = img;
                child.frozen = piece.frozen;
                if (!child.frozen) {
                    S qa = child.comp.invert(img.lo);
                    S qb = child.comp.invert(img.hi);
                    child.seed = qa < qb ? Interval<S>{qa, qb} : Interval<S>{qb, qa};
                    child.seed = intersect(child.seed, piece.seed);
                    if (child.seed.empty())
                        child.seed = piece.seed; // rounding artifact; keep parent
                    if constexpr (!scalar_traits<S>::is_exact) {
                        if (std::fabs(child.comp.a) > freeze_at)
                            child.frozen = true;
                    }
                } else {
                    child.seed = piece.seed;
                }
                next.push_back(std::move(child));
            }
        }
        pieces = std::move(next);
        report.pieces_peak = std::max(report.pieces_peak, pieces.size());
        if (pieces.size() > opts.max_pieces) {
            if (!candidate_survivors.empty()) {
                // a confirmed witness already exists; no need to blow up
                pieces.clear();
                break;
            }
            report.candidate_points_checked = tried.size();
            fail(errc::piece_explosion,
                 "live pieces exceed max_pieces = " + std::to_string(opts.max_pieces));
        }
    }
    report.candidate_points_checked = tried.size();

    // deterministic order: leftmost surviving seed first
    std::sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) {
        return a.seed.lo < b.seed.lo;
    });

    for (const auto& piece : pieces) {
        S z = piece.seed.mid();
        auto run = detail::run_candidate(map, pts, eps, z);
        if (run.survives || run.uncertain) {
            // rational mode always lands here with run.survives on the first
            // piece; binary64 may accept a within-guard resimulation
            report.status = ShadowStatus::Shadowed;
            report.witness = z;
            report.max_deviation = run.max_dev;
            return report;
        }
    }
    if (!candidate_survivors.empty()) {
        std::sort(candidate_survivors.begin(), candidate_survivors.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        report.status = ShadowStatus::Shadowed;
        report.witness = candidate_survivors.front().first;
        report.max_deviation = candidate_survivors.front().second;
        return report;
    }
    if (!pieces.empty() || uncertain_elim) {
        // pieces whose midpoints fail resimulation, or eliminations decided
        // inside the guard band: refuse to call it
        report.status = ShadowStatus::Uncertain;
        return report;
    }
    report.status = ShadowStatus::NotShadowed;
    return report;
}

// Independent one-sided oracle: try z on a uniform grid plus a few points
// derived from x_0. Returns the first surviving sample; finding none proves
// nothing (and binary64 simulation is unguarded here by design; this is the
// cheap cross-check, not the decision procedure).
template <class S>
std::optional<S> grid_shadow_oracle(const PiecewiseAffineMap<S>& map,
                                    const PseudoOrbit<S>& pseudo, const S& eps,
                                    std::size_t samples)
{
    if (samples < 1)
        fail(errc::invalid_params, "need at least one sample");
    const auto& pts = pseudo.points;

    auto survives = [&](const S& z) {
        S y = z;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i > 0)
                y = map.evaluate(y);
            if (!(abs_val(S(y - pts[i])) < eps))
                return false;
        }
        return true;
    };

    std::vector<S> augmented{pts[0], pts[0] - eps / S(2), pts[0] + eps / S(2)};
    for (const S& z : augmented)
        if (S(0) <= z && z <= S(1) && survives(z))
            return z;
    for (std::size_t j = 0; j < samples; ++j) {
        S z = samples == 1 ? S(0) : S(j) / S(samples - 1);
        if (survives(z))
            return z;
    }
    return std::nullopt;
}

} // namespace betashadow
