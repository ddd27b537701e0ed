// Discontinuous piecewise affine monotone self-maps of [0,1].
//
// A map is given by strictly increasing breakpoints z_0 < ... < z_{n-1} in
// (0,1), n+1 affine branches on the open cells (0,z_0), (z_0,z_1), ...,
// (z_{n-1},1), and a per-breakpoint side: Side::Right means the map takes
// the value of the branch to the right at that breakpoint (the one-sided
// limit from above), Side::Left the branch to the left. Endpoints 0 and 1
// always evaluate through the first and last branch.
//
// The family of interest is x -> beta*x + alpha (mod 1) on [0,1] with
// beta in (1,2] and alpha in [0, 2-beta]: one breakpoint c = (1-alpha)/beta,
// side Right (so the map value at c is 0), slope beta on both branches.
#pragma once

#include <optional>
#include <vector>

#include "interval.hpp"

namespace betashadow {

enum class Side { Left, Right };

template <class S>
struct BranchSpec {
    S slope{1};
    S intercept{0};

    S operator()(const S& x) const { return slope * x + intercept; }
};

template <class S>
struct BetaParams {
    S beta{2};
    S alpha{0};
};

template <class S>
class PiecewiseAffineMap {
public:
    PiecewiseAffineMap(std::vector<S> breakpoints, std::vector<BranchSpec<S>> branches,
                       std::vector<Side> sides,
                       std::optional<BetaParams<S>> beta_origin = std::nullopt)
        : breakpoints_(std::move(breakpoints)), branches_(std::move(branches)),
          sides_(std::move(sides)), beta_origin_(std::move(beta_origin))
    {
        validate();
    }

    std::size_t breakpoint_count() const { return breakpoints_.size(); }
    std::size_t branch_count() const { return branches_.size(); }

    const std::vector<S>& breakpoints() const { return breakpoints_; }
    const std::vector<BranchSpec<S>>& branches() const { return branches_; }
    const std::vector<Side>& sides() const { return sides_; }
    const std::optional<BetaParams<S>>& beta_origin() const { return beta_origin_; }

    const BranchSpec<S>& branch(std::size_t j) const
    {
        if (j >= branches_.size())
            fail(errc::index_out_of_range, "branch index out of range");
        return branches_[j];
    }

    Side side(std::size_t m) const
    {
        if (m >= sides_.size())
            fail(errc::index_out_of_range, "breakpoint index out of range");
        return sides_[m];
    }

    // open cell I_j = (z_{j-1}, z_j), with z_{-1} := 0 and z_n := 1
    Interval<S> cell(std::size_t j) const
    {
        S lo = (j == 0) ? S(0) : breakpoints_[j - 1];
        S hi = (j == breakpoints_.size()) ? S(1) : breakpoints_[j];
        return Interval<S>{lo, hi};
    }

    // index of the branch that evaluate() uses at x
    std::size_t branch_index_at(const S& x) const
    {
        require_in_domain(x);
        std::size_t u = static_cast<std::size_t>(
            std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
            breakpoints_.begin());
        if (u > 0 && breakpoints_[u - 1] == x)
            return sides_[u - 1] == Side::Right ? u : u - 1;
        return u;
    }

    S evaluate(const S& x) const
    {
        S y = branches_[branch_index_at(x)](x);
        // branch images are validated into [0,1] (up to the binary64 guard);
        // clamp so downstream domain checks never trip over a rounding ulp
        if (y < S(0))
            y = S(0);
        if (y > S(1))
            y = S(1);
        return y;
    }

    // (f_-(z_m), f_+(z_m)): limits from below and above the breakpoint
    std::pair<S, S> one_sided_limits(std::size_t m) const
    {
        if (m >= breakpoints_.size())
            fail(errc::index_out_of_range, "breakpoint index " + std::to_string(m) +
                                               " out of range");
        const S& z = breakpoints_[m];
        return {branches_[m](z), branches_[m + 1](z)};
    }

    // product over i < j of the slope sign of the branch the orbit of z
    // passes through; +1 for j = 0. Records whether the branch of the j-th
    // iterate containing f^j(z) is increasing (+1) or decreasing (-1).
    int orientation(std::size_t j, const S& z) const
    {
        require_in_domain(z);
        int sign = 1;
        S y = z;
        for (std::size_t i = 0; i < j; ++i) {
            std::size_t b = branch_index_at(y);
            if (branches_[b].slope < S(0))
                sign = -sign;
            y = evaluate(y);
        }
        return sign;
    }

    // conjugation by r(x) = 1-x; an involution (exactly so in rational mode)
    PiecewiseAffineMap reflect() const
    {
        std::size_t n = breakpoints_.size();
        std::vector<S> zs(n);
        std::vector<Side> sd(n);
        for (std::size_t m = 0; m < n; ++m) {
            zs[m] = S(1) - breakpoints_[n - 1 - m];
            sd[m] = sides_[n - 1 - m] == Side::Right ? Side::Left : Side::Right;
        }
        std::vector<BranchSpec<S>> br(branches_.size());
        for (std::size_t j = 0; j < branches_.size(); ++j) {
            const auto& o = branches_[branches_.size() - 1 - j];
            br[j] = BranchSpec<S>{o.slope, S(1) - o.slope - o.intercept};
        }
        return PiecewiseAffineMap(std::move(zs), std::move(br), std::move(sd));
    }

    S min_cell_width() const
    {
        S best = cell(0).width();
        for (std::size_t j = 1; j <= breakpoints_.size(); ++j)
            best = std::min(best, cell(j).width());
        return best;
    }

    S min_jump() const
    {
        S best(2);
        for (std::size_t m = 0; m < breakpoints_.size(); ++m) {
            auto [lo, hi] = one_sided_limits(m);
            best = std::min(best, abs_val(S(hi - lo)));
        }
        return best;
    }

    S max_abs_slope() const
    {
        S best(0);
        for (const auto& b : branches_)
            best = std::max(best, abs_val(b.slope));
        return best;
    }

private:
    void require_in_domain(const S& x) const
    {
        if (x < S(0) || x > S(1))
            fail(errc::out_of_domain, "point outside [0,1]");
    }

    void validate() const
    {
        std::size_t n = breakpoints_.size();
        if (n < 1)
            fail(errc::invalid_params, "need at least one breakpoint");
        if (branches_.size() != n + 1)
            fail(errc::invalid_params, "need exactly one branch per cell");
        if (sides_.size() != n)
            fail(errc::invalid_params, "need one side per breakpoint");
        for (std::size_t m = 0; m < n; ++m) {
            if (!(S(0) < breakpoints_[m] && breakpoints_[m] < S(1)))
                fail(errc::invalid_params, "breakpoints must lie in (0,1)");
            if (m + 1 < n && !(breakpoints_[m] < breakpoints_[m + 1]))
                fail(errc::invalid_params, "breakpoints must increase strictly");
        }
        S slack = scalar_traits<S>::guard(S(0), S(1));
        for (std::size_t j = 0; j <= n; ++j) {
            if (branches_[j].slope == S(0))
                fail(errc::invalid_params, "branch slope must be nonzero");
            Interval<S> c = cell(j);
            for (S x : {c.lo, c.hi}) {
                S v = branches_[j](x);
                if (v < S(0) - slack || v > S(1) + slack)
                    fail(errc::invalid_params, "branch image leaves [0,1]");
            }
        }
        for (std::size_t m = 0; m < n; ++m) {
            auto [lo, hi] = one_sided_limits(m);
            if (abs_val(S(hi - lo)) <= slack)
                fail(errc::invalid_params, "one-sided limits coincide at a breakpoint");
        }
    }

    std::vector<S> breakpoints_;
    std::vector<BranchSpec<S>> branches_;
    std::vector<Side> sides_;
    std::optional<BetaParams<S>> beta_origin_;
};

template <class S>
void validate_beta_params(const BetaParams<S>& p)
{
    if (!(S(1) < p.beta && p.beta <= S(2)))
        fail(errc::invalid_params, "beta must lie in (1,2]");
    if (!(S(0) <= p.alpha && p.alpha <= S(2) - p.beta))
        fail(errc::invalid_params, "alpha must lie in [0, 2-beta]");
}

template <class S>
PiecewiseAffineMap<S> beta_map(const BetaParams<S>& p)
{
    validate_beta_params(p);
    S c = (S(1) - p.alpha) / p.beta;
    return PiecewiseAffineMap<S>(
        {c},
        {BranchSpec<S>{p.beta, p.alpha}, BranchSpec<S>{p.beta, p.alpha - S(1)}},
        {Side::Right}, p);
}

} // namespace betashadow
