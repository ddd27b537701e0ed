// Symbolic 0/1 codings of orbits under the two-branch family.
//
// The digit at step i is 0 when the i-th iterate sits left of the breakpoint
// and 1 otherwise (the breakpoint itself codes as 1, matching the right-hand
// branch convention). Reading the digits back through the base-beta series
// sum_n omega_n beta^{-n} recovers x + alpha/(beta-1) up to a tail bound
// beta^{-N} (1 + alpha/(beta-1)), which collapses to exactness for the
// doubling map on dyadic points.
#pragma once

#include "maps.hpp"

#include <string>
#include <vector>

namespace betashadow {

template <class S>
struct DigitString {
    std::vector<int> digits;
    BetaParams<S> params;
    S origin{}; // the x the digits were read from
};

template <class S>
DigitString<S> coding(const BetaParams<S>& params, const S& x, std::size_t n)
{
    validate_beta_params(params);
    if (n == 0)
        fail(errc::invalid_params, "need at least one digit");
    if (x < S(0) || x > S(1))
        fail(errc::out_of_domain, "coding point must lie in [0,1]");
    PiecewiseAffineMap<S> map = beta_map(params);
    const S& c = map.breakpoints()[0];

    DigitString<S> ds;
    ds.params = params;
    ds.origin = x;
    ds.digits.reserve(n);
    S v = x;
    for (std::size_t i = 0; i < n; ++i) {
        ds.digits.push_back(v < c ? 0 : 1);
        v = map.evaluate(v);
    }
    return ds;
}

// Horner evaluation of sum_{i=1..N} digits[i-1] * beta^{-i}
template <class S>
S reconstruct(const DigitString<S>& ds)
{
    S v(0);
    for (std::size_t i = ds.digits.size(); i-- > 0;)
        v = (v + S(ds.digits[i])) / ds.params.beta;
    return v;
}

// what reconstruct() converges to as N grows
template <class S>
S expansion_target(const BetaParams<S>& params, const S& x)
{
    return x + params.alpha / (params.beta - S(1));
}

// |reconstruct - target| is bounded by the weight of the truncated tail
template <class S>
S truncation_bound(const BetaParams<S>& params, std::size_t n)
{
    S p(1);
    for (std::size_t i = 0; i < n; ++i)
        p = p / params.beta;
    return p * (S(1) + params.alpha / (params.beta - S(1)));
}

template <class S>
std::string digits_to_string(const DigitString<S>& ds)
{
    std::string s;
    s.reserve(ds.digits.size());
    for (int d : ds.digits)
        s.push_back(d ? '1' : '0');
    return s;
}

} // namespace betashadow
