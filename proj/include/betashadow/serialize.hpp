// JSON encoding of every public structure.
//
// Convention: all real quantities are emitted as decimal strings, never as
// JSON numbers, so that exact-rational values survive a round trip and
// binary64 values are not re-rounded by downstream parsers. Counts and
// indices are plain integers. Rationals whose denominator is not of the
// form 2^a 5^b appear as "p/q". Parsers accept strings (exact path) as well
// as raw JSON numbers (convenience path, read at double precision).
#pragma once

#include "expansions.hpp"
#include "orbits.hpp"
#include "renorm.hpp"
#include "shadowing.hpp"
#include "witness.hpp"

#include "json.hpp"

#include <string>

namespace betashadow {

using json = nlohmann::ordered_json;

template <class S>
json num_to_json(const S& v)
{
    return scalar_traits<S>::to_decimal(v);
}

template <class S>
S num_from_json(const json& j)
{
    if (j.is_string())
        return scalar_traits<S>::from_decimal(j.get<std::string>());
    if (j.is_number_integer())
        return S(j.get<long long>());
    if (j.is_number_float())
        return scalar_traits<S>::from_double(j.get<double>());
    fail(errc::parse_error, "expected a number or a decimal string");
}

inline json ternary_to_json(Ternary t)
{
    if (t == Ternary::Yes)
        return true;
    if (t == Ternary::No)
        return false;
    return "uncertain";
}

template <class S>
json params_to_json(const BetaParams<S>& p)
{
    json j;
    j["beta"] = num_to_json(p.beta);
    j["alpha"] = num_to_json(p.alpha);
    return j;
}

template <class S>
BetaParams<S> params_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("beta") || !j.contains("alpha"))
        fail(errc::parse_error, "expected an object with beta and alpha");
    return BetaParams<S>{num_from_json<S>(j["beta"]), num_from_json<S>(j["alpha"])};
}

template <class S>
json map_to_json(const PiecewiseAffineMap<S>& map)
{
    if (map.beta_origin())
        return params_to_json(*map.beta_origin());
    json j;
    json zs = json::array();
    for (const S& z : map.breakpoints())
        zs.push_back(num_to_json(z));
    j["breakpoints"] = std::move(zs);
    json brs = json::array();
    for (std::size_t i = 0; i < map.branch_count(); ++i) {
        json b;
        b["slope"] = num_to_json(map.branch(i).slope);
        b["intercept"] = num_to_json(map.branch(i).intercept);
        brs.push_back(std::move(b));
    }
    j["branches"] = std::move(brs);
    json sd = json::array();
    for (std::size_t i = 0; i < map.breakpoint_count(); ++i)
        sd.push_back(map.side(i) == Side::Right ? "right" : "left");
    j["sides"] = std::move(sd);
    return j;
}

template <class S>
PiecewiseAffineMap<S> map_from_json(const json& j)
{
    if (!j.is_object())
        fail(errc::parse_error, "map description must be an object");
    if (j.contains("beta"))
        return beta_map(params_from_json<S>(j));
    if (!j.contains("breakpoints") || !j.contains("branches") || !j.contains("sides"))
        fail(errc::parse_error, "map object needs breakpoints, branches and sides");
    std::vector<S> zs;
    for (const auto& z : j["breakpoints"])
        zs.push_back(num_from_json<S>(z));
    std::vector<BranchSpec<S>> brs;
    for (const auto& b : j["branches"]) {
        if (!b.is_object() || !b.contains("slope") || !b.contains("intercept"))
            fail(errc::parse_error, "branch needs slope and intercept");
        brs.push_back(BranchSpec<S>{num_from_json<S>(b["slope"]), num_from_json<S>(b["intercept"])});
    }
    std::vector<Side> sd;
    for (const auto& s : j["sides"]) {
        std::string v = s.template get<std::string>();
        if (v == "right")
            sd.push_back(Side::Right);
        else if (v == "left")
            sd.push_back(Side::Left);
        else
            fail(errc::parse_error, "side must be \"left\" or \"right\"");
    }
    return PiecewiseAffineMap<S>(std::move(zs), std::move(brs), std::move(sd));
}

template <class S>
json points_to_json(const std::vector<S>& pts)
{
    json a = json::array();
    for (const S& x : pts)
        a.push_back(num_to_json(x));
    return a;
}

template <class S>
std::vector<S> points_from_json(const json& j)
{
    if (!j.is_array())
        fail(errc::parse_error, "expected an array of points");
    std::vector<S> pts;
    for (const auto& x : j)
        pts.push_back(num_from_json<S>(x));
    return pts;
}

template <class S>
json orbit_to_json(const Orbit<S>& o)
{
    json j;
    j["points"] = points_to_json(o.points);
    return j;
}

template <class S>
json pseudo_orbit_to_json(const PseudoOrbit<S>& po)
{
    json j;
    j["points"] = points_to_json(po.points);
    j["delta"] = num_to_json(po.delta);
    return j;
}

template <class S>
PseudoOrbit<S> pseudo_orbit_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("points") || !j.contains("delta"))
        fail(errc::parse_error, "pseudo-orbit needs points and delta");
    return PseudoOrbit<S>{points_from_json<S>(j["points"]), num_from_json<S>(j["delta"])};
}

template <class S>
json gap_report_to_json(const GapReport<S>& r)
{
    json j;
    j["max_gap"] = num_to_json(r.max_gap);
    j["argmax_index"] = static_cast<long long>(r.argmax_index);
    j["valid"] = ternary_to_json(r.valid);
    return j;
}

template <class S>
json shadow_report_to_json(const ShadowReport<S>& r)
{
    json j;
    j["status"] = shadow_status_name(r.status);
    if (r.witness)
        j["witness"] = num_to_json(*r.witness);
    if (r.max_deviation)
        j["max_deviation"] = num_to_json(*r.max_deviation);
    j["pieces_peak"] = static_cast<long long>(r.pieces_peak);
    j["candidate_points_checked"] = static_cast<long long>(r.candidate_points_checked);
    return j;
}

template <class S>
json witness_trace_to_json(const WitnessTrace<S>& t)
{
    json j;
    j["case"] = witness_case_name(t.case_tag);
    j["strategy"] = t.strategy;
    j["k"] = static_cast<long long>(t.k);
    j["epsilon"] = num_to_json(t.epsilon);
    j["delta"] = num_to_json(t.pseudo.delta);
    j["y"] = num_to_json(t.y);
    j["m"] = static_cast<long long>(t.m);
    j["orientation_m"] = t.orientation_m;
    if (t.w)
        j["w"] = num_to_json(*t.w);
    if (t.l)
        j["l"] = static_cast<long long>(*t.l);
    if (t.orientation_l)
        j["orientation_l"] = *t.orientation_l;
    j["reflected"] = t.reflected;
    j["certified"] = t.certified;
    j["pseudo_orbit"] = pseudo_orbit_to_json(t.pseudo);
    return j;
}

template <class S>
json renorm_to_json(const RenormalizationData<S>& d)
{
    json j;
    j["j"] = json{{"lo", num_to_json(d.j.lo)}, {"hi", num_to_json(d.j.hi)}};
    j["n"] = static_cast<long long>(d.n);
    j["renormalized"] = params_to_json(d.renormalized);
    j["h"] = json{{"a", num_to_json(d.h.a)}, {"b", num_to_json(d.h.b)}};
    j["invariance_residual"] = num_to_json(d.invariance_residual);
    j["conjugacy_residual"] = num_to_json(d.conjugacy_residual);
    j["depth"] = static_cast<long long>(d.depth);
    if (!d.warning.empty())
        j["warning"] = d.warning;
    return j;
}

template <class S>
json digits_to_json(const DigitString<S>& ds)
{
    json j;
    j["digits"] = digits_to_string(ds);
    j["params"] = params_to_json(ds.params);
    j["origin"] = num_to_json(ds.origin);
    return j;
}

inline json error_to_json(const error& e)
{
    json j;
    j["error"] = json{{"kind", errc_name(e.code())},
                      {"message", std::string(e.what())},
                      {"exit", exit_code_for(e.code())}};
    return j;
}

} // namespace betashadow
