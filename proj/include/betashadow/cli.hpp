// Command line front end.
//
// Every verb prints JSON (sweep prints CSV). Real numbers on the command
// line are kept as strings and parsed by the selected arithmetic backend,
// so --exact never rounds inputs through binary64. Exit codes: 0 success,
// 1 when a checked property fails (invalid pseudo-orbit, shadowable or
// undecided sequence, uncertified witness), 2 for invalid input, 3 when a
// resource cap was hit. Errors are single-line JSON on stdout.
#pragma once

#include "serialize.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace betashadow {
namespace cli {

struct Args {
    std::string verb;
    std::string beta, alpha;
    std::string map_file;
    std::string x;
    std::string epsilon, delta;
    std::string orbit, orbit_file;
    std::string tolerance;
    std::string beta_min = "1.05", beta_max = "1.4";
    std::string out;
    std::string format = "json";
    std::size_t length = 10;
    std::size_t digits = 20;
    std::size_t grid = 200;
    std::size_t samples = 0;
    std::size_t max_depth = 64;
    std::size_t max_pieces = 100000;
    long long seed = 0;
    bool exact = false;
};

inline void emit(const Args& a, const std::string& text)
{
    if (!a.out.empty()) {
        std::ofstream o(a.out);
        if (!o)
            fail(errc::invalid_params, "cannot open output file " + a.out);
        o << text;
    } else {
        std::cout << text;
    }
}

template <class S>
S parse_num(const std::string& s, const char* what)
{
    if (s.empty())
        fail(errc::invalid_params, std::string("missing required value: ") + what);
    return scalar_traits<S>::from_decimal(s);
}

template <class S>
PiecewiseAffineMap<S> build_map(const Args& a)
{
    if (!a.map_file.empty()) {
        std::ifstream in(a.map_file);
        if (!in)
            fail(errc::parse_error, "cannot open map file " + a.map_file);
        json j = json::parse(in, nullptr, false);
        if (j.is_discarded())
            fail(errc::parse_error, "map file is not valid JSON");
        return map_from_json<S>(j);
    }
    if (a.beta.empty() || a.alpha.empty())
        fail(errc::invalid_params, "provide --beta and --alpha, or --map FILE");
    BetaParams<S> p{parse_num<S>(a.beta, "--beta"), parse_num<S>(a.alpha, "--alpha")};
    return beta_map(p);
}

template <class S>
PseudoOrbit<S> load_pseudo(const Args& a)
{
    std::vector<S> pts;
    std::optional<S> delta;
    if (!a.orbit.empty()) {
        std::stringstream ss(a.orbit);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty())
                pts.push_back(scalar_traits<S>::from_decimal(tok));
    } else if (!a.orbit_file.empty()) {
        std::ifstream in(a.orbit_file);
        if (!in)
            fail(errc::parse_error, "cannot open orbit file " + a.orbit_file);
        json j = json::parse(in, nullptr, false);
        if (j.is_discarded())
            fail(errc::parse_error, "orbit file is not valid JSON");
        if (j.is_array()) {
            pts = points_from_json<S>(j);
        } else if (j.is_object() && j.contains("points")) {
            pts = points_from_json<S>(j["points"]);
            if (j.contains("delta"))
                delta = num_from_json<S>(j["delta"]);
        } else {
            fail(errc::parse_error, "orbit file must hold an array or a pseudo-orbit object");
        }
    } else {
        fail(errc::invalid_params, "provide --orbit or --orbit-file");
    }
    if (!a.delta.empty())
        delta = parse_num<S>(a.delta, "--delta");
    if (!delta)
        fail(errc::invalid_params, "delta is required (flag --delta or orbit file field)");
    if (pts.size() < 2)
        fail(errc::empty_sequence, "need at least two points");
    return PseudoOrbit<S>{std::move(pts), *delta};
}

template <class S>
int run_typed(const Args& a)
{
    if (a.verb == "map-info") {
        auto map = build_map<S>(a);
        json j;
        j["map"] = map_to_json(map);
        json zs = json::array();
        for (const S& z : map.breakpoints())
            zs.push_back(num_to_json(z));
        j["breakpoints"] = std::move(zs);
        json cells = json::array();
        for (std::size_t i = 0; i < map.branch_count(); ++i) {
            auto c = map.cell(i);
            cells.push_back(json{{"lo", num_to_json(c.lo)},
                                 {"hi", num_to_json(c.hi)},
                                 {"width", num_to_json(c.width())}});
        }
        j["cells"] = std::move(cells);
        json jumps = json::array();
        for (std::size_t i = 0; i < map.breakpoint_count(); ++i) {
            auto lim = map.one_sided_limits(i);
            jumps.push_back(num_to_json(abs_val(S(lim.second - lim.first))));
        }
        j["jumps"] = std::move(jumps);
        j["min_cell_width"] = num_to_json(map.min_cell_width());
        j["min_jump"] = num_to_json(map.min_jump());
        j["max_abs_slope"] = num_to_json(map.max_abs_slope());
        j["transitive"] = ternary_to_json(is_transitive(map));
        emit(a, j.dump(2) + "\n");
        return 0;
    }

    if (a.verb == "iterate") {
        auto map = build_map<S>(a);
        S x0 = parse_num<S>(a.x, "--x");
        auto orb = iterate(map, x0, a.length);
        emit(a, orbit_to_json(orb).dump(2) + "\n");
        return 0;
    }

    if (a.verb == "validate") {
        auto map = build_map<S>(a);
        auto po = load_pseudo<S>(a);
        auto rep = validate_pseudo_orbit(map, po.points, po.delta);
        emit(a, gap_report_to_json(rep).dump(2) + "\n");
        return yes(rep.valid) ? 0 : 1;
    }

    if (a.verb == "shadow-check") {
        auto map = build_map<S>(a);
        auto po = load_pseudo<S>(a);
        S eps = parse_num<S>(a.epsilon, "--epsilon");
        ShadowOptions opts;
        opts.max_pieces = a.max_pieces;
        auto rep = check_shadowing(map, po, eps, opts);
        json j = shadow_report_to_json(rep);
        if (a.samples > 0) {
            auto g = grid_shadow_oracle(map, po, eps, a.samples);
            j["grid_witness"] = g ? num_to_json(*g) : json(nullptr);
        }
        emit(a, j.dump(2) + "\n");
        return rep.status == ShadowStatus::Shadowed ? 0 : 1;
    }

    if (a.verb == "witness") {
        auto map = build_map<S>(a);
        S eps = parse_num<S>(a.epsilon, "--epsilon");
        WitnessOptions<S> opts;
        if (!a.delta.empty())
            opts.delta = parse_num<S>(a.delta, "--delta");
        opts.max_depth = a.max_depth;
        opts.max_pieces = a.max_pieces;
        WitnessTrace<S> tr = map.beta_origin()
                                 ? theorem_b_witness(*map.beta_origin(), eps, opts)
                                 : theorem_a_witness(map, eps, opts);
        emit(a, witness_trace_to_json(tr).dump(2) + "\n");
        return tr.certified ? 0 : 1;
    }

    if (a.verb == "renormalize") {
        if (a.beta.empty() || a.alpha.empty())
            fail(errc::invalid_params, "renormalize needs --beta and --alpha");
        BetaParams<S> p{parse_num<S>(a.beta, "--beta"), parse_num<S>(a.alpha, "--alpha")};
        RenormOptions opts;
        if (!a.tolerance.empty())
            opts.residual_tol = std::strtod(a.tolerance.c_str(), nullptr);
        auto data = renormalize(p, opts);
        emit(a, renorm_to_json(data).dump(2) + "\n");
        return 0;
    }

    if (a.verb == "expand") {
        if (a.beta.empty() || a.alpha.empty())
            fail(errc::invalid_params, "expand needs --beta and --alpha");
        BetaParams<S> p{parse_num<S>(a.beta, "--beta"), parse_num<S>(a.alpha, "--alpha")};
        S x0 = parse_num<S>(a.x, "--x");
        auto ds = coding(p, x0, a.digits);
        json j = digits_to_json(ds);
        S recon = reconstruct(ds);
        S target = expansion_target(p, x0);
        j["reconstruct"] = num_to_json(recon);
        j["target"] = num_to_json(target);
        j["bound"] = num_to_json(truncation_bound(p, a.digits));
        j["deviation"] = num_to_json(abs_val(S(recon - target)));
        emit(a, j.dump(2) + "\n");
        return 0;
    }

    if (a.verb == "sweep") {
        if (a.grid < 2)
            fail(errc::invalid_params, "sweep needs --grid of at least 2");
        S bmin = parse_num<S>(a.beta_min, "--beta-min");
        S bmax = parse_num<S>(a.beta_max, "--beta-max");
        if (!yes(lt(bmin, bmax)) || !yes(gt(bmin, S(1))) || yes(gt(bmax, S(2))))
            fail(errc::invalid_params, "sweep range must satisfy 1 < beta-min < beta-max <= 2");
        std::ostringstream csv;
        csv << "beta,alpha,transitive,n,J_lo,J_hi,alpha_hat,residual,error\n";
        S r1 = S(static_cast<long long>(a.grid - 1));
        for (std::size_t i = 0; i < a.grid; ++i) {
            S beta = bmin + S(static_cast<long long>(i)) * (bmax - bmin) / r1;
            for (std::size_t k = 0; k < a.grid; ++k) {
                S alpha = S(static_cast<long long>(k)) * (S(2) - beta) / r1;
                csv << scalar_traits<S>::to_decimal(beta) << ','
                    << scalar_traits<S>::to_decimal(alpha) << ',';
                std::string n_s, jlo_s, jhi_s, ah_s, res_s, err_s, tr_s;
                try {
                    BetaParams<S> p{beta, alpha};
                    auto map = beta_map(p);
                    Ternary t = is_transitive(map);
                    tr_s = t == Ternary::Yes ? "true" : (t == Ternary::No ? "false" : "uncertain");
                    if (t == Ternary::No) {
                        auto data = renormalize(p);
                        n_s = std::to_string(data.n);
                        jlo_s = scalar_traits<S>::to_decimal(data.j.lo);
                        jhi_s = scalar_traits<S>::to_decimal(data.j.hi);
                        ah_s = scalar_traits<S>::to_decimal(data.renormalized.alpha);
                        res_s = scalar_traits<S>::to_decimal(
                            std::max(data.invariance_residual, data.conjugacy_residual));
                    }
                } catch (const error& e) {
                    err_s = errc_name(e.code());
                }
                csv << tr_s << ',' << n_s << ',' << jlo_s << ',' << jhi_s << ',' << ah_s << ','
                    << res_s << ',' << err_s << '\n';
            }
        }
        emit(a, csv.str());
        return 0;
    }

    fail(errc::invalid_params, "unknown verb " + a.verb);
}

inline int run(int argc, char** argv)
{
    Args a;
    CLI::App app{"shadowing analysis for discontinuous piecewise affine interval maps"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* s) {
        s->add_flag("--exact", a.exact, "exact rational arithmetic");
        s->add_option("--format", a.format, "output format (json)");
        s->add_option("--out", a.out, "write output to a file instead of stdout");
        s->add_option("--seed", a.seed, "reserved for sampling front ends");
    };
    auto add_map = [&](CLI::App* s) {
        s->add_option("--beta", a.beta, "slope of the two-branch family");
        s->add_option("--alpha", a.alpha, "offset of the two-branch family");
        s->add_option("--map", a.map_file, "JSON file describing a general map");
    };

    CLI::App* s;
    s = app.add_subcommand("map-info", "structural data and transitivity verdict");
    add_map(s), add_common(s);

    s = app.add_subcommand("iterate", "forward orbit of a point");
    add_map(s), add_common(s);
    s->add_option("--x", a.x, "starting point");
    s->add_option("--length", a.length, "number of steps");

    s = app.add_subcommand("validate", "check the pseudo-orbit gap condition");
    add_map(s), add_common(s);
    s->add_option("--orbit", a.orbit, "comma separated points");
    s->add_option("--orbit-file", a.orbit_file, "JSON array or pseudo-orbit object");
    s->add_option("--delta", a.delta, "gap bound");

    s = app.add_subcommand("shadow-check", "decide finite epsilon-shadowability");
    add_map(s), add_common(s);
    s->add_option("--orbit", a.orbit, "comma separated points");
    s->add_option("--orbit-file", a.orbit_file, "JSON array or pseudo-orbit object");
    s->add_option("--delta", a.delta, "gap bound");
    s->add_option("--epsilon", a.epsilon, "shadowing radius");
    s->add_option("--max-pieces", a.max_pieces, "piece cap for the decision procedure");
    s->add_option("--samples", a.samples, "also run the sampling oracle with this many points");

    s = app.add_subcommand("witness", "construct and certify a non-shadowable pseudo-orbit");
    add_map(s), add_common(s);
    s->add_option("--epsilon", a.epsilon, "shadowing radius to defeat");
    s->add_option("--delta", a.delta, "gap bound (default: half the admissible scale)");
    s->add_option("--max-depth", a.max_depth, "preimage search depth cap");
    s->add_option("--max-pieces", a.max_pieces, "piece cap for certification");

    s = app.add_subcommand("renormalize", "return window and renormalized parameters");
    add_common(s);
    s->add_option("--beta", a.beta, "slope of the two-branch family");
    s->add_option("--alpha", a.alpha, "offset of the two-branch family");
    s->add_option("--tolerance", a.tolerance, "residual tolerance (default 1e-9)");

    s = app.add_subcommand("expand", "symbolic 0/1 coding and reconstruction");
    add_common(s);
    s->add_option("--beta", a.beta, "slope of the two-branch family");
    s->add_option("--alpha", a.alpha, "offset of the two-branch family");
    s->add_option("--x", a.x, "point to encode");
    s->add_option("--n", a.digits, "number of digits");

    s = app.add_subcommand("sweep", "parameter grid: transitivity and renormalization CSV");
    add_common(s);
    s->add_option("--beta-min", a.beta_min, "lower edge of the slope range");
    s->add_option("--beta-max", a.beta_max, "upper edge of the slope range");
    s->add_option("--grid", a.grid, "grid resolution per axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        error err(errc::parse_error, e.what());
        std::cout << error_to_json(err).dump() << "\n";
        return exit_code_for(errc::parse_error);
    }
    a.verb = app.get_subcommands().front()->get_name();

    try {
        return a.exact ? run_typed<rational>(a) : run_typed<double>(a);
    } catch (const error& e) {
        std::cout << error_to_json(e).dump() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        error err(errc::invalid_params, e.what());
        std::cout << error_to_json(err).dump() << "\n";
        return exit_code_for(errc::invalid_params);
    }
}

} // namespace cli
} // namespace betashadow
