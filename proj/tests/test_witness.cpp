#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace betashadow;
using Catch::Approx;

namespace {

const BetaParams<double> kSteep{1.9, 0.05};

PiecewiseAffineMap<double> lorenz_like()
{
    return PiecewiseAffineMap<double>({0.5}, {{1.6, 0.1}, {1.6, -0.7}}, {Side::Right});
}

} // namespace

TEST_CASE("margin analysis for the climb constructions")
{
    auto m = beta_map(kSteep);

    auto mg = witness_margins(m, 0, 0.05);
    REQUIRE(mg.min_cell == Approx(0.5));
    REQUIRE(mg.min_jump == Approx(1.0));
    REQUIRE(mg.epsilon_max == Approx(std::min(0.5, 1.0 / 2.9)));
    // breakpoint image is 0 here, so eta = min(eps, min_cell - eps) / 2
    REQUIRE(mg.eta == Approx(0.025));

    // with a positive breakpoint image the left limit enters the minimum
    auto lm = lorenz_like();
    auto lg = witness_margins(lm, 0, 0.05);
    REQUIRE(lg.min_jump == Approx(0.8));
    REQUIRE(lg.eta == Approx(0.5 * std::min({0.05, 0.45, 0.9})));

    SECTION("epsilon beyond the cell width is refused")
    {
        try {
            witness_margins(m, 0, 0.5);
            FAIL("expected epsilon_too_large");
        } catch (const error& e) {
            REQUIRE(e.code() == errc::epsilon_too_large);
        }
    }

    SECTION("epsilon eating the jump is refused")
    {
        // jump 1 vs (1+1.9)*0.4 = 1.16
        REQUIRE_THROWS_AS(witness_margins(m, 0, 0.4), error);
    }

    SECTION("left-side breakpoints are the wrong shape")
    {
        PiecewiseAffineMap<double> left({0.5}, {{1.6, 0.1}, {1.6, -0.7}}, {Side::Left});
        try {
            witness_margins(left, 0, 0.05);
            FAIL("expected wrong_case");
        } catch (const error& e) {
            REQUIRE(e.code() == errc::wrong_case);
        }
    }
}

TEST_CASE("case 1 climb has the documented shape")
{
    auto m = lorenz_like();
    double eps = 0.05, delta = 0.0125;
    auto tr = case1_witness(m, 0, eps, delta);

    REQUIRE(tr.case_tag == WitnessCase::Case1);
    REQUIRE(tr.strategy == "climb");
    const auto& pts = tr.pseudo.points;
    REQUIRE(pts.size() == tr.m + 3);
    REQUIRE(pts[0] == 0.5);

    // the climb entries are true iterates of y reaching z_k exactly enough
    REQUIRE(pts[1] == tr.y);
    double v = tr.y;
    for (std::size_t i = 0; i < tr.m; ++i)
        v = m.evaluate(v);
    REQUIRE(v == Approx(0.5).margin(1e-9));

    // y sits in the dip window just under the breakpoint image f(z_k) = 0.1
    REQUIRE(tr.y > 0.1 - delta - 1e-12);
    REQUIRE(tr.y < 0.1);

    // final nudge is half a delta to the side opposing the orientation
    double pert = pts[pts.size() - 2];
    REQUIRE(std::abs(pert - 0.5) == Approx(delta / 2));
    REQUIRE(yes(validate_pseudo_orbit(m, pts, delta).valid));

    // and it works
    auto rep = check_shadowing(m, tr.pseudo, eps);
    REQUIRE(rep.status == ShadowStatus::NotShadowed);
}

TEST_CASE("case 2 climb has the documented shape")
{
    auto m = beta_map(kSteep);
    double eps = 0.1, delta = 0.025;
    auto tr = case2_witness(m, 0, eps, delta);

    REQUIRE(tr.case_tag == WitnessCase::Case2);
    REQUIRE(tr.w.has_value());
    REQUIRE(tr.l.has_value());
    const auto& pts = tr.pseudo.points;
    REQUIRE(pts.size() == tr.m + *tr.l + 3);
    REQUIRE(pts[0] == 0.5);
    REQUIRE(pts[1] == tr.y);
    REQUIRE(tr.y > 0.0);
    REQUIRE(tr.y < delta);
    REQUIRE(pts[tr.m + 1] == 0.5); // climb returns to the breakpoint
    REQUIRE(pts[tr.m + 2] == *tr.w);
    REQUIRE(yes(validate_pseudo_orbit(m, pts, delta).valid));
}

TEST_CASE("window drag defeats shadowing where the climb cannot")
{
    auto m = beta_map(kSteep);
    double eps = 0.05, delta = 0.0125;

    auto dt = drag_witness(m, 0, eps, delta);
    REQUIRE(dt.has_value());
    REQUIRE(dt->strategy == "drag");
    REQUIRE(yes(validate_pseudo_orbit(m, dt->pseudo.points, delta).valid));
    auto rep = check_shadowing(m, dt->pseudo, eps);
    REQUIRE(rep.status == ShadowStatus::NotShadowed);

    // the same run in exact arithmetic
    auto me = beta_map(BetaParams<rational>{rational(19) / 10, rational(1) / 20});
    auto de = drag_witness(me, 0, rational(1) / 20, rational(1) / 80);
    REQUIRE(de.has_value());
    auto repe = check_shadowing(me, de->pseudo, rational(1) / 20);
    REQUIRE(repe.status == ShadowStatus::NotShadowed);
    REQUIRE_FALSE(oracles::itinerary_shadow_exists(me, de->pseudo.points, rational(1) / 20));
}

TEST_CASE("window drag stalls honestly when the pin is stuck")
{
    // f(c) = 0 and 0 is fixed: no room below the pinned orbit, ever
    auto m = beta_map(BetaParams<double>{2.0, 0.0});
    auto dt = drag_witness(m, 0, 0.05, 0.0125);
    REQUIRE_FALSE(dt.has_value());
}

TEST_CASE("drag preconditions")
{
    auto m = beta_map(kSteep);
    REQUIRE_THROWS_AS(drag_witness(m, 1, 0.05, 0.0125), error);   // bad index
    REQUIRE_THROWS_AS(drag_witness(m, 0, 0.05, 0.05), error);     // delta >= eps
    REQUIRE_THROWS_AS(drag_witness(m, 0, 0.4, 0.01), error);      // jump margin

    PiecewiseAffineMap<double> neg({0.5}, {{-1.5, 0.9}, {1.5, -0.5}}, {Side::Right});
    REQUIRE_THROWS_AS(drag_witness(neg, 0, 0.01, 0.001), error);  // negative slope
}

TEST_CASE("end-to-end dispatch certifies the standard instances")
{
    SECTION("steep two-branch maps go through the drag")
    {
        for (auto pr : {BetaParams<double>{1.9, 0.05}, BetaParams<double>{1.8, 0.1}}) {
            for (double eps : {0.05, 0.02}) {
                auto m = beta_map(pr);
                auto tr = theorem_a_witness(m, eps);
                REQUIRE(tr.certified);
                REQUIRE(tr.strategy == "drag");
                auto mg = witness_margins(m, 0, eps);
                REQUIRE(tr.pseudo.delta == Approx(mg.eta / 2));
            }
        }
    }

    SECTION("a positive breakpoint image goes through the case 1 climb")
    {
        auto tr = theorem_a_witness(lorenz_like(), 0.05);
        REQUIRE(tr.certified);
        REQUIRE(tr.strategy == "climb");
        REQUIRE(tr.case_tag == WitnessCase::Case1);
    }

    SECTION("the doubling map yields only an uncertified candidate")
    {
        // both branches are onto, so every pseudo-orbit is shadowable and
        // no certified witness can exist; the dispatcher still returns its
        // best attempt with certified = false
        auto tr = theorem_a_witness(beta_map(BetaParams<double>{2.0, 0.0}), 0.05);
        REQUIRE_FALSE(tr.certified);
        auto rep = check_shadowing(beta_map(BetaParams<double>{2.0, 0.0}), tr.pseudo, 0.05);
        REQUIRE(rep.status == ShadowStatus::Shadowed);
    }

    SECTION("left-side maps are handled through reflection")
    {
        // mirror image of the steep parameter map: same branches, left side
        PiecewiseAffineMap<double> left({0.5}, {{1.9, 0.05}, {1.9, -0.95}}, {Side::Left});
        auto tr = theorem_a_witness(left, 0.05);
        REQUIRE(tr.reflected);
        REQUIRE(tr.certified);
        REQUIRE(yes(validate_pseudo_orbit(left, tr.pseudo.points, tr.pseudo.delta).valid));
    }

    SECTION("non-transitive parameter maps are redirected")
    {
        auto m = beta_map(BetaParams<double>{1.35, 0.33});
        try {
            theorem_a_witness(m, 0.05);
            FAIL("expected not_transitive");
        } catch (const error& e) {
            REQUIRE(e.code() == errc::not_transitive);
        }
    }

    SECTION("hopeless epsilon reports epsilon_too_large")
    {
        auto m = beta_map(kSteep);
        try {
            theorem_a_witness(m, 0.6);
            FAIL("expected epsilon_too_large");
        } catch (const error& e) {
            REQUIRE(e.code() == errc::epsilon_too_large);
        }
    }
}

TEST_CASE("dispatch in exact arithmetic certifies and stays exact")
{
    auto m = beta_map(BetaParams<rational>{rational(19) / 10, rational(1) / 20});
    auto tr = theorem_a_witness(m, rational(1) / 20);
    REQUIRE(tr.certified);
    REQUIRE(tr.strategy == "drag");
    // drag gaps are exactly delta/2, or smaller at the floor, or zero
    for (std::size_t i = 0; i + 1 < tr.pseudo.points.size(); ++i) {
        rational gap = abs_val(
            rational(m.evaluate(tr.pseudo.points[i]) - tr.pseudo.points[i + 1]));
        REQUIRE((gap == 0 || gap <= tr.pseudo.delta / 2));
    }
}
