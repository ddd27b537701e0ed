// Walkthrough of the main library entry points on a handful of maps.
// Build and run:
//   cmake --build build --target witness_tour && ./build/witness_tour
#include "betashadow/betashadow.hpp"

#include <iostream>

using namespace betashadow;

static void banner(const char* title)
{
    std::cout << "\n== " << title << " ==\n";
}

int main()
{
    std::cout.precision(17);

    banner("doubling map: orbits and coding");
    {
        BetaParams<double> p{2.0, 0.0};
        auto map = beta_map(p);
        auto orb = iterate(map, 0.625, 6);
        std::cout << "orbit of 0.625:";
        for (double v : orb.points)
            std::cout << ' ' << v;
        std::cout << "\n";
        auto ds = coding(p, 0.625, 5);
        std::cout << "digits " << digits_to_string(ds) << ", series sums to "
                  << reconstruct(ds) << "\n";
    }

    banner("a pseudo-orbit the doubling map shadows");
    {
        auto map = beta_map(BetaParams<double>{2.0, 0.0});
        // true orbit of 0.3 with a small kick in the middle
        std::vector<double> pts = iterate(map, 0.3, 8).points;
        pts[4] += 0.004;
        auto rep = check_shadowing(map, PseudoOrbit<double>{pts, 0.01}, 0.05);
        std::cout << "status: " << shadow_status_name(rep.status);
        if (rep.witness)
            std::cout << ", witness starts at " << *rep.witness;
        std::cout << "\n";
    }

    banner("defeating shadowing: transitive two-branch map");
    {
        auto map = beta_map(BetaParams<double>{1.9, 0.05});
        double eps = 0.05;
        auto tr = theorem_a_witness(map, eps);
        std::cout << "strategy " << tr.strategy << ", length " << tr.pseudo.points.size()
                  << ", delta " << tr.pseudo.delta << ", certified "
                  << (tr.certified ? "yes" : "no") << "\n";
    }

    banner("a map with genuine finite shadowing");
    {
        // both branches of the doubling map are onto, so every pseudo-orbit
        // can be traced backwards to an exact shadow; witnesses cannot exist
        auto map = beta_map(BetaParams<double>{2.0, 0.0});
        auto tr = theorem_a_witness(map, 0.1);
        std::cout << "construction ran, certified " << (tr.certified ? "yes" : "no")
                  << " (expected no: this map shadows everything)\n";
    }

    banner("non-transitive parameters: renormalize and lift");
    {
        BetaParams<double> p{1.35, 0.33};
        auto map = beta_map(p);
        Ternary t = is_transitive(map);
        std::cout << "transitive: "
                  << (t == Ternary::Yes ? "yes" : (t == Ternary::No ? "no" : "uncertain"))
                  << "\n";
        if (t == Ternary::No) {
            auto data = renormalize(p);
            std::cout << "window (" << data.j.lo << ", " << data.j.hi << "), return time "
                      << data.n << ", renormalized beta " << data.renormalized.beta
                      << ", alpha " << data.renormalized.alpha << "\n";
            double eps = data.j.width() / 4.0;
            auto tr = theorem_b_witness(p, eps);
            std::cout << "lifted witness: length " << tr.pseudo.points.size() << ", certified "
                      << (tr.certified ? "yes" : "no") << "\n";
        }
    }

    banner("exact arithmetic");
    {
        using R = rational;
        BetaParams<R> p{R(3) / 2, R(1) / 8};
        auto map = beta_map(p);
        auto orb = iterate(map, R(1) / 3, 5);
        std::cout << "orbit of 1/3 under beta=3/2, alpha=1/8:";
        for (const R& v : orb.points)
            std::cout << ' ' << scalar_traits<R>::to_decimal(v);
        std::cout << "\n";
    }
    return 0;
}
