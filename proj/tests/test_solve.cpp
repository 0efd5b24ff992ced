#include <catch2/catch_amalgamated.hpp>

#include <ohara/engine.hpp>
#include <ohara/solve.hpp>

#include "oracles.hpp"

#include <random>
#include <stdexcept>
#include <vector>

using namespace ohara;
using Catch::Matchers::ContainsSubstring;

namespace {

sequence_spec three_cycle_spec(ZZ horizon = 64)
{
        std::vector<table_entry> tab = {
            {3, bound(4), bound(5), ZZ(4)},
            {4, bound(5), bound(3), ZZ(5)},
            {5, bound(3), bound(4), ZZ(3)},
        };
        return sequence_spec(rule_kind::table, horizon, 2, tab);
}

/* chain 1 -> 2 -> 4: firing at 1 trades 4 ones for 2 twos, firing at 2
 * trades 2 twos for 1 four */
sequence_spec chain_spec(ZZ horizon = 64)
{
        std::vector<table_entry> tab = {
            {1, bound::inf(), bound(4), {}},
            {2, bound(2), bound(2), ZZ(1)},
            {4, bound(1), bound::inf(), ZZ(2)},
        };
        return sequence_spec(rule_kind::table, horizon, 2, tab);
}

} // namespace

TEST_CASE("one-pass chain solver")
{
        path_system chain({1, 2, 4},
                          {bound::inf(), bound(2), bound(1)},
                          {bound(4), bound(2), bound::inf()});
        solve_result r = solve_path_closed_form(chain, {7, 1, 0});
        CHECK(r.k == zvec{1, 1, 0});
        CHECK(r.s == zvec{3, 1, 1});
        CHECK(r.steps == 2);

        /* nothing to fire */
        solve_result idle = solve_path_closed_form(chain, {3, 1, 0});
        CHECK(idle.s == zvec{3, 1, 0});
        CHECK(idle.steps == 0);

        /* membership of the start point */
        CHECK_THROWS_AS(solve_path_closed_form(chain, {3, 2, 0}),
                        std::domain_error);
        CHECK_THROWS_AS(solve_path_closed_form(chain, {-1, 0, 0}),
                        std::domain_error);
        CHECK_THROWS_AS(solve_path_closed_form(chain, {3, 1}),
                        std::domain_error);

        /* construction checks */
        CHECK_THROWS_AS(path_system({}, {}, {}), std::domain_error);
        CHECK_THROWS_AS(path_system({1, 2},
                                    {bound::inf(), bound(2)},
                                    {bound::inf(), bound(2)}),
                        std::domain_error);
        CHECK_THROWS_AS(path_system({1, 2},
                                    {bound::inf(), bound(3)},
                                    {bound(4), bound::inf()}),
                        std::domain_error);
        CHECK_THROWS_AS(path_system({0, 2},
                                    {bound::inf(), bound(2)},
                                    {bound(4), bound::inf()}),
                        std::domain_error);
}

TEST_CASE("chain solver agrees with the stepping engine")
{
        sequence_spec spec = chain_spec();
        graph_component comp = component_of(spec, 2);
        REQUIRE(comp.kind == component_kind::path);
        REQUIRE(comp.vertices == std::vector<ZZ>{1, 2, 4});
        path_system chain = path_system_of(spec, comp);

        for (long m1 = 0; m1 <= 11; ++m1) {
                for (long m2 = 0; m2 <= 1; ++m2) {
                        if (m1 == 0 && m2 == 0)
                                continue;
                        partition lam;
                        lam.set(1, m1);
                        lam.set(2, m2);
                        trace ref = psi_naive(spec, lam);
                        fast_result fast = psi_fast(spec, lam);
                        CHECK(fast.image == ref.final);
                        CHECK(fast.steps == ref.step_count);

                        solve_result r = solve_path_closed_form(
                            chain, {m1, m2, 0});
                        partition want;
                        want.set(1, r.s[0]);
                        want.set(2, r.s[1]);
                        want.set(4, r.s[2]);
                        CHECK(want == ref.final);
                        CHECK(r.steps == ref.step_count);
                }
        }
}

TEST_CASE("fixed point cycle solver")
{
        cycle_system ex({3, 4, 5}, {4, 5, 3}, {5, 3, 4});
        solve_result r = solve_cycle_fast(ex, {3, 4, 2});
        CHECK(r.k == zvec{3, 4, 2});
        CHECK(r.s == zvec{4, 2, 3});
        CHECK(r.steps == 9);

        CHECK_THROWS_AS(solve_cycle_fast(ex, {4, 0, 0}), std::domain_error);
        CHECK_THROWS_AS(solve_cycle_fast(ex, {0, 0}), std::domain_error);
        CHECK_THROWS_AS(
            solve_cycle_fast(cycle_system({1, 1}, {QQ(1, 2), 2},
                                          {2, QQ(1, 2)}),
                             {0, 0}),
            std::domain_error);
}

TEST_CASE("pass map regression")
{
        /* The pass predicate F(x) <= x alternates on this system
         * (F,T,F,T over x = 0..3), so any bisection on it lands on a
         * non-solution; the monotone iteration must still find the
         * least fixed point. */
        cycle_system sys({1, 1}, {2, 3}, {3, 2});
        solve_result r = solve_cycle_fast(sys, {1, 2});
        CHECK(r.k == zvec{1, 2});
        CHECK(r.s == zvec{2, 1});
        CHECK(r.steps == 3);

        /* closed-form property of the answer */
        zvec t{1, 2};
        for (size_t j = 0; j < 2; ++j) {
                ZZ num = t[j] + numerator(sys.a[j]) * r.k[(j + 1) % 2];
                CHECK(r.k[j] == floor_div(num, numerator(sys.b[j])));
        }

        oracles::scan_run want = oracles::run_cycle_by_scan(sys, {1, 2});
        CHECK(want.k == r.k);
}

TEST_CASE("cycle solvers agree on sampled systems")
{
        std::mt19937_64 rng(41);
        for (const cycle_system &sys : oracles::sample_cycle_systems(20, 43)) {
                for (int rep = 0; rep < 4; ++rep) {
                        zvec t(sys.m());
                        qvec tq(sys.m());
                        for (size_t j = 0; j < sys.m(); ++j) {
                                long top = static_cast<long>(
                                    numerator(sys.a[j]));
                                t[j] = static_cast<long>(rng() % top);
                                tq[j] = t[j];
                        }
                        solve_result fast = solve_cycle_fast(sys, t);
                        psi_result cont = psi_continuous(sys, tq);
                        CHECK(fast.k == cont.k);
                        CHECK(fast.steps == cont.steps);
                        for (size_t j = 0; j < sys.m(); ++j)
                                CHECK(QQ(fast.s[j]) == cont.s[j]);
                }
        }
}

TEST_CASE("stiff systems are refused up front")
{
        cycle_system stiff({1, 1, 1}, {1024, 729, 3125}, {3125, 1024, 729});
        CHECK(max_steps_formula(stiff) > 1000000);
        CHECK_THROWS_WITH(solve_cycle_fast(stiff, {0, 0, 0}),
                          ContainsSubstring("stiff"));
}

TEST_CASE("systems built from a rule spec")
{
        sequence_spec spec = three_cycle_spec();
        graph_component comp = component_of(spec, 4);
        REQUIRE(comp.kind == component_kind::cycle);
        CHECK(comp.vertices == std::vector<ZZ>{3, 5, 4});

        cycle_system sys = cycle_system_of(spec, comp);
        CHECK(sys.i == qvec{3, 4, 5});
        CHECK(sys.a == qvec{4, 5, 3});
        CHECK(sys.b == qvec{5, 3, 4});
}

TEST_CASE("full map through the closed forms")
{
        sequence_spec spec = three_cycle_spec();
        fast_result r = psi_fast(spec, partition::parse("3^3 4^4 5^2 7^2"));
        CHECK(r.image == partition::parse("3^4 4^2 5^3 7^2"));
        CHECK(r.steps == 9);

        /* a 3-cycle does not fit under a 2-cycle solver limit */
        CHECK_THROWS_AS(psi_fast(spec, partition::parse("3^3"), 2),
                        std::domain_error);
}

TEST_CASE("closed forms match the engine on builtin rules")
{
        for (const char *name :
             {"distinct_odd", "odd_distinct", "mod3", "multiply:3"}) {
                sequence_spec spec = make_builtin(name, 64);
                auto a_of = [&spec](const ZZ &p) { return spec.a(p); };
                for (long n = 1; n <= 12; ++n) {
                        for_each_partition(n, a_of, [&](const partition &lam) {
                                trace ref = psi_naive(spec, lam);
                                fast_result fast = psi_fast(spec, lam);
                                CHECK(fast.image == ref.final);
                                CHECK(fast.steps == ref.step_count);
                        });
                }
        }
}

TEST_CASE("runs past the horizon are refused, not truncated")
{
        sequence_spec low = make_builtin("odd_distinct", 8);
        CHECK_THROWS_WITH(psi_fast(low, partition::parse("3^4")),
                          ContainsSubstring("horizon"));

        sequence_spec high = make_builtin("odd_distinct", 64);
        fast_result r = psi_fast(high, partition::parse("3^4"));
        CHECK(r.image == partition::parse("12"));
        CHECK(r.steps == 3);
}
