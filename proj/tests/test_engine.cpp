#include <catch2/catch_amalgamated.hpp>

#include <ohara/engine.hpp>
#include <ohara/io.hpp>

#include "oracles.hpp"

#include <stdexcept>
#include <vector>

using namespace ohara;

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

std::vector<strategy> all_strategies()
{
        return {{strategy_kind::min_part, 0},
                {strategy_kind::max_part, 0},
                {strategy_kind::fifo, 0},
                {strategy_kind::random_pick, 0},
                {strategy_kind::random_pick, 1},
                {strategy_kind::random_pick, 42}};
}

} // namespace

TEST_CASE("three-part trading run")
{
        sequence_spec spec = three_cycle_spec();
        partition lam = partition::parse("3^3 4^4 5^2");
        trace tr = psi_naive(spec, lam);
        CHECK(tr.final.str() == "3^4 4^2 5^3");
        CHECK(tr.step_count == 9);
        CHECK(tr.firings == 9);
        CHECK(tr.initial == lam);
        CHECK(replay(spec, tr) == tr.final);

        for (const strategy &st : all_strategies()) {
                trace other = psi_naive(spec, lam, st);
                CHECK(other.final == tr.final);
                CHECK(other.step_count == tr.step_count);
                CHECK(replay(spec, other) == other.final);
        }

        trace speedy = psi_speedy(spec, lam);
        CHECK(speedy.final == tr.final);
        CHECK(speedy.step_count == tr.step_count);
        CHECK(speedy.firings <= tr.firings);
        CHECK(replay(spec, speedy) == speedy.final);
}

TEST_CASE("a power of two melts to all ones")
{
        sequence_spec spec = make_builtin("distinct_odd", 64);
        trace tr = psi_naive(spec, partition::parse("8"));
        CHECK(tr.final.str() == "1^8");
        CHECK(tr.step_count == 7);

        /* and the same through the batching engine */
        trace sp = psi_speedy(spec, partition::parse("8"));
        CHECK(sp.final.str() == "1^8");
        CHECK(sp.step_count == 7);
}

TEST_CASE("distinct-to-odd run agrees with the digit map everywhere")
{
        sequence_spec spec = make_builtin("distinct_odd", 64);
        auto a_of = [&spec](const ZZ &p) { return spec.a(p); };
        for (long n = 1; n <= 12; ++n) {
                for (const partition &lam :
                     enumerate_partitions(ZZ(n), a_of)) {
                        trace tr = psi_naive(spec, lam);
                        CHECK(tr.final == glaisher_image(lam, 2));
                        CHECK(tr.final ==
                              oracles::glaisher_distinct_to_odd(lam));
                        CHECK(glaisher_preimage(tr.final, 2) == lam);
                }
        }
}

TEST_CASE("base-three digit maps and the residue rule")
{
        sequence_spec spec = make_builtin("mod3", 64);
        auto a_of = [&spec](const ZZ &p) { return spec.a(p); };
        for (long n = 1; n <= 10; ++n) {
                for (const partition &lam :
                     enumerate_partitions(ZZ(n), a_of)) {
                        trace tr = psi_naive(spec, lam);
                        CHECK(tr.final == ternary_image(lam));
                }
        }
        /* worked instance: 1 + 2 + 4 pools to l = 7 = (21)_3 on core 1,
         * so the image is 1^1 3^2 */
        CHECK(ternary_image(partition::parse("1 2 4")).str() == "1 3^2");
}

TEST_CASE("multiply rule beyond base two")
{
        sequence_spec spec = make_builtin("multiply:3", 81);
        auto a_of = [&spec](const ZZ &p) { return spec.a(p); };
        for (long n = 1; n <= 10; ++n) {
                for (const partition &lam :
                     enumerate_partitions(ZZ(n), a_of)) {
                        trace tr = psi_naive(spec, lam);
                        CHECK(tr.final == glaisher_image(lam, 3));
                        CHECK(glaisher_preimage(tr.final, 3) == lam);
                }
        }
}

TEST_CASE("identity rule does nothing")
{
        sequence_spec spec = make_builtin("identity", 64);
        partition lam = partition::parse("1^3 2 5^7");
        trace tr = psi_naive(spec, lam);
        CHECK(tr.final == lam);
        CHECK(tr.step_count == 0);
}

TEST_CASE("membership and budget refusals")
{
        sequence_spec spec = three_cycle_spec();
        /* 3^4 is outside the source set (a_3 = 4) */
        CHECK_THROWS_AS(psi_naive(spec, partition::parse("3^4")),
                        std::domain_error);

        partition lam = partition::parse("3^3 4^4 5^2");
        run_options opt;
        opt.budget = 8; /* the run needs 9 */
        CHECK_THROWS_AS(run_map(spec, lam, opt), std::domain_error);
        opt.budget = 9;
        CHECK(run_map(spec, lam, opt).step_count == 9);
}

TEST_CASE("firable part with no feeder refuses at run time")
{
        /* this table fails validate (nothing maps to 2); the engine
         * still refuses cleanly instead of guessing */
        sequence_spec orphan(rule_kind::table, 10, 2,
                             {{2, bound::inf(), bound(1), std::nullopt}});
        CHECK_THROWS_AS(psi_naive(orphan, partition::parse("2")),
                        std::domain_error);
}

TEST_CASE("horizon escape refuses rather than truncates")
{
        sequence_spec spec = make_builtin("odd_distinct", 8);
        /* 3^4 -> 6^2 -> 12, but 12 is past the horizon */
        CHECK_THROWS_AS(psi_naive(spec, partition::parse("3^4")),
                        std::domain_error);
        sequence_spec wide = make_builtin("odd_distinct", 64);
        trace tr = psi_naive(wide, partition::parse("3^4"));
        CHECK(tr.final.str() == "12");
        CHECK(tr.step_count == 3);
}

TEST_CASE("trace recording can be disabled")
{
        sequence_spec spec = three_cycle_spec();
        partition lam = partition::parse("3^3 4^4 5^2");
        run_options opt;
        opt.record_steps = false;
        trace tr = run_map(spec, lam, opt);
        CHECK(tr.steps.empty());
        CHECK(!tr.recorded);
        CHECK(tr.step_count == 9);
        CHECK(tr.final.str() == "3^4 4^2 5^3");
}

TEST_CASE("strategy independence on mixed inputs")
{
        sequence_spec spec = make_builtin("distinct_odd", 128);
        auto a_of = [&spec](const ZZ &p) { return spec.a(p); };
        for (long n : {9L, 13L, 14L}) {
                for (const partition &lam :
                     enumerate_partitions(ZZ(n), a_of)) {
                        trace ref = psi_naive(spec, lam);
                        for (const strategy &st : all_strategies()) {
                                trace tr = psi_naive(spec, lam, st);
                                CHECK(tr.final == ref.final);
                                CHECK(tr.step_count == ref.step_count);
                        }
                }
        }
}

TEST_CASE("trace serialization round trips")
{
        sequence_spec spec = three_cycle_spec();
        trace tr = psi_naive(spec, partition::parse("3^3 4^4 5^2"));
        json j = json_of_trace(tr);
        CHECK(j.at("step_count").get<std::string>() == "9");
        CHECK(j.at("initial") == json_of_partition(tr.initial));
        CHECK(j.at("final") == json_of_partition(tr.final));
        CHECK(j.at("steps").size() == 9);
        /* replaying the serialized steps lands on the same partition */
        trace back;
        back.initial = partition_of_json(j.at("initial"));
        for (const json &row : j.at("steps"))
                back.steps.push_back(
                    {parse_zz(row.at("part").get<std::string>()),
                     parse_zz(row.at("reps").get<std::string>())});
        CHECK(replay(spec, back) == tr.final);
}
