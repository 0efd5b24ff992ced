#include <catch2/catch_amalgamated.hpp>

#include <ohara/engine.hpp>
#include <ohara/families.hpp>
#include <ohara/solve.hpp>

#include <stdexcept>

using namespace ohara;

TEST_CASE("prime sieve and primality helper")
{
        CHECK(primes_below(20) == std::vector<long>{2, 3, 5, 7, 11, 13, 17, 19});
        CHECK(primes_below(2).empty());
        CHECK(is_prime_zz(2));
        CHECK(is_prime_zz(97));
        CHECK(!is_prime_zz(1));
        CHECK(!is_prime_zz(91));
}

TEST_CASE("three-prime trading cycle")
{
        family_instance inst = make_prime_cycle({3, 5, 7});
        CHECK(inst.lambda == partition::parse("3^4 5^6 7^2"));
        REQUIRE(inst.predicted.has_value());
        CHECK(*inst.predicted == 12);
        CHECK(!validate(inst.spec));

        trace tr = psi_naive(inst.spec, inst.lambda);
        CHECK(tr.step_count == *inst.predicted);
        CHECK(tr.final == partition::parse("3^6 5^2 7^4"));

        fast_result fast = psi_fast(inst.spec, inst.lambda);
        CHECK(fast.steps == tr.step_count);
        CHECK(fast.image == tr.final);

        CHECK_THROWS_AS(make_prime_cycle({3, 5, 6}), std::domain_error);
        CHECK_THROWS_AS(make_prime_cycle({5, 3, 7}), std::domain_error);
        CHECK_THROWS_AS(make_prime_cycle({}), std::domain_error);
}

TEST_CASE("nested prime blocks")
{
        family_instance inst = make_nested_cycles(2);
        CHECK(inst.family == "nested_cycles");
        CHECK(inst.params == zvec{2});
        /* block k = 2 is the primes indexed 2..4 */
        CHECK(inst.lambda == partition::parse("3^4 5^6 7^2"));
        REQUIRE(inst.predicted.has_value());
        CHECK(*inst.predicted == 12);

        CHECK_THROWS_AS(make_nested_cycles(1), std::domain_error);
        CHECK_THROWS_AS(make_nested_cycles(6), std::domain_error);
}

TEST_CASE("slow chain family")
{
        family_instance one = make_path_loglog(1);
        CHECK(one.lambda == partition::parse("1^2"));
        REQUIRE(one.predicted.has_value());
        CHECK(*one.predicted == 1);
        trace tr1 = psi_naive(one.spec, one.lambda);
        CHECK(tr1.step_count == 1);
        CHECK(tr1.final == partition::parse("2"));

        family_instance two = make_path_loglog(2);
        CHECK(two.lambda == partition::parse("1^12"));
        REQUIRE(two.predicted.has_value());
        CHECK(*two.predicted == 10);
        trace tr2 = psi_naive(two.spec, two.lambda);
        CHECK(tr2.step_count == 10);
        CHECK(tr2.final == partition::parse("6^2"));

        /* the closed-form prediction stays exact as the chain grows */
        family_instance three = make_path_loglog(3);
        trace tr3 = psi_naive(three.spec, three.lambda);
        CHECK(tr3.step_count == *three.predicted);
        fast_result fr3 = psi_fast(three.spec, three.lambda);
        CHECK(fr3.steps == *three.predicted);
        CHECK(fr3.image == tr3.final);

        CHECK_THROWS_AS(make_path_loglog(0), std::domain_error);
        CHECK_THROWS_AS(make_path_loglog(7), std::domain_error);
}

TEST_CASE("batching showcase chain")
{
        family_instance inst = make_speedy_path(5);
        CHECK(inst.lambda == partition::parse("9^18"));
        REQUIRE(inst.predicted.has_value());
        CHECK(*inst.predicted == 8);

        trace batched = psi_speedy(inst.spec, inst.lambda);
        CHECK(batched.firings == 8);
        CHECK(batched.step_count == 49);
        CHECK(batched.final == partition::parse("1^60 10 14^4 18^2"));

        trace plain = psi_naive(inst.spec, inst.lambda);
        CHECK(plain.firings == 49);
        CHECK(plain.step_count == 49);
        CHECK(plain.final == batched.final);

        fast_result fast = psi_fast(inst.spec, inst.lambda);
        CHECK(fast.steps == 49);
        CHECK(fast.image == batched.final);

        CHECK_THROWS_AS(make_speedy_path(4), std::domain_error);
        CHECK_THROWS_AS(make_speedy_path(51), std::domain_error);
}

TEST_CASE("batching showcase cycle")
{
        family_instance inst = make_speedy_cycle(2, 2);
        CHECK(inst.params == zvec{2, 2});
        CHECK(inst.lambda == partition::parse("5^29 6^34"));
        REQUIRE(inst.predicted.has_value());
        CHECK(*inst.predicted == 10);
        CHECK(!validate(inst.spec));

        trace tr = psi_naive(inst.spec, inst.lambda);
        CHECK(tr.step_count == 10);
        fast_result fast = psi_fast(inst.spec, inst.lambda);
        CHECK(fast.steps == 10);
        CHECK(fast.image == tr.final);

        /* only one prime lives in (2, 4] */
        CHECK_THROWS_AS(make_speedy_cycle(1, 3), std::domain_error);
        CHECK_THROWS_AS(make_speedy_cycle(3, 1), std::domain_error);
        CHECK_THROWS_AS(make_speedy_cycle(0), std::domain_error);
        CHECK_THROWS_AS(make_speedy_cycle(25), std::domain_error);
}

TEST_CASE("family dispatch")
{
        family_instance inst = make_family("prime_cycle", {3, 5, 7});
        CHECK(inst.family == "prime_cycle");
        REQUIRE(inst.predicted.has_value());
        CHECK(*inst.predicted == 12);

        CHECK(make_family("nested_cycles", {2}).family == "nested_cycles");
        CHECK(make_family("path_loglog", {2}).lambda ==
              partition::parse("1^12"));
        CHECK(make_family("speedy_cycle", {2, 2}).params == zvec{2, 2});

        CHECK_THROWS_AS(make_family("nested_cycles", {2, 3}),
                        std::domain_error);
        CHECK_THROWS_AS(make_family("path_loglog", {}), std::domain_error);
        CHECK_THROWS_AS(make_family("speedy_path", {5, 5}),
                        std::domain_error);
        CHECK_THROWS_AS(make_family("no_such_family", {1}),
                        std::domain_error);
}

TEST_CASE("instances are deterministic")
{
        family_instance x = make_speedy_path(7);
        family_instance y = make_speedy_path(7);
        CHECK(x.lambda == y.lambda);
        CHECK(x.predicted == y.predicted);
        CHECK(x.spec.horizon() == y.spec.horizon());
        CHECK(x.predicted_what == y.predicted_what);
}
