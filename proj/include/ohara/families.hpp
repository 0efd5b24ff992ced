#pragma once

#include "cycle.hpp"
#include "numeric.hpp"
#include "partition.hpp"
#include "sequence.hpp"
#include "solve.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ohara {

/* Deterministic instance generators for the stress families: a rule
 * spec plus a starting partition, with the step count the construction
 * predicts where one is known exactly. */
struct family_instance {
        std::string family;
        zvec params;
        sequence_spec spec;
        partition lambda;
        std::optional<ZZ> predicted;
        std::string predicted_what;
};

inline bool is_prime_zz(const ZZ &n)
{
        if (n < 2)
                return false;
        for (ZZ d = 2; d * d <= n; ++d)
                if (n % d == 0)
                        return false;
        return true;
}

inline std::vector<long> primes_below(long limit)
{
        std::vector<char> composite(limit > 0 ? limit : 0, 0);
        std::vector<long> ps;
        for (long p = 2; p < limit; ++p) {
                if (composite[p])
                        continue;
                ps.push_back(p);
                for (long q = p * p; q < limit; q += p)
                        composite[q] = 1;
        }
        return ps;
}

/* Cycle on pairwise distinct primes p_1 < ... < p_m with
 * a_j = p_{j+1}, b_j = p_{j-1}: every start needs at most
 * p_1 + ... + p_m - m firings, and the bound is attained at the
 * multiplicities a_j - 1. */
inline family_instance make_prime_cycle(const zvec &ps)
{
        size_t m = ps.size();
        if (m == 0)
                refuse("prime cycle needs at least one prime");
        for (size_t j = 0; j < m; ++j) {
                if (!is_prime_zz(ps[j]))
                        refuse("parameter " + ps[j].str() + " is not prime");
                if (j > 0 && ps[j] <= ps[j - 1])
                        refuse("primes must be strictly increasing");
        }
        std::vector<table_entry> tab;
        partition lam;
        for (size_t j = 0; j < m; ++j) {
                const ZZ &a = ps[(j + 1) % m];
                const ZZ &b = ps[(j + m - 1) % m];
                tab.push_back({ps[j], bound(a), bound(b), ps[(j + 1) % m]});
                lam.set(ps[j], a - 1);
        }
        ZZ n = lam.size();
        qvec iv, av, bv;
        for (size_t j = 0; j < m; ++j) {
                iv.emplace_back(ps[j]);
                av.emplace_back(ps[(j + 1) % m]);
                bv.emplace_back(ps[(j + m - 1) % m]);
        }
        ZZ predicted = max_steps_formula(cycle_system(iv, av, bv));
        family_instance inst{
            "prime_cycle",
            ps,
            sequence_spec(rule_kind::table, n, 2, std::move(tab)),
            std::move(lam),
            predicted,
            "naive steps from the extremal start"};
        return inst;
}

/* Prime cycle whose primes are those with index in ((k-1)^(k-1), k^k];
 * k = 1 gives an empty block and is refused. */
inline family_instance make_nested_cycles(const ZZ &k)
{
        if (k < 2)
                refuse("nested cycle blocks need k >= 2");
        if (k > 5)
                refuse("nested cycle blocks above k = 5 are not desk scale");
        long kk = static_cast<long>(k);
        long lo = 1, hi = 1;
        for (long e = 0; e < kk - 1; ++e)
                lo *= kk - 1;
        for (long e = 0; e < kk; ++e)
                hi *= kk;
        /* hi-th prime is below hi * (log hi + log log hi) for hi >= 6,
         * and hi stays <= 5^5 here, so 32 * hi + 16 is a safe sieve
         * limit */
        std::vector<long> ps = primes_below(32 * hi + 16);
        check(static_cast<long>(ps.size()) >= hi, "prime sieve too small");
        zvec block;
        for (long idx = lo + 1; idx <= hi; ++idx)
                block.emplace_back(ps[idx - 1]);
        family_instance inst = make_prime_cycle(block);
        inst.family = "nested_cycles";
        inst.params = {k};
        return inst;
}

/* Chain family whose run length grows like n log log n: vertices
 * 1, 2, 3, 6, 5, 10, 7, 14, ... (alternating 2j-1 and 4j-2), all mass
 * started as 1^n with n = 2^k (2k-1)!!. */
inline family_instance make_path_loglog(const ZZ &k)
{
        if (k < 1)
                refuse("k must be >= 1");
        if (k > 6)
                refuse("k above 6 is not desk scale for this family");
        ZZ n = 1;
        for (ZZ j = 1; j <= k; ++j)
                n *= 2 * (2 * j - 1); /* 2^k (2k-1)!! */

        std::vector<table_entry> tab;
        std::vector<ZZ> verts;
        std::vector<bound> av, bv;
        for (ZZ j = 1;; ++j) {
                ZZ odd = 2 * j - 1; /* vertex 2j-1 */
                if (odd > n)
                        break;
                if (j == 1)
                        tab.push_back({odd, bound::inf(), bound(2),
                                       std::nullopt});
                else
                        tab.push_back({odd, bound(4 * j - 6), bound(2),
                                       4 * j - 6});
                verts.push_back(odd);
                av.push_back(tab.back().a);
                bv.push_back(tab.back().b);
                ZZ even = 4 * j - 2; /* vertex 4j-2 */
                if (even > n)
                        break;
                tab.push_back({even, bound(1), bound(2 * j + 1), odd});
                verts.push_back(even);
                av.push_back(tab.back().a);
                bv.push_back(tab.back().b);
        }

        partition lam;
        lam.set(1, n);
        zvec t(verts.size(), ZZ(0));
        t[0] = n;
        solve_result sr =
            solve_path_closed_form(path_system(verts, av, bv), t);

        family_instance inst{
            "path_loglog",
            {k},
            sequence_spec(rule_kind::table, n, 2, std::move(tab)),
            std::move(lam),
            sr.steps,
            "naive steps (one-pass closed form)"};
        return inst;
}

/* Chain family where the batching engine finishes in 2k-2 firings:
 * vertices 1, 6, 3, 10, 5, 14, ... and start (2k-1)^(4k-2). */
inline family_instance make_speedy_path(const ZZ &k)
{
        if (k < 5)
                refuse("the batching showcase needs k >= 5");
        if (k > 50)
                refuse("k above 50 is not desk scale for this family");
        ZZ n = (2 * k - 1) * (4 * k - 2);

        std::vector<table_entry> tab;
        tab.push_back({ZZ(1), bound(6), bound::inf(), ZZ(6)});
        for (ZZ j = 1;; ++j) {
                ZZ even = 4 * j + 2; /* vertex 4j+2 */
                if (even > n)
                        break;
                tab.push_back({even, bound(1), bound(2 * j - 1), 2 * j + 1});
                ZZ odd = 2 * j + 1; /* vertex 2j+1 */
                if (odd > n)
                        break;
                tab.push_back({odd, bound(4 * j + 6), bound(2), 4 * j + 6});
        }

        partition lam;
        lam.set(2 * k - 1, 4 * k - 2);
        family_instance inst{
            "speedy_path",
            {k},
            sequence_spec(rule_kind::table, n, 2, std::move(tab)),
            std::move(lam),
            2 * k - 2,
            "batched firings"};
        return inst;
}

/* Cycle family with superpolynomially many batched firings: positions
 * km+1 .. km+m, sides built from m distinct primes in (2^k, 2^{k+1}). */
inline family_instance make_speedy_cycle(const ZZ &k, size_t m = 3)
{
        if (k < 1 || k > 24)
                refuse("k must be between 1 and 24");
        if (m < 2)
                refuse("cycle length must be at least 2");
        long D = 1L << static_cast<long>(k);
        std::vector<long> ps;
        for (long p : primes_below(2 * D + 1))
                if (p > D)
                        ps.push_back(p);
        if (ps.size() < m)
                refuse("not enough primes between " + std::to_string(D) +
                       " and " + std::to_string(2 * D) + " for m = " +
                       std::to_string(m));
        ps.resize(m);

        zvec iv(m), av(m), bv(m);
        for (size_t j = 0; j < m; ++j)
                iv[j] = k * m + j + 1;
        for (size_t j = 0; j < m; ++j) {
                av[j] = iv[(j + 1) % m] * ps[j];
                bv[j] = iv[(j + m - 1) % m] * ps[(j + m - 1) % m];
        }

        std::vector<table_entry> tab;
        partition lam;
        for (size_t j = 0; j < m; ++j) {
                tab.push_back({iv[j], bound(av[j]), bound(bv[j]),
                               iv[(j + 1) % m]});
                lam.set(iv[j], av[j] - 1);
        }
        ZZ n = lam.size();
        qvec iq(iv.begin(), iv.end()), aq(av.begin(), av.end()),
            bq(bv.begin(), bv.end());
        ZZ predicted = max_steps_formula(cycle_system(iq, aq, bq));

        zvec params = {k, ZZ(m)};
        family_instance inst{
            "speedy_cycle",
            params,
            sequence_spec(rule_kind::table, n, 2, std::move(tab)),
            std::move(lam),
            predicted,
            "naive steps from the extremal start"};
        return inst;
}

inline family_instance make_family(const std::string &name,
                                   const zvec &params)
{
        if (name == "prime_cycle")
                return make_prime_cycle(params);
        if (name == "nested_cycles") {
                if (params.size() != 1)
                        refuse("nested_cycles takes one parameter k");
                return make_nested_cycles(params[0]);
        }
        if (name == "path_loglog") {
                if (params.size() != 1)
                        refuse("path_loglog takes one parameter k");
                return make_path_loglog(params[0]);
        }
        if (name == "speedy_path") {
                if (params.size() != 1)
                        refuse("speedy_path takes one parameter k");
                return make_speedy_path(params[0]);
        }
        if (name == "speedy_cycle") {
                if (params.size() < 1 || params.size() > 2)
                        refuse("speedy_cycle takes k and optionally m");
                size_t m = params.size() == 2
                               ? static_cast<size_t>(params[1])
                               : 3;
                return make_speedy_cycle(params[0], m);
        }
        refuse("unknown family: " + name);
}

} // namespace ohara
