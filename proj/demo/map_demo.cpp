/* Small tour of the library: run the classic odd/distinct rewriting on
 * a single staircase partition, then solve one three-part cycle system
 * both ways. */

#include <ohara/ohara.hpp>

#include <iostream>

int main()
{
        using namespace ohara;

        sequence_spec odd = make_builtin("distinct_odd", 64);
        partition lam = partition::parse("12^1 9^1 5^1 2^1");
        trace tr = psi_naive(odd, lam);
        std::cout << "distinct " << lam.str() << "  ->  odd "
                  << tr.final.str() << "  in " << tr.step_count
                  << " steps\n";

        fast_result fr = psi_fast(odd, lam);
        std::cout << "closed form agrees: "
                  << (fr.image == tr.final ? "yes" : "NO") << "\n";

        cycle_system sys({3, 4, 5}, {4, 5, 3}, {5, 3, 4});
        psi_result r = psi_continuous(sys, {3, 4, 2});
        std::cout << "cycle run: s = ";
        for (const QQ &x : r.s)
                std::cout << frac_str(x) << ' ';
        std::cout << " L = " << r.steps << "\n";
        std::cout << "worst case over the box: " << max_steps_formula(sys)
                  << "\n";
        return 0;
}
