#pragma once

#include "cycle.hpp"
#include "numeric.hpp"
#include "partition.hpp"
#include "sequence.hpp"
#include "solve.hpp"

#include <deque>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ohara {

/* Firing order.  Any order reaches the same endpoint; the trace
 * differs.  random draws from the currently eligible parts with a
 * fixed-width generator so runs reproduce across platforms. */
enum class strategy_kind { min_part, max_part, fifo, random_pick };

struct strategy {
        strategy_kind kind = strategy_kind::min_part;
        uint64_t seed = 0;
};

inline strategy parse_strategy(const std::string &name, uint64_t seed = 0)
{
        if (name == "min_part")
                return {strategy_kind::min_part, seed};
        if (name == "max_part")
                return {strategy_kind::max_part, seed};
        if (name == "fifo")
                return {strategy_kind::fifo, seed};
        if (name == "random")
                return {strategy_kind::random_pick, seed};
        refuse("unknown strategy: " + name);
}

struct trace_step {
        ZZ part; /* fired part */
        ZZ reps; /* repetitions batched into this firing */
};

struct trace {
        partition initial;
        partition final;
        std::vector<trace_step> steps; /* empty when not recorded */
        ZZ step_count;                 /* sum of reps */
        ZZ firings;                    /* number of batches */
        bool recorded = true;
};

struct run_options {
        strategy strat;
        bool speedy = false;       /* batch all firings at a part */
        bool record_steps = true;  /* keep the step list */
        std::optional<ZZ> budget;  /* override the default step budget */
};

/* Default budget: for cycle components twice the sharp worst-case
 * bound, for chain components the mass bound sum_j floor(n/(v_j b_j))
 * (each firing at v_j consumes v_j * b_j of the weight that ever
 * passes through v_j, which is at most n). */
inline ZZ default_budget(const sequence_spec &spec, const partition &lam)
{
        ZZ n = lam.size();
        partition graph_part;
        for (const auto &[p, m] : lam.mults())
                if (spec.in_graph(p))
                        graph_part.set(p, m);
        ZZ budget = 64;
        for (auto &[comp, piece] : decompose_support(spec, graph_part)) {
                (void)piece;
                if (comp.kind == component_kind::cycle) {
                        budget += 2 * max_steps_formula(
                                          cycle_system_of(spec, comp));
                } else {
                        for (const ZZ &v : comp.vertices) {
                                bound b = spec.b(v);
                                if (b.finite())
                                        budget += n / (v * b.value());
                        }
                }
        }
        return budget;
}

/* Step the rewriting rule until no part meets its b bound.  Every
 * firing removes b_j copies of the chosen part j and deposits a_i
 * copies of i, where phi(i) = j; validity of the rule makes this
 * size-preserving.  Eligibility is monotone between firings of the
 * same part (other firings only ever add copies), so a simple eligible
 * set stays correct. */
inline trace run_map(const sequence_spec &spec, const partition &lam,
                     const run_options &opt = {})
{
        require_in_A(spec, lam);
        ZZ budget = opt.budget ? *opt.budget : default_budget(spec, lam);

        partition state = lam;
        trace tr;
        tr.initial = lam;
        tr.step_count = 0;
        tr.firings = 0;
        tr.recorded = opt.record_steps;

        std::set<ZZ> eligible;
        std::deque<ZZ> queue; /* fifo arrival order */
        for (const auto &[p, m] : state.mults())
                if (spec.b(p).fires(m)) {
                        eligible.insert(p);
                        queue.push_back(p);
                }

        std::mt19937_64 rng(opt.strat.seed);

        while (!eligible.empty()) {
                ZZ j;
                switch (opt.strat.kind) {
                case strategy_kind::min_part:
                        j = *eligible.begin();
                        break;
                case strategy_kind::max_part:
                        j = *eligible.rbegin();
                        break;
                case strategy_kind::fifo:
                        j = queue.front();
                        queue.pop_front();
                        check(eligible.count(j) != 0,
                              "fifo queue out of sync");
                        break;
                case strategy_kind::random_pick: {
                        size_t idx = static_cast<size_t>(
                            rng() % eligible.size());
                        auto it = eligible.begin();
                        std::advance(it, idx);
                        j = *it;
                        break;
                }
                }

                ZZ bj = spec.b(j).value();
                ZZ r = opt.speedy ? state.count(j) / bj : ZZ(1);
                auto src = spec.phi_inv(j);
                if (!src)
                        refuse("no source part for firing at " + j.str() +
                               "; the rule table or horizon is too small");
                bound ai = spec.a(*src);
                check(ai.finite(), "phi_inv left the support");

                state.remove(j, r * bj);
                state.add(*src, r * ai.value());
                tr.step_count += r;
                tr.firings += 1;
                if (opt.record_steps)
                        tr.steps.push_back({j, r});
                if (tr.step_count > budget)
                        refuse("step budget exceeded (" + budget.str() +
                               "); the run died at " +
                               tr.step_count.str() + " steps");

                /* refresh eligibility at the touched parts (one part when
                 * the rule fires into itself) */
                std::set<ZZ> touched{j, *src};
                for (const ZZ &p : touched) {
                        bool fires = spec.b(p).fires(state.count(p));
                        bool in = eligible.count(p) != 0;
                        if (fires && !in) {
                                eligible.insert(p);
                                queue.push_back(p);
                        } else if (!fires && in) {
                                eligible.erase(p);
                        } else if (fires && in && p == j &&
                                   opt.strat.kind == strategy_kind::fifo) {
                                queue.push_back(p); /* popped above */
                        }
                }
        }

        require_in_B(spec, state);
        check(state.size() == lam.size(), "size not preserved");
        tr.final = std::move(state);
        return tr;
}

inline trace psi_naive(const sequence_spec &spec, const partition &lam,
                       strategy strat = {})
{
        run_options opt;
        opt.strat = strat;
        return run_map(spec, lam, opt);
}

inline trace psi_speedy(const sequence_spec &spec, const partition &lam,
                        strategy strat = {})
{
        run_options opt;
        opt.strat = strat;
        opt.speedy = true;
        return run_map(spec, lam, opt);
}

/* Re-apply a recorded trace to its initial partition.  Used to check
 * that traces are replayable. */
inline partition replay(const sequence_spec &spec, const trace &tr)
{
        partition state = tr.initial;
        for (const trace_step &st : tr.steps) {
                ZZ bj = spec.b(st.part).value();
                auto src = spec.phi_inv(st.part);
                check(src.has_value(), "replay: missing source part");
                state.remove(st.part, st.reps * bj);
                state.add(*src, st.reps * spec.a(*src).value());
        }
        return state;
}

/* Digit closed form for the multiply(d) rule: a part i = d^e * r with
 * d not dividing r carries its multiplicity into the e-th base-d digit
 * of the output multiplicity of r, and conversely. */
inline partition glaisher_image(const partition &lam, const ZZ &d = 2)
{
        if (d < 2)
                refuse("digit map needs d >= 2");
        partition out;
        for (const auto &[p, m] : lam.mults()) {
                if (m >= d)
                        refuse("not in the source set: part " + p.str() +
                               " has multiplicity " + m.str());
                ZZ core = p, scale = 1;
                while (core % d == 0) {
                        core /= d;
                        scale *= d;
                }
                out.add(core, m * scale);
        }
        check(out.size() == lam.size(), "size not preserved");
        return out;
}

inline partition glaisher_preimage(const partition &lam, const ZZ &d = 2)
{
        if (d < 2)
                refuse("digit map needs d >= 2");
        partition out;
        for (const auto &[p, m] : lam.mults()) {
                if (p % d == 0)
                        refuse("not in the target set: part " + p.str() +
                               " is divisible by " + d.str());
                ZZ rest = m, scale = 1;
                while (rest > 0) {
                        ZZ digit = rest % d;
                        if (digit > 0)
                                out.add(p * scale, digit);
                        rest /= d;
                        scale *= d;
                }
        }
        check(out.size() == lam.size(), "size not preserved");
        return out;
}

/* Ternary closed form for the mod3 rule: for each odd core r coprime
 * to 3, pool l = sum_e 2^e * m(r * 2^e); the e-th ternary digit of l
 * is the output multiplicity of 3^e * r. */
inline partition ternary_image(const partition &lam)
{
        std::map<ZZ, ZZ> pool;
        for (const auto &[p, m] : lam.mults()) {
                if (p % 3 == 0)
                        refuse("not in the source set: part " + p.str() +
                               " is divisible by 3");
                if (m >= 2)
                        refuse("not in the source set: part " + p.str() +
                               " has multiplicity " + m.str());
                ZZ core = p, scale = 1;
                while (core % 2 == 0) {
                        core /= 2;
                        scale *= 2;
                }
                pool[core] += m * scale;
        }
        partition out;
        for (auto &[core, l] : pool) {
                ZZ rest = l, scale = 1;
                while (rest > 0) {
                        ZZ digit = rest % 3;
                        if (digit > 0)
                                out.add(core * scale, digit);
                        rest /= 3;
                        scale *= 3;
                }
        }
        check(out.size() == lam.size(), "size not preserved");
        return out;
}

} // namespace ohara
