#pragma once

#include "cycle.hpp"
#include "numeric.hpp"
#include "partition.hpp"
#include "sequence.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ohara {

/* Chain of parts in edge-walk order: a firing at verts[j] deposits at
 * verts[j+1].  Every vertex except the last needs a finite b, every
 * vertex except the first a finite a, and consecutive vertices satisfy
 * verts[j] * b_j == verts[j+1] * a_{j+1}. */
struct path_system {
        std::vector<ZZ> verts;
        std::vector<bound> a, b;

        path_system(std::vector<ZZ> v, std::vector<bound> av,
                    std::vector<bound> bv)
            : verts(std::move(v)), a(std::move(av)), b(std::move(bv))
        {
                size_t m = verts.size();
                if (m == 0)
                        refuse("empty path system");
                if (a.size() != m || b.size() != m)
                        refuse("verts, a, b must have equal lengths");
                for (const ZZ &p : verts)
                        if (p < 1)
                                refuse("path vertices must be >= 1");
                for (size_t j = 0; j + 1 < m; ++j) {
                        if (!b[j].finite())
                                refuse("interior path vertex " +
                                       verts[j].str() + " has infinite b");
                        if (!a[j + 1].finite())
                                refuse("non-initial path vertex " +
                                       verts[j + 1].str() +
                                       " has infinite a");
                        if (verts[j] * b[j].value() !=
                            verts[j + 1] * a[j + 1].value())
                                refuse("path relation fails between " +
                                       verts[j].str() + " and " +
                                       verts[j + 1].str());
                }
        }

        size_t m() const { return verts.size(); }
};

struct solve_result {
        zvec k;   /* firings per position */
        zvec s;   /* endpoint */
        ZZ steps; /* sum of k */
};

/* One left-to-right pass: k_1 = floor(t_1 / b_1), then
 * k_j = floor((t_j + a_j k_{j-1}) / b_j).  The endpoint follows from
 * the firing counts.  Positions with infinite b never fire. */
inline solve_result solve_path_closed_form(const path_system &path,
                                           const zvec &t)
{
        size_t m = path.m();
        if (t.size() != m)
                refuse("start point has wrong dimension");
        for (size_t j = 0; j < m; ++j) {
                if (t[j] < 0)
                        refuse("negative multiplicity");
                if (path.a[j].finite() && t[j] >= path.a[j].value())
                        refuse("start point outside the source set at part " +
                               path.verts[j].str());
        }
        solve_result res;
        res.k.assign(m, ZZ(0));
        res.s.assign(m, ZZ(0));
        res.steps = 0;
        ZZ inflow = 0; /* copies deposited at position j by position j-1 */
        for (size_t j = 0; j < m; ++j) {
                ZZ have = t[j] + inflow;
                if (path.b[j].finite()) {
                        res.k[j] = floor_div(have, path.b[j].value());
                        res.s[j] = have - res.k[j] * path.b[j].value();
                } else {
                        res.s[j] = have;
                }
                res.steps += res.k[j];
                if (j + 1 < m)
                        inflow = res.k[j] * path.a[j + 1].value();
        }
        return res;
}

/* Least fixed point of the cyclic closed form
 *
 *         k_j = floor((t_j + a_j k_{j+1}) / b_j)     (indices mod m)
 *
 * by Kleene iteration on k_1 starting from 0: one pass propagates a
 * guess x for k_1 backwards around the cycle and returns the implied
 * k_1.  The pass map F is nondecreasing and the iterates from 0 are
 * monotone and bounded by the true k_1, which is the coordinatewise
 * least firing vector, so the iteration stops exactly there.  (A
 * bisection on F(x) <= x is unsound: that predicate is not monotone,
 * e.g. a = (2,3), b = (3,2), t = (1,2) gives the pattern F,T,F,T on
 * x = 0..3.) */
inline solve_result solve_cycle_fast(const cycle_system &sys, const zvec &t)
{
        if (!sys.integral_sides())
                refuse("fast cycle solver needs integer side values");
        size_t m = sys.m();
        if (t.size() != m)
                refuse("start point has wrong dimension");
        zvec av(m), bv(m);
        for (size_t j = 0; j < m; ++j) {
                av[j] = numerator(sys.a[j]);
                bv[j] = numerator(sys.b[j]);
                if (t[j] < 0 || t[j] >= av[j])
                        refuse("start point outside P at position " +
                               std::to_string(j + 1));
        }

        /* Each non-final pass raises k_0 by at least 1 and k_0 is capped
         * by the worst-case step count, so the formula bounds the pass
         * count.  Stiff systems (kernel multipliers beyond 10^6) would
         * be correct but far too slow here; refuse those up front and
         * leave them to the stepping engine. */
        ZZ iter_guard = max_steps_formula(sys) + 2;
        if (iter_guard > 1000000 + 2)
                refuse("cycle system too stiff for the fixed point solver "
                       "(worst case " + max_steps_formula(sys).str() +
                       " firings); use a stepping engine");
        zvec k(m, ZZ(0));
        ZZ x = 0;
        while (true) {
                ZZ prev = x;
                /* positions m-1, m-2, ..., 0 given k_0 = x */
                ZZ next = x;
                for (size_t r = m; r-- > 0;) {
                        next = floor_div(t[r] + av[r] * next, bv[r]);
                        k[r] = next;
                }
                x = k[0];
                check(x >= prev, "fixed point iteration went down");
                if (x == prev)
                        break;
                check(--iter_guard >= 0,
                      "fixed point iteration exceeded the step bound");
        }

        solve_result res;
        res.k = std::move(k);
        res.s.assign(m, ZZ(0));
        res.steps = 0;
        for (size_t j = 0; j < m; ++j) {
                res.s[j] =
                    t[j] + av[j] * res.k[(j + 1) % m] - bv[j] * res.k[j];
                check(res.s[j] >= 0 && res.s[j] < bv[j],
                      "fixed point endpoint escaped Q");
                res.steps += res.k[j];
        }
        return res;
}

/* Spec-side system builders.  Cycle components come back from
 * component_of in edge-walk order; the cycle solver wants the order in
 * which phi walks the vertices, which is the walk start followed by
 * the rest reversed. */
inline cycle_system cycle_system_of(const sequence_spec &spec,
                                    const graph_component &comp)
{
        check(comp.kind == component_kind::cycle, "not a cycle component");
        std::vector<ZZ> order;
        order.push_back(comp.vertices.front());
        for (size_t j = comp.vertices.size(); j-- > 1;)
                order.push_back(comp.vertices[j]);
        qvec iv, av, bv;
        for (const ZZ &v : order) {
                bound a = spec.a(v), b = spec.b(v);
                check(a.finite() && b.finite(), "cycle vertex with "
                                                "infinite bound");
                iv.emplace_back(v);
                av.emplace_back(a.value());
                bv.emplace_back(b.value());
        }
        return cycle_system(std::move(iv), std::move(av), std::move(bv));
}

inline path_system path_system_of(const sequence_spec &spec,
                                  const graph_component &comp)
{
        check(comp.kind != component_kind::cycle, "cycle is not a path");
        std::vector<bound> av, bv;
        for (const ZZ &v : comp.vertices) {
                av.push_back(spec.a(v));
                bv.push_back(spec.b(v));
        }
        return path_system(comp.vertices, std::move(av), std::move(bv));
}

/* Full map through the closed forms: decompose the support, solve each
 * cycle with the fixed-point solver and each chain with the one-pass
 * closed form, and reassemble.  Parts outside the rule graph (a and b
 * both infinite) pass through unchanged.  Cycles longer than max_cycle
 * are refused rather than solved slowly. */
struct fast_result {
        partition image;
        ZZ steps;
};

inline fast_result psi_fast(const sequence_spec &spec, const partition &lam,
                            size_t max_cycle = 64)
{
        require_in_A(spec, lam);
        partition graph_part, out;
        for (const auto &[p, mm] : lam.mults()) {
                if (spec.in_graph(p))
                        graph_part.set(p, mm);
                else
                        out.set(p, mm);
        }
        fast_result res;
        res.steps = 0;
        for (auto &[comp, piece] : decompose_support(spec, graph_part)) {
                if (comp.kind == component_kind::cycle) {
                        if (comp.vertices.size() > max_cycle)
                                refuse("cycle component longer than the "
                                       "configured solver limit (" +
                                       std::to_string(max_cycle) + ")");
                        cycle_system sys = cycle_system_of(spec, comp);
                        zvec t;
                        for (const QQ &v : sys.i)
                                t.push_back(piece.count(numerator(v)));
                        solve_result r = solve_cycle_fast(sys, t);
                        for (size_t j = 0; j < sys.m(); ++j)
                                out.add(numerator(sys.i[j]), r.s[j]);
                        res.steps += r.steps;
                } else {
                        path_system path = path_system_of(spec, comp);
                        zvec t;
                        for (const ZZ &v : path.verts)
                                t.push_back(piece.count(v));
                        solve_result r = solve_path_closed_form(path, t);
                        bool cut_end =
                            comp.kind == component_kind::backward_infinite ||
                            comp.kind == component_kind::biinfinite;
                        if (cut_end && r.k.back() > 0)
                                refuse("run escapes the horizon at part " +
                                       path.verts.back().str() +
                                       "; raise the horizon");
                        for (size_t j = 0; j < path.m(); ++j)
                                out.add(path.verts[j], r.s[j]);
                        res.steps += r.steps;
                }
        }
        require_in_B(spec, out);
        check(out.size() == lam.size(), "size not preserved");
        res.image = std::move(out);
        return res;
}

} // namespace ohara
