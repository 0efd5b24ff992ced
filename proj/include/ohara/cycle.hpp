#pragma once

#include "numeric.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace ohara {

/* Cycle system: positive rational vectors i, a, b of equal length m
 * with
 *
 *         i_j * a_j == i_{j+1} * b_{j+1}        (indices mod m)
 *
 * Firing at position j is allowed while s_j >= b_j and performs
 * s_j -= b_j, s_{j-1} += a_{j-1}; the relation above makes the weight
 * sum(i_j s_j) invariant.  The run maps P = prod [0, a_j) onto
 * Q = prod [0, b_j) and the relation forces prod a == prod b. */
struct cycle_system {
        qvec i, a, b;

        cycle_system(qvec iv, qvec av, qvec bv)
            : i(std::move(iv)), a(std::move(av)), b(std::move(bv))
        {
                size_t m = i.size();
                if (m == 0)
                        refuse("cycle systems need at least one position");
                if (a.size() != m || b.size() != m)
                        refuse("i, a, b must have equal lengths");
                for (size_t j = 0; j < m; ++j)
                        if (i[j] <= 0 || a[j] <= 0 || b[j] <= 0)
                                refuse("cycle system entries must be "
                                       "positive");
                for (size_t j = 0; j < m; ++j) {
                        size_t nx = (j + 1) % m;
                        if (i[j] * a[j] != i[nx] * b[nx])
                                refuse("cycle relation fails between "
                                       "positions " +
                                       std::to_string(j + 1) + " and " +
                                       std::to_string(nx + 1));
                }
        }

        size_t m() const { return i.size(); }

        bool integral_sides() const
        {
                for (size_t j = 0; j < m(); ++j)
                        if (denominator(a[j]) != 1 || denominator(b[j]) != 1)
                                return false;
                return true;
        }

        /* The same cycle anchored r positions later. */
        cycle_system rotated(size_t r) const
        {
                size_t mm = m();
                qvec iv(mm), av(mm), bv(mm);
                for (size_t j = 0; j < mm; ++j) {
                        iv[j] = i[(j + r) % mm];
                        av[j] = a[(j + r) % mm];
                        bv[j] = b[(j + r) % mm];
                }
                return cycle_system(std::move(iv), std::move(av),
                                    std::move(bv));
        }

        /* Reversing the order and swapping the roles of a and b yields
         * the system of the inverse map. */
        cycle_system reversed() const
        {
                size_t mm = m();
                qvec iv(mm), av(mm), bv(mm);
                for (size_t j = 0; j < mm; ++j) {
                        iv[j] = i[mm - 1 - j];
                        av[j] = b[mm - 1 - j];
                        bv[j] = a[mm - 1 - j];
                }
                return cycle_system(std::move(iv), std::move(av),
                                    std::move(bv));
        }
};

/* Step matrix: column j encodes one firing at position j, so
 * A[j][j] = -b_j and A[j-1][j] = a_{j-1} (cyclically).  Its kernel is
 * spanned by (1/c_1, ..., 1/c_m) with
 *
 *         c_j = a_1 ... a_{j-1} * b_j ... b_{m-1}
 *
 * (empty products are 1), and the i-vector is a left null vector. */
struct step_matrix {
        std::vector<qvec> cols; /* cols[j][r] = A[r][j] */

        explicit step_matrix(const cycle_system &sys)
        {
                size_t m = sys.m();
                cols.assign(m, qvec(m, QQ(0)));
                for (size_t j = 0; j < m; ++j) {
                        cols[j][j] -= sys.b[j];
                        cols[j][(j + m - 1) % m] += sys.a[(j + m - 1) % m];
                }
        }

        /* t + A k */
        qvec apply(const qvec &t, const zvec &k) const
        {
                size_t m = cols.size();
                check(t.size() == m && k.size() == m,
                      "step_matrix::apply: dimension mismatch");
                qvec s = t;
                for (size_t j = 0; j < m; ++j)
                        for (size_t r = 0; r < m; ++r)
                                s[r] += cols[j][r] * k[j];
                return s;
        }
};

inline qvec kernel_direction(const cycle_system &sys)
{
        size_t m = sys.m();
        qvec c(m, QQ(1));
        for (size_t j = 0; j < m; ++j) {
                for (size_t r = 0; r < j; ++r)
                        c[j] *= sys.a[r];
                for (size_t r = j; r + 1 < m; ++r)
                        c[j] *= sys.b[r];
        }
        for (QQ &x : c)
                x = QQ(1) / x;
        return c;
}

/* Integer data for the kernel of an integral system: the c_j, their
 * lcm, and the primitive integer kernel generator g_j = lcm / c_j. */
struct kernel_data {
        zvec c;
        ZZ lcm_c;
        zvec g;
};

inline kernel_data integer_kernel(const cycle_system &sys)
{
        if (!sys.integral_sides())
                refuse("integer kernel needs integer side values");
        size_t m = sys.m();
        kernel_data kd;
        kd.c.assign(m, ZZ(1));
        for (size_t j = 0; j < m; ++j) {
                for (size_t r = 0; r < j; ++r)
                        kd.c[j] *= numerator(sys.a[r]);
                for (size_t r = j; r + 1 < m; ++r)
                        kd.c[j] *= numerator(sys.b[r]);
        }
        kd.lcm_c = 1;
        for (const ZZ &x : kd.c)
                kd.lcm_c = lcm_zz(kd.lcm_c, x);
        kd.g.resize(m);
        for (size_t j = 0; j < m; ++j)
                kd.g[j] = kd.lcm_c / kd.c[j];
        return kd;
}

/* Sharp bound on the number of unit firings over all starting points
 * of P with integer sides:
 *
 *         lcm(c_1..c_m) * (1/c_1 + ... + 1/c_m) - m,
 *
 * attained at t = (a_1 - 1, ..., a_m - 1). */
inline ZZ max_steps_formula(const cycle_system &sys)
{
        kernel_data kd = integer_kernel(sys);
        ZZ total = 0;
        for (const ZZ &gj : kd.g)
                total += gj;
        return total - ZZ(sys.m());
}

struct psi_result {
        qvec s;   /* endpoint, 0 <= s_j < b_j */
        zvec k;   /* firings per position */
        ZZ steps; /* sum of k */
};

/* Run the rewriting map on a rational starting point of P.  Firings
 * are batched (all available firings at a position at once); the final
 * point does not depend on the order.  A rational system is scaled by
 * the common denominator of a, b and t first, which changes neither k
 * nor the step count. */
inline psi_result psi_continuous(const cycle_system &sys, const qvec &t)
{
        size_t m = sys.m();
        if (t.size() != m)
                refuse("start point has wrong dimension");
        for (size_t j = 0; j < m; ++j)
                if (t[j] < 0 || t[j] >= sys.a[j])
                        refuse("start point outside P at position " +
                               std::to_string(j + 1));

        ZZ den = 1;
        for (size_t j = 0; j < m; ++j) {
                den = lcm_zz(den, denominator(sys.a[j]));
                den = lcm_zz(den, denominator(sys.b[j]));
                den = lcm_zz(den, denominator(t[j]));
        }
        zvec av(m), bv(m), sv(m);
        for (size_t j = 0; j < m; ++j) {
                av[j] = numerator(QQ(sys.a[j] * den));
                bv[j] = numerator(QQ(sys.b[j] * den));
                sv[j] = numerator(QQ(t[j] * den));
        }

        /* budget: twice the sharp bound of the scaled system */
        zvec c(m, ZZ(1));
        for (size_t j = 0; j < m; ++j) {
                for (size_t r = 0; r < j; ++r)
                        c[j] *= av[r];
                for (size_t r = j; r + 1 < m; ++r)
                        c[j] *= bv[r];
        }
        ZZ lcm_c = 1;
        for (const ZZ &x : c)
                lcm_c = lcm_zz(lcm_c, x);
        ZZ budget = 0;
        for (const ZZ &x : c)
                budget += lcm_c / x;
        budget = 2 * budget + 16;

        psi_result res;
        res.k.assign(m, ZZ(0));
        res.steps = 0;
        bool fired = true;
        while (fired) {
                fired = false;
                for (size_t j = 0; j < m; ++j) {
                        if (sv[j] < bv[j])
                                continue;
                        ZZ r = sv[j] / bv[j];
                        sv[j] -= r * bv[j];
                        sv[(j + m - 1) % m] += r * av[(j + m - 1) % m];
                        res.k[j] += r;
                        res.steps += r;
                        fired = true;
                        check(res.steps <= budget,
                              "cycle run exceeded the step bound");
                }
        }

        res.s.resize(m);
        for (size_t j = 0; j < m; ++j) {
                res.s[j] = QQ(sv[j], den);
                check(res.s[j] >= 0 && res.s[j] < sys.b[j],
                      "endpoint escaped Q");
        }
        /* weight conservation: sum i_j s_j == sum i_j t_j */
        QQ wt = 0;
        for (size_t j = 0; j < m; ++j)
                wt += sys.i[j] * (res.s[j] - t[j]);
        check(wt == 0, "weight not conserved");
        return res;
}

/* Inverse map: flip coordinates, run the reversed system, flip back. */
inline qvec psi_inverse(const cycle_system &sys, const qvec &s)
{
        size_t m = sys.m();
        if (s.size() != m)
                refuse("endpoint has wrong dimension");
        for (size_t j = 0; j < m; ++j)
                if (s[j] < 0 || s[j] >= sys.b[j])
                        refuse("endpoint outside Q at position " +
                               std::to_string(j + 1));
        qvec flipped(m);
        for (size_t j = 0; j < m; ++j)
                flipped[j] = s[m - 1 - j];
        psi_result back = psi_continuous(sys.reversed(), flipped);
        qvec t(m);
        for (size_t j = 0; j < m; ++j)
                t[j] = back.s[m - 1 - j];
        return t;
}

/* Maximal box around t on which the map is the fixed translation
 * s - t: sides eps_j = b_j - s_j. */
struct cell {
        qvec anchor;
        qvec sides;
        qvec translation;
        ZZ steps;
};

inline cell local_cell(const cycle_system &sys, const qvec &t)
{
        psi_result r = psi_continuous(sys, t);
        cell out;
        out.anchor = t;
        out.steps = r.steps;
        out.sides.resize(sys.m());
        out.translation.resize(sys.m());
        for (size_t j = 0; j < sys.m(); ++j) {
                out.sides[j] = sys.b[j] - r.s[j];
                out.translation[j] = r.s[j] - t[j];
                check(out.sides[j] > 0, "empty local cell");
        }
        return out;
}

} // namespace ohara
