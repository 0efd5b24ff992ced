#pragma once

#include "cycle.hpp"
#include "numeric.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace ohara {

/* Piece of a box congruence: the half-open box [anchor, anchor+sides)
 * inside the source is moved rigidly by translation into the target. */
struct piece {
        qvec anchor;
        qvec sides;
        qvec translation;

        bool operator==(const piece &o) const
        {
                return anchor == o.anchor && sides == o.sides &&
                       translation == o.translation;
        }
};

struct decomposition {
        qvec functional; /* weight vector i; translations satisfy
                          * sum_j functional_j * translation_j == 0 */
        box source;
        box target;
        std::vector<piece> pieces;
};

inline bool lex_less(const qvec &x, const qvec &y)
{
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(),
                                            y.end());
}

inline void sort_pieces(std::vector<piece> &ps)
{
        std::sort(ps.begin(), ps.end(), [](const piece &l, const piece &r) {
                if (l.anchor != r.anchor)
                        return lex_less(l.anchor, r.anchor);
                return lex_less(l.sides, r.sides);
        });
}

/* Cut P = prod [0, a_j) into translation cells of the rewriting map.
 * The map is constant-translation on every unit cell of the grid
 * refined by the common denominator of the sides, so cells are
 * enumerated directly; merging is a separate pass.  The cell count
 * before merging is prod (den * a_j), which is refused above cell_cap. */
inline decomposition decompose(const cycle_system &sys,
                               long cell_cap = 2000000)
{
        size_t m = sys.m();
        ZZ den = 1;
        for (size_t j = 0; j < m; ++j) {
                den = lcm_zz(den, denominator(sys.a[j]));
                den = lcm_zz(den, denominator(sys.b[j]));
        }
        qvec av(m), bv(m);
        for (size_t j = 0; j < m; ++j) {
                av[j] = sys.a[j] * den;
                bv[j] = sys.b[j] * den;
        }
        cycle_system scaled(sys.i, av, bv);

        ZZ cells = 1;
        for (size_t j = 0; j < m; ++j)
                cells *= numerator(av[j]);
        if (cells > cell_cap)
                refuse("decomposition would need " + cells.str() +
                       " cells (cap " + std::to_string(cell_cap) + ")");

        decomposition out;
        out.functional = sys.i;
        {
                qvec src(m), tgt(m);
                for (size_t j = 0; j < m; ++j) {
                        src[j] = sys.a[j];
                        tgt[j] = sys.b[j];
                }
                out.source = box(src);
                out.target = box(tgt);
        }

        qvec t(m, QQ(0));
        QQ inv_den = QQ(1, den);
        while (true) {
                psi_result r = psi_continuous(scaled, t);
                piece p;
                p.anchor.resize(m);
                p.sides.assign(m, inv_den);
                p.translation.resize(m);
                for (size_t j = 0; j < m; ++j) {
                        p.anchor[j] = t[j] * inv_den;
                        p.translation[j] = (r.s[j] - t[j]) * inv_den;
                }
                out.pieces.push_back(std::move(p));

                size_t j = m;
                while (j-- > 0) {
                        t[j] += 1;
                        if (t[j] < av[j])
                                break;
                        t[j] = 0;
                        if (j == 0)
                                return out;
                }
        }
}

/* Greedy run merging, one axis at a time: two pieces fuse when they
 * share the translation, agree on every other coordinate, and abut
 * along the axis.  The result is independent of the input order and a
 * second pass finds nothing left to fuse. */
inline decomposition merge_pieces(decomposition d)
{
        size_t m = d.functional.size();
        for (size_t ax = 0; ax < m; ++ax) {
                std::map<std::vector<QQ>, std::vector<piece>> lanes;
                for (piece &p : d.pieces) {
                        std::vector<QQ> key;
                        key.reserve(3 * m);
                        for (const QQ &x : p.translation)
                                key.push_back(x);
                        for (size_t j = 0; j < m; ++j)
                                if (j != ax) {
                                        key.push_back(p.anchor[j]);
                                        key.push_back(p.sides[j]);
                                }
                        lanes[std::move(key)].push_back(std::move(p));
                }
                std::vector<piece> merged;
                for (auto &[key, lane] : lanes) {
                        (void)key;
                        std::sort(lane.begin(), lane.end(),
                                  [&](const piece &l, const piece &r) {
                                          return l.anchor[ax] < r.anchor[ax];
                                  });
                        for (size_t j = 0; j < lane.size(); ++j) {
                                piece cur = lane[j];
                                while (j + 1 < lane.size() &&
                                       lane[j + 1].anchor[ax] ==
                                           cur.anchor[ax] + cur.sides[ax]) {
                                        cur.sides[ax] +=
                                            lane[j + 1].sides[ax];
                                        ++j;
                                }
                                merged.push_back(std::move(cur));
                        }
                }
                d.pieces = std::move(merged);
        }
        sort_pieces(d.pieces);
        return d;
}

/* Exact congruence checks: pieces tile the source, their translates
 * tile the target, and every translation is orthogonal to the
 * functional.  Pairwise disjointness is quadratic in the piece count;
 * intended for verification, not hot paths. */
inline void verify_decomposition(const decomposition &d,
                                 bool pairwise = true)
{
        size_t m = d.functional.size();
        check(d.source.dim() == m && d.target.dim() == m,
              "decomposition dimensions disagree");
        QQ vol = 0;
        for (const piece &p : d.pieces) {
                check(p.anchor.size() == m && p.sides.size() == m &&
                          p.translation.size() == m,
                      "piece dimension mismatch");
                QQ pv = 1;
                QQ dot = 0;
                for (size_t j = 0; j < m; ++j) {
                        check(p.sides[j] > 0, "degenerate piece");
                        check(p.anchor[j] >= 0 &&
                                  p.anchor[j] + p.sides[j] <=
                                      d.source.sides[j],
                              "piece leaves the source box");
                        QQ moved = p.anchor[j] + p.translation[j];
                        check(moved >= 0 &&
                                  moved + p.sides[j] <= d.target.sides[j],
                              "translated piece leaves the target box");
                        pv *= p.sides[j];
                        dot += d.functional[j] * p.translation[j];
                }
                check(dot == 0, "translation not orthogonal to the "
                                "functional");
                vol += pv;
        }
        check(vol == d.source.volume(), "pieces do not fill the source");
        check(d.source.volume() == d.target.volume(),
              "source and target volumes differ");

        if (!pairwise)
                return;
        auto disjoint = [m](const qvec &a1, const qvec &s1, const qvec &a2,
                            const qvec &s2) {
                for (size_t j = 0; j < m; ++j)
                        if (a1[j] + s1[j] <= a2[j] || a2[j] + s2[j] <= a1[j])
                                return true;
                return false;
        };
        for (size_t x = 0; x < d.pieces.size(); ++x)
                for (size_t y = x + 1; y < d.pieces.size(); ++y) {
                        const piece &px = d.pieces[x], &py = d.pieces[y];
                        check(disjoint(px.anchor, px.sides, py.anchor,
                                       py.sides),
                              "pieces overlap in the source");
                        qvec mx(m), my(m);
                        for (size_t j = 0; j < m; ++j) {
                                mx[j] = px.anchor[j] + px.translation[j];
                                my[j] = py.anchor[j] + py.translation[j];
                        }
                        check(disjoint(mx, px.sides, my, py.sides),
                              "pieces overlap in the target");
                }
}

/* Two-dimensional rectangle swap R(a, b) -> R(b, a) by the classical
 * remainder recursion: slice off floor(long/short) squares, recurse on
 * the leftover strip.  The translations (c, -c) are orthogonal to the
 * functional (1, 1); the piece count is the sum of the partial
 * quotients of b/a. */
inline void euclid_rec(const QQ &w, const QQ &h, const QQ &sx, const QQ &sy,
                       const QQ &tx, const QQ &ty, std::vector<piece> &out)
{
        if (w == h) {
                out.push_back({{sx, sy}, {w, h}, {tx - sx, ty - sy}});
                return;
        }
        if (h > w) {
                ZZ r = floor_q(h / w);
                for (ZZ q = 0; q < r; ++q) {
                        QQ off = q * w;
                        out.push_back({{sx, sy + off},
                                       {w, w},
                                       {tx + off - sx, ty - sy - off}});
                }
                QQ rest = h - r * w;
                if (rest > 0)
                        euclid_rec(w, rest, sx, sy + r * w, tx + r * w, ty,
                                   out);
        } else {
                ZZ r = floor_q(w / h);
                for (ZZ q = 0; q < r; ++q) {
                        QQ off = q * h;
                        out.push_back({{sx + off, sy},
                                       {h, h},
                                       {tx - sx - off, ty + off - sy}});
                }
                QQ rest = w - r * h;
                if (rest > 0)
                        euclid_rec(rest, h, sx + r * h, sy, tx, ty + r * h,
                                   out);
        }
}

inline decomposition euclid_decompose(const QQ &a, const QQ &b)
{
        if (a <= 0 || b <= 0)
                refuse("rectangle sides must be positive");
        decomposition d;
        d.functional = {QQ(1), QQ(1)};
        d.source = box({a, b});
        d.target = box({b, a});
        euclid_rec(a, b, QQ(0), QQ(0), QQ(0), QQ(0), d.pieces);
        sort_pieces(d.pieces);
        return d;
}

} // namespace ohara
