#pragma once

#include "numeric.hpp"
#include "partition.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ohara {

/* A rewriting rule is a pair of bound sequences a, b together with a
 * partial map phi defined exactly where a is finite.  Where defined,
 * phi is injective, phi(i) has a finite b-bound, and
 *
 *         i * a_i == phi(i) * b_phi(i).
 *
 * The sets A = {m_i < a_i for all i} and B = {m_j < b_j for all j} are
 * the two sides of the bijection; removing b_phi(i) copies of phi(i)
 * while adding a_i copies of i preserves partition size by the relation
 * above.
 *
 * Built-in rules are total formulas; "table" rules list finitely many
 * indices and behave as (a, b) = (inf, inf) off the table. */
enum class rule_kind {
        identity,     /* a = b = inf everywhere; psi = id */
        multiply,     /* phi(i) = d*i, a = d, b_dj = 1 */
        distinct_odd, /* multiply with d = 2 */
        odd_distinct, /* reverse of distinct_odd: phi(2i) = i */
        mod3,         /* the two-case rule with a in {1,2}, b in {1,3} */
        table,        /* explicit finite table */
};

inline const char *rule_name(rule_kind k)
{
        switch (k) {
        case rule_kind::identity:
                return "identity";
        case rule_kind::multiply:
                return "multiply";
        case rule_kind::distinct_odd:
                return "distinct_odd";
        case rule_kind::odd_distinct:
                return "odd_distinct";
        case rule_kind::mod3:
                return "mod3_rule";
        case rule_kind::table:
                return "finite_table";
        }
        return "?";
}

struct table_entry {
        ZZ i;
        bound a;
        bound b;
        std::optional<ZZ> phi; /* required iff a is finite */
};

class sequence_spec {
      public:
        sequence_spec(rule_kind kind, ZZ horizon, ZZ d = 2,
                      std::vector<table_entry> entries = {})
            : kind_(kind), d_(std::move(d)), horizon_(std::move(horizon))
        {
                if (horizon_ < 1)
                        refuse("horizon must be >= 1");
                if (kind_ == rule_kind::multiply && d_ < 2)
                        refuse("multiply rule needs d >= 2");
                if (kind_ == rule_kind::distinct_odd)
                        d_ = 2;
                for (auto &e : entries) {
                        if (e.i < 1)
                                refuse("table index must be >= 1");
                        if (!table_.emplace(e.i, e).second)
                                refuse("duplicate table index " + e.i.str());
                        if (e.a.finite() != e.phi.has_value())
                                refuse("table entry " + e.i.str() +
                                       ": phi must be present exactly when a "
                                       "is finite");
                        if (e.phi && *e.phi < 1)
                                refuse("phi values must be >= 1");
                }
                for (const auto &[i, e] : table_)
                        if (e.phi && !inverse_.emplace(*e.phi, i).second)
                                refuse("table phi is not injective at " +
                                       e.phi->str());
        }

        rule_kind kind() const { return kind_; }
        const ZZ &d() const { return d_; }
        const ZZ &horizon() const { return horizon_; }
        const std::map<ZZ, table_entry> &table() const { return table_; }

        /* Public accessors are horizon-checked: asking beyond the
         * declared horizon is a refusal, never a silent answer. */
        bound a(const ZZ &i) const
        {
                range_check(i);
                return a_raw(i);
        }
        bound b(const ZZ &i) const
        {
                range_check(i);
                return b_raw(i);
        }
        std::optional<ZZ> phi(const ZZ &i) const
        {
                range_check(i);
                return phi_raw(i);
        }
        std::optional<ZZ> phi_inv(const ZZ &j) const
        {
                range_check(j);
                return phi_inv_raw(j);
        }

        bool in_graph(const ZZ &i) const
        {
                return a(i).finite() || b(i).finite();
        }

        /* Unchecked rule evaluation.  validate() needs b at phi(i),
         * which can legitimately exceed the horizon (phi(i) <= i*a_i). */
        bound a_raw(const ZZ &i) const
        {
                switch (kind_) {
                case rule_kind::identity:
                        return bound::inf();
                case rule_kind::multiply:
                case rule_kind::distinct_odd:
                        return bound(d_);
                case rule_kind::odd_distinct:
                        return i % 2 == 0 ? bound(1) : bound::inf();
                case rule_kind::mod3:
                        return i % 3 == 0 ? bound(1) : bound(2);
                case rule_kind::table: {
                        auto it = table_.find(i);
                        return it == table_.end() ? bound::inf() : it->second.a;
                }
                }
                breach("unreachable rule kind");
        }

        bound b_raw(const ZZ &j) const
        {
                switch (kind_) {
                case rule_kind::identity:
                        return bound::inf();
                case rule_kind::multiply:
                case rule_kind::distinct_odd:
                        return j % d_ == 0 ? bound(1) : bound::inf();
                case rule_kind::odd_distinct:
                        return bound(2);
                case rule_kind::mod3:
                        return j % 2 == 0 ? bound(1) : bound(3);
                case rule_kind::table: {
                        auto it = table_.find(j);
                        return it == table_.end() ? bound::inf() : it->second.b;
                }
                }
                breach("unreachable rule kind");
        }

        std::optional<ZZ> phi_raw(const ZZ &i) const
        {
                switch (kind_) {
                case rule_kind::identity:
                        return std::nullopt;
                case rule_kind::multiply:
                case rule_kind::distinct_odd:
                        return d_ * i;
                case rule_kind::odd_distinct:
                        if (i % 2 == 0)
                                return i / 2;
                        return std::nullopt;
                case rule_kind::mod3:
                        if (i % 6 == 0)
                                return i;
                        if (i % 3 == 0) /* odd multiple of 3 */
                                return i / 3;
                        return 2 * i;
                case rule_kind::table: {
                        auto it = table_.find(i);
                        if (it == table_.end())
                                return std::nullopt;
                        return it->second.phi;
                }
                }
                breach("unreachable rule kind");
        }

        std::optional<ZZ> phi_inv_raw(const ZZ &j) const
        {
                switch (kind_) {
                case rule_kind::identity:
                        return std::nullopt;
                case rule_kind::multiply:
                case rule_kind::distinct_odd:
                        if (j % d_ == 0)
                                return j / d_;
                        return std::nullopt;
                case rule_kind::odd_distinct:
                        return 2 * j;
                case rule_kind::mod3:
                        if (j % 6 == 0)
                                return j;
                        if (j % 2 == 0) /* even, not divisible by 3 */
                                return j / 2;
                        return 3 * j; /* odd */
                case rule_kind::table: {
                        auto it = inverse_.find(j);
                        if (it == inverse_.end())
                                return std::nullopt;
                        return it->second;
                }
                }
                breach("unreachable rule kind");
        }

      private:
        void range_check(const ZZ &i) const
        {
                if (i < 1)
                        refuse("part indices are >= 1");
                if (i > horizon_)
                        refuse("query at " + i.str() +
                               " exceeds spec horizon " + horizon_.str());
        }

        rule_kind kind_;
        ZZ d_;
        std::map<ZZ, table_entry> table_;
        std::map<ZZ, ZZ> inverse_;
        ZZ horizon_;
};

inline sequence_spec make_builtin(const std::string &name, ZZ horizon)
{
        if (name == "identity")
                return sequence_spec(rule_kind::identity, std::move(horizon));
        if (name == "distinct_odd")
                return sequence_spec(rule_kind::distinct_odd,
                                     std::move(horizon));
        if (name == "odd_distinct")
                return sequence_spec(rule_kind::odd_distinct,
                                     std::move(horizon));
        if (name == "mod3_rule" || name == "mod3")
                return sequence_spec(rule_kind::mod3, std::move(horizon));
        if (name.rfind("multiply:", 0) == 0)
                return sequence_spec(rule_kind::multiply, std::move(horizon),
                                     parse_zz(name.substr(9)));
        refuse("unknown builtin rule: " + name);
}

/* One defect found by validate: the index, what failed, and the values
 * involved.  validate returns the first defect in index order. */
struct rule_violation {
        ZZ i;
        std::string what;
};

inline std::optional<rule_violation> validate(const sequence_spec &spec)
{
        std::set<ZZ> images;
        auto check_index = [&](const ZZ &i) -> std::optional<rule_violation> {
                bound ai = spec.a_raw(i);
                if (!ai.finite())
                        return std::nullopt;
                auto ph = spec.phi_raw(i);
                if (!ph)
                        return rule_violation{
                            i, "a_i finite but phi undefined"};
                if (*ph < 1)
                        return rule_violation{i, "phi(i) < 1"};
                bound bj = spec.b_raw(*ph);
                if (!bj.finite())
                        return rule_violation{
                            i, "b at phi(i) = " + ph->str() + " is infinite"};
                if (i * ai.value() != *ph * bj.value())
                        return rule_violation{
                            i, "i*a_i = " + ZZ(i * ai.value()).str() +
                                   " but phi(i)*b_phi(i) = " +
                                   ZZ(*ph * bj.value()).str()};
                if (!images.insert(*ph).second)
                        return rule_violation{
                            i, "phi not injective at image " + ph->str()};
                return std::nullopt;
        };

        /* every firable index needs a source: finite b_j requires a
         * phi-preimage (possibly past the horizon) */
        auto check_target = [&](const ZZ &j) -> std::optional<rule_violation> {
                if (spec.b_raw(j).finite() && !spec.phi_inv_raw(j))
                        return rule_violation{
                            j, "b_j finite but j has no phi preimage"};
                return std::nullopt;
        };

        if (spec.kind() == rule_kind::table) {
                for (const auto &[i, e] : spec.table()) {
                        (void)e;
                        if (auto v = check_index(i))
                                return v;
                }
                for (const auto &[j, e] : spec.table()) {
                        (void)e;
                        if (auto v = check_target(j))
                                return v;
                }
                return std::nullopt;
        }
        for (ZZ i = 1; i <= spec.horizon(); ++i)
                if (auto v = check_index(i))
                        return v;
        for (ZZ j = 1; j <= spec.horizon(); ++j)
                if (auto v = check_target(j))
                        return v;
        return std::nullopt;
}

/* The rule graph has the parts with a finite a- or b-bound as vertices
 * and an edge i -> j exactly when phi(j) = i; a firing at i removes
 * copies of i and deposits copies of j.  Components are cycles or
 * (possibly one- or two-sided infinite) chains; chains are cut at the
 * horizon and flagged. */
enum class component_kind {
        cycle,
        path,              /* finite both ways */
        forward_infinite,  /* cut upstream: ... -> v_1 */
        backward_infinite, /* cut downstream: v_k -> ... */
        biinfinite,        /* cut on both sides */
};

inline const char *component_kind_name(component_kind k)
{
        switch (k) {
        case component_kind::cycle:
                return "cycle";
        case component_kind::path:
                return "path";
        case component_kind::forward_infinite:
                return "forward_infinite";
        case component_kind::backward_infinite:
                return "backward_infinite";
        case component_kind::biinfinite:
                return "biinfinite";
        }
        return "?";
}

struct graph_component {
        component_kind kind;
        /* Edge-walk order: vertices[t+1] receives what a firing at
         * vertices[t] deposits.  For a cycle the walk omits the closing
         * repetition and starts at the smallest vertex, so a 3-cycle on
         * {3, 4, 5} where firing at 3 feeds 5 reads (3, 5, 4). */
        std::vector<ZZ> vertices;
};

/* Component through one part.  The upstream neighbour of v is phi(v)
 * (the edge phi(v) -> v), the downstream neighbour is phi^{-1}(v). */
inline graph_component component_of(const sequence_spec &spec, const ZZ &part)
{
        if (part < 1 || part > spec.horizon())
                refuse("part " + part.str() + " outside horizon");
        if (!spec.in_graph(part))
                refuse("part " + part.str() +
                       " is isolated (a and b both infinite)");

        graph_component comp;
        std::vector<ZZ> up; /* strictly upstream of part */
        bool cut_up = false, cut_down = false, closed = false;

        ZZ v = part;
        while (true) {
                if (!spec.a_raw(v).finite())
                        break; /* genuine chain start */
                auto pred = spec.phi_raw(v);
                check(pred.has_value(), "finite a without phi after validate");
                if (*pred == part) {
                        closed = true;
                        break;
                }
                if (*pred > spec.horizon()) {
                        cut_up = true;
                        break;
                }
                v = *pred;
                up.push_back(v);
                if (up.size() > 1000000)
                        refuse("component walk exceeds 10^6 vertices");
        }

        std::vector<ZZ> down{part};
        if (!closed) {
                v = part;
                while (true) {
                        if (!spec.b_raw(v).finite())
                                break; /* genuine chain end */
                        auto succ = spec.phi_inv_raw(v);
                        if (!succ || *succ > spec.horizon()) {
                                /* either outside a finite table or past
                                 * the horizon: cut */
                                cut_down = true;
                                break;
                        }
                        v = *succ;
                        down.push_back(v);
                        if (down.size() > 1000000)
                                refuse("component walk exceeds 10^6 vertices");
                }
        } else {
                /* collect the full cycle by walking downstream */
                v = part;
                while (true) {
                        auto succ = spec.phi_inv_raw(v);
                        check(succ.has_value(), "cycle edge vanished");
                        if (*succ == part)
                                break;
                        v = *succ;
                        down.push_back(v);
                }
        }

        if (closed) {
                comp.kind = component_kind::cycle;
                /* anchor at the smallest vertex so the same cycle prints
                 * the same way no matter which part seeded the walk */
                auto lo = std::min_element(down.begin(), down.end());
                std::rotate(down.begin(), lo, down.end());
                comp.vertices = std::move(down);
                return comp;
        }
        comp.vertices.assign(up.rbegin(), up.rend());
        comp.vertices.insert(comp.vertices.end(), down.begin(), down.end());
        if (cut_up && cut_down)
                comp.kind = component_kind::biinfinite;
        else if (cut_up)
                comp.kind = component_kind::forward_infinite;
        else if (cut_down)
                comp.kind = component_kind::backward_infinite;
        else
                comp.kind = component_kind::path;
        return comp;
}

/* Split a partition by graph component.  Structural only: any
 * multiplicities are accepted, but every part must be a graph vertex.
 * Pairs come back ordered by the smallest part in the component. */
inline std::vector<std::pair<graph_component, partition>>
decompose_support(const sequence_spec &spec, const partition &lam)
{
        std::vector<std::pair<graph_component, partition>> out;
        std::set<ZZ> seen;
        for (const auto &[p, m] : lam.mults()) {
                (void)m;
                if (seen.count(p))
                        continue;
                graph_component comp = component_of(spec, p);
                partition piece;
                for (const ZZ &v : comp.vertices) {
                        seen.insert(v);
                        ZZ c = lam.count(v);
                        if (c > 0)
                                piece.set(v, c);
                }
                check(!piece.empty(), "component lost its seed part");
                out.emplace_back(std::move(comp), std::move(piece));
        }
        return out;
}

/* A-membership check used by the mapping operations. */
inline void require_in_A(const sequence_spec &spec, const partition &lam)
{
        for (const auto &[p, m] : lam.mults()) {
                bound a = spec.a(p);
                if (!a.admits(m))
                        refuse("not in the source set: part " + p.str() +
                               " has multiplicity " + m.str() +
                               " but a bound of " + a.str());
        }
}

inline void require_in_B(const sequence_spec &spec, const partition &lam)
{
        for (const auto &[p, m] : lam.mults()) {
                bound b = spec.b(p);
                if (!b.admits(m))
                        refuse("not in the target set: part " + p.str() +
                               " has multiplicity " + m.str() +
                               " but b bound of " + b.str());
        }
}

} // namespace ohara
