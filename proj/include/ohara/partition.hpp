#pragma once

#include "numeric.hpp"

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ohara {

/* Partition as a sparse multiplicity map.  Parts are positive integers,
 * multiplicities are positive (absent means zero); both can exceed any
 * machine word, so everything is cpp_int. */
class partition {
      public:
        using map_type = std::map<ZZ, ZZ>;

        partition() = default;

        const map_type &mults() const { return m_; }
        bool empty() const { return m_.empty(); }

        ZZ count(const ZZ &part) const
        {
                auto it = m_.find(part);
                return it == m_.end() ? ZZ(0) : it->second;
        }

        void set(const ZZ &part, const ZZ &mult)
        {
                if (part < 1)
                        refuse("parts must be >= 1");
                if (mult < 0)
                        refuse("multiplicities must be >= 0");
                if (mult == 0)
                        m_.erase(part);
                else
                        m_[part] = mult;
        }

        void add(const ZZ &part, const ZZ &reps)
        {
                check(reps >= 0, "add: negative repetition count");
                if (reps == 0)
                        return;
                if (part < 1)
                        refuse("parts must be >= 1");
                m_[part] += reps;
        }

        void remove(const ZZ &part, const ZZ &reps)
        {
                check(reps >= 0, "remove: negative repetition count");
                if (reps == 0)
                        return;
                auto it = m_.find(part);
                check(it != m_.end() && it->second >= reps,
                      "remove: multiplicity underflow");
                it->second -= reps;
                if (it->second == 0)
                        m_.erase(it);
        }

        /* |lambda| = sum of part * multiplicity */
        ZZ size() const
        {
                ZZ n = 0;
                for (const auto &[p, m] : m_)
                        n += p * m;
                return n;
        }

        ZZ max_part() const
        {
                return m_.empty() ? ZZ(0) : m_.rbegin()->first;
        }

        bool operator==(const partition &o) const { return m_ == o.m_; }
        bool operator!=(const partition &o) const { return m_ != o.m_; }
        bool operator<(const partition &o) const { return m_ < o.m_; }

        /* Canonical text: ascending "part^mult" tokens, "^1" omitted.
         * The empty partition prints as the empty string. */
        std::string str() const
        {
                std::ostringstream out;
                bool first = true;
                for (const auto &[p, m] : m_) {
                        if (!first)
                                out << ' ';
                        first = false;
                        out << p;
                        if (m != 1)
                                out << '^' << m;
                }
                return out.str();
        }

        static partition parse(const std::string &text)
        {
                partition lam;
                std::istringstream in(text);
                std::string tok;
                while (in >> tok) {
                        auto caret = tok.find('^');
                        ZZ part, mult;
                        if (caret == std::string::npos) {
                                part = parse_zz(tok);
                                mult = 1;
                        } else {
                                part = parse_zz(tok.substr(0, caret));
                                mult = parse_zz(tok.substr(caret + 1));
                        }
                        if (part < 1)
                                refuse("parts must be >= 1: " + tok);
                        if (mult < 1)
                                refuse("multiplicities must be >= 1: " + tok);
                        if (lam.m_.count(part))
                                refuse("repeated part in partition text: " +
                                       tok);
                        lam.m_.emplace(std::move(part), std::move(mult));
                }
                return lam;
        }

      private:
        map_type m_;
};

/* Enumerate all partitions of n whose multiplicities satisfy m_i <
 * bound_of(i), in lexicographic order of the multiplicity vector
 * (m_1, m_2, ...).  bound_of is any callable ZZ -> bound.  The optional
 * parts whitelist restricts which parts may occur.  Enumeration refuses
 * above the cap; the iteration count is exponential in n. */
constexpr long enumeration_cap_default = 60;

template <typename BoundOf, typename Emit>
void for_each_partition(const ZZ &n, BoundOf &&bound_of, Emit &&emit,
                        const std::vector<ZZ> &parts = {},
                        long cap = enumeration_cap_default)
{
        if (n < 0)
                refuse("cannot enumerate partitions of a negative number");
        if (n > cap)
                refuse("enumeration cap exceeded (n = " + n.str() + ", cap = " +
                       std::to_string(cap) + ")");
        std::vector<ZZ> universe;
        if (parts.empty()) {
                for (ZZ p = 1; p <= n; ++p)
                        universe.push_back(p);
        } else {
                universe = parts;
                for (const ZZ &p : universe)
                        if (p < 1)
                                refuse("parts must be >= 1");
        }

        partition cur;
        /* Depth-first over universe[idx..], remaining mass rem. */
        auto rec = [&](auto &&self, size_t idx, const ZZ &rem) -> void {
                if (rem == 0) {
                        emit(const_cast<const partition &>(cur));
                        /* parts beyond idx all get multiplicity 0, which
                         * is admissible under any bound */
                        return;
                }
                if (idx == universe.size())
                        return;
                const ZZ &p = universe[idx];
                bound b = bound_of(p);
                ZZ top = rem / p;
                if (b.finite() && b.value() - 1 < top)
                        top = b.value() - 1;
                for (ZZ m = 0; m <= top; ++m) {
                        if (m > 0)
                                cur.set(p, m);
                        self(self, idx + 1, rem - m * p);
                }
                cur.set(p, 0);
        };
        rec(rec, 0, n);
}

template <typename BoundOf>
std::vector<partition>
enumerate_partitions(const ZZ &n, BoundOf &&bound_of,
                     const std::vector<ZZ> &parts = {},
                     long cap = enumeration_cap_default)
{
        std::vector<partition> out;
        for_each_partition(
            n, std::forward<BoundOf>(bound_of),
            [&](const partition &lam) { out.push_back(lam); }, parts, cap);
        return out;
}

} // namespace ohara
