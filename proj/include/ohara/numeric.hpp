#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ohara {

using ZZ = boost::multiprecision::cpp_int;
using QQ = boost::multiprecision::cpp_rational;

using qvec = std::vector<QQ>;
using zvec = std::vector<ZZ>;

/* Domain refusals (bad input, unsupported request) surface as
 * std::domain_error; a broken internal invariant is an internal_error.
 * The CLI maps the former to exit 1 and the latter to exit 2. */
struct internal_error : std::logic_error {
        using std::logic_error::logic_error;
};

[[noreturn]] inline void refuse(const std::string &msg)
{
        throw std::domain_error(msg);
}

[[noreturn]] inline void breach(const std::string &msg)
{
        throw internal_error(msg);
}

inline void check(bool ok, const char *msg)
{
        if (!ok)
                breach(msg);
}

/* cpp_int division truncates toward zero; the engine needs floors. */
inline ZZ floor_div(const ZZ &a, const ZZ &b)
{
        check(b > 0, "floor_div: divisor must be positive");
        ZZ q = a / b;
        if (a % b != 0 && a < 0)
                --q;
        return q;
}

inline ZZ floor_q(const QQ &x)
{
        return floor_div(numerator(x), denominator(x));
}

inline ZZ ceil_q(const QQ &x)
{
        return -floor_q(-x);
}

inline ZZ lcm_zz(const ZZ &a, const ZZ &b)
{
        check(a > 0 && b > 0, "lcm of nonpositive values");
        return a / gcd(a, b) * b;
}

/* Serialized rationals are reduced "p/q" strings, "/1" omitted. */
inline std::string frac_str(const QQ &x)
{
        if (denominator(x) == 1)
                return numerator(x).str();
        return numerator(x).str() + "/" + denominator(x).str();
}

inline ZZ parse_zz(const std::string &s)
{
        if (s.empty())
                refuse("empty integer literal");
        size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size())
                refuse("bad integer literal: " + s);
        for (; i < s.size(); ++i)
                if (s[i] < '0' || s[i] > '9')
                        refuse("bad integer literal: " + s);
        return ZZ(s);
}

inline QQ parse_frac(const std::string &s)
{
        auto slash = s.find('/');
        if (slash == std::string::npos)
                return QQ(parse_zz(s));
        ZZ p = parse_zz(s.substr(0, slash));
        ZZ q = parse_zz(s.substr(slash + 1));
        if (q == 0)
                refuse("zero denominator: " + s);
        return QQ(p, q);
}

/* Multiplicity bound: a positive integer or infinity.  A bound of
 * infinity never fires and imposes no cap. */
class bound {
      public:
        bound() : fin_(false), v_(0) {}
        explicit bound(ZZ v) : fin_(true), v_(std::move(v))
        {
                if (v_ < 1)
                        refuse("bounds must be >= 1");
        }
        static bound inf() { return bound(); }

        bool finite() const { return fin_; }
        const ZZ &value() const
        {
                check(fin_, "value() on infinite bound");
                return v_;
        }
        /* m admissible under this bound, i.e. m < value */
        bool admits(const ZZ &m) const { return !fin_ || m < v_; }
        /* m large enough to fire, i.e. m >= value */
        bool fires(const ZZ &m) const { return fin_ && m >= v_; }

        bool operator==(const bound &o) const
        {
                return fin_ == o.fin_ && (!fin_ || v_ == o.v_);
        }
        bool operator!=(const bound &o) const { return !(*this == o); }

        std::string str() const { return fin_ ? v_.str() : "inf"; }
        static bound parse(const std::string &s)
        {
                if (s == "inf")
                        return inf();
                return bound(parse_zz(s));
        }

      private:
        bool fin_;
        ZZ v_;
};

/* Axis-aligned box with strictly positive rational sides. */
struct box {
        qvec sides;

        box() = default;
        explicit box(qvec s) : sides(std::move(s))
        {
                for (const QQ &x : sides)
                        if (x <= 0)
                                refuse("box sides must be positive");
        }
        size_t dim() const { return sides.size(); }
        QQ volume() const
        {
                QQ v = 1;
                for (const QQ &x : sides)
                        v *= x;
                return v;
        }
};

} // namespace ohara
