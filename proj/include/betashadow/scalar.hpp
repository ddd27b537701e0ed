// Numeric backend abstraction. Everything downstream is templated over a
// scalar S which is either IEEE binary64 (fast, guarded comparisons) or
// boost::multiprecision::cpp_rational (exact; comparisons never Uncertain).
//
// Guarded comparisons return a Ternary: when two binary64 quantities are
// within the relative guard band rho = 1e-10 of each other, we refuse to
// call the strict inequality either way.
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace betashadow {

enum class Ternary { No, Uncertain, Yes };

inline bool yes(Ternary t) { return t == Ternary::Yes; }
inline bool no(Ternary t) { return t == Ternary::No; }
inline bool uncertain(Ternary t) { return t == Ternary::Uncertain; }

// expression templates stay off so arithmetic yields plain values; the
// convenience is worth more than the saved temporaries here
using rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                  boost::multiprecision::et_off>;
using bigint = boost::multiprecision::cpp_int;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool is_exact = false;
    static constexpr double guard_rho = 1e-10;

    static double guard(double a, double b)
    {
        return guard_rho * std::max({1.0, std::fabs(a), std::fabs(b)});
    }

    static double from_double(double d) { return d; }
    static double to_double(double d) { return d; }

    // step cap for the window-drag construction
    static std::size_t default_drag_budget() { return 100000; }

    static double from_decimal(const std::string& text)
    {
        auto slash = text.find('/');
        if (slash != std::string::npos) {
            double p = from_decimal(text.substr(0, slash));
            double q = from_decimal(text.substr(slash + 1));
            if (q == 0.0)
                fail(errc::parse_error, "zero denominator in '" + text + "'");
            return p / q;
        }
        const char* s = text.c_str();
        char* end = nullptr;
        double v = std::strtod(s, &end);
        if (end == s || *end != '\0')
            fail(errc::parse_error, "not a number: '" + text + "'");
        return v;
    }

    static std::string to_decimal(double v)
    {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    }
};

template <>
struct scalar_traits<rational> {
    static constexpr bool is_exact = true;

    static rational guard(const rational&, const rational&) { return rational(0); }

    static rational from_double(double d)
    {
        return rational(d); // exact: every binary64 value is dyadic
    }

    static double to_double(const rational& r) { return r.template convert_to<double>(); }

    static std::size_t default_drag_budget() { return 10000; }

    // Accepts plain/scientific decimals ("0.125", "-3", "1e-4") and exact
    // fractions ("19/10"). Decimal forms convert without rounding.
    static rational from_decimal(const std::string& text)
    {
        auto slash = text.find('/');
        if (slash != std::string::npos) {
            bigint p = parse_integer(text.substr(0, slash));
            bigint q = parse_integer(text.substr(slash + 1));
            if (q == 0)
                fail(errc::parse_error, "zero denominator in '" + text + "'");
            return rational(p, q);
        }

        std::string t = text;
        bool negative = false;
        std::size_t pos = 0;
        if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) {
            negative = (t[pos] == '-');
            ++pos;
        }

        std::string digits;
        long frac_len = 0;
        long exponent = 0;
        bool seen_digit = false, seen_dot = false;
        for (; pos < t.size(); ++pos) {
            char c = t[pos];
            if (c >= '0' && c <= '9') {
                digits += c;
                seen_digit = true;
                if (seen_dot)
                    ++frac_len;
            } else if (c == '.' && !seen_dot) {
                seen_dot = true;
            } else if ((c == 'e' || c == 'E') && seen_digit) {
                exponent = parse_long(t.substr(pos + 1));
                pos = t.size() - 1;
            } else {
                fail(errc::parse_error, "not a number: '" + text + "'");
            }
        }
        if (!seen_digit)
            fail(errc::parse_error, "not a number: '" + text + "'");

        // cpp_int's string constructor treats a leading 0 as an octal prefix
        std::size_t nz = digits.find_first_not_of('0');
        digits = nz == std::string::npos ? std::string("0") : digits.substr(nz);
        bigint mant(digits);
        if (negative)
            mant = -mant;
        long shift = exponent - frac_len;
        if (shift >= 0)
            return rational(mant * pow10(shift));
        return rational(mant, pow10(-shift));
    }

    // Exact decimal when the denominator is of the form 2^a*5^b, otherwise
    // the "p/q" form (still exact; round-trips through from_decimal).
    static std::string to_decimal(const rational& v)
    {
        bigint num = boost::multiprecision::numerator(v);
        bigint den = boost::multiprecision::denominator(v);
        bigint d = den;
        long twos = 0, fives = 0;
        while (d % 2 == 0) {
            d /= 2;
            ++twos;
        }
        while (d % 5 == 0) {
            d /= 5;
            ++fives;
        }
        long k = std::max(twos, fives);
        if (d != 1 || k > 4096)
            return num.str() + "/" + den.str();

        bool negative = num < 0;
        bigint scaled = (negative ? -num : num) * pow2(k - twos) * pow5(k - fives);
        bigint ip = scaled / pow10(k);
        bigint fp = scaled % pow10(k);
        std::string out = negative ? "-" : "";
        out += ip.str();
        if (k > 0 && fp != 0) {
            std::string frac = fp.str();
            frac.insert(frac.begin(), static_cast<std::size_t>(k) - frac.size(), '0');
            while (!frac.empty() && frac.back() == '0')
                frac.pop_back();
            out += "." + frac;
        }
        return out;
    }

private:
    static bigint parse_integer(const std::string& s)
    {
        if (s.empty())
            fail(errc::parse_error, "empty integer");
        for (std::size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (!((c >= '0' && c <= '9') || (i == 0 && (c == '+' || c == '-'))))
                fail(errc::parse_error, "not an integer: '" + s + "'");
        }
        // strip leading zeros so cpp_int does not read an octal prefix
        std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
        if (start == s.size())
            fail(errc::parse_error, "not an integer: '" + s + "'");
        std::size_t nz = s.find_first_not_of('0', start);
        std::string body = nz == std::string::npos ? std::string("0") : s.substr(nz);
        return s[0] == '-' ? bigint("-" + body) : bigint(body);
    }

    static long parse_long(const std::string& s)
    {
        if (s.empty())
            fail(errc::parse_error, "empty exponent");
        char* end = nullptr;
        long v = std::strtol(s.c_str(), &end, 10);
        if (*end != '\0')
            fail(errc::parse_error, "bad exponent: '" + s + "'");
        return v;
    }

    static bigint pow10(long k) { return boost::multiprecision::pow(bigint(10), static_cast<unsigned>(k)); }
    static bigint pow2(long k) { return boost::multiprecision::pow(bigint(2), static_cast<unsigned>(k)); }
    static bigint pow5(long k) { return boost::multiprecision::pow(bigint(5), static_cast<unsigned>(k)); }
};

// --- guarded comparison helpers ----------------------------------------

// is a < b, strictly?
template <class S>
Ternary lt(const S& a, const S& b)
{
    if constexpr (scalar_traits<S>::is_exact) {
        return a < b ? Ternary::Yes : Ternary::No;
    } else {
        S g = scalar_traits<S>::guard(a, b);
        if (a < b - g)
            return Ternary::Yes;
        if (a > b + g)
            return Ternary::No;
        return Ternary::Uncertain;
    }
}

template <class S>
Ternary gt(const S& a, const S& b)
{
    return lt(b, a);
}

template <class S>
S abs_val(const S& a)
{
    return a < S(0) ? S(-a) : a;
}

template <class S>
S midpoint(const S& a, const S& b)
{
    return (a + b) / S(2);
}

template <class S>
double approx(const S& v)
{
    return scalar_traits<S>::to_double(v);
}

} // namespace betashadow
