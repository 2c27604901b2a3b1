#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fskan {

// Unevaluated sum of two doubles, |lo| <= ulp(hi)/2 after every operation.
// Error-free transforms follow Dekker (1971) and Shewchuk (1997); the
// compound operations are the standard double-word algorithms with
// O(u^2) relative error, u = 2^-53.
class DDouble {
public:
    DDouble() : hi_(0.0), lo_(0.0) {}
    DDouble(double x) : hi_(x), lo_(0.0) {}
    DDouble(double hi, double lo) : hi_(hi), lo_(lo) {}

    double hi() const { return hi_; }
    double lo() const { return lo_; }

    explicit operator double() const { return hi_; }

    friend DDouble operator-(DDouble x) { return DDouble(-x.hi_, -x.lo_); }

    friend DDouble operator+(DDouble x, DDouble y);
    friend DDouble operator+(DDouble x, double y);
    friend DDouble operator+(double x, DDouble y) { return y + x; }

    friend DDouble operator-(DDouble x, DDouble y) { return x + (-y); }
    friend DDouble operator-(DDouble x, double y) { return x + (-y); }
    friend DDouble operator-(double x, DDouble y) { return (-y) + x; }

    friend DDouble operator*(DDouble x, DDouble y);
    friend DDouble operator*(DDouble x, double y);
    friend DDouble operator*(double x, DDouble y) { return y * x; }

    friend DDouble operator/(DDouble x, DDouble y);
    friend DDouble operator/(DDouble x, double y);
    friend DDouble operator/(double x, DDouble y) { return DDouble(x) / y; }

    DDouble& operator+=(DDouble y) { return *this = *this + y; }
    DDouble& operator-=(DDouble y) { return *this = *this - y; }
    DDouble& operator*=(DDouble y) { return *this = *this * y; }
    DDouble& operator/=(DDouble y) { return *this = *this / y; }

    // Normalized representation makes lexicographic compare exact.
    friend bool operator==(DDouble x, DDouble y) {
        return x.hi_ == y.hi_ && x.lo_ == y.lo_;
    }
    friend bool operator!=(DDouble x, DDouble y) { return !(x == y); }
    friend bool operator<(DDouble x, DDouble y) {
        return x.hi_ < y.hi_ || (x.hi_ == y.hi_ && x.lo_ < y.lo_);
    }
    friend bool operator>(DDouble x, DDouble y) { return y < x; }
    friend bool operator<=(DDouble x, DDouble y) { return !(y < x); }
    friend bool operator>=(DDouble x, DDouble y) { return !(x < y); }

    static DDouble fast_twosum(double a, double b) {
        // requires |a| >= |b|; 3 flops
        double s = a + b;
        double t = b - (s - a);
        return DDouble(s, t);
    }

    static DDouble twosum(double a, double b) {
        // branch-free Knuth variant; 6 flops
        double s = a + b;
        double ap = s - b;
        double bp = s - ap;
        double t = (a - ap) + (b - bp);
        return DDouble(s, t);
    }

    static DDouble twoprod(double a, double b) {
        double p = a * b;
        double e = std::fma(a, b, -p);
        return DDouble(p, e);
    }

private:
    double hi_;
    double lo_;
};

inline DDouble operator+(DDouble x, double y)
{
    DDouble s = DDouble::twosum(x.hi(), y);
    double v = x.lo() + s.lo();
    return DDouble::fast_twosum(s.hi(), v);
}

inline DDouble operator+(DDouble x, DDouble y)
{
    DDouble s = DDouble::twosum(x.hi(), y.hi());
    DDouble t = DDouble::twosum(x.lo(), y.lo());
    double c = s.lo() + t.hi();
    DDouble v = DDouble::fast_twosum(s.hi(), c);
    double w = t.lo() + v.lo();
    return DDouble::fast_twosum(v.hi(), w);
}

inline DDouble operator*(DDouble x, double y)
{
    DDouble c = DDouble::twoprod(x.hi(), y);
    double cl = std::fma(x.lo(), y, c.lo());
    return DDouble::fast_twosum(c.hi(), cl);
}

inline DDouble operator*(DDouble x, DDouble y)
{
    DDouble c = DDouble::twoprod(x.hi(), y.hi());
    double t0 = x.lo() * y.lo();
    double t1 = std::fma(x.hi(), y.lo(), t0);
    double t2 = std::fma(x.lo(), y.hi(), t1);
    double cl = c.lo() + t2;
    return DDouble::fast_twosum(c.hi(), cl);
}

inline DDouble operator/(DDouble x, double y)
{
    double th = x.hi() / y;
    DDouble p = DDouble::twoprod(th, y);
    double dh = x.hi() - p.hi();
    double dl = (dh - p.lo()) + x.lo();
    double tl = dl / y;
    return DDouble::fast_twosum(th, tl);
}

inline DDouble operator/(DDouble x, DDouble y)
{
    // long division, two correction terms
    double q0 = x.hi() / y.hi();
    DDouble r = x - y * q0;
    double q1 = r.hi() / y.hi();
    r = r - y * q1;
    double q2 = r.hi() / y.hi();
    return DDouble::fast_twosum(q0, q1) + q2;
}

inline DDouble abs(DDouble x) { return x.hi() < 0.0 || (x.hi() == 0.0 && x.lo() < 0.0) ? -x : x; }

inline bool isfinite(DDouble x) { return std::isfinite(x.hi()) && std::isfinite(x.lo()); }

inline bool isnan(DDouble x) { return std::isnan(x.hi()) || std::isnan(x.lo()); }

inline DDouble sqrt(DDouble x)
{
    if (x.hi() == 0.0) return DDouble(0.0);
    if (x.hi() < 0.0) return DDouble(std::numeric_limits<double>::quiet_NaN());
    // one Karp-Markstein refinement of the double estimate
    double y0 = std::sqrt(x.hi());
    DDouble r = x - DDouble::twoprod(y0, y0);
    double dy = r.hi() / (2.0 * y0);
    return DDouble::twosum(y0, dy) + r.lo() / (2.0 * y0);
}

inline DDouble floor(DDouble x)
{
    double fh = std::floor(x.hi());
    if (fh != x.hi()) return DDouble(fh);
    // hi is integral; lo decides
    return DDouble::fast_twosum(fh, std::floor(x.lo()));
}

inline DDouble ldexp(DDouble x, int n)
{
    return DDouble(std::ldexp(x.hi(), n), std::ldexp(x.lo(), n));
}

namespace detail {

inline DDouble pow10_dd(int n)
{
    bool neg = n < 0;
    unsigned e = static_cast<unsigned>(neg ? -n : n);
    DDouble base(10.0);
    DDouble r(1.0);
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1;
    }
    return neg ? DDouble(1.0) / r : r;
}

} // namespace detail

// Scientific notation with `digits` significant digits ("d.ddd...E±XX").
// Digit extraction follows the usual double-double scheme: scale into
// [1, 10), peel digits, round the tail.
inline std::string to_string(DDouble x, int digits)
{
    if (digits < 1) digits = 1;
    if (isnan(x)) return "nan";
    if (!isfinite(x)) return x.hi() > 0 ? "inf" : "-inf";

    std::string out;
    if (x.hi() < 0.0 || (x.hi() == 0.0 && x.lo() < 0.0)) {
        out += '-';
        x = -x;
    }
    if (x.hi() == 0.0) {
        out += "0.";
        out.append(static_cast<size_t>(digits - 1), '0');
        out += "E+00";
        return out;
    }

    int e10 = static_cast<int>(std::floor(std::log10(x.hi())));
    DDouble r = x / detail::pow10_dd(e10);
    if (r.hi() >= 10.0) { r /= 10.0; ++e10; }
    if (r.hi() < 1.0)   { r *= 10.0; --e10; }

    // one guard digit for rounding
    std::string digs;
    digs.reserve(static_cast<size_t>(digits) + 1);
    for (int i = 0; i < digits + 1; ++i) {
        int d = static_cast<int>(std::floor(r.hi()));
        if (d < 0) d = 0;
        if (d > 9) d = 9;
        r = (r - static_cast<double>(d)) * 10.0;
        if (r.hi() < 0.0) {                 // borrow from previous digit
            if (d > 0) { --d; r += 10.0; }
            else r = DDouble(0.0);
        }
        digs += static_cast<char>('0' + d);
    }
    // round on the guard digit, propagate carries
    if (digs.back() >= '5') {
        int i = digits - 1;
        while (i >= 0 && digs[static_cast<size_t>(i)] == '9') {
            digs[static_cast<size_t>(i)] = '0';
            --i;
        }
        if (i < 0) { digs.insert(digs.begin(), '1'); ++e10; }
        else ++digs[static_cast<size_t>(i)];
    }
    digs.resize(static_cast<size_t>(digits));

    out += digs[0];
    out += '.';
    out.append(digs, 1, std::string::npos);
    char exp[8];
    std::snprintf(exp, sizeof exp, "E%+03d", e10);
    out += exp;
    return out;
}

// Parses a plain decimal or scientific literal digit by digit; every
// intermediate fits double-double roundoff, so the result is correct
// to ~1 ulp of DDouble.
inline DDouble parse_ddouble(std::string_view s)
{
    size_t i = 0, n = s.size();
    auto fail = [&] { throw std::invalid_argument("parse_ddouble: bad literal '" + std::string(s) + "'"); };
    while (i < n && (s[i] == ' ' || s[i] == '\t')) ++i;
    bool neg = false;
    if (i < n && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';

    DDouble mant(0.0);
    int frac_digits = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < n; ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            mant = mant * 10.0 + static_cast<double>(c - '0');
            if (seen_dot) ++frac_digits;
            seen_digit = true;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!seen_digit) fail();

    int e10 = 0;
    if (i < n && (s[i] == 'e' || s[i] == 'E' || s[i] == 'd' || s[i] == 'D')) {
        ++i;
        bool eneg = false;
        if (i < n && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
        if (i >= n) fail();
        int ev = 0;
        for (; i < n && s[i] >= '0' && s[i] <= '9'; ++i)
            ev = ev * 10 + (s[i] - '0');
        e10 = eneg ? -ev : ev;
    }
    while (i < n && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i != n) fail();

    DDouble v = mant * detail::pow10_dd(e10 - frac_digits);
    return neg ? -v : v;
}

} // namespace fskan

template <>
struct std::numeric_limits<fskan::DDouble> {
    static constexpr bool is_specialized = true;
    static constexpr bool is_signed = true;
    static constexpr bool is_integer = false;
    static constexpr bool is_exact = false;
    static constexpr int digits = 106;
    static constexpr int digits10 = 31;
    static fskan::DDouble epsilon() { return fskan::DDouble(0x1p-104); }
    static fskan::DDouble min() { return fskan::DDouble(std::numeric_limits<double>::min() * 0x1p54); }
    static fskan::DDouble max() {
        return fskan::DDouble(std::numeric_limits<double>::max(),
                              std::numeric_limits<double>::max() * 0x1p-54);
    }
    static fskan::DDouble infinity() { return fskan::DDouble(std::numeric_limits<double>::infinity()); }
    static fskan::DDouble quiet_NaN() { return fskan::DDouble(std::numeric_limits<double>::quiet_NaN()); }
};
