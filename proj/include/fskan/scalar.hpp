#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

#include "fskan/ddouble.hpp"

namespace fskan {

// Precision tier of a whole solver run. All arithmetic inside one run uses
// a single tier; mixing is not supported.
enum class Tier { Standard, Extended };

inline const char* tier_name(Tier t) { return t == Tier::Standard ? "standard" : "extended"; }

template <class Real>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr Tier tier = Tier::Standard;
    static constexpr int out_digits = 17;   // round-trip significant digits
    static double epsilon() { return 0x1p-52; }
    static double from_double(double x) { return x; }
};

template <>
struct scalar_traits<DDouble> {
    static constexpr Tier tier = Tier::Extended;
    static constexpr int out_digits = 33;
    static DDouble epsilon() { return DDouble(0x1p-104); }
    static DDouble from_double(double x) { return DDouble(x); }
};

inline double to_double(double x) { return x; }
inline double to_double(DDouble x) { return x.hi(); }

inline std::string to_string(double x, int digits)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*E", digits - 1, x);
    return buf;
}

template <class Real>
Real parse_real(std::string_view s);

template <>
inline double parse_real<double>(std::string_view s)
{
    return std::stod(std::string(s));
}

template <>
inline DDouble parse_real<DDouble>(std::string_view s)
{
    return parse_ddouble(s);
}

} // namespace fskan
