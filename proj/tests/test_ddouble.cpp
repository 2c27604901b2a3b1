#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fskan/ddouble.hpp"

using fskan::DDouble;

namespace {

double rel_diff(DDouble a, DDouble b)
{
    DDouble d = a - b;
    double scale = std::max(std::abs(a.hi()), std::abs(b.hi()));
    if (scale == 0.0) return std::abs(d.hi());
    return std::abs(d.hi() / scale);
}

} // namespace

TEST(DDouble, TwoSumRecoversRoundoff)
{
    DDouble s = DDouble::twosum(1.0, 1e-30);
    EXPECT_EQ(s.hi(), 1.0);
    EXPECT_EQ(s.lo(), 1e-30);
}

TEST(DDouble, TwoProdRecoversRoundoff)
{
    double a = 1.0 + 0x1p-30;
    DDouble p = DDouble::twoprod(a, a);
    // exact square is hi + lo
    long double exact = static_cast<long double>(a) * a;
    long double got = static_cast<long double>(p.hi()) + p.lo();
    EXPECT_EQ(got, exact);
}

TEST(DDouble, AdditionCancellation)
{
    DDouble x(1.0, 1e-20);
    DDouble y = x - 1.0;
    EXPECT_NEAR(y.hi(), 1e-20, 1e-35);
}

TEST(DDouble, DivisionRoundTrip)
{
    DDouble third = DDouble(1.0) / DDouble(3.0);
    DDouble one = third * 3.0;
    EXPECT_LT(rel_diff(one, DDouble(1.0)), 1e-31);
}

TEST(DDouble, SqrtSquares)
{
    DDouble r = fskan::sqrt(DDouble(2.0));
    EXPECT_LT(rel_diff(r * r, DDouble(2.0)), 1e-30);
}

TEST(DDouble, Comparisons)
{
    DDouble a(1.0, -1e-20);
    DDouble b(1.0);
    EXPECT_LT(a, b);
    EXPECT_GT(b, a);
    EXPECT_NE(a, b);
    EXPECT_EQ(DDouble(2.0), DDouble(2.0));
    EXPECT_LE(a, a);
}

TEST(DDouble, AbsAndFloor)
{
    EXPECT_EQ(fskan::abs(DDouble(-3.5)).hi(), 3.5);
    EXPECT_EQ(fskan::floor(DDouble(2.75)).hi(), 2.0);
    // integral hi with negative lo: floor must drop below
    DDouble x(3.0, -1e-20);
    EXPECT_EQ(fskan::floor(x).hi(), 2.0);
}

TEST(DDouble, KnownConstantParses)
{
    // 2/sqrt(3) to 29 printed digits
    DDouble parsed = fskan::parse_ddouble("1.15470053837925152901829756100");
    DDouble exact = DDouble(2.0) / fskan::sqrt(DDouble(3.0));
    EXPECT_LT(rel_diff(parsed, exact), 1e-29);
}

TEST(DDouble, FormatKnownValue)
{
    DDouble x = DDouble(2.0) / fskan::sqrt(DDouble(3.0));
    std::string s = fskan::to_string(x, 29);
    EXPECT_EQ(s.substr(0, 30), "1.1547005383792515290182975610");
}

TEST(DDouble, StringRoundTrip)
{
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-12, 12);
    for (int i = 0; i < 200; ++i) {
        DDouble x = DDouble(mant(rng)) * fskan::detail::pow10_dd(expo(rng)) + DDouble(mant(rng)) * 1e-18;
        std::string s = fskan::to_string(x, 33);
        DDouble back = fskan::parse_ddouble(s);
        // format and parse each cost ~1 ulp of the double-double format
        EXPECT_LT(rel_diff(back, x), 8e-32) << s;
    }
}

TEST(DDouble, ParseRejectsGarbage)
{
    EXPECT_THROW(fskan::parse_ddouble(""), std::invalid_argument);
    EXPECT_THROW(fskan::parse_ddouble("abc"), std::invalid_argument);
    EXPECT_THROW(fskan::parse_ddouble("1.2e"), std::invalid_argument);
    EXPECT_THROW(fskan::parse_ddouble("1.2.3"), std::invalid_argument);
}

TEST(DDouble, SpecialValues)
{
    EXPECT_TRUE(fskan::isnan(DDouble(std::nan(""))));
    EXPECT_FALSE(fskan::isfinite(DDouble(INFINITY)));
    EXPECT_EQ(fskan::to_string(DDouble(0.0), 5), "0.0000E+00");
}
