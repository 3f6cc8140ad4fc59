#include <gtest/gtest.h>

#include <cmath>

#include "dimtower/errors.hpp"
#include "dimtower/quadfield.hpp"

using namespace dimtower;

namespace {

bool naive_squarefree(std::uint64_t n)
{
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0)
            return false;
    return true;
}

// Smallest 0 < y <= y_cap with x^2 - D y^2 = +-4 giving an algebraic
// integer (x + y sqrt(D))/2. Independent of the continued-fraction path.
struct BruteUnit
{
    Int x, y;
    int norm = 0;
    bool found = false;
};

BruteUnit brute_unit(std::uint64_t D, std::uint64_t y_cap)
{
    for (std::uint64_t yy = 1; yy <= y_cap; ++yy)
    {
        Int y(static_cast<unsigned long>(yy));
        for (int s : {-4, 4})
        {
            Int x2 = Int(static_cast<unsigned long>(D)) * y * y + s;
            if (x2 <= 0 || !is_square(x2))
                continue;
            Int x = isqrt(x2);
            bool integral = D % 4 == 1 || (yy % 2 == 0 && mpz_even_p(x.get_mpz_t()));
            if (integral)
                return {x, y, s / 4, true};
        }
    }
    return {};
}

} // namespace

TEST(SquarefreePart, Examples)
{
    auto a = squarefree_part(Int(572));
    EXPECT_EQ(a.D, 143);
    EXPECT_EQ(a.f, 2);
    auto b = squarefree_part(Int(1));
    EXPECT_EQ(b.D, 1);
    EXPECT_EQ(b.f, 1);
    auto c = squarefree_part(Int(32));
    EXPECT_EQ(c.D, 2);
    EXPECT_EQ(c.f, 4);
}

TEST(SquarefreePart, MatchesNaiveDecomposition)
{
    for (unsigned long n = 1; n < 3000; ++n)
    {
        auto s = squarefree_part(Int(n));
        ASSERT_EQ(s.f * s.f * s.D, Int(n));
        ASSERT_TRUE(naive_squarefree(s.D.get_ui())) << n;
    }
}

TEST(DiscMap, Examples)
{
    EXPECT_EQ(disc_map(Int(7)).D, 2);
    EXPECT_EQ(disc_map(Int(4)).D, 5);
    EXPECT_EQ(disc_map(Int(25)).D, 143);
    EXPECT_EQ(disc_map(Int(25)).f, 2);
    EXPECT_THROW(disc_map(Int(3)), PreconditionError);
}

TEST(FundamentalUnit, KnownUnits)
{
    auto u2 = fundamental_unit(Int(2));
    EXPECT_EQ(u2.u_K, QuadInt(1, 1, 2));
    EXPECT_EQ(u2.norm_uK, -1);
    EXPECT_EQ(u2.u_D, QuadInt(3, 2, 2));
    EXPECT_TRUE(u2.is_squared);

    auto u5 = fundamental_unit(Int(5));
    EXPECT_EQ(u5.u_K, QuadInt(1, 1, 5, 2));
    EXPECT_EQ(u5.norm_uK, -1);
    EXPECT_EQ(u5.u_D, QuadInt(3, 1, 5, 2));

    auto u143 = fundamental_unit(Int(143));
    EXPECT_EQ(u143.u_K, QuadInt(12, 1, 143));
    EXPECT_EQ(u143.norm_uK, 1);
    EXPECT_EQ(u143.u_D, u143.u_K);
    EXPECT_FALSE(u143.is_squared);

    EXPECT_EQ(fundamental_unit(Int(6)).u_K, QuadInt(5, 2, 6));
    EXPECT_EQ(fundamental_unit(Int(23)).u_K, QuadInt(24, 5, 23));
}

TEST(FundamentalUnit, RejectsBadInput)
{
    EXPECT_THROW(fundamental_unit(Int(12)), PreconditionError);
    EXPECT_THROW(fundamental_unit(Int(1)), PreconditionError);
    EXPECT_THROW(fundamental_unit(Int(94), 3), BudgetExceeded);
}

TEST(FundamentalUnit, MatchesBruteForceSearch)
{
    constexpr std::uint64_t cap = 20000;
    for (unsigned long D = 2; D < 600; ++D)
    {
        if (!naive_squarefree(D))
            continue;
        auto u = fundamental_unit(Int(D));
        Int half_y = u.u_K.b() * (2 / u.u_K.den());
        auto brute = brute_unit(D, cap);
        if (half_y <= Int(static_cast<unsigned long>(cap)))
        {
            ASSERT_TRUE(brute.found) << "D=" << D;
            ASSERT_EQ(u.u_K, QuadInt(brute.x, brute.y, Int(D), 2)) << "D=" << D;
            ASSERT_EQ(u.norm_uK, brute.norm) << "D=" << D;
        }
        else
        {
            // No smaller unit exists below the search cap.
            ASSERT_FALSE(brute.found) << "D=" << D;
        }
    }
}

TEST(FundamentalUnit, UnitInvariants)
{
    for (unsigned long D = 2; D <= 10000; ++D)
    {
        if (!naive_squarefree(D))
            continue;
        auto u = fundamental_unit(Int(D));
        ASSERT_EQ(abs(norm(u.u_K)), 1) << D;
        ASSERT_EQ(norm(u.u_K), u.norm_uK);
        ASSERT_TRUE(u.u_K.greater_than_one());
        ASSERT_EQ(norm(u.u_D), 1);
        ASSERT_EQ(u.u_D, u.norm_uK == -1 ? quad_mul(u.u_K, u.u_K) : u.u_K);
        // Totally positive: both conjugates positive, i.e. trace > 0 with norm 1.
        ASSERT_GT(trace(u.u_D), 0);
        ASSERT_GT(u.u_K.a(), 0);
        ASSERT_GT(u.u_K.b(), 0);
    }
}

TEST(FundamentalUnit, HuaBound)
{
    // floor(Disc) < u_K and log u_K < Disc (1 + log Disc), Disc = f sqrt(D),
    // f = 1 for D = 1 mod 4 and 2 otherwise.
    for (unsigned long D = 2; D <= 10000; ++D)
    {
        if (D == 5 || !naive_squarefree(D))
            continue;
        auto u = fundamental_unit(Int(D));
        unsigned long f = D % 4 == 1 ? 1 : 2;
        Int disc_floor = isqrt(Int(f * f * D));
        // u_K > n  <=>  a + b sqrt(D) > n den  <=>  b^2 D > (n den - a)^2 when n den - a >= 0.
        Int c = disc_floor * u.u_K.den() - u.u_K.a();
        bool greater = c < 0 || u.u_K.b() * u.u_K.b() * Int(D) > c * c;
        ASSERT_TRUE(greater) << "D=" << D;

        // log u_K = log(trace) + log(1 - conj/trace), |conj| = 1/u_K.
        long exp;
        double mant = mpz_get_d_2exp(&exp, trace(u.u_K).get_mpz_t());
        double log_u = std::log(mant) + double(exp) * std::log(2.0);
        double disc = double(f) * std::sqrt(double(D));
        ASSERT_LT(log_u, disc * (1 + std::log(disc))) << "D=" << D;
    }
}

TEST(QuadArithmetic, Examples)
{
    QuadInt x(3, 2, 2);
    EXPECT_EQ(quad_mul(x, x), QuadInt(17, 12, 2));
    EXPECT_EQ(quad_pow(x, 0), QuadInt::one(2));
    EXPECT_EQ(trace(x), 6);
    EXPECT_EQ(norm(x), 1);
    EXPECT_EQ(quad_pow(QuadInt(1, 1, 5, 2), 2), QuadInt(3, 1, 5, 2));
    EXPECT_EQ(quad_pow(QuadInt(1, 1, 5, 2), 3), QuadInt(2, 1, 5));
    EXPECT_THROW(quad_mul(QuadInt(1, 1, 2), QuadInt(1, 1, 3)), PreconditionError);
}

TEST(QuadArithmetic, Canonicalization)
{
    EXPECT_EQ(QuadInt(4, 2, 5, 2), QuadInt(2, 1, 5));
    EXPECT_EQ(QuadInt(4, 2, 5, 2).den(), 1);
    EXPECT_THROW(QuadInt(1, 1, 2, 2), PreconditionError); // D = 2 mod 4
    EXPECT_THROW(QuadInt(1, 2, 5, 2), PreconditionError); // parity mismatch
    EXPECT_THROW(QuadInt(1, 1, 5, 3), PreconditionError);
}

TEST(QuadArithmetic, PowerMatchesRepeatedProduct)
{
    for (unsigned long D : {2ul, 5ul, 13ul, 21ul, 143ul})
    {
        QuadInt u = fundamental_unit(Int(D)).u_K;
        QuadInt acc = QuadInt::one(Int(D));
        for (unsigned long k = 0; k < 25; ++k)
        {
            ASSERT_EQ(quad_pow(u, k), acc);
            ASSERT_EQ(abs(norm(acc)), 1);
            acc = acc * u;
        }
    }
}

TEST(QuadArithmetic, Formatting)
{
    EXPECT_EQ(format_quad(QuadInt(1, 1, 2)), "1+sqrt(2)");
    EXPECT_EQ(format_quad(QuadInt(3, 1, 5, 2)), "(3+sqrt(5))/2");
    EXPECT_EQ(format_quad(QuadInt(5, 2, 6)), "5+2*sqrt(6)");
    EXPECT_EQ(format_quad(QuadInt(3, -2, 2)), "3-2*sqrt(2)");
}
