#include <gtest/gtest.h>

#include <set>

#include "dimtower/errors.hpp"
#include "dimtower/families.hpp"
#include "dimtower/quadfield.hpp"
#include "dimtower/tower.hpp"

using namespace dimtower;

namespace {

// Structural checks shared by every certificate.
void expect_well_formed(const FamilyCertificate &c)
{
    Int d = 1;
    for (std::size_t j = 0; j < c.primes.size(); ++j)
        d *= pow(c.primes[j], static_cast<unsigned long>(c.exponents[j]));
    EXPECT_EQ(c.dimension, d);
    EXPECT_EQ(product(c.factorization), d);
    auto m = disc_map(d);
    EXPECT_EQ(c.D, m.D);
    EXPECT_EQ(c.f, m.f);
    EXPECT_EQ(Tower(c.D).at(c.ell), d);
    EXPECT_FALSE(c.class_group_checked);
    ASSERT_FALSE(c.per_prime.empty());
    for (const auto &w : c.per_prime)
    {
        EXPECT_TRUE(w.satisfies_W);
        EXPECT_EQ(w.D, c.D);
        EXPECT_GE(w.log_valuation, 2);
    }
    std::string why;
    EXPECT_TRUE(verify_certificate(c, &why)) << why;
}

} // namespace

TEST(Theorem1Bound, Examples)
{
    EXPECT_EQ(theorem1_max_t(Int(7), Int(4663), 2), 0);
    EXPECT_EQ(theorem1_max_t(Int(5), Int(2), 2), 4);
    EXPECT_THROW(theorem1_max_t(Int(5), Int(7), 5), BoundEmpty);
    EXPECT_THROW(theorem1_max_t(Int(5), Int(2), 4), BoundEmpty);
    EXPECT_THROW(theorem1_max_t(Int(3), Int(2), 2), PreconditionError);
    EXPECT_THROW(theorem1_max_t(Int(5), Int(5), 2), PreconditionError);
    EXPECT_THROW(theorem1_max_t(Int(5), Int(4), 2), PreconditionError);
    EXPECT_THROW(theorem1_max_t(Int(5), Int(2), 1), PreconditionError);
}

TEST(Theorem1Bound, ExactByRationalArithmetic)
{
    for (long p : {5L, 7L, 11L, 13L, 17L, 23L})
        for (long q : {2L, 3L, 5L, 7L, 11L, 101L, 4663L})
        {
            if (q == p)
                continue;
            for (int r = 2; r <= p + 3; ++r)
            {
                mpq_class rhs(pow(Int(2), p) * pow(Int(p), std::max<long>(p - r, 0)),
                              pow(Int(3), p) * pow(Int(p), std::max<long>(r - p, 0)));
                rhs.canonicalize();
                if (rhs <= 1)
                {
                    EXPECT_THROW(theorem1_max_t(Int(p), Int(q), r), BoundEmpty) << p << " " << q << " " << r;
                    continue;
                }
                int t = theorem1_max_t(Int(p), Int(q), r);
                ASSERT_GE(t, 0);
                EXPECT_LT(mpq_class(pow(Int(q), t)), rhs) << p << " " << q << " " << r;
                EXPECT_GE(mpq_class(pow(Int(q), t + 1)), rhs) << p << " " << q << " " << r;
            }
        }
}

TEST(GenTheorem1, SmallestCases)
{
    auto c5 = gen_theorem1(Int(5), Int(2), 2, 0);
    EXPECT_EQ(c5.dimension, 25);
    EXPECT_EQ(c5.D, 143);
    EXPECT_EQ(c5.ell, 1u);
    ASSERT_EQ(c5.per_prime.size(), 1u);
    EXPECT_EQ(c5.per_prime[0].p, 5);
    expect_well_formed(c5);

    // The cofactor prime is irrelevant when t = 0.
    EXPECT_EQ(gen_theorem1(Int(5), Int(11), 2, 0).D, 143);

    auto c7 = gen_theorem1(Int(7), Int(2), 2, 0);
    EXPECT_EQ(c7.dimension, 49);
    EXPECT_EQ(c7.D, 23);
    expect_well_formed(c7);
}

TEST(GenTheorem1, WithCofactor)
{
    for (int t = 0; t <= 4; ++t)
        expect_well_formed(gen_theorem1(Int(5), Int(2), 2, t));
    expect_well_formed(gen_theorem1(Int(5), Int(2), 3, 1));
    expect_well_formed(gen_theorem1(Int(13), Int(7), 2, 3));
}

TEST(GenTheorem1, Preconditions)
{
    EXPECT_THROW(gen_theorem1(Int(5), Int(2), 2, 5), PreconditionError);
    EXPECT_THROW(gen_theorem1(Int(5), Int(2), 2, -1), PreconditionError);
    EXPECT_THROW(gen_theorem1(Int(13), Int(3), 2, 1), PreconditionError);
    EXPECT_THROW(gen_theorem1(Int(5), Int(2), 4, 0), BoundEmpty);
    EXPECT_NO_THROW(gen_theorem1(Int(13), Int(3), 2, 0));
}

TEST(GenTheorem2, Examples)
{
    auto c1 = gen_theorem2({Int(5)}, {2});
    EXPECT_EQ(c1.D, 143);
    EXPECT_EQ(c1.D, gen_theorem1(Int(5), Int(2), 2, 0).D);
    expect_well_formed(c1);

    auto c2 = gen_theorem2({Int(5), Int(7)}, {3, 3});
    EXPECT_EQ(c2.dimension, 42875);
    EXPECT_EQ(c2.D, Int("12765138"));
    EXPECT_EQ(c2.f, 12);
    ASSERT_EQ(c2.per_prime.size(), 2u);
    EXPECT_EQ(c2.per_prime[0].p, 5);
    EXPECT_EQ(c2.per_prime[1].p, 7);
    expect_well_formed(c2);
}

TEST(GenTheorem2, Preconditions)
{
    EXPECT_THROW(gen_theorem2({Int(5), Int(5)}, {3, 3}), PreconditionError);
    EXPECT_THROW(gen_theorem2({Int(5), Int(7)}, {2, 3}), PreconditionError);
    EXPECT_THROW(gen_theorem2({Int(3)}, {2}), PreconditionError);
    EXPECT_THROW(gen_theorem2({Int(9)}, {2}), PreconditionError);
    EXPECT_THROW(gen_theorem2({}, {}), PreconditionError);
    EXPECT_THROW(gen_theorem2({Int(5)}, {2, 2}), PreconditionError);
}

TEST(VerifyCertificate, DetectsTampering)
{
    auto c = gen_theorem1(Int(5), Int(2), 2, 1);
    std::string why;
    ASSERT_TRUE(verify_certificate(c, &why));

    auto bad_d = c;
    bad_d.D += 1;
    EXPECT_FALSE(verify_certificate(bad_d, &why));
    EXPECT_FALSE(why.empty());

    auto bad_w = c;
    bad_w.per_prime[0].ord_mod_pr *= 5;
    EXPECT_FALSE(verify_certificate(bad_w));

    auto bad_flag = c;
    bad_flag.class_group_checked = true;
    EXPECT_FALSE(verify_certificate(bad_flag));
}

TEST(Enumerate, Theorem1PowersOfFive)
{
    // r = 4 lies outside the bound (3^5 >= 2^5 * 5), so only r = 2, 3 are emitted.
    auto e = enumerate_family(T1Range{Int(5), Int(2), 2, 4, 0, 0}, SIZE_MAX);
    ASSERT_EQ(e.certificates.size(), 2u);
    EXPECT_EQ(e.certificates[0].dimension, 25);
    EXPECT_EQ(e.certificates[0].D, 143);
    EXPECT_EQ(e.certificates[1].dimension, 125);
    EXPECT_EQ(e.certificates[1].D, 427);
    EXPECT_TRUE(e.budget_exceeded.empty());

    // d = 625 is reached through the one-prime case of the second family.
    auto c625 = gen_theorem2({Int(5)}, {4});
    EXPECT_EQ(c625.D, 97343);
    std::set<Int> ds{e.certificates[0].D, e.certificates[1].D, c625.D};
    EXPECT_EQ(ds.size(), 3u);
}

TEST(Enumerate, Theorem1FullBound)
{
    auto e = enumerate_family(T1Range{Int(5), Int(2), 2, 3, 0, -1}, SIZE_MAX);
    std::vector<Int> dims;
    for (const auto &c : e.certificates)
    {
        dims.push_back(c.dimension);
        expect_well_formed(c);
    }
    std::vector<Int> expected{25, 50, 100, 125, 200, 250, 400};
    EXPECT_EQ(dims, expected);
}

TEST(Enumerate, LimitKeepsSmallest)
{
    EXPECT_TRUE(enumerate_family(T1Range{Int(5), Int(2), 2, 3, 0, -1}, 0).certificates.empty());
    auto e = enumerate_family(T1Range{Int(5), Int(2), 2, 3, 0, -1}, 3);
    ASSERT_EQ(e.certificates.size(), 3u);
    EXPECT_EQ(e.certificates[2].dimension, 100);
}

TEST(Enumerate, Theorem2Schedule)
{
    T2Schedule s{{Int(5), Int(7)}, {{3, 3}, {3, 4}, {4, 3}}};
    auto e = enumerate_family(s, SIZE_MAX);
    ASSERT_EQ(e.certificates.size() + e.budget_exceeded.size(), 3u);
    std::set<Int> ds;
    for (const auto &c : e.certificates)
    {
        ds.insert(c.D);
        expect_well_formed(c);
    }
    EXPECT_EQ(ds.size(), e.certificates.size());
    for (std::size_t i = 1; i < e.certificates.size(); ++i)
        EXPECT_LT(e.certificates[i - 1].dimension, e.certificates[i].dimension);
}

TEST(Enumerate, MalformedInput)
{
    EXPECT_THROW(enumerate_family(T1Range{Int(5), Int(2), 3, 2, 0, 0}, 5), PreconditionError);
    EXPECT_THROW(enumerate_family(T1Range{Int(5), Int(2), 1, 2, 0, 0}, 5), PreconditionError);
    EXPECT_THROW(enumerate_family(T2Schedule{{Int(5), Int(7)}, {{3}}}, 5), PreconditionError);
}

TEST(Enumerate, DeterministicAndMatchesSerial)
{
    T1Range range{Int(7), Int(2), 2, 3, 0, -1};
    auto a = enumerate_family(range, SIZE_MAX, 1);
    auto b = enumerate_family(range, SIZE_MAX, 4);
    auto c = serial::enumerate_family(range, SIZE_MAX);
    EXPECT_EQ(a.certificates, b.certificates);
    EXPECT_EQ(a.certificates, c.certificates);
    for (const auto &cert : a.certificates)
        EXPECT_EQ(cert.per_prime[0], satisfies_w(cert.primes[0], cert.D));
}

TEST(Enumerate, FirstAppearanceWhenCofactorTrivial)
{
    for (long p : {5L, 7L, 11L, 13L})
        for (int r : {2, 3})
        {
            auto c = gen_theorem1(Int(p), Int(2), r, 0);
            EXPECT_EQ(c.ell, 1u);
            EXPECT_EQ(appears_in_tower(Int(p), c.D), (TowerAppearance{1, r})) << p << " " << r;
        }
}

TEST(TheoremTag, RoundTrip)
{
    EXPECT_EQ(parse_theorem("t1"), Theorem::T1);
    EXPECT_EQ(parse_theorem("T2"), Theorem::T2);
    EXPECT_EQ(parse_theorem(to_string(Theorem::T2)), Theorem::T2);
    EXPECT_THROW(parse_theorem("t3"), PreconditionError);
}
