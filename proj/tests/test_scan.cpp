#include <gtest/gtest.h>

#include <cstdlib>

#include "dimtower/errors.hpp"
#include "dimtower/quadfield.hpp"
#include "dimtower/scan.hpp"

using namespace dimtower;

TEST(ResolveJobs, EnvironmentOverrides)
{
    ::unsetenv("DIMTOWER_JOBS");
    EXPECT_EQ(resolve_jobs(3), 3);
    EXPECT_GE(resolve_jobs(0), 1);
    ::setenv("DIMTOWER_JOBS", "2", 1);
    EXPECT_EQ(resolve_jobs(5), 2);
    ::unsetenv("DIMTOWER_JOBS");
}

TEST(ScanW, RowsAreSquarefreeAndOrdered)
{
    auto rows = scan_w(Int(7), 200);
    std::size_t expected = 0;
    for (unsigned long D = 2; D <= 200; ++D)
        expected += is_squarefree(Int(D));
    ASSERT_EQ(rows.size(), expected);
    for (std::size_t i = 1; i < rows.size(); ++i)
        EXPECT_LT(rows[i - 1].D, rows[i].D);
    for (const auto &row : rows)
    {
        bool divides = mpz_divisible_ui_p(row.D.get_mpz_t(), 7);
        EXPECT_EQ(row.report.has_value(), !divides) << row.D;
        EXPECT_EQ(row.skip_reason, divides ? "p divides D" : "") << row.D;
        if (row.report)
            EXPECT_EQ(*row.report, satisfies_w(Int(7), row.D));
    }
}

TEST(ScanW, SmallPrimesAreSkipped)
{
    for (const auto &row : scan_w(Int(3), 30))
    {
        EXPECT_FALSE(row.report.has_value());
        EXPECT_EQ(row.skip_reason, "p in {2,3}");
    }
    EXPECT_THROW(scan_w(Int(8), 30), PreconditionError);
}

TEST(ScanW, ParallelMatchesSerial)
{
    for (int jobs : {1, 2, 4})
        EXPECT_EQ(scan_w(Int(13), 600, 2, jobs), serial::scan_w(Int(13), 600));
    EXPECT_EQ(scan_w(Int(5), 300, 3, 3), serial::scan_w(Int(5), 300, 3));
}

TEST(Equivalence, ParallelMatchesSerial)
{
    for (int jobs : {1, 3})
        EXPECT_EQ(equivalence_grid(60, 40, jobs), serial::equivalence_grid(60, 40));
}

TEST(Equivalence, GridCoversEveryPair)
{
    auto rows = equivalence_grid(40, 30);
    std::size_t expected = 0;
    for (unsigned long p : {5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 29UL, 31UL, 37UL})
        for (unsigned long D = 2; D < 30; ++D)
            expected += is_squarefree(Int(D)) && D % p != 0;
    EXPECT_EQ(rows.size(), expected);
    for (std::size_t i = 1; i < rows.size(); ++i)
        EXPECT_TRUE(rows[i - 1].p < rows[i].p || (rows[i - 1].p == rows[i].p && rows[i - 1].D < rows[i].D));
}

TEST(Equivalence, AllPairsConsistent)
{
    auto rows = equivalence_grid(100, 60);
    std::size_t lucas_rows = 0;
    for (const auto &row : rows)
    {
        EXPECT_TRUE(row.consistent()) << "p=" << row.p << " D=" << row.D;
        EXPECT_EQ(row.lucas_equal.has_value(), row.norm_uK == -1);
        lucas_rows += row.lucas_equal.has_value();
    }
    EXPECT_GT(lucas_rows, 0u);
}

TEST(Equivalence, SingleCheck)
{
    auto row = check_equivalence(Int(13), fundamental_unit(Int(2)));
    EXPECT_TRUE(row.order_equal);
    EXPECT_EQ(row.norm_uK, -1);
    ASSERT_TRUE(row.lucas_equal.has_value());
    EXPECT_TRUE(*row.lucas_equal);

    auto fails = check_equivalence(Int(5), fundamental_unit(Int(2)));
    EXPECT_FALSE(fails.order_equal);
    EXPECT_EQ(fails.log_valuation, 1);
    EXPECT_FALSE(*fails.lucas_equal);
}
