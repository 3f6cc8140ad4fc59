#include "dimtower/scan.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>

#include <omp.h>

#include "dimtower/errors.hpp"
#include "dimtower/factor.hpp"

namespace dimtower {

namespace {

std::vector<Int> squarefree_range(std::uint64_t lo, std::uint64_t hi_inclusive)
{
    std::vector<Int> out;
    for (std::uint64_t D = lo; D <= hi_inclusive; ++D)
        if (is_squarefree(Int(static_cast<unsigned long>(D))))
            out.emplace_back(static_cast<unsigned long>(D));
    return out;
}

ScanRow scan_one(const Int &p, const Int &D, int r)
{
    ScanRow row{D, std::nullopt, {}};
    if (p == 2 || p == 3)
        row.skip_reason = "p in {2,3}";
    else if (mpz_divisible_p(D.get_mpz_t(), p.get_mpz_t()))
        row.skip_reason = "p divides D";
    else
    {
        try
        {
            row.report = satisfies_w(p, D, r);
        }
        catch (const BudgetExceeded &)
        {
            row.skip_reason = "unit budget exceeded";
        }
    }
    return row;
}

struct GridItem
{
    Int p;
    Int D;
};

std::vector<GridItem> grid_items(std::uint64_t p_end, std::uint64_t d_end)
{
    std::vector<GridItem> items;
    if (p_end <= 5 || d_end <= 2)
        return items;
    auto Ds = squarefree_range(2, d_end - 1);
    for (std::uint32_t p : primes_up_to(std::uint32_t(p_end - 1)))
    {
        if (p < 5)
            continue;
        for (const Int &D : Ds)
            if (!mpz_divisible_ui_p(D.get_mpz_t(), p))
                items.push_back({Int(p), D});
    }
    return items;
}

// Runs body(i) for i in [0, n) on `jobs` threads. The first exception (by
// index) is rethrown after the loop.
template <typename Body> void parallel_for(std::size_t n, int jobs, Body body)
{
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (std::size_t i = 0; i < n; ++i)
    {
        try
        {
            body(i);
        }
        catch (...)
        {
            errors[i] = std::current_exception();
        }
    }
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace

int resolve_jobs(int requested)
{
    if (const char *env = std::getenv("DIMTOWER_JOBS"))
    {
        int v = std::atoi(env);
        if (v > 0)
            return v;
    }
    if (requested > 0)
        return requested;
    return omp_get_max_threads();
}

EquivalenceRow check_equivalence(const Int &p, const UnitRecord &unit)
{
    EquivalenceRow row;
    row.p = p;
    row.D = unit.D;
    row.norm_uK = unit.norm_uK;
    row.order_equal = mult_order(reduce_unit(unit.u_K, p, 1)) == mult_order(reduce_unit(unit.u_K, p, 2));
    row.log_valuation = padic_log_valuation_auto(p, unit);
    if (unit.norm_uK == -1)
    {
        Int P = trace(unit.u_K);
        row.lucas_equal = lucas_period(P, -1, p * p) == lucas_period(P, -1, p);
    }
    return row;
}

std::vector<ScanRow> scan_w(const Int &p, std::uint64_t dmax, int r, int jobs)
{
    auto Ds = squarefree_range(2, dmax);
    std::vector<ScanRow> rows(Ds.size());
    parallel_for(Ds.size(), resolve_jobs(jobs), [&](std::size_t i) { rows[i] = scan_one(p, Ds[i], r); });
    return rows;
}

std::vector<EquivalenceRow> equivalence_grid(std::uint64_t p_end, std::uint64_t d_end, int jobs)
{
    auto items = grid_items(p_end, d_end);
    // Units depend only on D; compute them once up front.
    auto Ds = squarefree_range(2, d_end > 2 ? d_end - 1 : 1);
    std::vector<UnitRecord> units(Ds.size());
    int workers = resolve_jobs(jobs);
    parallel_for(Ds.size(), workers, [&](std::size_t i) { units[i] = fundamental_unit(Ds[i]); });

    auto unit_of = [&](const Int &D) -> const UnitRecord & {
        auto it = std::lower_bound(Ds.begin(), Ds.end(), D);
        return units[std::size_t(it - Ds.begin())];
    };
    std::vector<EquivalenceRow> rows(items.size());
    parallel_for(items.size(), workers,
                 [&](std::size_t i) { rows[i] = check_equivalence(items[i].p, unit_of(items[i].D)); });
    return rows;
}

namespace serial {

std::vector<ScanRow> scan_w(const Int &p, std::uint64_t dmax, int r)
{
    std::vector<ScanRow> rows;
    for (const Int &D : squarefree_range(2, dmax))
        rows.push_back(scan_one(p, D, r));
    return rows;
}

std::vector<EquivalenceRow> equivalence_grid(std::uint64_t p_end, std::uint64_t d_end)
{
    std::vector<EquivalenceRow> rows;
    for (const auto &item : grid_items(p_end, d_end))
        rows.push_back(check_equivalence(item.p, fundamental_unit(item.D)));
    return rows;
}

} // namespace serial

} // namespace dimtower
