#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dimtower/integer.hpp"
#include "dimtower/localorder.hpp"

namespace dimtower {

/// Worker count: DIMTOWER_JOBS from the environment when set, otherwise
/// `requested`, otherwise the OpenMP default.
int resolve_jobs(int requested = 0);

struct ScanRow
{
    Int D;
    std::optional<WReport> report; // empty when skipped
    std::string skip_reason;

    friend bool operator==(const ScanRow &, const ScanRow &) = default;
};

/// One row per squarefree D in [2, dmax], ordered by D.
std::vector<ScanRow> scan_w(const Int &p, std::uint64_t dmax, int r = 2, int jobs = 0);

struct EquivalenceRow
{
    Int p;
    Int D;
    int norm_uK = 1;
    bool order_equal = false; // (W) by order equality
    int log_valuation = 1;
    /// Lucas period mod p^2 equals period mod p; set only when norm(u_K) = -1.
    std::optional<bool> lucas_equal;

    bool consistent() const
    {
        return order_equal == (log_valuation >= 2) && (!lucas_equal || *lucas_equal == order_equal);
    }

    friend bool operator==(const EquivalenceRow &, const EquivalenceRow &) = default;
};

/// Every prime 5 <= p < p_end and squarefree 2 <= D < d_end with p not
/// dividing D, ordered by (p, D).
std::vector<EquivalenceRow> equivalence_grid(std::uint64_t p_end, std::uint64_t d_end, int jobs = 0);

/// Straight-line single-threaded versions kept as the reference for the
/// parallel kernels above.
namespace serial {

std::vector<ScanRow> scan_w(const Int &p, std::uint64_t dmax, int r = 2);
std::vector<EquivalenceRow> equivalence_grid(std::uint64_t p_end, std::uint64_t d_end);

} // namespace serial

EquivalenceRow check_equivalence(const Int &p, const UnitRecord &unit);

} // namespace dimtower
