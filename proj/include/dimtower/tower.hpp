#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dimtower/factor.hpp"
#include "dimtower/integer.hpp"
#include "dimtower/quadfield.hpp"

namespace dimtower {

/// One rung d_ell(D) = u_D^ell + u_D^-ell + 1 of the tower over Q(sqrt(D)).
struct TowerEntry
{
    Int D;
    std::uint64_t ell = 0;
    Int dim;
    std::optional<Factorization> factorization;
};

/// d_1(D) = trace(u_D) + 1.
Int first_dimension(const UnitRecord &unit);

/// d_0 .. d_count for the tower whose first rung is d1, by the second-order
/// recurrence d_n = (d1 - 1) d_{n-1} - d_{n-2} - (d1 - 3), d_0 = 3.
std::vector<Int> dimensions_from_first(const Int &d1, std::uint64_t count);

/// The ell-th dimension over Q(sqrt(D)); ell >= 1.
TowerEntry dimension(const Int &D, std::uint64_t ell);

/// Memoized tower over a fixed field. Not synchronized: confine an instance
/// to one thread. Results match `dimension` exactly.
class Tower
{
  public:
    explicit Tower(const Int &D);
    explicit Tower(UnitRecord unit);

    const UnitRecord &unit() const { return unit_; }
    const Int &D() const { return unit_.D; }
    const Int &d1() const { return dims_[1]; }

    /// d_ell, extending the cache as needed. ell = 0 gives 3.
    const Int &at(std::uint64_t ell);

  private:
    UnitRecord unit_;
    std::vector<Int> dims_;
};

/// Modified Chebyshev polynomial Delta_n(x) = 1 + 2 T_n((x-1)/2),
/// coefficients in ascending degree.
struct DeltaPoly
{
    unsigned n = 0;
    std::vector<Int> coeffs;
};

DeltaPoly delta_poly(unsigned n);

/// Delta_n(x), exact. delta_eval(n, d_ell(D)) = d_{n*ell}(D).
Int delta_eval(unsigned n, const Int &x);

struct IndexLookup
{
    Int D;
    Int f;
    std::uint64_t ell = 0;
};

/// Recovers (D, f, ell) with d = d_ell(D). Throws PreconditionError for
/// d < 4 and InternalInconsistency if no rung matches.
IndexLookup index_of_dimension(const Int &d, std::uint64_t trial_bound = default_trial_bound);

Int gcd_of_dimensions(const Int &D, std::uint64_t ell1, std::uint64_t ell2);

/// 3-adic valuation of an index.
int v3(std::uint64_t ell);

/// True when d_1 = 2^N + 2 for some N >= 1.
bool is_pathological_base(const Int &d1);

/// Primes dividing d_ell(D) but no earlier rung. Throws PathologyExcluded
/// for ell = 2 over a pathological base.
std::vector<Int> new_primes(const Int &D, std::uint64_t ell, std::uint64_t trial_bound = default_trial_bound);

/// d_{3^s k}(D) for the first `count` k not divisible by 3.
std::vector<TowerEntry> subtower(const Int &D, unsigned s, std::uint64_t count);

/// Taylor coefficients 0..N of (3 - 2 d1 x + d1 x^2) / (1 - d1 x + d1 x^2 - x^3).
std::vector<Int> generating_coeffs(const Int &d1, std::uint64_t N);

} // namespace dimtower
