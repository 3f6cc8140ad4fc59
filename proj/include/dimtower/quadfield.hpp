#pragma once

#include <cstdint>

#include "dimtower/factor.hpp"
#include "dimtower/integer.hpp"

namespace dimtower {

/// n = f^2 * D with D squarefree.
struct SquarefreeDecomp
{
    Int n;
    Int D;
    Int f;
};

SquarefreeDecomp squarefree_part(const Int &n, std::uint64_t trial_bound = default_trial_bound);

/// Squarefree part of (N+1)(N-3) = (N-1)^2 - 4, for N >= 4.
SquarefreeDecomp disc_map(const Int &N, std::uint64_t trial_bound = default_trial_bound);

bool is_squarefree(const Int &n, std::uint64_t trial_bound = default_trial_bound);

/// Element (a + b*sqrt(D)) / den of the ring of integers of Q(sqrt(D)).
///
/// Canonical form: den is 2 only when D = 1 mod 4 and a, b are both odd;
/// otherwise den = 1. Equality is therefore structural.
class QuadInt
{
  public:
    QuadInt() = default;

    /// Builds and canonicalizes (a + b*sqrt(D)) / den. Throws
    /// PreconditionError if the value is not an algebraic integer of the
    /// field or den is not 1 or 2.
    QuadInt(Int a, Int b, Int D, int den = 1);

    static QuadInt one(const Int &D) { return QuadInt(1, 0, D); }

    const Int &a() const { return a_; }
    const Int &b() const { return b_; }
    const Int &D() const { return D_; }
    int den() const { return den_; }

    /// a + b*sqrt(D) > 1 under the embedding sqrt(D) > 0, decided exactly.
    bool greater_than_one() const;

    /// Galois conjugate (a - b*sqrt(D)) / den.
    QuadInt conjugate() const;

    friend bool operator==(const QuadInt &, const QuadInt &) = default;

  private:
    Int a_ = 0;
    Int b_ = 0;
    Int D_ = 2;
    int den_ = 1;
};

QuadInt quad_mul(const QuadInt &x, const QuadInt &y);
QuadInt quad_pow(const QuadInt &x, unsigned long k);
QuadInt operator*(const QuadInt &x, const QuadInt &y);

/// x + conj(x); always an integer for elements of the ring of integers.
Int trace(const QuadInt &x);
/// x * conj(x); always an integer for elements of the ring of integers.
Int norm(const QuadInt &x);

/// "1+sqrt(2)", "(3+sqrt(5))/2", "12+sqrt(143)".
std::string format_quad(const QuadInt &x);

struct UnitRecord
{
    Int D;
    QuadInt u_K;
    int norm_uK = 1;
    /// First totally positive power of u_K.
    QuadInt u_D;
    bool is_squared = false;
};

/// Step budget for the continued-fraction unit search. The number of steps is
/// bounded by a small multiple of the regulator, so this only trips on
/// fields whose unit has hundreds of thousands of digits.
inline constexpr std::uint64_t default_unit_budget = 2'000'000;

/// Fundamental unit of the maximal order of Q(sqrt(D)) via the continued
/// fraction of sqrt(D), or of (1+sqrt(D))/2 when D = 1 mod 4. Throws
/// PreconditionError for D < 2 or non-squarefree D and BudgetExceeded when
/// the expansion runs past `budget` partial quotients.
UnitRecord fundamental_unit(const Int &D, std::uint64_t budget = default_unit_budget,
                            std::uint64_t trial_bound = default_trial_bound);

} // namespace dimtower
