#pragma once

#include <cstdint>
#include <optional>

#include "dimtower/integer.hpp"
#include "dimtower/quadfield.hpp"

namespace dimtower {

/// Legendre symbol (a|p) for an odd prime p, by Euler's criterion.
int legendre(const Int &a, const Int &p);

/// Image of a + b*sqrt(D) in O_K / p^r. A denominator 2 is cleared with the
/// inverse of 2 mod p^r; 0 <= a, b < p^r.
struct ResidueElement
{
    Int a;
    Int b;
    Int D;
    Int p;
    int r = 1;
    Int modulus;
    bool den_inverted = false;

    bool is_one() const { return a == 1 && b == 0; }
    friend bool operator==(const ResidueElement &, const ResidueElement &) = default;
};

/// Throws PreconditionError unless p is an odd prime not dividing D and r >= 1.
ResidueElement reduce_unit(const QuadInt &u, const Int &p, int r);

ResidueElement residue_mul(const ResidueElement &x, const ResidueElement &y);
ResidueElement residue_pow(const ResidueElement &x, const Int &e);

/// Multiplicative order in (O_K / p^r)^x. Strips primes from the exponent
/// p^(r-1) (p^2 - 1), which every element's order divides.
Int mult_order(const ResidueElement &x);

/// First appearance of p in the tower: p^power exactly divides d_ell.
struct TowerAppearance
{
    std::uint64_t ell = 0;
    int power = 0;

    friend bool operator==(const TowerAppearance &, const TowerAppearance &) = default;
};

struct WReport
{
    Int p;
    Int D;
    int r = 2;
    Int ord_mod_p;  // of u_K
    Int ord_mod_pr; // of u_K
    Int uD_ord_mod_p;
    Int uD_ord_mod_pr;
    bool satisfies_W = false;
    /// v_p(log_p u_K): the largest s with u_K^ord_mod_p = 1 mod p^s.
    int log_valuation = 1;
    std::optional<TowerAppearance> tower_index;

    friend bool operator==(const WReport &, const WReport &) = default;
};

inline constexpr int default_precision = 8;

/// Checks ord_p(u_K) = ord_{p^r}(u_K). Throws PreconditionError unless
/// p >= 5 is prime, D >= 2 is squarefree and p does not divide D.
WReport satisfies_w(const Int &p, const Int &D, int r = 2, int precision = default_precision);
WReport satisfies_w(const Int &p, const UnitRecord &unit, int r = 2, int precision = default_precision);

/// v_p(log_p u_K) computed at working precision p^R. Throws
/// PrecisionExhausted when the valuation reaches R.
int padic_log_valuation(const Int &p, const Int &D, int precision);
int padic_log_valuation(const Int &p, const UnitRecord &unit, int precision);

/// padic_log_valuation, doubling the precision until it is not exhausted.
int padic_log_valuation_auto(const Int &p, const UnitRecord &unit, int precision = default_precision);

/// Period of U_0 = 0, U_1 = 1, U_n = P U_{n-1} - Q U_{n-2} modulo m, with
/// Q = +-1 and m >= 1.
Int lucas_period(const Int &P, int Q, const Int &m);

/// First appearance of p in the tower: none unless 3 | ord_p(u_D); otherwise
/// ell = ord_p(u_D) / 3 and power = v_p(d_ell).
std::optional<TowerAppearance> appears_in_tower(const Int &p, const Int &D);
std::optional<TowerAppearance> appears_in_tower(const Int &p, const UnitRecord &unit);

/// p-adic valuation of d_ell(D) computed in O_K / p^k with growing k.
int tower_valuation(const Int &p, const UnitRecord &unit, std::uint64_t ell);

} // namespace dimtower
