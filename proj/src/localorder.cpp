#include "dimtower/localorder.hpp"

#include "dimtower/errors.hpp"
#include "dimtower/factor.hpp"
#include "dimtower/tower.hpp"

namespace dimtower {

namespace {

void require_good_prime(const Int &p, const Int &D)
{
    if (p < 5 || !is_prime(p))
        throw PreconditionError("need a prime p >= 5, got " + to_string(p));
    if (D < 2)
        throw PreconditionError("need D >= 2, got " + to_string(D));
    if (mpz_divisible_p(D.get_mpz_t(), p.get_mpz_t()))
        throw PreconditionError("p=" + to_string(p) + " divides D=" + to_string(D) + " (ramified)");
}

// Whether x^k = 1 for the group element x.
bool power_is_one(const ResidueElement &x, const Int &k) { return residue_pow(x, k).is_one(); }

} // namespace

int legendre(const Int &a, const Int &p)
{
    if (p < 3 || mpz_even_p(p.get_mpz_t()))
        throw PreconditionError("legendre: need an odd prime, got " + to_string(p));
    Int r = mod(a, p);
    if (r == 0)
        return 0;
    Int e = (p - 1) / 2, out;
    mpz_powm(out.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (out == 1)
        return 1;
    if (out == p - 1)
        return -1;
    throw PreconditionError("legendre: " + to_string(p) + " is not prime");
}

ResidueElement reduce_unit(const QuadInt &u, const Int &p, int r)
{
    if (r < 1)
        throw PreconditionError("reduce_unit: need r >= 1");
    if (p < 3 || !is_prime(p))
        throw PreconditionError("reduce_unit: need an odd prime, got " + to_string(p));
    if (mpz_divisible_p(u.D().get_mpz_t(), p.get_mpz_t()))
        throw PreconditionError("reduce_unit: p=" + to_string(p) + " divides D=" + to_string(u.D()));

    ResidueElement x;
    x.D = u.D();
    x.p = p;
    x.r = r;
    x.modulus = pow(p, static_cast<unsigned long>(r));
    x.a = mod(u.a(), x.modulus);
    x.b = mod(u.b(), x.modulus);
    if (u.den() == 2)
    {
        Int half = inverse_mod(2, x.modulus);
        x.a = x.a * half % x.modulus;
        x.b = x.b * half % x.modulus;
        x.den_inverted = true;
    }
    return x;
}

ResidueElement residue_mul(const ResidueElement &x, const ResidueElement &y)
{
    if (x.D != y.D || x.modulus != y.modulus)
        throw PreconditionError("residue_mul: operands live in different rings");
    ResidueElement z = x;
    z.a = mod(x.a * y.a + x.b * y.b % x.modulus * x.D, x.modulus);
    z.b = mod(x.a * y.b + x.b * y.a, x.modulus);
    z.den_inverted = x.den_inverted || y.den_inverted;
    return z;
}

ResidueElement residue_pow(const ResidueElement &x, const Int &e)
{
    if (e < 0)
        throw PreconditionError("residue_pow: negative exponent");
    ResidueElement result = x;
    result.a = 1 % x.modulus;
    result.b = 0;
    ResidueElement base = x;
    Int k = e;
    while (k > 0)
    {
        if (mpz_odd_p(k.get_mpz_t()))
            result = residue_mul(result, base);
        k >>= 1;
        if (k > 0)
            base = residue_mul(base, base);
    }
    return result;
}

Int mult_order(const ResidueElement &x)
{
    Factorization exponent = multiply(factor(x.p - 1), factor(x.p + 1));
    if (x.r > 1)
        exponent = multiply(exponent, Factorization{{x.p, x.r - 1}});
    Int order = product(exponent);
    if (!power_is_one(x, order))
        throw PreconditionError("mult_order: element is not invertible in O_K / p^r");
    for (const auto &[q, e] : exponent)
    {
        for (int i = 0; i < e; ++i)
        {
            Int candidate = order / q;
            if (!power_is_one(x, candidate))
                break;
            order = candidate;
        }
    }
    return order;
}

int padic_log_valuation(const Int &p, const UnitRecord &unit, int precision)
{
    require_good_prime(p, unit.D);
    if (precision < 3)
        throw PreconditionError("padic_log_valuation: precision must be >= 3");
    Int m = mult_order(reduce_unit(unit.u_K, p, 1));
    ResidueElement y = residue_pow(reduce_unit(unit.u_K, p, precision), m);
    // y = 1 + (a - 1) + b sqrt(D); the valuation is the smaller of the two
    // coordinate valuations.
    Int da = y.a - 1;
    int v = precision;
    if (da != 0)
        v = std::min(v, valuation(da, p));
    if (y.b != 0)
        v = std::min(v, valuation(y.b, p));
    if (v >= precision)
    {
        PrecisionExhausted err("padic_log_valuation: valuation reached precision " + std::to_string(precision));
        err.precision = precision;
        throw err;
    }
    if (v < 1)
        throw InternalInconsistency("padic_log_valuation: u_K^ord_p(u_K) is not 1 mod p");
    return v;
}

int padic_log_valuation(const Int &p, const Int &D, int precision)
{
    require_good_prime(p, D);
    return padic_log_valuation(p, fundamental_unit(D), precision);
}

int padic_log_valuation_auto(const Int &p, const UnitRecord &unit, int precision)
{
    for (int R = std::max(precision, 3);; R *= 2)
    {
        try
        {
            return padic_log_valuation(p, unit, R);
        }
        catch (const PrecisionExhausted &)
        {
            if (R > (1 << 20))
                throw;
        }
    }
}

Int lucas_period(const Int &P, int Q, const Int &m)
{
    if (Q != 1 && Q != -1)
        throw PreconditionError("lucas_period: Q must be +1 or -1");
    if (m < 1)
        throw PreconditionError("lucas_period: modulus must be >= 1");
    if (m == 1)
        return 1;
    if (!fits_int64(m) || m > Int(1u << 31))
        throw PreconditionError("lucas_period: modulus too large for the direct walk");

    const std::uint64_t mm = to_int64(m);
    const std::uint64_t pp = to_int64(mod(P, m));
    // Walk bound: 6 p^(r-1) (p^2 - 1) for prime powers, the pair count
    // otherwise.
    std::uint64_t bound = mm * mm;
    for (const auto &[q, e] : factor(m))
        if (e >= 1 && m == pow(q, static_cast<unsigned long>(e)) && q > 2)
        {
            std::uint64_t qv = to_int64(q);
            std::uint64_t w = to_int64(pow(q, static_cast<unsigned long>(e - 1)));
            bound = 6 * w * (qv * qv - 1);
        }

    // mm < 2^31 keeps pp * u1 + mm inside 64 bits.
    std::uint64_t u0 = 0, u1 = 1;
    for (std::uint64_t n = 1; n <= bound; ++n)
    {
        std::uint64_t u2 = Q == -1 ? (pp * u1 + u0) % mm : (pp * u1 + (mm - u0)) % mm;
        u0 = u1;
        u1 = u2;
        if (u0 == 0 && u1 == 1)
            return Int(static_cast<unsigned long>(n));
    }
    throw InternalInconsistency("lucas_period: no period within bound " + std::to_string(bound));
}

int tower_valuation(const Int &p, const UnitRecord &unit, std::uint64_t ell)
{
    for (int k = 4;; k *= 2)
    {
        ResidueElement x = residue_pow(reduce_unit(unit.u_D, p, k), Int(static_cast<unsigned long>(ell)));
        // trace(x) + 1 = 2a + 1 in coordinates with the denominator cleared.
        Int d = mod(2 * x.a + 1, x.modulus);
        if (d != 0)
            return valuation(d, p);
    }
}

std::optional<TowerAppearance> appears_in_tower(const Int &p, const UnitRecord &unit)
{
    require_good_prime(p, unit.D);
    Int order = mult_order(reduce_unit(unit.u_D, p, 1));
    if (!mpz_divisible_ui_p(order.get_mpz_t(), 3))
        return std::nullopt;

    int dp = legendre(unit.D, p);
    if (mod(p - dp, 3) != 0)
        throw InternalInconsistency("appears_in_tower: p != (D|p) mod 3 for p=" + to_string(p));
    int p3 = mod(p, 3) == 1 ? 1 : -1;
    if (dp != p3)
        throw InternalInconsistency("appears_in_tower: (D|p) != (p|3) for p=" + to_string(p));

    TowerAppearance out;
    out.ell = to_int64(Int(order / 3));
    out.power = tower_valuation(p, unit, out.ell);
    if (out.power < 1)
        throw InternalInconsistency("appears_in_tower: p=" + to_string(p) + " does not divide d_" +
                                    std::to_string(out.ell));
    return out;
}

std::optional<TowerAppearance> appears_in_tower(const Int &p, const Int &D)
{
    require_good_prime(p, D);
    return appears_in_tower(p, fundamental_unit(D));
}

WReport satisfies_w(const Int &p, const UnitRecord &unit, int r, int precision)
{
    require_good_prime(p, unit.D);
    if (r < 2)
        throw PreconditionError("satisfies_w: exponent r must be >= 2");

    WReport rep;
    rep.p = p;
    rep.D = unit.D;
    rep.r = r;
    rep.ord_mod_p = mult_order(reduce_unit(unit.u_K, p, 1));
    rep.ord_mod_pr = mult_order(reduce_unit(unit.u_K, p, r));
    rep.uD_ord_mod_p = mult_order(reduce_unit(unit.u_D, p, 1));
    rep.uD_ord_mod_pr = mult_order(reduce_unit(unit.u_D, p, r));
    rep.satisfies_W = rep.ord_mod_p == rep.ord_mod_pr;
    rep.log_valuation = padic_log_valuation_auto(p, unit, std::max(precision, r + 1));
    rep.tower_index = appears_in_tower(p, unit);

    if ((rep.uD_ord_mod_p == rep.uD_ord_mod_pr) != rep.satisfies_W)
        throw InternalInconsistency("satisfies_w: u_K and u_D disagree on the order condition");
    if ((rep.log_valuation >= r) != rep.satisfies_W)
        throw InternalInconsistency("satisfies_w: order equality and log valuation disagree");
    Int bound = p - legendre(unit.D, p);
    if (!mpz_divisible_p(bound.get_mpz_t(), rep.uD_ord_mod_p.get_mpz_t()))
        throw InternalInconsistency("satisfies_w: ord_p(u_D) does not divide p - (D|p)");
    return rep;
}

WReport satisfies_w(const Int &p, const Int &D, int r, int precision)
{
    require_good_prime(p, D);
    return satisfies_w(p, fundamental_unit(D), r, precision);
}

} // namespace dimtower
