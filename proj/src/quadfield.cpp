#include "dimtower/quadfield.hpp"

#include "dimtower/errors.hpp"

namespace dimtower {

SquarefreeDecomp squarefree_part(const Int &n, std::uint64_t trial_bound)
{
    if (n < 1)
        throw PreconditionError("squarefree_part: need n >= 1, got " + to_string(n));
    SquarefreeDecomp out{n, 1, 1};
    for (const auto &[p, e] : factor(n, trial_bound))
    {
        if (e % 2 == 1)
            out.D *= p;
        out.f *= pow(p, static_cast<unsigned long>(e / 2));
    }
    return out;
}

SquarefreeDecomp disc_map(const Int &N, std::uint64_t trial_bound)
{
    if (N < 4)
        throw PreconditionError("disc_map: need N >= 4, got " + to_string(N));
    // Factor the two (small) factors separately rather than their product.
    Factorization f = multiply(factor(N + 1, trial_bound), factor(N - 3, trial_bound));
    SquarefreeDecomp out{(N + 1) * (N - 3), 1, 1};
    for (const auto &[p, e] : f)
    {
        if (e % 2 == 1)
            out.D *= p;
        out.f *= pow(p, static_cast<unsigned long>(e / 2));
    }
    return out;
}

bool is_squarefree(const Int &n, std::uint64_t trial_bound)
{
    if (n < 1)
        return false;
    for (const auto &pp : factor(n, trial_bound))
        if (pp.exponent > 1)
            return false;
    return true;
}

QuadInt::QuadInt(Int a, Int b, Int D, int den) : a_(std::move(a)), b_(std::move(b)), D_(std::move(D)), den_(den)
{
    if (D_ < 2)
        throw PreconditionError("QuadInt: need D >= 2, got " + to_string(D_));
    if (den_ != 1 && den_ != 2)
        throw PreconditionError("QuadInt: denominator must be 1 or 2");
    if (den_ == 1)
        return;
    bool a_even = mpz_even_p(a_.get_mpz_t()) != 0;
    bool b_even = mpz_even_p(b_.get_mpz_t()) != 0;
    if (a_even && b_even)
    {
        a_ /= 2;
        b_ /= 2;
        den_ = 1;
        return;
    }
    if (mod(D_, 4) != 1 || a_even != b_even)
        throw PreconditionError("QuadInt: (" + to_string(a_) + " + " + to_string(b_) + "*sqrt(" + to_string(D_) +
                                "))/2 is not an algebraic integer");
}

bool QuadInt::greater_than_one() const
{
    Int c = Int(den_) - a_;
    if (b_ == 0)
        return c < 0;
    if (b_ > 0)
        return c < 0 || b_ * b_ * D_ > c * c;
    return c < 0 && b_ * b_ * D_ < c * c;
}

QuadInt QuadInt::conjugate() const { return QuadInt(a_, -b_, D_, den_); }

QuadInt quad_mul(const QuadInt &x, const QuadInt &y)
{
    if (x.D() != y.D())
        throw PreconditionError("quad_mul: mismatched fields D=" + to_string(x.D()) + " and D=" + to_string(y.D()));
    const Int &D = x.D();
    Int ra = x.a() * y.a() + x.b() * y.b() * D;
    Int rb = x.a() * y.b() + x.b() * y.a();
    int den = x.den() * y.den();
    if (den == 1)
        return QuadInt(ra, rb, D);
    if (den == 2)
        return QuadInt(ra, rb, D, 2);
    // den 4: numerators are even for a product of algebraic integers.
    if (!mpz_even_p(ra.get_mpz_t()) || !mpz_even_p(rb.get_mpz_t()))
        throw InternalInconsistency("quad_mul: product left the ring of integers");
    return QuadInt(Int(ra / 2), Int(rb / 2), D, 2);
}

QuadInt operator*(const QuadInt &x, const QuadInt &y) { return quad_mul(x, y); }

QuadInt quad_pow(const QuadInt &x, unsigned long k)
{
    QuadInt result = QuadInt::one(x.D());
    QuadInt base = x;
    while (k > 0)
    {
        if (k & 1)
            result = result * base;
        k >>= 1;
        if (k > 0)
            base = base * base;
    }
    return result;
}

Int trace(const QuadInt &x) { return x.den() == 1 ? Int(2 * x.a()) : x.a(); }

Int norm(const QuadInt &x)
{
    Int n = x.a() * x.a() - x.b() * x.b() * x.D();
    return x.den() == 1 ? n : Int(n / 4);
}

std::string format_quad(const QuadInt &x)
{
    std::string s;
    bool has_a = x.a() != 0;
    if (has_a)
        s = to_string(x.a());
    if (x.b() != 0)
    {
        Int mag = abs(x.b());
        if (x.b() < 0)
            s += "-";
        else if (has_a)
            s += "+";
        if (mag != 1)
            s += to_string(mag) + "*";
        s += "sqrt(" + to_string(x.D()) + ")";
    }
    if (s.empty())
        s = "0";
    if (x.den() == 2)
        s = "(" + s + ")/2";
    return s;
}

UnitRecord fundamental_unit(const Int &D, std::uint64_t budget, std::uint64_t trial_bound)
{
    if (D < 2)
        throw PreconditionError("fundamental_unit: need D >= 2, got " + to_string(D));
    if (!is_squarefree(D, trial_bound))
        throw PreconditionError("fundamental_unit: D=" + to_string(D) + " is not squarefree");

    // Expand theta = (P + sqrt(D))/Q with theta = sqrt(D), or (1 + sqrt(D))/2
    // when D = 1 mod 4, and test the unit attached to each convergent h/k.
    const bool half = mod(D, 4) == 1;
    const Int s = isqrt(D);
    Int P = half ? 1 : 0;
    Int Q = half ? 2 : 1;
    Int h_prev = 1, h_prev2 = 0;
    Int k_prev = 0, k_prev2 = 1;
    const Int c = (D - 1) / 4;

    for (std::uint64_t step = 0; step < budget; ++step)
    {
        Int partial = Q > 0 ? floor_div(P + s, Q) : floor_div(P + s + 1, Q);
        Int h = partial * h_prev + h_prev2;
        Int k = partial * k_prev + k_prev2;
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;

        Int nm = half ? Int(h * h - h * k - k * k * c) : Int(h * h - D * k * k);
        if (nm == 1 || nm == -1)
        {
            // sqrt(D): h + k sqrt(D).  omega: h - k*conj(omega) = (2h - k + k sqrt(D))/2.
            QuadInt u = half ? QuadInt(2 * h - k, k, D, 2) : QuadInt(h, k, D);
            UnitRecord rec;
            rec.D = D;
            rec.u_K = u;
            rec.norm_uK = nm == 1 ? 1 : -1;
            rec.is_squared = rec.norm_uK == -1;
            rec.u_D = rec.is_squared ? quad_mul(u, u) : u;
            return rec;
        }

        Int P_next = partial * Q - P;
        Q = (D - P_next * P_next) / Q;
        P = P_next;
    }
    throw BudgetExceeded("fundamental_unit: continued fraction for D=" + to_string(D) + " exceeded " +
                         std::to_string(budget) + " steps");
}

} // namespace dimtower
