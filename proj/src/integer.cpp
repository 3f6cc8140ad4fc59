#include "dimtower/integer.hpp"

#include <limits>

#include "dimtower/errors.hpp"

namespace dimtower {

std::string to_string(const Int &x) { return x.get_str(10); }

Int parse_int(std::string_view text)
{
    std::string s(text);
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start)
        throw PreconditionError("not an integer: '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw PreconditionError("not an integer: '" + s + "'");
    if (s[0] == '+')
        s.erase(0, 1);
    return Int(s, 10);
}

int valuation(const Int &n, const Int &p)
{
    if (n == 0 || p < 2)
        throw PreconditionError("valuation: need n != 0 and p >= 2");
    Int m = n;
    int k = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()))
    {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++k;
    }
    return k;
}

Int pow(const Int &base, unsigned long exp)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Int gcd(const Int &a, const Int &b)
{
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int isqrt(const Int &n)
{
    if (n < 0)
        throw PreconditionError("isqrt of negative number");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int &n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Int floor_div(const Int &a, const Int &b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int mod(const Int &a, const Int &m)
{
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int inverse_mod(const Int &a, const Int &m)
{
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw PreconditionError("no inverse of " + to_string(a) + " mod " + to_string(m));
    return r;
}

bool fits_int64(const Int &x)
{
    static const Int lo(std::to_string(std::numeric_limits<std::int64_t>::min()));
    static const Int hi(std::to_string(std::numeric_limits<std::int64_t>::max()));
    return x >= lo && x <= hi;
}

std::int64_t to_int64(const Int &x)
{
    if (!fits_int64(x))
        throw PreconditionError("integer out of 64-bit range: " + to_string(x));
    return std::stoll(x.get_str());
}

} // namespace dimtower
