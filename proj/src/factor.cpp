#include "dimtower/factor.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "dimtower/errors.hpp"

namespace dimtower {

namespace {

std::shared_ptr<const std::vector<std::uint32_t>> sieve(std::uint32_t bound)
{
    static std::mutex lock;
    static std::shared_ptr<const std::vector<std::uint32_t>> cached;
    static std::uint32_t cached_bound = 0;

    std::lock_guard guard(lock);
    if (cached && cached_bound >= bound)
        return cached;

    std::vector<bool> composite(std::size_t(bound) + 1, false);
    auto primes = std::make_shared<std::vector<std::uint32_t>>();
    for (std::uint64_t i = 2; i <= bound; ++i)
    {
        if (composite[i])
            continue;
        primes->push_back(std::uint32_t(i));
        for (std::uint64_t j = i * i; j <= bound; j += i)
            composite[j] = true;
    }
    cached = primes;
    cached_bound = bound;
    return cached;
}

bool miller_rabin_round(const Int &n, const Int &d, unsigned s, unsigned long base)
{
    Int a(base), x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Int n1 = n - 1;
    if (x == 1 || x == n1)
        return true;
    for (unsigned i = 1; i < s; ++i)
    {
        x = x * x % n;
        if (x == n1)
            return true;
        if (x == 1)
            return false;
    }
    return false;
}

// Pollard rho with Brent's cycle detection. Returns a nontrivial factor of
// the odd composite n.
Int pollard_brent(const Int &n)
{
    for (unsigned long c = 1;; ++c)
    {
        Int y = 2, x, q = 1, g = 1, ys;
        std::uint64_t r = 1;
        constexpr std::uint64_t m = 128;
        auto f = [&](const Int &v) { return Int((v * v + c) % n); };
        do
        {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = f(y);
            std::uint64_t k = 0;
            do
            {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i)
                {
                    y = f(y);
                    Int diff = x - y;
                    q = q * abs(diff) % n;
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n)
        {
            do
            {
                ys = f(ys);
                Int diff = x - ys;
                g = gcd(abs(diff), n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void factor_cofactor(const Int &n, std::uint64_t trial_bound, std::map<Int, int> &out)
{
    if (n == 1)
        return;
    Int bound_sq = Int(static_cast<unsigned long>(trial_bound)) * Int(static_cast<unsigned long>(trial_bound));
    if (n < bound_sq || is_prime(n))
    {
        ++out[n];
        return;
    }
    if (is_square(n))
    {
        Int r = isqrt(n);
        factor_cofactor(r, trial_bound, out);
        factor_cofactor(r, trial_bound, out);
        return;
    }
    Int g = pollard_brent(n);
    factor_cofactor(g, trial_bound, out);
    factor_cofactor(Int(n / g), trial_bound, out);
}

} // namespace

std::vector<std::uint32_t> primes_up_to(std::uint32_t bound)
{
    auto all = sieve(bound);
    return {all->begin(), std::upper_bound(all->begin(), all->end(), bound)};
}

bool is_prime(const Int &n)
{
    if (n < 2)
        return false;
    static constexpr unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned long b : bases)
    {
        if (n == b)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), b))
            return false;
    }
    Int d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t()))
    {
        d /= 2;
        ++s;
    }
    for (unsigned long b : bases)
        if (!miller_rabin_round(n, d, s, b))
            return false;
    static const Int deterministic_limit("3317044064679887385961981");
    if (n < deterministic_limit)
        return true;
    return mpz_probab_prime_p(n.get_mpz_t(), 25) != 0;
}

Factorization factor(const Int &n, std::uint64_t trial_bound)
{
    if (n < 1)
        throw PreconditionError("factor: need n >= 1, got " + to_string(n));
    if (trial_bound < 2 || trial_bound > 0xFFFFFFFFull)
        throw PreconditionError("factor: trial bound out of range");

    std::map<Int, int> found;
    Int m = n;
    auto primes = sieve(std::uint32_t(trial_bound));
    for (std::uint32_t p : *primes)
    {
        if (Int(p) * p > m)
            break;
        if (!mpz_divisible_ui_p(m.get_mpz_t(), p))
            continue;
        int e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p))
        {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        found[Int(p)] = e;
    }
    factor_cofactor(m, trial_bound, found);

    Factorization result;
    for (auto &[p, e] : found)
        result.push_back({p, e});
    return result;
}

Factorization multiply(const Factorization &a, const Factorization &b)
{
    std::map<Int, int> merged;
    for (const auto &pp : a)
        merged[pp.prime] += pp.exponent;
    for (const auto &pp : b)
        merged[pp.prime] += pp.exponent;
    Factorization result;
    for (auto &[p, e] : merged)
        result.push_back({p, e});
    return result;
}

Int product(const Factorization &f)
{
    Int r = 1;
    for (const auto &pp : f)
        r *= pow(pp.prime, static_cast<unsigned long>(pp.exponent));
    return r;
}

std::string format_factorization(const Factorization &f)
{
    if (f.empty())
        return "1";
    std::string s;
    for (const auto &pp : f)
    {
        if (!s.empty())
            s += " * ";
        s += to_string(pp.prime);
        if (pp.exponent > 1)
            s += "^" + std::to_string(pp.exponent);
    }
    return s;
}

} // namespace dimtower
