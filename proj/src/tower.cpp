#include "dimtower/tower.hpp"

#include "dimtower/errors.hpp"

namespace dimtower {

Int first_dimension(const UnitRecord &unit) { return trace(unit.u_D) + 1; }

std::vector<Int> dimensions_from_first(const Int &d1, std::uint64_t count)
{
    std::vector<Int> d;
    d.reserve(count + 1);
    d.emplace_back(3);
    if (count >= 1)
        d.push_back(d1);
    for (std::uint64_t n = 2; n <= count; ++n)
        d.push_back((d1 - 1) * d[n - 1] - d[n - 2] - (d1 - 3));
    return d;
}

TowerEntry dimension(const Int &D, std::uint64_t ell)
{
    if (ell < 1)
        throw PreconditionError("dimension: need ell >= 1");
    UnitRecord unit = fundamental_unit(D);
    auto dims = dimensions_from_first(first_dimension(unit), ell);
    return TowerEntry{D, ell, dims[ell], std::nullopt};
}

Tower::Tower(const Int &D) : Tower(fundamental_unit(D)) {}

Tower::Tower(UnitRecord unit) : unit_(std::move(unit)), dims_{Int(3), first_dimension(unit_)} {}

const Int &Tower::at(std::uint64_t ell)
{
    const Int d1 = dims_[1];
    while (dims_.size() <= ell)
    {
        std::size_t n = dims_.size();
        dims_.push_back((d1 - 1) * dims_[n - 1] - dims_[n - 2] - (d1 - 3));
    }
    return dims_[ell];
}

DeltaPoly delta_poly(unsigned n)
{
    // Delta_k = x Delta_{k-1} - x Delta_{k-2} + Delta_{k-3}, seeded with
    // 3, x, x^2 - 2x.
    std::vector<std::vector<Int>> polys = {{3}, {0, 1}, {0, -2, 1}};
    for (unsigned k = 3; k <= n; ++k)
    {
        std::vector<Int> next(k + 1, 0);
        const auto &p1 = polys[k - 1];
        const auto &p2 = polys[k - 2];
        const auto &p3 = polys[k - 3];
        for (std::size_t i = 0; i < p1.size(); ++i)
            next[i + 1] += p1[i];
        for (std::size_t i = 0; i < p2.size(); ++i)
            next[i + 1] -= p2[i];
        for (std::size_t i = 0; i < p3.size(); ++i)
            next[i] += p3[i];
        polys.push_back(std::move(next));
    }
    return DeltaPoly{n, polys[n]};
}

Int delta_eval(unsigned n, const Int &x) { return dimensions_from_first(x, n)[n]; }

IndexLookup index_of_dimension(const Int &d, std::uint64_t trial_bound)
{
    if (d < 4)
        throw PreconditionError("index_of_dimension: need d >= 4, got " + to_string(d));
    SquarefreeDecomp sd = disc_map(d, trial_bound);
    Tower tower(fundamental_unit(sd.D, default_unit_budget, trial_bound));
    // The tower is strictly increasing from d_1 >= 4, so this terminates.
    for (std::uint64_t ell = 1;; ++ell)
    {
        const Int &dim = tower.at(ell);
        if (dim == d)
            return IndexLookup{sd.D, sd.f, ell};
        if (dim > d)
            throw InternalInconsistency("index_of_dimension: " + to_string(d) + " is not a rung of the tower over D=" +
                                        to_string(sd.D));
    }
}

Int gcd_of_dimensions(const Int &D, std::uint64_t ell1, std::uint64_t ell2)
{
    if (ell1 < 1 || ell2 < 1)
        throw PreconditionError("gcd_of_dimensions: indices must be >= 1");
    Tower tower(D);
    return gcd(tower.at(ell1), tower.at(ell2));
}

int v3(std::uint64_t ell)
{
    if (ell == 0)
        throw PreconditionError("v3(0) is undefined");
    int k = 0;
    while (ell % 3 == 0)
    {
        ell /= 3;
        ++k;
    }
    return k;
}

bool is_pathological_base(const Int &d1)
{
    Int m = d1 - 2;
    if (m < 2)
        return false;
    return mpz_popcount(m.get_mpz_t()) == 1;
}

std::vector<Int> new_primes(const Int &D, std::uint64_t ell, std::uint64_t trial_bound)
{
    if (ell < 1)
        throw PreconditionError("new_primes: need ell >= 1");
    Tower tower(D);
    if (ell == 2 && is_pathological_base(tower.d1()))
        throw PathologyExcluded("new_primes: d_1(" + to_string(D) + ") = " + to_string(tower.d1()) +
                                " is of the form 2^N + 2; rung 2 is excluded");
    std::vector<Int> fresh;
    for (const auto &pp : factor(tower.at(ell), trial_bound))
    {
        bool seen = false;
        for (std::uint64_t k = 1; k < ell && !seen; ++k)
            seen = mpz_divisible_p(tower.at(k).get_mpz_t(), pp.prime.get_mpz_t()) != 0;
        if (!seen)
            fresh.push_back(pp.prime);
    }
    return fresh;
}

std::vector<TowerEntry> subtower(const Int &D, unsigned s, std::uint64_t count)
{
    std::vector<TowerEntry> out;
    if (count == 0)
        return out;
    Tower tower(D);
    std::uint64_t base = 1;
    for (unsigned i = 0; i < s; ++i)
        base *= 3;
    for (std::uint64_t k = 1; out.size() < count; ++k)
    {
        if (k % 3 == 0)
            continue;
        std::uint64_t ell = base * k;
        out.push_back(TowerEntry{D, ell, tower.at(ell), std::nullopt});
    }
    return out;
}

std::vector<Int> generating_coeffs(const Int &d1, std::uint64_t N)
{
    if (d1 < 4)
        throw PreconditionError("generating_coeffs: need d1 >= 4");
    // Power-series long division; the denominator has constant term 1.
    const Int num[3] = {3, -2 * d1, d1};
    const Int den[4] = {1, -d1, d1, -1};
    std::vector<Int> c(N + 1);
    for (std::uint64_t k = 0; k <= N; ++k)
    {
        Int acc = k < 3 ? num[k] : Int(0);
        for (std::uint64_t j = 1; j <= 3 && j <= k; ++j)
            acc -= den[j] * c[k - j];
        c[k] = acc;
    }
    return c;
}

} // namespace dimtower
