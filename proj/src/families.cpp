#include "dimtower/families.hpp"

#include <algorithm>
#include <exception>
#include <set>

#include "dimtower/errors.hpp"
#include "dimtower/quadfield.hpp"
#include "dimtower/scan.hpp"
#include "dimtower/tower.hpp"

namespace dimtower {

namespace {

struct Params
{
    Theorem theorem;
    std::vector<Int> primes;
    std::vector<int> exps;
    Int dimension;
};

FamilyCertificate build(const Params &params)
{
    return params.theorem == Theorem::T1 ? gen_theorem1(params.primes[0], params.primes[1], params.exps[0], params.exps[1])
                                         : gen_theorem2(params.primes, params.exps);
}

FamilyCertificate certify(Theorem theorem, std::vector<Int> primes, std::vector<int> exps, const Int &dimension,
                          Factorization factorization, const std::vector<Int> &checked_primes)
{
    FamilyCertificate cert;
    cert.theorem = theorem;
    cert.primes = std::move(primes);
    cert.exponents = std::move(exps);
    cert.dimension = dimension;
    cert.factorization = std::move(factorization);

    IndexLookup idx = index_of_dimension(dimension);
    cert.D = idx.D;
    cert.f = idx.f;
    cert.ell = idx.ell;

    UnitRecord unit = fundamental_unit(cert.D);
    for (const Int &p : checked_primes)
    {
        WReport rep = satisfies_w(p, unit);
        if (!rep.satisfies_W)
            throw SoundnessFailure("order condition fails at p=" + to_string(p) + " for dimension " +
                                   to_string(dimension) + " (D=" + to_string(cert.D) + ")");
        cert.per_prime.push_back(std::move(rep));
    }
    return cert;
}

std::vector<Params> t1_params(const T1Range &range)
{
    if (range.r_min < 2 || range.r_max < range.r_min || range.t_min < 0)
        throw PreconditionError("T1 range: need 2 <= r_min <= r_max and t_min >= 0");
    std::vector<Params> out;
    for (int r = range.r_min; r <= range.r_max; ++r)
    {
        int bound;
        try
        {
            bound = theorem1_max_t(range.p, range.q, r);
        }
        catch (const BoundEmpty &)
        {
            continue;
        }
        int t_hi = range.t_max < 0 ? bound : std::min(bound, range.t_max);
        for (int t = range.t_min; t <= t_hi; ++t)
        {
            if (range.q == 3 && t >= 1)
                continue;
            Int d = pow(range.p, r) * pow(range.q, t);
            out.push_back({Theorem::T1, {range.p, range.q}, {r, t}, d});
        }
    }
    return out;
}

std::vector<Params> t2_params(const T2Schedule &schedule)
{
    std::vector<Params> out;
    for (const auto &exps : schedule.exps)
    {
        if (exps.size() != schedule.primes.size())
            throw PreconditionError("T2 schedule: exponent vector length differs from the prime count");
        Int d = 1;
        for (std::size_t j = 0; j < exps.size(); ++j)
            d *= pow(schedule.primes[j], static_cast<unsigned long>(std::max(exps[j], 0)));
        out.push_back({Theorem::T2, schedule.primes, exps, d});
    }
    return out;
}

// Sorts by dimension, keeps the first `limit`, and checks field distinctness.
Enumeration run(std::vector<Params> params, std::size_t limit, int jobs, bool parallel)
{
    std::stable_sort(params.begin(), params.end(),
                     [](const Params &a, const Params &b) { return a.dimension < b.dimension; });
    for (std::size_t i = 1; i < params.size(); ++i)
        if (params[i].dimension == params[i - 1].dimension)
            throw PreconditionError("family enumeration: duplicate dimension " + to_string(params[i].dimension));
    if (params.size() > limit)
        params.resize(limit);

    const std::size_t n = params.size();
    std::vector<std::optional<FamilyCertificate>> built(n);
    std::vector<std::exception_ptr> errors(n);
    auto body = [&](std::size_t i) {
        try
        {
            built[i] = build(params[i]);
        }
        catch (const BudgetExceeded &)
        {
        }
        catch (...)
        {
            errors[i] = std::current_exception();
        }
    };
    if (parallel)
    {
        int workers = resolve_jobs(jobs);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
        for (std::size_t i = 0; i < n; ++i)
            body(i);
    }
    else
    {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
    }
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);

    Enumeration out;
    std::set<Int> fields;
    for (std::size_t i = 0; i < n; ++i)
    {
        if (!built[i])
        {
            out.budget_exceeded.push_back(params[i].dimension);
            continue;
        }
        if (!fields.insert(built[i]->D).second)
            throw SoundnessFailure("family enumeration: D=" + to_string(built[i]->D) + " produced twice");
        out.certificates.push_back(std::move(*built[i]));
    }
    return out;
}

} // namespace

std::string to_string(Theorem t) { return t == Theorem::T1 ? "T1" : "T2"; }

Theorem parse_theorem(const std::string &s)
{
    if (s == "T1" || s == "t1")
        return Theorem::T1;
    if (s == "T2" || s == "t2")
        return Theorem::T2;
    throw PreconditionError("unknown theorem tag '" + s + "'");
}

int theorem1_max_t(const Int &p, const Int &q, int r)
{
    if (p < 5 || !is_prime(p))
        throw PreconditionError("theorem1_max_t: need a prime p >= 5, got " + to_string(p));
    if (!is_prime(q) || q == p)
        throw PreconditionError("theorem1_max_t: need a prime q != p, got " + to_string(q));
    if (r < 2)
        throw PreconditionError("theorem1_max_t: need r >= 2");
    if (!fits_int64(p) || p > 100000)
        throw PreconditionError("theorem1_max_t: p too large for the exact bound");

    // q^t 3^p p^max(r-p,0) < 2^p p^max(p-r,0)
    const unsigned long pe = to_int64(p);
    Int lhs = pow(Int(3), pe);
    Int rhs = pow(Int(2), pe);
    long excess = long(pe) - r;
    if (excess >= 0)
        rhs *= pow(p, static_cast<unsigned long>(excess));
    else
        lhs *= pow(p, static_cast<unsigned long>(-excess));
    if (lhs >= rhs)
        throw BoundEmpty("theorem1_max_t: no t >= 0 satisfies the bound for p=" + to_string(p) +
                         ", r=" + std::to_string(r));
    int t = 0;
    while (lhs * q < rhs)
    {
        lhs *= q;
        ++t;
    }
    return t;
}

FamilyCertificate gen_theorem1(const Int &p, const Int &q, int r, int t)
{
    if (t < 0)
        throw PreconditionError("gen_theorem1: need t >= 0");
    int bound = theorem1_max_t(p, q, r);
    if (t > bound)
        throw PreconditionError("gen_theorem1: t=" + std::to_string(t) + " exceeds the bound " +
                                std::to_string(bound));
    if (q == 3 && t >= 1)
        throw PreconditionError("gen_theorem1: q = 3 with t >= 1 is excluded");

    Int d = pow(p, static_cast<unsigned long>(r)) * pow(q, static_cast<unsigned long>(t));
    Factorization fac = {{p, r}};
    if (t > 0)
        fac = multiply(fac, Factorization{{q, t}});
    return certify(Theorem::T1, {p, q}, {r, t}, d, std::move(fac), {p});
}

FamilyCertificate gen_theorem2(const std::vector<Int> &primes, const std::vector<int> &exps)
{
    const std::size_t n = primes.size();
    if (n == 0)
        throw PreconditionError("gen_theorem2: need at least one prime");
    if (exps.size() != n)
        throw PreconditionError("gen_theorem2: primes and exponents differ in length");
    std::set<Int> seen;
    for (std::size_t j = 0; j < n; ++j)
    {
        if (primes[j] < 5 || !is_prime(primes[j]))
            throw PreconditionError("gen_theorem2: " + to_string(primes[j]) + " is not a prime >= 5");
        if (!seen.insert(primes[j]).second)
            throw PreconditionError("gen_theorem2: primes not distinct (" + to_string(primes[j]) + " repeated)");
        if (exps[j] < int(n) + 1)
            throw PreconditionError("gen_theorem2: exponent " + std::to_string(exps[j]) + " below n+1 = " +
                                    std::to_string(n + 1));
    }
    Int d = 1;
    Factorization fac;
    for (std::size_t j = 0; j < n; ++j)
    {
        d *= pow(primes[j], static_cast<unsigned long>(exps[j]));
        fac = multiply(fac, Factorization{{primes[j], exps[j]}});
    }
    return certify(Theorem::T2, primes, exps, d, std::move(fac), primes);
}

bool verify_certificate(const FamilyCertificate &cert, std::string *why)
{
    auto fail = [&](std::string msg) {
        if (why)
            *why = std::move(msg);
        return false;
    };
    if (cert.class_group_checked)
        return fail("class_group_checked must be false");
    if (product(cert.factorization) != cert.dimension)
        return fail("factorization does not multiply to the dimension");
    for (const auto &rep : cert.per_prime)
        if (!rep.satisfies_W)
            return fail("report for p=" + to_string(rep.p) + " does not satisfy the order condition");
    try
    {
        FamilyCertificate fresh = cert.theorem == Theorem::T1
                                      ? (cert.primes.size() == 2 && cert.exponents.size() == 2
                                             ? gen_theorem1(cert.primes[0], cert.primes[1], cert.exponents[0],
                                                            cert.exponents[1])
                                             : throw PreconditionError("T1 certificate needs {p, q} and {r, t}"))
                                      : gen_theorem2(cert.primes, cert.exponents);
        if (!(fresh == cert))
            return fail("recomputed certificate differs");
    }
    catch (const Error &e)
    {
        return fail(e.what());
    }
    return true;
}

Enumeration enumerate_family(const T1Range &range, std::size_t limit, int jobs)
{
    return run(t1_params(range), limit, jobs, true);
}

Enumeration enumerate_family(const T2Schedule &schedule, std::size_t limit, int jobs)
{
    return run(t2_params(schedule), limit, jobs, true);
}

namespace serial {

Enumeration enumerate_family(const T1Range &range, std::size_t limit) { return run(t1_params(range), limit, 1, false); }

Enumeration enumerate_family(const T2Schedule &schedule, std::size_t limit)
{
    return run(t2_params(schedule), limit, 1, false);
}

} // namespace serial

} // namespace dimtower
