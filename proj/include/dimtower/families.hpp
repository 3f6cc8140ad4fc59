#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dimtower/factor.hpp"
#include "dimtower/integer.hpp"
#include "dimtower/localorder.hpp"

namespace dimtower {

enum class Theorem
{
    T1, // d = p^r q^t
    T2, // d = prod p_j^r_j, r_j >= n + 1
};

std::string to_string(Theorem t);
Theorem parse_theorem(const std::string &s);

/// Machine-checked record that Q(sqrt(D)), D = disc_map(dimension),
/// satisfies the order condition at every listed prime. The class group is
/// never examined, so non-p-rationality additionally needs p not dividing h_K.
struct FamilyCertificate
{
    Theorem theorem = Theorem::T1;
    /// T1: {p, q} and {r, t}. T2: the p_j and r_j.
    std::vector<Int> primes;
    std::vector<int> exponents;
    Int dimension;
    Factorization factorization;
    Int D;
    Int f;
    std::uint64_t ell = 0;
    std::vector<WReport> per_prime;
    bool class_group_checked = false;

    friend bool operator==(const FamilyCertificate &, const FamilyCertificate &) = default;
};

/// Largest t >= 0 with q^t 3^p < 2^p p^(p-r), exact. Throws BoundEmpty when
/// even t = 0 fails.
int theorem1_max_t(const Int &p, const Int &q, int r);

FamilyCertificate gen_theorem1(const Int &p, const Int &q, int r, int t);
FamilyCertificate gen_theorem2(const std::vector<Int> &primes, const std::vector<int> &exps);

/// Rebuilds the certificate from its parameters and compares every field.
bool verify_certificate(const FamilyCertificate &cert, std::string *why = nullptr);

struct T1Range
{
    Int p;
    Int q;
    int r_min = 2;
    int r_max = 2;
    int t_min = 0;
    /// Clipped to theorem1_max_t for each r; negative means "up to the bound".
    int t_max = -1;
};

struct T2Schedule
{
    std::vector<Int> primes;
    std::vector<std::vector<int>> exps;
};

struct Enumeration
{
    /// Increasing dimension order; pairwise-distinct D.
    std::vector<FamilyCertificate> certificates;
    /// Dimensions whose unit search ran out of budget.
    std::vector<Int> budget_exceeded;
};

/// Builds up to `limit` certificates in increasing dimension order. Throws
/// SoundnessFailure if two members share a field.
Enumeration enumerate_family(const T1Range &range, std::size_t limit, int jobs = 0);
Enumeration enumerate_family(const T2Schedule &schedule, std::size_t limit, int jobs = 0);

namespace serial {

Enumeration enumerate_family(const T1Range &range, std::size_t limit);
Enumeration enumerate_family(const T2Schedule &schedule, std::size_t limit);

} // namespace serial

} // namespace dimtower
