#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dimtower/integer.hpp"

namespace dimtower {

struct PrimePower
{
    Int prime;
    int exponent = 0;

    friend bool operator==(const PrimePower &, const PrimePower &) = default;
};

/// Prime factorization sorted by increasing prime.
using Factorization = std::vector<PrimePower>;

inline constexpr std::uint64_t default_trial_bound = 1'000'000;

/// Miller-Rabin with the first 13 prime bases, which is deterministic for
/// n < 3.317e24. Larger inputs additionally go through GMP's BPSW test.
bool is_prime(const Int &n);

/// Full factorization of n >= 1. Trial division by primes up to
/// `trial_bound`, then primality check and Pollard-Brent on any composite
/// cofactor.
Factorization factor(const Int &n, std::uint64_t trial_bound = default_trial_bound);

Factorization multiply(const Factorization &a, const Factorization &b);
Int product(const Factorization &f);

/// "7 * 31^2" style rendering; "1" for the empty factorization.
std::string format_factorization(const Factorization &f);

/// Primes <= bound, sieved once and shared.
std::vector<std::uint32_t> primes_up_to(std::uint32_t bound);

} // namespace dimtower
