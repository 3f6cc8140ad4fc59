#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dimtower {

/// Arbitrary-precision signed integer used throughout the library.
using Int = mpz_class;

std::string to_string(const Int &x);

/// Parses a base-10 integer, optionally signed. Throws PreconditionError on
/// malformed input.
Int parse_int(std::string_view text);

/// Largest k with p^k | n. Requires p >= 2 and n != 0.
int valuation(const Int &n, const Int &p);

Int pow(const Int &base, unsigned long exp);
Int gcd(const Int &a, const Int &b);
Int isqrt(const Int &n);
bool is_square(const Int &n);

/// Floor division (rounds toward negative infinity).
Int floor_div(const Int &a, const Int &b);

/// Least non-negative residue.
Int mod(const Int &a, const Int &m);

/// Inverse of a modulo m; throws PreconditionError if none exists.
Int inverse_mod(const Int &a, const Int &m);

bool fits_int64(const Int &x);
std::int64_t to_int64(const Int &x);

} // namespace dimtower
