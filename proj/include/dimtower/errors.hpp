#pragma once

#include <stdexcept>
#include <string>

namespace dimtower {

class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid input: wrong domain, failed precondition, malformed data.
class PreconditionError : public Error
{
  public:
    using Error::Error;
};

/// new_primes at the excluded (d_1 = 2^N + 2, ell = 2) rung.
class PathologyExcluded : public Error
{
  public:
    using Error::Error;
};

/// No t >= 0 satisfies the two-prime family bound.
class BoundEmpty : public Error
{
  public:
    using Error::Error;
};

/// A generated family member failed verification. Never expected to fire.
class SoundnessFailure : public Error
{
  public:
    using Error::Error;
};

/// Continued-fraction expansion ran past its step budget.
class BudgetExceeded : public Error
{
  public:
    using Error::Error;
};

/// p-adic valuation reached the working precision; retry with a larger one.
class PrecisionExhausted : public Error
{
  public:
    using Error::Error;
    int precision = 0;
};

/// A result that theory says cannot happen (assertion-level).
class InternalInconsistency : public Error
{
  public:
    using Error::Error;
};

} // namespace dimtower
