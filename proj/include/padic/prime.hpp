#pragma once

#include <gmpxx.h>

namespace padic {

/**
 * The prime p every computation is relative to.  Validated on construction
 * (trial division; inputs are small), immutable afterwards, cheap to copy.
 */
class PrimeContext {
public:
    explicit PrimeContext(long p);

    long p() const { return p_; }
    const mpz_class& p_z() const { return pz_; }

    // p^e as an integer, e >= 0
    mpz_class pow(unsigned long e) const;
    // p^e as a rational, e of either sign
    mpq_class pow_q(long e) const;

    bool operator==(const PrimeContext& o) const { return p_ == o.p_; }

private:
    long p_;
    mpz_class pz_;
};

// p^e as a long; throws std::overflow_error past 2^62
long pow_long_checked(long p, long e);

} // namespace padic
