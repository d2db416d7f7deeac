#include "padic/prime.hpp"

#include <stdexcept>
#include <string>

namespace padic {

PrimeContext::PrimeContext(long p) : p_(p), pz_(p) {
    if (p < 2)
        throw std::invalid_argument("prime must be >= 2, got " + std::to_string(p));
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            throw std::invalid_argument(std::to_string(p) + " is not prime (divisible by " +
                                        std::to_string(d) + ")");
}

mpz_class PrimeContext::pow(unsigned long e) const {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), pz_.get_mpz_t(), e);
    return r;
}

mpq_class PrimeContext::pow_q(long e) const {
    if (e >= 0)
        return mpq_class(pow(static_cast<unsigned long>(e)));
    mpq_class r(1, 1);
    r /= mpq_class(pow(static_cast<unsigned long>(-e)));
    return r;
}

long pow_long_checked(long p, long e) {
    const long limit = 1L << 62;
    long r = 1;
    for (long i = 0; i < e; ++i) {
        if (r > limit / p)
            throw std::overflow_error("root-of-unity order " + std::to_string(p) + "^" +
                                      std::to_string(e) + " exceeds the internal 2^62 limit");
        r *= p;
    }
    return r;
}

} // namespace padic
