#pragma once

#include <map>
#include <optional>

#include "padic/bigfloat.hpp"
#include "padic/scalar.hpp"

namespace padic {

/**
 * An exact element of Q(zeta_{p^M}) of the shape
 *
 *     p^scale_exp * sum_e terms[e] * zeta_{p^M}^e,
 *
 * the closure of the p-power roots of unity under the operations an
 * integral evaluation performs: adding character values, rotating by one,
 * and dividing by p.
 *
 * Canonical form (maintained by every operation):
 *   - exponents lie in the Z-basis {zeta^e : 0 <= e < (p-1) p^{M-1}}
 *     obtained from the minimal polynomial of zeta_{p^M},
 *   - M is minimal (order demoted while every exponent is divisible by p;
 *     a rational value has M = 0 and at most the single exponent 0),
 *   - the integer content of the coefficients is coprime to p (p-power
 *     content is folded into scale_exp), except for the zero value which
 *     is {} with M = 0, scale_exp = 0.
 * Canonical forms are unique, so equality is field equality and is_zero
 * is exact.  Values are immutable after construction.
 */
class CyclotomicValue {
public:
    static CyclotomicValue zero(const PrimeContext& ctx);
    static CyclotomicValue one(const PrimeContext& ctx);
    static CyclotomicValue from_angle(const Angle& a, const PrimeContext& ctx);
    // validates that t has p-power denominator
    static CyclotomicValue from_angle(const mpq_class& t, const PrimeContext& ctx);

    long prime() const { return p_; }
    long order_exp() const { return order_exp_; }
    long scale_exp() const { return scale_exp_; }
    const std::map<long, mpz_class>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    // the exact rational this value equals, if it is rational (M = 0)
    std::optional<mpq_class> as_rational() const;

    friend CyclotomicValue add(const CyclotomicValue& a, const CyclotomicValue& b);
    friend CyclotomicValue sub(const CyclotomicValue& a, const CyclotomicValue& b);
    friend CyclotomicValue mul(const CyclotomicValue& a, const CyclotomicValue& b);
    CyclotomicValue negate() const;
    CyclotomicValue conjugate() const;

    // multiply by zeta^{angle}: exact rotation
    CyclotomicValue rotate(const Angle& a) const;
    // multiply by p^ds
    CyclotomicValue rescale(long ds) const;

    bool operator==(const CyclotomicValue& o) const;

private:
    explicit CyclotomicValue(long p) : p_(p) {}
    void reduce();
    friend class CyclotomicSum;

    long p_ = 0;
    long order_exp_ = 0; // M
    long scale_exp_ = 0; // s
    std::map<long, mpz_class> terms_;
};

/**
 * Accumulator for sums of many roots of unity (the brute-force kernels).
 * Keeps a non-canonical term map and a running order; finish() produces
 * the canonical value.  Exponent bookkeeping is all in long; the order
 * guard in CyclotomicValue keeps p^M below 2^62.
 */
class CyclotomicSum {
public:
    explicit CyclotomicSum(const PrimeContext& ctx);

    void add_root(const Angle& a);
    // count copies of the angle c / p^k given directly as integers,
    // 0 <= c < p^k
    void add_root_exponent(long k, long c, long count = 1);
    // coeff * zeta_{p^k}^c for arbitrary coeff (deserialization)
    void add_term(long k, long c, const mpz_class& coeff);
    // fold in another accumulated sum (chunk combination)
    void add_sum(const CyclotomicSum& other);

    // consumes the accumulator
    CyclotomicValue finish(long scale_exp);

private:
    void raise_order(long k);

    long p_;
    long order_exp_ = 0;
    std::map<long, mpz_class> terms_;
};

/**
 * Certified |value| enclosure at the requested output precision
 * (>= 64 bits).  Interval arithmetic with directed rounding throughout;
 * internal precision carries enough guard bits that the width is at most
 * p^scale_exp * T * 2^{-precision_bits + 8} with T = sum |terms[e]|,
 * and [0,0] exactly for the zero value.
 */
Enclosure magnitude(const CyclotomicValue& v, long precision_bits);

} // namespace padic
