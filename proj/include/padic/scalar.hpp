#pragma once

#include <optional>
#include <string>

#include "padic/prime.hpp"

namespace padic {

// Extended valuation: nullopt encodes +infinity (only for the value 0).
using Valuation = std::optional<long>;

// The free functions below follow the GMP convention that mpq_class
// arguments are canonical; Scalar and Angle canonicalize on entry.

// v_p(x); nullopt iff x = 0.
Valuation valuation(const mpq_class& x, const PrimeContext& ctx);

// log_p |x|, i.e. -v_p(x); nullopt encodes -infinity (|0| = 0).
std::optional<long> norm_exp(const mpq_class& x, const PrimeContext& ctx);

/**
 * The unique t in [0,1) with denominator a power of p and v_p(x - t) >= 0:
 * the tail of the standard p-adic expansion of x below p^0.
 */
mpq_class fractional_part(const mpq_class& x, const PrimeContext& ctx);

/**
 * A rotation amount t in [0,1) with denominator a power of p, i.e. the
 * argument of the additive character chi(x) = e^{2 pi i {x}} divided by
 * 2 pi.  Addition is mod 1, so angles form the group of p-power roots of
 * unity written additively.
 */
class Angle {
public:
    Angle() : t_(0), denom_exp_(0) {}
    // validates that t lies in [0,1) with denominator a power of ctx.p
    Angle(mpq_class t, const PrimeContext& ctx);

    const mpq_class& value() const { return t_; }
    // denominator of value() is exactly p^denom_exp()
    long denom_exp() const { return denom_exp_; }
    bool is_zero() const { return sgn(t_) == 0; }
    long prime() const { return prime_; }

    friend Angle angle_add(const Angle& a, const Angle& b);
    bool operator==(const Angle& o) const { return t_ == o.t_; }

private:
    Angle(mpq_class t, long denom_exp, long prime)
        : t_(std::move(t)), denom_exp_(denom_exp), prime_(prime) {}
    friend Angle character_angle(const mpq_class&, const PrimeContext&);

    mpq_class t_;
    long denom_exp_;
    long prime_ = 0;
};

// Angle of chi(x): fractional_part(x) viewed as a rotation.
Angle character_angle(const mpq_class& x, const PrimeContext& ctx);

/**
 * An exact rational viewed inside Q_p, with its valuation cached.
 * Arithmetic keeps the cache correct without refactoring when it can
 * (products, p-power scalings, sums of unequal valuation).
 */
class Scalar {
public:
    Scalar(mpq_class v, const PrimeContext& ctx);
    static Scalar zero(const PrimeContext& ctx) { return Scalar(mpq_class(0), ctx); }

    const mpq_class& value() const { return value_; }
    bool is_zero() const { return sgn(value_) == 0; }
    long prime() const { return prime_; }

    Valuation valuation() const;
    std::optional<long> norm_exp() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    Scalar operator-() const;

    // multiply by an integer constant (j, a binomial coefficient, ...)
    Scalar mul_int(const mpz_class& k) const;
    // multiply by p^e: exact valuation shift
    Scalar mul_pow_p(long e) const;

    bool operator==(const Scalar& o) const { return prime_ == o.prime_ && value_ == o.value_; }

private:
    Scalar(mpq_class v, long prime, long val)
        : value_(std::move(v)), prime_(prime), val_(val) {}

    mpq_class value_;
    long prime_;
    long val_; // meaningful only when value_ != 0
};

/**
 * Strict "[+-]digits" or "[+-]digits/digits" parse; anything else throws
 * std::invalid_argument naming the offending token.  Denominator 0 rejected.
 */
mpq_class parse_rational(const std::string& token);

} // namespace padic
