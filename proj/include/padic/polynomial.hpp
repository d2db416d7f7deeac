#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "padic/scalar.hpp"

namespace padic {

/**
 * Phase polynomial f(x) = a_0 + a_1 x + ... + a_n x^n with exact rational
 * coefficients.  Trailing zero coefficients are allowed and preserved;
 * degree() reports the largest index with a nonzero coefficient.
 */
class PhasePolynomial {
public:
    PhasePolynomial(const PrimeContext& ctx, std::vector<Scalar> coeffs);
    static PhasePolynomial from_rationals(const PrimeContext& ctx,
                                          const std::vector<mpq_class>& coeffs);

    const PrimeContext& ctx() const { return ctx_; }
    std::size_t size() const { return coeffs_.size(); } // n + 1
    const Scalar& coeff(std::size_t j) const { return coeffs_[j]; }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }

    std::optional<std::size_t> degree() const;

    Scalar evaluate(const Scalar& x) const;
    mpq_class evaluate(const mpz_class& x) const;

    // same polynomial, ignoring trailing zeros
    bool same_values(const PhasePolynomial& o) const;

private:
    PrimeContext ctx_;
    std::vector<Scalar> coeffs_;
};

// Coefficients b_j of f(y + x) = sum_j b_j x^j, so b_j = f^(j)(y) / j!.
PhasePolynomial taylor_shift(const PhasePolynomial& f, const Scalar& y);

// Coefficients of f(c x): a_j c^j.
PhasePolynomial scale_argument(const PhasePolynomial& f, const Scalar& c);

// Coefficients of f(p^e x): a_j p^{je}.  Exact valuation bookkeeping.
PhasePolynomial scale_argument_pow_p(const PhasePolynomial& f, long e);

// f with a_0 zeroed
PhasePolynomial drop_constant(const PhasePolynomial& f);

/**
 * Which derivative controls f on the unit ball:
 *   m          = largest j in [1,n] maximizing |j a_j|  (ties to larger j),
 *   r          = max_j log_p |j a_j|,
 *   lambda_exp = max_{j>=1} log_p |a_j|.
 * All three are absent when every a_j with j >= 1 vanishes.
 */
struct DominanceProfile {
    std::optional<long> m;
    std::optional<long> r;          // nullopt encodes -infinity
    std::optional<long> lambda_exp; // nullopt encodes -infinity
};

DominanceProfile dominance_profile(const PhasePolynomial& f);

/**
 * The ball {x : |x - center| <= p^radius_exp}, of Haar measure
 * p^radius_exp.  Two balls are equal iff they are equal as sets.
 */
struct Ball {
    Scalar center;
    long radius_exp = 0;

    static Ball unit(const PrimeContext& ctx) { return Ball{Scalar::zero(ctx), 0}; }
    long measure_exp() const { return radius_exp; }
    bool is_unit() const;
    bool operator==(const Ball& o) const;
};

} // namespace padic
