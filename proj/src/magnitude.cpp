#include "padic/cyclotomic.hpp"

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>

namespace padic {

namespace {

// [lo, hi] on raw mpfr_t at one working precision; every write is
// directed (lo down, hi up)
struct Iv {
    mpfr_t lo, hi;
    explicit Iv(mpfr_prec_t prec) {
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
        mpfr_set_zero(lo, 1);
        mpfr_set_zero(hi, 1);
    }
    ~Iv() {
        mpfr_clear(lo);
        mpfr_clear(hi);
    }
    Iv(const Iv&) = delete;
    Iv& operator=(const Iv&) = delete;
};

void iv_add(Iv& acc, const Iv& x) {
    mpfr_add(acc.lo, acc.lo, x.lo, MPFR_RNDD);
    mpfr_add(acc.hi, acc.hi, x.hi, MPFR_RNDU);
}

// acc += c * x for an exact integer c (sign decides which endpoint feeds which)
void iv_add_scaled(Iv& acc, const Iv& x, const mpz_class& c, mpfr_prec_t prec) {
    Iv t(prec);
    if (sgn(c) >= 0) {
        mpfr_mul_z(t.lo, x.lo, c.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(t.hi, x.hi, c.get_mpz_t(), MPFR_RNDU);
    } else {
        mpfr_mul_z(t.lo, x.hi, c.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(t.hi, x.lo, c.get_mpz_t(), MPFR_RNDU);
    }
    iv_add(acc, t);
}

void iv_sqr(Iv& out, const Iv& x) {
    if (mpfr_sgn(x.lo) >= 0) {
        mpfr_sqr(out.lo, x.lo, MPFR_RNDD);
        mpfr_sqr(out.hi, x.hi, MPFR_RNDU);
    } else if (mpfr_sgn(x.hi) <= 0) {
        mpfr_sqr(out.lo, x.hi, MPFR_RNDD);
        mpfr_sqr(out.hi, x.lo, MPFR_RNDU);
    } else {
        mpfr_t a;
        mpfr_init2(a, mpfr_get_prec(out.hi));
        mpfr_sqr(a, x.lo, MPFR_RNDU);
        mpfr_sqr(out.hi, x.hi, MPFR_RNDU);
        if (mpfr_cmp(a, out.hi) > 0)
            mpfr_set(out.hi, a, MPFR_RNDU);
        mpfr_set_zero(out.lo, 1);
        mpfr_clear(a);
    }
}

/**
 * cos and sin of 2 pi t for exact rational t in [0,1).  The argument
 * interval [theta_lo, theta_hi] comes from directed-rounded 2 pi; the
 * trig enclosure is cos(theta_lo) +- width, sound across critical points
 * because |cos'| <= 1 (this MPFR predates cospi/sinpi).
 */
void trig_2pi(const mpq_class& t, Iv& cos_out, Iv& sin_out, mpfr_prec_t prec) {
    mpfr_t pi_lo, pi_hi, th_lo, th_hi, w, v;
    mpfr_inits2(prec, pi_lo, pi_hi, th_lo, th_hi, w, v, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi_lo, MPFR_RNDD);
    mpfr_const_pi(pi_hi, MPFR_RNDU);
    mpfr_mul_2ui(pi_lo, pi_lo, 1, MPFR_RNDD);
    mpfr_mul_2ui(pi_hi, pi_hi, 1, MPFR_RNDU);
    mpfr_mul_q(th_lo, pi_lo, t.get_mpq_t(), MPFR_RNDD); // t >= 0
    mpfr_mul_q(th_hi, pi_hi, t.get_mpq_t(), MPFR_RNDU);
    mpfr_sub(w, th_hi, th_lo, MPFR_RNDU);

    mpfr_cos(v, th_lo, MPFR_RNDD);
    mpfr_sub(cos_out.lo, v, w, MPFR_RNDD);
    mpfr_cos(v, th_lo, MPFR_RNDU);
    mpfr_add(cos_out.hi, v, w, MPFR_RNDU);
    mpfr_sin(v, th_lo, MPFR_RNDD);
    mpfr_sub(sin_out.lo, v, w, MPFR_RNDD);
    mpfr_sin(v, th_lo, MPFR_RNDU);
    mpfr_add(sin_out.hi, v, w, MPFR_RNDU);

    // clamp to [-1, 1]
    for (Iv* iv : {&cos_out, &sin_out}) {
        if (mpfr_cmp_si(iv->lo, -1) < 0)
            mpfr_set_si(iv->lo, -1, MPFR_RNDD);
        if (mpfr_cmp_si(iv->hi, 1) > 0)
            mpfr_set_si(iv->hi, 1, MPFR_RNDU);
    }
    mpfr_clears(pi_lo, pi_hi, th_lo, th_hi, w, v, static_cast<mpfr_ptr>(nullptr));
}

Enclosure round_out(const Iv& x, long precision_bits) {
    BigFloat lo(precision_bits), hi(precision_bits);
    mpfr_set(lo.raw(), x.lo, MPFR_RNDD);
    mpfr_set(hi.raw(), x.hi, MPFR_RNDU);
    return Enclosure{std::move(lo), std::move(hi)};
}

} // namespace

Enclosure magnitude(const CyclotomicValue& v, long precision_bits) {
    if (precision_bits < 64)
        throw std::invalid_argument("magnitude needs precision_bits >= 64");
    if (v.is_zero())
        return Enclosure{BigFloat(precision_bits), BigFloat(precision_bits)};

    const PrimeContext ctx(v.prime());
    if (v.order_exp() == 0) {
        // rational value: |p^s * c| exactly, then one directed rounding
        mpq_class q = abs(*v.as_rational());
        return Enclosure{BigFloat::from_mpq(q, precision_bits, MPFR_RNDD),
                         BigFloat::from_mpq(q, precision_bits, MPFR_RNDU)};
    }

    // The output comes through a sqrt, and sqrt of [0, d] has width
    // sqrt(d), so the working precision must be twice the output
    // precision (plus guard bits for the term count) for the documented
    // width bound p^s * T * 2^{-precision_bits + 8} to hold near zero.
    long nterms = static_cast<long>(v.terms().size());
    long clog2 = 0;
    while ((1L << clog2) < nterms + 2)
        ++clog2;
    mpfr_prec_t wp = static_cast<mpfr_prec_t>(2 * precision_bits + 16 + clog2);

    mpz_class pM = ctx.pow(static_cast<unsigned long>(v.order_exp()));
    Iv re(wp), im(wp);
    {
        Iv c(wp), s(wp);
        for (const auto& [e, coeff] : v.terms()) {
            mpq_class t(mpz_class(e), pM);
            t.canonicalize();
            trig_2pi(t, c, s, wp);
            iv_add_scaled(re, c, coeff, wp);
            iv_add_scaled(im, s, coeff, wp);
        }
    }

    Iv re2(wp), im2(wp), sum(wp), root(wp);
    iv_sqr(re2, re);
    iv_sqr(im2, im);
    iv_add(sum, re2);
    iv_add(sum, im2);
    mpfr_sqrt(root.lo, sum.lo, MPFR_RNDD);
    mpfr_sqrt(root.hi, sum.hi, MPFR_RNDU);

    if (v.scale_exp() != 0) {
        mpq_class ps = ctx.pow_q(v.scale_exp()); // positive
        mpfr_mul_q(root.lo, root.lo, ps.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(root.hi, root.hi, ps.get_mpq_t(), MPFR_RNDU);
    }
    if (mpfr_sgn(root.lo) < 0)
        mpfr_set_zero(root.lo, 1);
    return round_out(root, precision_bits);
}

} // namespace padic
