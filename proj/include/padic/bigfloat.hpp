#pragma once

#include <mpfr.h>

#include <string>

#include <gmpxx.h>

namespace padic {

/**
 * Small RAII wrapper over mpfr_t.  Enclosure endpoints stay at full
 * precision end to end; collapsing to double would silently destroy the
 * certification (a width-1e-30 interval rounds to width 0).
 */
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(BigFloat o);
    ~BigFloat();

    static BigFloat from_mpq(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static BigFloat from_long(long v, mpfr_prec_t prec);
    // 2^e, exact
    static BigFloat pow2(long e, mpfr_prec_t prec);

    mpfr_prec_t precision() const;
    int sign() const;
    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const;
    // scientific notation with the given number of significant digits
    std::string str(int sig_digits) const;

    static BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static BigFloat div2(const BigFloat& a, mpfr_prec_t prec, mpfr_rnd_t rnd);

    friend int cmp(const BigFloat& a, const BigFloat& b);
    bool operator<(const BigFloat& o) const { return cmp(*this, o) < 0; }
    bool operator<=(const BigFloat& o) const { return cmp(*this, o) <= 0; }
    bool operator>(const BigFloat& o) const { return cmp(*this, o) > 0; }
    bool operator>=(const BigFloat& o) const { return cmp(*this, o) >= 0; }

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

private:
    mpfr_t v_;
};

/**
 * Certified enclosure lo <= x <= hi of a real quantity.  Every operation
 * that produces one rounds lo down and hi up.
 */
struct Enclosure {
    BigFloat lo;
    BigFloat hi;

    // (lo + hi) / 2, rounded to nearest at the endpoints' precision
    BigFloat midpoint() const;
    BigFloat width() const; // hi - lo, rounded up
    bool contains(const BigFloat& x) const { return cmp(lo, x) <= 0 && cmp(x, hi) <= 0; }
};

} // namespace padic
