#include "padic/bigfloat.hpp"

#include <cstdio>
#include <stdexcept>
#include <utility>
#include <vector>

namespace padic {

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, 64);
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(BigFloat o) {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_mpq(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
    return r;
}

BigFloat BigFloat::from_long(long v, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pow2(long e, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
}

mpfr_prec_t BigFloat::precision() const { return mpfr_get_prec(v_); }

int BigFloat::sign() const { return mpfr_sgn(v_); }

double BigFloat::to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(v_, rnd); }

std::string BigFloat::str(int sig_digits) const {
    std::vector<char> buf(static_cast<std::size_t>(sig_digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", sig_digits - 1, v_);
    return std::string(buf.data());
}

BigFloat BigFloat::add(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_add(r.v_, a.v_, b.v_, rnd);
    return r;
}

BigFloat BigFloat::sub(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_sub(r.v_, a.v_, b.v_, rnd);
    return r;
}

BigFloat BigFloat::div2(const BigFloat& a, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_div_2ui(r.v_, a.v_, 1, rnd);
    return r;
}

int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }

BigFloat Enclosure::midpoint() const {
    mpfr_prec_t prec = std::max(lo.precision(), hi.precision());
    BigFloat s = BigFloat::add(lo, hi, prec + 1, MPFR_RNDN);
    return BigFloat::div2(s, prec, MPFR_RNDN);
}

BigFloat Enclosure::width() const {
    mpfr_prec_t prec = std::max(lo.precision(), hi.precision());
    return BigFloat::sub(hi, lo, prec, MPFR_RNDU);
}

} // namespace padic
