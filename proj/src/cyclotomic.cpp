#include "padic/cyclotomic.hpp"

#include <stdexcept>
#include <utility>

namespace padic {

namespace {

long mpz_to_long_checked(const mpz_class& z) {
    if (!z.fits_slong_p())
        throw std::overflow_error("cyclotomic exponent does not fit in a long");
    return z.get_si();
}

// multiplicity of p in c, c != 0
long p_multiplicity(const mpz_class& c, const mpz_class& p) {
    mpz_class rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t()));
}

} // namespace

CyclotomicValue CyclotomicValue::zero(const PrimeContext& ctx) {
    return CyclotomicValue(ctx.p());
}

CyclotomicValue CyclotomicValue::one(const PrimeContext& ctx) {
    CyclotomicValue v(ctx.p());
    v.terms_[0] = 1;
    return v;
}

CyclotomicValue CyclotomicValue::from_angle(const Angle& a, const PrimeContext& ctx) {
    CyclotomicValue v(ctx.p());
    v.order_exp_ = a.denom_exp();
    long pk = pow_long_checked(ctx.p(), v.order_exp_);
    mpz_class num = a.value().get_num();
    mpz_class e = num * (pk / mpz_class(a.value().get_den()));
    v.terms_[mpz_to_long_checked(e)] = 1;
    v.reduce();
    return v;
}

CyclotomicValue CyclotomicValue::from_angle(const mpq_class& t, const PrimeContext& ctx) {
    return from_angle(Angle(t, ctx), ctx);
}

std::optional<mpq_class> CyclotomicValue::as_rational() const {
    if (order_exp_ != 0)
        return std::nullopt;
    mpq_class c = terms_.empty() ? mpq_class(0) : mpq_class(terms_.begin()->second);
    if (scale_exp_ == 0 || terms_.empty())
        return c;
    mpz_class ps;
    mpz_ui_pow_ui(ps.get_mpz_t(), static_cast<unsigned long>(p_),
                  static_cast<unsigned long>(scale_exp_ >= 0 ? scale_exp_ : -scale_exp_));
    if (scale_exp_ >= 0)
        c *= mpq_class(ps);
    else
        c /= mpq_class(ps);
    return c;
}

void CyclotomicValue::reduce() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = sgn(it->second) == 0 ? terms_.erase(it) : std::next(it);
    if (terms_.empty()) {
        order_exp_ = 0;
        scale_exp_ = 0;
        return;
    }

    if (order_exp_ > 0) {
        // fold exponents into the basis {zeta^e : 0 <= e < (p-1) p^{M-1}}
        // using zeta^{(p-1) p^{M-1}} = -(1 + zeta^{p^{M-1}} + ... +
        // zeta^{(p-2) p^{M-1}}); targets are already in the basis, so one
        // pass settles it
        long pm1 = pow_long_checked(p_, order_exp_ - 1);
        long phi = (p_ - 1) * pm1;
        while (true) {
            auto it = terms_.lower_bound(phi);
            if (it == terms_.end())
                break;
            long d = it->first - phi;
            mpz_class c = std::move(it->second);
            terms_.erase(it);
            for (long i = 0; i <= p_ - 2; ++i)
                terms_[d + i * pm1] -= c;
        }
        for (auto it = terms_.begin(); it != terms_.end();)
            it = sgn(it->second) == 0 ? terms_.erase(it) : std::next(it);
        if (terms_.empty()) {
            order_exp_ = 0;
            scale_exp_ = 0;
            return;
        }
        // demote the order while every exponent is a multiple of p
        while (order_exp_ > 0) {
            bool all = true;
            for (const auto& [e, c] : terms_)
                if (e % p_ != 0) {
                    all = false;
                    break;
                }
            if (!all)
                break;
            std::map<long, mpz_class> demoted;
            for (auto& [e, c] : terms_)
                demoted.emplace(e / p_, std::move(c));
            terms_ = std::move(demoted);
            --order_exp_;
        }
    }

    // factor p-power content into the scale
    mpz_class p(p_);
    long content = -1;
    for (const auto& [e, c] : terms_) {
        long m = p_multiplicity(c, p);
        if (content < 0 || m < content)
            content = m;
        if (content == 0)
            break;
    }
    if (content > 0) {
        mpz_class pc;
        mpz_pow_ui(pc.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(content));
        for (auto& [e, c] : terms_)
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pc.get_mpz_t());
        scale_exp_ += content;
    }
}

namespace {

void check_same_prime_cv(const CyclotomicValue& a, const CyclotomicValue& b) {
    if (a.prime() != b.prime())
        throw std::logic_error("mixed prime contexts in cyclotomic arithmetic");
}

} // namespace

CyclotomicValue add(const CyclotomicValue& a, const CyclotomicValue& b) {
    check_same_prime_cv(a, b);
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    CyclotomicValue r(a.prime());
    r.order_exp_ = std::max(a.order_exp(), b.order_exp());
    r.scale_exp_ = std::min(a.scale_exp(), b.scale_exp());
    long lift_a = pow_long_checked(a.prime(), r.order_exp_ - a.order_exp());
    long lift_b = pow_long_checked(a.prime(), r.order_exp_ - b.order_exp());
    mpz_class pa, pb, p(a.prime());
    mpz_pow_ui(pa.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(a.scale_exp() - r.scale_exp_));
    mpz_pow_ui(pb.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(b.scale_exp() - r.scale_exp_));
    for (const auto& [e, c] : a.terms())
        r.terms_[e * lift_a] += c * pa;
    for (const auto& [e, c] : b.terms())
        r.terms_[e * lift_b] += c * pb;
    r.reduce();
    return r;
}

CyclotomicValue CyclotomicValue::negate() const {
    CyclotomicValue r(*this);
    for (auto& [e, c] : r.terms_)
        c = -c;
    return r;
}

CyclotomicValue sub(const CyclotomicValue& a, const CyclotomicValue& b) {
    return add(a, b.negate());
}

CyclotomicValue mul(const CyclotomicValue& a, const CyclotomicValue& b) {
    check_same_prime_cv(a, b);
    CyclotomicValue r(a.prime());
    if (a.is_zero() || b.is_zero())
        return r;
    r.order_exp_ = std::max(a.order_exp(), b.order_exp());
    r.scale_exp_ = a.scale_exp() + b.scale_exp();
    long lift_a = pow_long_checked(a.prime(), r.order_exp_ - a.order_exp());
    long lift_b = pow_long_checked(a.prime(), r.order_exp_ - b.order_exp());
    long pM = pow_long_checked(a.prime(), r.order_exp_);
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            long e = static_cast<long>((static_cast<unsigned __int128>(ea) * lift_a +
                                        static_cast<unsigned __int128>(eb) * lift_b) %
                                       static_cast<unsigned __int128>(pM));
            r.terms_[e] += ca * cb;
        }
    r.reduce();
    return r;
}

CyclotomicValue CyclotomicValue::conjugate() const {
    if (is_zero())
        return *this;
    CyclotomicValue r(p_);
    r.order_exp_ = order_exp_;
    r.scale_exp_ = scale_exp_;
    long pM = pow_long_checked(p_, order_exp_);
    for (const auto& [e, c] : terms_)
        r.terms_[e == 0 ? 0 : pM - e] += c;
    r.reduce();
    return r;
}

CyclotomicValue CyclotomicValue::rotate(const Angle& a) const {
    if (a.is_zero() || is_zero())
        return *this;
    CyclotomicValue r(p_);
    r.scale_exp_ = scale_exp_;
    r.order_exp_ = std::max(order_exp_, a.denom_exp());
    long lift = pow_long_checked(p_, r.order_exp_ - order_exp_);
    long pM = pow_long_checked(p_, r.order_exp_);
    long pk = pow_long_checked(p_, a.denom_exp());
    mpz_class shift_z = a.value().get_num() * (pM / pk);
    long shift = mpz_to_long_checked(shift_z % pM);
    for (const auto& [e, c] : terms_) {
        long e2 = e * lift + shift;
        if (e2 >= pM)
            e2 -= pM;
        r.terms_[e2] += c;
    }
    r.reduce();
    return r;
}

CyclotomicValue CyclotomicValue::rescale(long ds) const {
    CyclotomicValue r(*this);
    if (!r.is_zero())
        r.scale_exp_ += ds;
    return r;
}

bool CyclotomicValue::operator==(const CyclotomicValue& o) const {
    if (p_ == o.p_)
        return order_exp_ == o.order_exp_ && scale_exp_ == o.scale_exp_ && terms_ == o.terms_;
    // rational values compare across contexts; irrational ones cannot
    auto qa = as_rational(), qb = o.as_rational();
    if (qa && qb)
        return *qa == *qb;
    throw std::logic_error("mixed prime contexts in cyclotomic comparison");
}

CyclotomicSum::CyclotomicSum(const PrimeContext& ctx) : p_(ctx.p()) {}

void CyclotomicSum::raise_order(long k) {
    if (k <= order_exp_)
        return;
    long lift = pow_long_checked(p_, k - order_exp_);
    if (!terms_.empty()) {
        std::map<long, mpz_class> lifted;
        for (auto& [e, c] : terms_) // ascending, so hinted inserts stay O(1)
            lifted.emplace_hint(lifted.end(), e * lift, std::move(c));
        terms_ = std::move(lifted);
    }
    order_exp_ = k;
}

void CyclotomicSum::add_root(const Angle& a) {
    long k = a.denom_exp();
    long pk = pow_long_checked(p_, k);
    mpz_class num = a.value().get_num();
    mpz_class c = num * (pk / mpz_class(a.value().get_den()));
    add_root_exponent(k, mpz_to_long_checked(c));
}

void CyclotomicSum::add_root_exponent(long k, long c, long count) {
    raise_order(k);
    long e = c * pow_long_checked(p_, order_exp_ - k);
    terms_[e] += count;
}

void CyclotomicSum::add_term(long k, long c, const mpz_class& coeff) {
    raise_order(k);
    long e = c * pow_long_checked(p_, order_exp_ - k);
    terms_[e] += coeff;
}

void CyclotomicSum::add_sum(const CyclotomicSum& other) {
    raise_order(other.order_exp_);
    long lift = pow_long_checked(p_, order_exp_ - other.order_exp_);
    for (const auto& [e, c] : other.terms_)
        terms_[e * lift] += c;
}

CyclotomicValue CyclotomicSum::finish(long scale_exp) {
    CyclotomicValue v(p_);
    v.order_exp_ = order_exp_;
    v.scale_exp_ = scale_exp;
    v.terms_ = std::move(terms_);
    terms_.clear();
    order_exp_ = 0;
    v.reduce();
    return v;
}

} // namespace padic
