#include "padic/scalar.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

namespace padic {

namespace {

// multiplicity of p in z, z != 0
long remove_p(const mpz_class& z, const mpz_class& p) {
    mpz_class rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t()));
}

long valuation_raw(const mpq_class& x, const mpz_class& p) {
    long vn = remove_p(x.get_num(), p);
    if (vn > 0)
        return vn;
    return -remove_p(x.get_den(), p);
}

} // namespace

Valuation valuation(const mpq_class& x, const PrimeContext& ctx) {
    if (sgn(x) == 0)
        return std::nullopt;
    return valuation_raw(x, ctx.p_z());
}

std::optional<long> norm_exp(const mpq_class& x, const PrimeContext& ctx) {
    auto v = valuation(x, ctx);
    if (!v)
        return std::nullopt;
    return -*v;
}

mpq_class fractional_part(const mpq_class& x, const PrimeContext& ctx) {
    auto v = valuation(x, ctx);
    if (!v || *v >= 0)
        return mpq_class(0);
    // x = u / (w p^k) with u, w coprime to p; the unique tail is
    // t = (u w^{-1} mod p^k) / p^k, since x - t then has numerator
    // divisible by p^k.
    long k = -*v;
    mpz_class pk = ctx.pow(static_cast<unsigned long>(k));
    mpz_class w;
    mpz_divexact(w.get_mpz_t(), x.get_den().get_mpz_t(), pk.get_mpz_t());
    mpz_class winv;
    mpz_invert(winv.get_mpz_t(), w.get_mpz_t(), pk.get_mpz_t());
    mpz_class c = x.get_num() * winv;
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
    mpq_class t(std::move(c));
    t /= mpq_class(std::move(pk));
    return t;
}

Angle::Angle(mpq_class t, const PrimeContext& ctx) : t_(std::move(t)), prime_(ctx.p()) {
    t_.canonicalize();
    if (sgn(t_) < 0 || t_ >= 1)
        throw std::invalid_argument("angle must lie in [0,1)");
    mpz_class rest;
    denom_exp_ = static_cast<long>(
        mpz_remove(rest.get_mpz_t(), t_.get_den().get_mpz_t(), ctx.p_z().get_mpz_t()));
    if (rest != 1)
        throw std::invalid_argument("angle denominator is not a power of " +
                                    std::to_string(ctx.p()));
}

Angle character_angle(const mpq_class& x, const PrimeContext& ctx) {
    auto v = valuation(x, ctx);
    if (!v || *v >= 0)
        return Angle(mpq_class(0), 0, ctx.p());
    return Angle(fractional_part(x, ctx), -*v, ctx.p());
}

Angle angle_add(const Angle& a, const Angle& b) {
    if (a.prime_ != b.prime_ && a.prime_ != 0 && b.prime_ != 0)
        throw std::logic_error("mixed prime contexts in angle_add");
    mpq_class t = a.t_ + b.t_;
    if (t >= 1)
        t -= 1;
    long prime = a.prime_ ? a.prime_ : b.prime_;
    if (sgn(t) == 0)
        return Angle(std::move(t), 0, prime);
    // denominators were p-powers, so the reduced sum's denominator is too
    mpz_class rest, p(prime);
    long k = static_cast<long>(
        mpz_remove(rest.get_mpz_t(), t.get_den().get_mpz_t(), p.get_mpz_t()));
    return Angle(std::move(t), k, prime);
}

Scalar::Scalar(mpq_class v, const PrimeContext& ctx)
    : value_(std::move(v)), prime_(ctx.p()), val_(0) {
    value_.canonicalize();
    if (!is_zero())
        val_ = valuation_raw(value_, ctx.p_z());
}

Valuation Scalar::valuation() const {
    if (is_zero())
        return std::nullopt;
    return val_;
}

std::optional<long> Scalar::norm_exp() const {
    if (is_zero())
        return std::nullopt;
    return -val_;
}

namespace {
void check_same_prime(const Scalar& a, const Scalar& b) {
    if (a.prime() != b.prime())
        throw std::logic_error("mixed prime contexts in scalar arithmetic");
}
} // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same_prime(a, b);
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    mpq_class sum = a.value_ + b.value_;
    if (sgn(sum) == 0)
        return Scalar(std::move(sum), a.prime_, 0);
    long val;
    if (a.val_ != b.val_)
        val = std::min(a.val_, b.val_); // ultrametric, no cancellation possible
    else
        val = valuation_raw(sum, mpz_class(a.prime_));
    return Scalar(std::move(sum), a.prime_, val);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar Scalar::operator-() const { return Scalar(-value_, prime_, val_); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same_prime(a, b);
    if (a.is_zero())
        return a;
    if (b.is_zero())
        return b;
    return Scalar(a.value_ * b.value_, a.prime_, a.val_ + b.val_);
}

Scalar Scalar::mul_int(const mpz_class& k) const {
    if (is_zero() || sgn(k) == 0)
        return Scalar(mpq_class(0), prime_, 0);
    long vk = remove_p(k, mpz_class(prime_));
    return Scalar(value_ * k, prime_, val_ + vk);
}

Scalar Scalar::mul_pow_p(long e) const {
    if (is_zero() || e == 0)
        return *this;
    mpq_class shifted = value_;
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(prime_),
                  static_cast<unsigned long>(e >= 0 ? e : -e));
    if (e >= 0)
        shifted *= mpq_class(pe);
    else
        shifted /= mpq_class(pe);
    return Scalar(std::move(shifted), prime_, val_ + e);
}

mpq_class parse_rational(const std::string& token) {
    auto fail = [&] { throw std::invalid_argument("cannot parse rational '" + token + "'"); };
    std::size_t i = 0;
    if (i < token.size() && (token[i] == '+' || token[i] == '-'))
        ++i;
    std::size_t digits = 0;
    while (i < token.size() && std::isdigit(static_cast<unsigned char>(token[i]))) {
        ++i;
        ++digits;
    }
    if (digits == 0)
        fail();
    if (i < token.size()) {
        if (token[i] != '/')
            fail();
        ++i;
        std::size_t den_digits = 0;
        std::size_t den_start = i;
        while (i < token.size() && std::isdigit(static_cast<unsigned char>(token[i]))) {
            ++i;
            ++den_digits;
        }
        if (den_digits == 0 || i != token.size())
            fail();
        if (token.compare(den_start, den_digits, std::string(den_digits, '0')) == 0)
            throw std::invalid_argument("zero denominator in '" + token + "'");
    }
    // GMP does not take a leading '+'
    const std::string& body = token[0] == '+' ? token.substr(1) : token;
    mpq_class q;
    if (q.set_str(body, 10) != 0)
        fail();
    q.canonicalize();
    return q;
}

} // namespace padic
