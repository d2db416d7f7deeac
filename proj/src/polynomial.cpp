#include "padic/polynomial.hpp"

#include <stdexcept>

namespace padic {

PhasePolynomial::PhasePolynomial(const PrimeContext& ctx, std::vector<Scalar> coeffs)
    : ctx_(ctx), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        coeffs_.push_back(Scalar::zero(ctx_));
    for (const Scalar& c : coeffs_)
        if (c.prime() != ctx_.p())
            throw std::logic_error("coefficient prime does not match context");
}

PhasePolynomial PhasePolynomial::from_rationals(const PrimeContext& ctx,
                                                const std::vector<mpq_class>& coeffs) {
    std::vector<Scalar> cs;
    cs.reserve(coeffs.size());
    for (const mpq_class& q : coeffs)
        cs.emplace_back(q, ctx);
    return PhasePolynomial(ctx, std::move(cs));
}

std::optional<std::size_t> PhasePolynomial::degree() const {
    for (std::size_t j = coeffs_.size(); j-- > 0;)
        if (!coeffs_[j].is_zero())
            return j;
    return std::nullopt;
}

Scalar PhasePolynomial::evaluate(const Scalar& x) const {
    Scalar acc = Scalar::zero(ctx_);
    for (std::size_t j = coeffs_.size(); j-- > 0;)
        acc = acc * x + coeffs_[j];
    return acc;
}

mpq_class PhasePolynomial::evaluate(const mpz_class& x) const {
    mpq_class acc(0);
    for (std::size_t j = coeffs_.size(); j-- > 0;) {
        acc *= x;
        acc += coeffs_[j].value();
    }
    return acc;
}

bool PhasePolynomial::same_values(const PhasePolynomial& o) const {
    std::size_t n = std::max(coeffs_.size(), o.coeffs_.size());
    for (std::size_t j = 0; j < n; ++j) {
        bool za = j >= coeffs_.size() || coeffs_[j].is_zero();
        bool zb = j >= o.coeffs_.size() || o.coeffs_[j].is_zero();
        if (za != zb)
            return false;
        if (!za && !(coeffs_[j] == o.coeffs_[j]))
            return false;
    }
    return true;
}

PhasePolynomial taylor_shift(const PhasePolynomial& f, const Scalar& y) {
    // synthetic division: after pass j, b_j..b_n hold the shifted
    // coefficients; b_j = sum_{k>=j} C(k,j) a_k y^{k-j}
    std::vector<Scalar> b = f.coeffs();
    std::size_t n = b.size();
    if (y.is_zero() || n < 2)
        return PhasePolynomial(f.ctx(), std::move(b));
    for (std::size_t j = 0; j + 1 < n; ++j)
        for (std::size_t k = n - 1; k-- > j;)
            b[k] = b[k] + b[k + 1] * y;
    return PhasePolynomial(f.ctx(), std::move(b));
}

PhasePolynomial scale_argument(const PhasePolynomial& f, const Scalar& c) {
    std::vector<Scalar> b;
    b.reserve(f.size());
    Scalar pow = Scalar(mpq_class(1), f.ctx());
    for (std::size_t j = 0; j < f.size(); ++j) {
        b.push_back(j == 0 ? f.coeff(0) : f.coeff(j) * pow);
        if (j + 1 < f.size())
            pow = pow * c;
    }
    return PhasePolynomial(f.ctx(), std::move(b));
}

PhasePolynomial scale_argument_pow_p(const PhasePolynomial& f, long e) {
    std::vector<Scalar> b;
    b.reserve(f.size());
    for (std::size_t j = 0; j < f.size(); ++j)
        b.push_back(f.coeff(j).mul_pow_p(static_cast<long>(j) * e));
    return PhasePolynomial(f.ctx(), std::move(b));
}

PhasePolynomial drop_constant(const PhasePolynomial& f) {
    std::vector<Scalar> b = f.coeffs();
    b[0] = Scalar::zero(f.ctx());
    return PhasePolynomial(f.ctx(), std::move(b));
}

DominanceProfile dominance_profile(const PhasePolynomial& f) {
    DominanceProfile prof;
    for (std::size_t j = 1; j < f.size(); ++j) {
        const Scalar& a = f.coeff(j);
        if (a.is_zero())
            continue;
        Scalar ja = a.mul_int(mpz_class(static_cast<long>(j)));
        long key = *ja.valuation();
        if (!prof.m || key <= -*prof.r) { // ties go to the larger index
            prof.m = static_cast<long>(j);
            prof.r = -key;
        }
        long ne = *a.norm_exp();
        if (!prof.lambda_exp || ne > *prof.lambda_exp)
            prof.lambda_exp = ne;
    }
    return prof;
}

bool Ball::is_unit() const { return radius_exp == 0 && center.is_zero(); }

bool Ball::operator==(const Ball& o) const {
    if (radius_exp != o.radius_exp)
        return false;
    Scalar d = center - o.center;
    if (d.is_zero())
        return true;
    return *d.valuation() >= -radius_exp;
}

} // namespace padic
