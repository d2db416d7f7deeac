#include "padic/bounds.hpp"

#include <stdexcept>

namespace padic {

SymbolicBound SymbolicBound::infinity(long prime) {
    SymbolicBound b;
    b.infinite = true;
    b.prime = prime;
    return b;
}

std::string SymbolicBound::str() const {
    if (infinite)
        return "inf";
    std::string base = std::to_string(prime) + "^";
    std::string e = exponent.get_str();
    if (exponent.get_den() == 1 && sgn(exponent) >= 0)
        base += e;
    else
        base += "(" + e + ")";
    return factor == 1 ? base : std::to_string(factor) + "*" + base;
}

SymbolicBound bound_main(const PhasePolynomial& f) {
    DominanceProfile prof = dominance_profile(f);
    if (!prof.m)
        return SymbolicBound::infinity(f.ctx().p());
    SymbolicBound b;
    b.prime = f.ctx().p();
    b.factor = 1;
    mpq_class rm(*prof.r, *prof.m);
    rm.canonicalize();
    b.exponent = mpq_class(*prof.m) - rm;
    return b;
}

SymbolicBound bound_uniform(const PhasePolynomial& f) {
    auto deg = f.degree();
    if (!deg || *deg < 1)
        return SymbolicBound::infinity(f.ctx().p());
    DominanceProfile prof = dominance_profile(f);
    SymbolicBound b;
    b.prime = f.ctx().p();
    b.factor = 2;
    long n = static_cast<long>(*deg);
    mpq_class ln(*prof.lambda_exp, n);
    ln.canonicalize();
    b.exponent = mpq_class(n) - ln;
    return b;
}

SymbolicBound bound_ball(const PhasePolynomial& f) {
    auto deg = f.degree();
    if (!deg || *deg < 1)
        throw std::invalid_argument("no leading coefficient");
    SymbolicBound b;
    b.prime = f.ctx().p();
    b.factor = 2;
    long n = static_cast<long>(*deg);
    long e = *f.coeff(*deg).norm_exp();
    mpq_class en(e, n);
    en.canonicalize();
    b.exponent = mpq_class(n) - en;
    return b;
}

BoundReport bound_report(const PhasePolynomial& f) {
    BoundReport r;
    r.profile = dominance_profile(f);
    r.degree = f.degree();
    r.main = bound_main(f);
    r.uniform = bound_uniform(f);
    try {
        r.ball = bound_ball(f);
    } catch (const std::invalid_argument&) {
        r.ball = SymbolicBound::infinity(f.ctx().p());
    }
    return r;
}

Enclosure eval_bound(const SymbolicBound& b, long precision_bits) {
    if (b.infinite)
        throw std::logic_error("cannot evaluate an infinite bound");
    if (!b.exponent.get_num().fits_slong_p())
        throw std::overflow_error("bound exponent out of range");
    PrimeContext ctx(b.prime);
    long num = b.exponent.get_num().get_si();
    unsigned long den = b.exponent.get_den().get_ui(); // >= 1 after canonicalize
    mpq_class pnum = ctx.pow_q(num);                   // p^num, exact
    mpfr_prec_t wp = static_cast<mpfr_prec_t>(precision_bits + 16);

    auto eval_dir = [&](mpfr_rnd_t rnd) {
        BigFloat x = BigFloat::from_mpq(pnum, wp, rnd);
        if (den > 1)
            mpfr_rootn_ui(x.raw(), x.raw(), den, rnd); // monotone, so directed is sound
        if (b.factor != 1)
            mpfr_mul_ui(x.raw(), x.raw(), static_cast<unsigned long>(b.factor), rnd);
        BigFloat out(precision_bits);
        mpfr_set(out.raw(), x.raw(), rnd);
        return out;
    };
    return Enclosure{eval_dir(MPFR_RNDD), eval_dir(MPFR_RNDU)};
}

const char* to_string(VerdictStatus s) {
    switch (s) {
    case VerdictStatus::PASS:
        return "PASS";
    case VerdictStatus::FAIL:
        return "FAIL";
    default:
        return "INCONCLUSIVE";
    }
}

namespace {

// certified |I| <= p^measure_exp; a violation is an evaluator bug
void check_measure(const Enclosure& mag, long measure_exp, long prime, long precision_bits) {
    PrimeContext ctx(prime);
    BigFloat measure =
        BigFloat::from_mpq(ctx.pow_q(measure_exp), precision_bits, MPFR_RNDU);
    if (mag.lo > measure)
        throw std::logic_error("integral magnitude certified above the ball measure");
}

} // namespace

Verdict judge_bound(const CyclotomicValue& value, long measure_exp, const SymbolicBound& b,
                    long precision_bits) {
    long attempt_bits = precision_bits;
    for (int attempt = 0;; ++attempt) {
        Enclosure mag = magnitude(value, attempt_bits);
        check_measure(mag, measure_exp, value.prime(), attempt_bits);
        if (b.infinite)
            return Verdict{VerdictStatus::PASS, b, std::move(mag), std::nullopt, attempt_bits};

        Enclosure be = eval_bound(b, attempt_bits);
        if (mag.lo > be.hi)
            return Verdict{VerdictStatus::FAIL, b, std::move(mag), std::move(be), attempt_bits};

        // slack absorbing exact-equality cases; FAIL above is immune to it
        mpfr_prec_t cmp_prec = static_cast<mpfr_prec_t>(attempt_bits + attempt_bits / 2 + 8);
        BigFloat margin = BigFloat::pow2(-(attempt_bits / 2), cmp_prec);
        BigFloat limit = BigFloat::add(be.lo, margin, cmp_prec, MPFR_RNDU);
        if (!(mag.hi > limit))
            return Verdict{VerdictStatus::PASS, b, std::move(mag), std::move(be), attempt_bits};

        if (attempt == 1)
            return Verdict{VerdictStatus::INCONCLUSIVE, b, std::move(mag), std::move(be),
                           attempt_bits};
        attempt_bits *= 2;
    }
}

Verdict verify(const PhasePolynomial& f, const Ball& ball, BoundKind which, long precision_bits,
               const EvalOptions& opts) {
    if (which != BoundKind::ball && !ball.is_unit())
        throw std::invalid_argument("this bound is a unit-ball statement; pass the unit ball");
    SymbolicBound b;
    switch (which) {
    case BoundKind::main:
        b = bound_main(f);
        break;
    case BoundKind::uniform:
        b = bound_uniform(f);
        break;
    case BoundKind::ball:
        try {
            b = bound_ball(f);
        } catch (const std::invalid_argument&) {
            b = SymbolicBound::infinity(f.ctx().p());
        }
        break;
    }
    IntegralResult res = integrate_ball(f, ball, Method::recursive, opts);
    return judge_bound(res.value, ball.measure_exp(), b, precision_bits);
}

} // namespace padic
