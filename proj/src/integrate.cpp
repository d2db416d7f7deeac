#include "padic/integrate.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <string>

namespace padic {

void EvalStats::merge_child(const EvalStats& child) {
    char_evals += child.char_evals;
    max_depth = std::max(max_depth, child.max_depth);
    constant_rules += child.constant_rules;
    vanish_rules += child.vanish_rules;
    rescale_rules += child.rescale_rules;
    split_rules += child.split_rules;
}

long natural_modulus_exp(const PhasePolynomial& f) {
    long n = 0;
    for (std::size_t j = 1; j < f.size(); ++j) {
        auto e = f.coeff(j).norm_exp();
        if (e && *e > n)
            n = *e;
    }
    return n;
}

OracleCapError::OracleCapError(long required_exp_, long prime_, long cap_)
    : std::runtime_error("brute force needs " + std::to_string(prime_) + "^" +
                         std::to_string(required_exp_) +
                         " character evaluations, above the cap of " + std::to_string(cap_) +
                         "; use the recursive method"),
      required_exp(required_exp_), prime(prime_), cap(cap_) {}

ReductionOutcome reduce_step(const PhasePolynomial& f) {
    if (!f.coeff(0).is_zero())
        throw std::logic_error("reduce_step requires a zero constant term");
    const PrimeContext& ctx = f.ctx();

    bool all_small = true;
    for (std::size_t j = 1; j < f.size(); ++j) {
        auto v = f.coeff(j).valuation();
        if (v && *v < 0) {
            all_small = false;
            break;
        }
    }
    if (all_small)
        return ReductionConstant{};

    auto degree = f.degree(); // some j >= 1 has |a_j| > 1, so degree >= 1
    if (f.size() > 1 && !f.coeff(1).is_zero()) {
        long v1 = *f.coeff(1).valuation();
        if (*degree == 1 && v1 < 0)
            return ReductionVanish{true};
        if (v1 <= -2) {
            bool dominant = true;
            for (std::size_t j = 2; j < f.size(); ++j) {
                const Scalar& a = f.coeff(j);
                if (a.is_zero())
                    continue;
                if (*a.mul_int(mpz_class(static_cast<long>(j))).valuation() <= v1) {
                    dominant = false;
                    break;
                }
            }
            if (dominant)
                return ReductionVanish{false};
        }
    }

    DominanceProfile prof = dominance_profile(f);
    if (prof.m && *prof.r >= 3) {
        bool strict = true;
        for (std::size_t j = 1; j < f.size(); ++j) {
            if (static_cast<long>(j) == *prof.m)
                continue;
            const Scalar& a = f.coeff(j);
            if (a.is_zero())
                continue;
            if (*a.mul_int(mpz_class(static_cast<long>(j))).valuation() <= -*prof.r) {
                strict = false;
                break;
            }
        }
        if (strict)
            return ReductionRescale{scale_argument_pow_p(f, 1)};
    }

    ReductionSplit split;
    split.branches.reserve(static_cast<std::size_t>(ctx.p()));
    for (long y = 0; y < ctx.p(); ++y) {
        PhasePolynomial shifted = taylor_shift(f, Scalar(mpq_class(y), ctx));
        Angle phase = character_angle(shifted.coeff(0).value(), ctx);
        split.branches.push_back(
            SplitBranch{phase, scale_argument_pow_p(drop_constant(shifted), 1)});
    }
    return ReductionOutcome{std::move(split)};
}

namespace {

CyclotomicValue integrate_rec(const PhasePolynomial& f, long depth, const EvalOptions& opts,
                              EvalStats& stats) {
    if (depth > opts.depth_cap)
        throw std::runtime_error("recursion depth cap of " + std::to_string(opts.depth_cap) +
                                 " exceeded");
    stats.max_depth = std::max(stats.max_depth, depth);
    const PrimeContext& ctx = f.ctx();
    long n_before = natural_modulus_exp(f);

    // every child must live at a strictly smaller modulus exponent; a
    // violation means the reduction rules are wrong, not the input
    auto check_descent = [&](const PhasePolynomial& child) {
        if (natural_modulus_exp(child) >= n_before)
            throw std::logic_error("reduction failed to decrease the modulus exponent");
    };

    ReductionOutcome outcome = reduce_step(f);
    if (std::holds_alternative<ReductionConstant>(outcome)) {
        ++stats.constant_rules;
        ++stats.char_evals;
        return CyclotomicValue::one(ctx);
    }
    if (std::holds_alternative<ReductionVanish>(outcome)) {
        ++stats.vanish_rules;
        return CyclotomicValue::zero(ctx);
    }
    if (auto* resc = std::get_if<ReductionRescale>(&outcome)) {
        ++stats.rescale_rules;
        check_descent(resc->child);
        return integrate_rec(resc->child, depth + 1, opts, stats).rescale(-1);
    }
    auto& split = std::get<ReductionSplit>(outcome);
    ++stats.split_rules;
    stats.char_evals += static_cast<std::uint64_t>(ctx.p());
    CyclotomicValue acc = CyclotomicValue::zero(ctx);
    for (const SplitBranch& br : split.branches) {
        check_descent(br.child);
        CyclotomicValue inner = integrate_rec(br.child, depth + 1, opts, stats);
        acc = add(acc, inner.rotate(br.phase));
    }
    return acc.rescale(-1);
}

} // namespace

IntegralResult recursive_integrate(const PhasePolynomial& f, const EvalOptions& opts) {
    EvalStats stats;
    CyclotomicValue inner = integrate_rec(drop_constant(f), 0, opts, stats);
    Angle phase = character_angle(f.coeff(0).value(), f.ctx());
    return IntegralResult{inner.rotate(phase), stats};
}

namespace {

long brute_force_modulus(const PhasePolynomial& f, const EvalOptions& opts, long* terms_out) {
    long n = natural_modulus_exp(f);
    if (opts.modulus_exp) {
        if (*opts.modulus_exp < n)
            throw std::invalid_argument("modulus exponent override " +
                                        std::to_string(*opts.modulus_exp) +
                                        " is below the natural exponent " + std::to_string(n));
        n = *opts.modulus_exp;
    }
    mpz_class total = f.ctx().pow(static_cast<unsigned long>(n));
    if (total > opts.oracle_term_cap)
        throw OracleCapError(n, f.ctx().p(), opts.oracle_term_cap);
    *terms_out = static_cast<long>(total.get_si());
    return n;
}

} // namespace

IntegralResult brute_force_unit_ball_reference(const PhasePolynomial& f,
                                               const EvalOptions& opts) {
    const PrimeContext& ctx = f.ctx();
    long terms = 0;
    long n = brute_force_modulus(f, opts, &terms);
    CyclotomicSum sum(ctx);
    for (long x = 0; x < terms; ++x)
        sum.add_root(character_angle(f.evaluate(mpz_class(x)), ctx));
    EvalStats stats;
    stats.char_evals = static_cast<std::uint64_t>(terms);
    return IntegralResult{sum.finish(-n), stats};
}

namespace {

// Forward-difference kernel: clear denominators so f = P/D with P
// integral, then march P(x) mod p^k with n additions per point.  The
// angle of chi(P(x)/D) is (P(x) w^{-1} mod p^k) / p^k where D = w p^k.
// Exact throughout; chunking only changes the order sums are combined in.
struct DiffKernel {
    long pk = 1;              // p^k
    long k = 0;
    unsigned long winv = 0;   // w^{-1} mod p^k
    std::vector<mpz_class> P; // integer coefficients

    static std::optional<DiffKernel> build(const PhasePolynomial& f) {
        DiffKernel kern;
        const PrimeContext& ctx = f.ctx();
        mpz_class D(1);
        for (std::size_t j = 0; j < f.size(); ++j)
            mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), f.coeff(j).value().get_den().get_mpz_t());
        mpz_class w;
        kern.k = static_cast<long>(
            mpz_remove(w.get_mpz_t(), D.get_mpz_t(), ctx.p_z().get_mpz_t()));
        mpz_class pk_z = ctx.pow(static_cast<unsigned long>(kern.k));
        if (kern.k > 0 && (!pk_z.fits_slong_p() || pk_z.get_si() > (1L << 62)))
            return std::nullopt; // a_0 with an absurd denominator; caller falls back
        kern.pk = pk_z.get_si();
        if (kern.pk > 1) {
            mpz_class winv_z;
            mpz_invert(winv_z.get_mpz_t(), w.get_mpz_t(), pk_z.get_mpz_t());
            kern.winv = static_cast<unsigned long>(winv_z.get_ui());
        }
        kern.P.reserve(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) {
            mpq_class scaled = f.coeff(j).value() * mpq_class(D);
            kern.P.emplace_back(scaled.get_num()); // denominator is 1 by construction
        }
        return kern;
    }

    void run_chunk(long x0, long x1, CyclotomicSum& sum) const {
        if (x0 >= x1)
            return;
        const unsigned long m = static_cast<unsigned long>(pk);
        const std::size_t n = P.size() - 1;

        // difference table of P at x0, reduced mod p^k
        std::vector<mpz_class> v(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            mpz_class acc(0);
            mpz_class x(x0 + static_cast<long>(i));
            for (std::size_t j = P.size(); j-- > 0;) {
                acc *= x;
                acc += P[j];
            }
            v[i] = std::move(acc);
        }
        for (std::size_t lvl = 1; lvl <= n; ++lvl)
            for (std::size_t i = n; i >= lvl; --i)
                v[i] -= v[i - 1];
        std::vector<unsigned long> d(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            d[i] = mpz_fdiv_ui(v[i].get_mpz_t(), m);

        // count angle numerators when p^k is small enough for an array
        const bool use_counts = pk <= (1L << 22);
        std::vector<long> counts;
        if (use_counts)
            counts.assign(static_cast<std::size_t>(pk), 0);

        for (long x = x0; x < x1; ++x) {
            unsigned long c =
                static_cast<unsigned long>((static_cast<unsigned __int128>(d[0]) * winv) % m);
            if (pk == 1)
                c = 0;
            if (use_counts)
                ++counts[c];
            else
                sum.add_root_exponent(k, static_cast<long>(c));
            for (std::size_t i = 0; i < n; ++i) {
                unsigned long s = d[i] + d[i + 1];
                d[i] = s >= m ? s - m : s;
            }
        }
        if (use_counts)
            for (long e = 0; e < pk; ++e)
                if (counts[static_cast<std::size_t>(e)] != 0)
                    sum.add_root_exponent(k, e, counts[static_cast<std::size_t>(e)]);
    }
};

long default_chunks() {
#ifdef _OPENMP
    return std::max(1, omp_get_max_threads());
#else
    return 1;
#endif
}

} // namespace

IntegralResult brute_force_unit_ball(const PhasePolynomial& f, const EvalOptions& opts) {
    const PrimeContext& ctx = f.ctx();
    long terms = 0;
    long n = brute_force_modulus(f, opts, &terms);
    auto kern = DiffKernel::build(f);
    if (!kern)
        return brute_force_unit_ball_reference(f, opts);

    long chunks = opts.chunks > 0 ? opts.chunks : default_chunks();
    chunks = std::max(1L, std::min(chunks, terms));
    std::vector<CyclotomicSum> parts(static_cast<std::size_t>(chunks), CyclotomicSum(ctx));
    const long q = terms / chunks, rem = terms % chunks;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long c = 0; c < chunks; ++c) {
        long x0 = c * q + std::min(c, rem);
        long x1 = x0 + q + (c < rem ? 1 : 0);
        kern->run_chunk(x0, x1, parts[static_cast<std::size_t>(c)]);
    }
    CyclotomicSum total(ctx);
    for (const CyclotomicSum& part : parts)
        total.add_sum(part);
    EvalStats stats;
    stats.char_evals = static_cast<std::uint64_t>(terms);
    return IntegralResult{total.finish(-n), stats};
}

NormalizedBall normalize_ball(const PhasePolynomial& f, const Ball& ball) {
    PhasePolynomial shifted = taylor_shift(f, ball.center);
    Angle phase = character_angle(shifted.coeff(0).value(), f.ctx());
    PhasePolynomial unit = scale_argument_pow_p(drop_constant(shifted), -ball.radius_exp);
    return NormalizedBall{std::move(unit), ball.radius_exp, phase};
}

IntegralResult integrate_ball(const PhasePolynomial& f, const Ball& ball, Method method,
                              const EvalOptions& opts) {
    auto run = [&](const PhasePolynomial& g) {
        return method == Method::oracle ? brute_force_unit_ball(g, opts)
                                        : recursive_integrate(g, opts);
    };
    if (ball.is_unit())
        return run(f);
    NormalizedBall nb = normalize_ball(f, ball);
    IntegralResult res = run(nb.unit_phase);
    res.value = res.value.rotate(nb.phase).rescale(nb.measure_exp);
    return res;
}

} // namespace padic
