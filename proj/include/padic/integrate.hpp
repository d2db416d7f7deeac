#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "padic/cyclotomic.hpp"
#include "padic/polynomial.hpp"

namespace padic {

struct EvalStats {
    std::uint64_t char_evals = 0;
    long max_depth = 0;
    std::uint64_t constant_rules = 0;
    std::uint64_t vanish_rules = 0;
    std::uint64_t rescale_rules = 0;
    std::uint64_t split_rules = 0;

    void merge_child(const EvalStats& child);
};

struct IntegralResult {
    CyclotomicValue value;
    EvalStats stats;
};

struct EvalOptions {
    // brute force refuses more than this many character evaluations
    long oracle_term_cap = 10'000'000;
    long depth_cap = 64;
    // force the brute-force modulus to p^k with k >= the natural exponent
    std::optional<long> modulus_exp;
    // 0: one chunk per OpenMP thread; otherwise an explicit chunk count
    long chunks = 0;
};

// N = max(0, max_{j>=1} log_p |a_j|): chi(f) is constant on cosets of
// p^N Z_p, so the brute-force sum over x mod p^N is exact.
long natural_modulus_exp(const PhasePolynomial& f);

class OracleCapError : public std::runtime_error {
public:
    OracleCapError(long required_exp, long prime, long cap);
    long required_exp;
    long prime;
    long cap;
};

// Phase is constant: every |a_j| <= 1 for j >= 1, so the integral is 1.
struct ReductionConstant {};

// The integral vanishes: either deg f = 1 with |a_1| > 1, or |a_1| > p
// with |a_1| > |j a_j| for every j > 1 (the linear term wins on every
// residue class, and a full sum of p-th roots of unity cancels).
struct ReductionVanish {
    bool linear_phase; // true for the degree-1 route
};

// |m a_m| > p^2 and strictly dominant: I(f) = (1/p) I(f(px)).
struct ReductionRescale {
    PhasePolynomial child; // f(px)
};

// Split over residues y mod p: I(f) = (1/p) sum_y chi(f(y)) I(g_y) with
// g_y(x) = sum_{j>=1} b_j(y) p^j x^j, b = taylor_shift(f, y).
struct SplitBranch {
    Angle phase;
    PhasePolynomial child;
};
struct ReductionSplit {
    std::vector<SplitBranch> branches;
};

using ReductionOutcome =
    std::variant<ReductionConstant, ReductionVanish, ReductionRescale, ReductionSplit>;

// One step of the unit-ball reduction.  Precondition: a_0 = 0 (the caller
// holds the constant term as a rotation).  Rule priority is fixed:
// constant, vanish, rescale, split.
ReductionOutcome reduce_step(const PhasePolynomial& f);

/**
 * Exact unit-ball integral of chi(f(x)) by the reduction rules.  The
 * modulus exponent strictly decreases into every child; that descent is
 * checked at each step and a violation throws (it would mean the rules
 * are wrong, not the input).
 */
IntegralResult recursive_integrate(const PhasePolynomial& f, const EvalOptions& opts = {});

/**
 * Exact unit-ball integral as the plain average p^{-N} sum_{x mod p^N}
 * chi(f(x)).  This is the oracle the reduction rules are checked against.
 * The kernel evaluates f by integer forward differences mod p^k and is
 * chunked for OpenMP; results are identical for any chunk count.
 */
IntegralResult brute_force_unit_ball(const PhasePolynomial& f, const EvalOptions& opts = {});

// Naive per-point rational evaluation, single pass.  Kept as the
// reference the kernel is tested against.
IntegralResult brute_force_unit_ball_reference(const PhasePolynomial& f,
                                               const EvalOptions& opts = {});

/**
 * Change of variables taking a ball integral to the unit ball:
 * x = center + p^{-radius_exp} y maps |y| <= 1 onto the ball, and
 *
 *   I_ball(f) = p^{measure_exp} * chi(phase) * I_unit(unit_phase)
 *
 * with unit_phase_j = b_j(center) p^{-j radius_exp} for j >= 1 and
 * phase = angle of chi(f(center)).
 */
struct NormalizedBall {
    PhasePolynomial unit_phase;
    long measure_exp;
    Angle phase;
};

NormalizedBall normalize_ball(const PhasePolynomial& f, const Ball& ball);

enum class Method { oracle, recursive };

IntegralResult integrate_ball(const PhasePolynomial& f, const Ball& ball, Method method,
                              const EvalOptions& opts = {});

} // namespace padic
