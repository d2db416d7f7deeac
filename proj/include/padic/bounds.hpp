#pragma once

#include <optional>
#include <string>

#include "padic/integrate.hpp"

namespace padic {

/**
 * A bound of the exact shape factor * p^exponent (factor 1 or 2,
 * exponent rational), or +infinity for degenerate phases, where the
 * only claim left is |I| <= measure.
 */
struct SymbolicBound {
    bool infinite = false;
    int factor = 1;
    long prime = 0;
    mpq_class exponent;

    static SymbolicBound infinity(long prime);
    std::string str() const; // "5^(3/2)", "2*3^(1/2)", "inf"
};

// p^{m - r/m}: sharp decay from the dominant derivative.  Unit ball only.
SymbolicBound bound_main(const PhasePolynomial& f);
// 2 p^{n - lambda_exp/n} with lambda = max_{1<=j<=n} |a_j|.  Unit ball.
SymbolicBound bound_uniform(const PhasePolynomial& f);
// 2 p^{n - e/n} with p^e = |a_n|, valid on every ball after dividing out
// the measure.  Throws std::invalid_argument("no leading coefficient")
// when degree(f) < 1.
SymbolicBound bound_ball(const PhasePolynomial& f);

struct BoundReport {
    DominanceProfile profile;
    std::optional<std::size_t> degree;
    SymbolicBound main;
    SymbolicBound uniform;
    SymbolicBound ball; // infinite when degree < 1
};

BoundReport bound_report(const PhasePolynomial& f);

// Certified enclosure of factor * p^exponent via integer powers and
// directed-rounded roots.
Enclosure eval_bound(const SymbolicBound& b, long precision_bits);

enum class BoundKind { main, uniform, ball };
enum class VerdictStatus { PASS, FAIL, INCONCLUSIVE };

const char* to_string(VerdictStatus s);

/**
 * Comparison semantics: FAIL only when the enclosures prove
 * lower(|I|) > upper(bound), so a FAIL is a genuine counterexample.
 * PASS when upper(|I|) <= lower(bound) + margin with margin =
 * 2^{-precision_bits/2}, which absorbs exact-equality cases.  Anything
 * else escalates the precision once (x2) and then reports INCONCLUSIVE.
 */
struct Verdict {
    VerdictStatus status;
    SymbolicBound symbolic;
    Enclosure magnitude;
    std::optional<Enclosure> bound; // absent when symbolic.infinite
    long precision_bits;            // precision actually used
};

// Judge an already-computed integral value against a bound.  Also checks
// |I| <= measure(ball) and throws std::logic_error on a certified
// violation of that, since it would mean the evaluator itself is broken.
Verdict judge_bound(const CyclotomicValue& value, long measure_exp, const SymbolicBound& b,
                    long precision_bits);

// Integrate (recursive evaluator) and judge.  BoundKind::main and
// BoundKind::uniform require the unit ball; BoundKind::ball accepts any
// ball and bounds the full ball integral (the measure factor cancels in
// its derivation, so the bound does not grow with the ball).
Verdict verify(const PhasePolynomial& f, const Ball& ball, BoundKind which,
               long precision_bits = 128, const EvalOptions& opts = {});

} // namespace padic
