#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "padic/bounds.hpp"

namespace padic {

/**
 * splitmix64 (Steele, Lea, Flood 2014; the java.util.SplittableRandom
 * finalizer).  Per-trial streams are decorrelated by double-mixing the
 * campaign seed with the trial index, so trial i's draws are a pure
 * function of (seed, i) regardless of scheduling or thread count.
 */
struct Splitmix64 {
    std::uint64_t state = 0;

    static std::uint64_t mix(std::uint64_t z);
    std::uint64_t next();
    // uniform in [lo, hi] by modulo; spans here are tiny (< 2^8), so the
    // modulo bias is at most 2^-56 per draw
    long uniform(long lo, long hi);
    double real01(); // 53-bit mantissa in [0,1)
    bool bernoulli(double prob) { return real01() < prob; }
};

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

struct CampaignConfig {
    std::vector<long> primes;
    long trials = 0;
    long degree_max = 6;
    long val_min = -4;
    long val_max = 2;
    double zero_prob = 0.25;
    long radius_min = -3;
    long radius_max = 3;
    std::uint64_t seed = 0;
    double oracle_fraction = 0.01;
    long precision_bits = 128;
    long oracle_term_cap = 10'000'000;
    int threads = 0; // 0: OpenMP default
};

/**
 * a_j = p^v * u / w with v uniform in [val_min, val_max], u uniform in
 * [1, 10p) coprime to p, w uniform in [1, 9] coprime to p; a_j = 0 with
 * probability zero_prob except the leading coefficient, which never
 * draws the zero event.  Degree uniform in [1, degree_max].  Draw order
 * (frozen for reproducibility): degree, then for j = 0..d: zero event
 * (j < d only), v, u rejections, w rejections.
 */
PhasePolynomial generate_polynomial(Splitmix64& rng, const CampaignConfig& cfg,
                                    const PrimeContext& ctx);

// Center 0 with probability 1/2, else p^v*u/w with v uniform in [-2,2]
// and u, w as above; radius_exp uniform in [radius_min, radius_max].
Ball generate_ball(Splitmix64& rng, const CampaignConfig& cfg, const PrimeContext& ctx);

struct TrialRecord {
    long index = 0;
    long prime = 0;
    long degree = 0;
    std::string coeffs; // semicolon-joined rationals
    std::string center;
    long radius_exp = 0;
    std::string m = "-";
    std::string r = "-inf";
    std::string lambda_exp = "-inf";
    std::string unit_mag_lo, unit_mag_hi;
    std::string ball_mag_lo, ball_mag_hi;
    std::string bound_main_lo, bound_uniform_lo, bound_ball_lo; // "inf" when infinite
    VerdictStatus verdict_main{}, verdict_uniform{}, verdict_ball{};
    EvalStats unit_stats, ball_stats;
    bool oracle_checked = false;
    bool failed = false;
    std::string failure; // reproducer detail for the abort message
};

struct CampaignResult {
    bool ok = true;
    long trials_run = 0;
    long fails = 0;
    long inconclusive = 0;
    long oracle_checks = 0;
    std::string failure_reproducer;
    std::vector<TrialRecord> rows;
};

/**
 * The verification campaign: per trial, generate (f, ball), integrate
 * over the unit ball and the ball, judge the three bounds, spot-check
 * the recursive value against the brute-force oracle for an
 * oracle_fraction of trials, and record one CSV row.  Trials run in
 * parallel; rows are emitted in trial order.  Any FAIL verdict or
 * oracle mismatch aborts with a reproducer (no CSV is written).
 */
CampaignResult run_campaign(const CampaignConfig& cfg);

// CSV with 30-significant-digit magnitudes.  A "# generated" timestamp
// header is emitted unless reproducible (byte-identical reruns).
void write_campaign_csv(std::ostream& out, const CampaignConfig& cfg,
                        const CampaignResult& result, bool reproducible);

} // namespace padic
