#include "padic/campaign.hpp"

#include <atomic>
#include <ctime>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace padic {

std::uint64_t Splitmix64::mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t Splitmix64::next() {
    state += 0x9E3779B97F4A7C15ULL;
    return mix(state);
}

long Splitmix64::uniform(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

double Splitmix64::real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
    return Splitmix64::mix(seed ^ Splitmix64::mix((index + 1) * 0x9E3779B97F4A7C15ULL));
}

namespace {

mpq_class draw_coefficient(Splitmix64& rng, long val_min, long val_max,
                           const PrimeContext& ctx) {
    long p = ctx.p();
    long v = rng.uniform(val_min, val_max);
    long u;
    do
        u = rng.uniform(1, 10 * p - 1);
    while (u % p == 0);
    long w;
    do
        w = rng.uniform(1, 9);
    while (w % p == 0);
    mpq_class c = ctx.pow_q(v) * u;
    c /= w;
    return c;
}

} // namespace

PhasePolynomial generate_polynomial(Splitmix64& rng, const CampaignConfig& cfg,
                                    const PrimeContext& ctx) {
    long d = rng.uniform(1, cfg.degree_max);
    std::vector<mpq_class> coeffs(static_cast<std::size_t>(d) + 1);
    for (long j = 0; j <= d; ++j) {
        if (j < d && rng.bernoulli(cfg.zero_prob))
            continue;
        coeffs[static_cast<std::size_t>(j)] =
            draw_coefficient(rng, cfg.val_min, cfg.val_max, ctx);
    }
    return PhasePolynomial::from_rationals(ctx, coeffs);
}

Ball generate_ball(Splitmix64& rng, const CampaignConfig& cfg, const PrimeContext& ctx) {
    mpq_class center = 0;
    if (!rng.bernoulli(0.5))
        center = draw_coefficient(rng, -2, 2, ctx);
    long radius_exp = rng.uniform(cfg.radius_min, cfg.radius_max);
    return Ball{Scalar(std::move(center), ctx), radius_exp};
}

namespace {

void validate(const CampaignConfig& cfg) {
    if (cfg.primes.empty())
        throw std::invalid_argument("campaign needs at least one prime");
    for (long p : cfg.primes)
        PrimeContext check(p);
    if (cfg.trials < 0)
        throw std::invalid_argument("trial count must be nonnegative");
    if (cfg.degree_max < 1)
        throw std::invalid_argument("degree_max must be at least 1");
    if (cfg.val_min > cfg.val_max || cfg.radius_min > cfg.radius_max)
        throw std::invalid_argument("empty sampling range");
    if (cfg.zero_prob < 0.0 || cfg.zero_prob > 1.0 || cfg.oracle_fraction < 0.0 ||
        cfg.oracle_fraction > 1.0)
        throw std::invalid_argument("probabilities must lie in [0,1]");
    if (cfg.precision_bits < 64)
        throw std::invalid_argument("precision must be at least 64 bits");
}

std::string join_coeffs(const PhasePolynomial& f) {
    std::string s;
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (j)
            s += ';';
        s += f.coeff(j).value().get_str();
    }
    return s;
}

// Per-trial draw order, frozen: prime index, polynomial, ball, oracle
// spot-check event.
void run_trial(TrialRecord& row, long index, const CampaignConfig& cfg) {
    row.index = index;
    Splitmix64 rng{trial_seed(cfg.seed, static_cast<std::uint64_t>(index))};
    long prime =
        cfg.primes[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(cfg.primes.size()) - 1))];
    PrimeContext ctx(prime);
    row.prime = prime;

    PhasePolynomial f = generate_polynomial(rng, cfg, ctx);
    Ball ball = generate_ball(rng, cfg, ctx);
    bool spot_check = rng.bernoulli(cfg.oracle_fraction);

    row.degree = static_cast<long>(*f.degree());
    row.coeffs = join_coeffs(f);
    row.center = ball.center.value().get_str();
    row.radius_exp = ball.radius_exp;

    BoundReport rep = bound_report(f);
    if (rep.profile.m) {
        row.m = std::to_string(*rep.profile.m);
        row.r = std::to_string(*rep.profile.r);
    }
    if (rep.profile.lambda_exp)
        row.lambda_exp = std::to_string(*rep.profile.lambda_exp);

    EvalOptions opts;
    opts.oracle_term_cap = cfg.oracle_term_cap;

    IntegralResult unit = recursive_integrate(f, opts);
    row.unit_stats = unit.stats;
    Verdict vm = judge_bound(unit.value, 0, rep.main, cfg.precision_bits);
    Verdict vu = judge_bound(unit.value, 0, rep.uniform, cfg.precision_bits);
    row.verdict_main = vm.status;
    row.verdict_uniform = vu.status;
    row.unit_mag_lo = vm.magnitude.lo.str(30);
    row.unit_mag_hi = vm.magnitude.hi.str(30);
    row.bound_main_lo = vm.bound ? vm.bound->lo.str(30) : "inf";
    row.bound_uniform_lo = vu.bound ? vu.bound->lo.str(30) : "inf";

    IntegralResult over_ball = integrate_ball(f, ball, Method::recursive, opts);
    row.ball_stats = over_ball.stats;
    Verdict vb = judge_bound(over_ball.value, ball.measure_exp(), rep.ball, cfg.precision_bits);
    row.verdict_ball = vb.status;
    row.ball_mag_lo = vb.magnitude.lo.str(30);
    row.ball_mag_hi = vb.magnitude.hi.str(30);
    row.bound_ball_lo = vb.bound ? vb.bound->lo.str(30) : "inf";

    if (spot_check) {
        try {
            IntegralResult oracle = brute_force_unit_ball(f, opts);
            row.oracle_checked = true;
            if (!(oracle.value == unit.value)) {
                row.failed = true;
                row.failure = "oracle disagrees with the recursive evaluator on the unit ball";
                return;
            }
        } catch (const OracleCapError&) {
            // the draw asked for a spot check the cap cannot afford; the
            // trial itself still counts
        }
    }

    if (vm.status == VerdictStatus::FAIL || vu.status == VerdictStatus::FAIL ||
        vb.status == VerdictStatus::FAIL) {
        row.failed = true;
        std::ostringstream os;
        os << "bound verdict FAIL (main=" << to_string(vm.status)
           << " uniform=" << to_string(vu.status) << " ball=" << to_string(vb.status) << ")";
        row.failure = os.str();
    }
}

std::string reproducer(const TrialRecord& row, const CampaignConfig& cfg) {
    std::ostringstream os;
    os << "trial " << row.index << " (campaign seed " << cfg.seed << ", trial seed "
       << trial_seed(cfg.seed, static_cast<std::uint64_t>(row.index)) << "): p=" << row.prime
       << " f=[" << row.coeffs << "] center=" << row.center << " radius_exp=" << row.radius_exp
       << ": " << row.failure;
    return os.str();
}

} // namespace

CampaignResult run_campaign(const CampaignConfig& cfg) {
    validate(cfg);
    CampaignResult result;
    result.rows.resize(static_cast<std::size_t>(cfg.trials));
    std::atomic<bool> abort{false};
    std::atomic<long> executed{0};

#ifdef _OPENMP
    int nt = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#else
    int nt = 1;
#endif
    (void)nt;

#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (long i = 0; i < cfg.trials; ++i) {
        if (abort.load(std::memory_order_relaxed))
            continue;
        TrialRecord& row = result.rows[static_cast<std::size_t>(i)];
        try {
            run_trial(row, i, cfg);
        } catch (const std::exception& e) {
            row.index = i;
            row.failed = true;
            row.failure = e.what();
        }
        executed.fetch_add(1, std::memory_order_relaxed);
        if (row.failed)
            abort.store(true, std::memory_order_relaxed);
    }

    result.trials_run = executed.load();
    for (const TrialRecord& row : result.rows) {
        if (row.failed) {
            ++result.fails;
            if (result.failure_reproducer.empty())
                result.failure_reproducer = reproducer(row, cfg);
        }
        for (VerdictStatus s : {row.verdict_main, row.verdict_uniform, row.verdict_ball})
            if (s == VerdictStatus::INCONCLUSIVE)
                ++result.inconclusive;
        if (row.oracle_checked)
            ++result.oracle_checks;
    }
    result.ok = result.fails == 0;
    return result;
}

void write_campaign_csv(std::ostream& out, const CampaignConfig& cfg,
                        const CampaignResult& result, bool reproducible) {
    if (!reproducible) {
        std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        out << "# generated " << buf << "\n";
    }
    out << "# seed " << cfg.seed << " trials " << cfg.trials << " primes ";
    for (std::size_t i = 0; i < cfg.primes.size(); ++i)
        out << (i ? "," : "") << cfg.primes[i];
    out << " degree_max " << cfg.degree_max << " val " << cfg.val_min << ".." << cfg.val_max
        << " radius " << cfg.radius_min << ".." << cfg.radius_max << "\n";
    out << "trial,prime,degree,coeffs,center,radius_exp,m,r,lambda_exp,"
           "unit_mag_lo,unit_mag_hi,ball_mag_lo,ball_mag_hi,"
           "bound_main,bound_uniform,bound_ball,"
           "verdict_main,verdict_uniform,verdict_ball,"
           "unit_char_evals,ball_char_evals,unit_depth,ball_depth,"
           "splits,rescales,vanishes,constants,oracle_checked\n";
    for (const TrialRecord& row : result.rows) {
        out << row.index << ',' << row.prime << ',' << row.degree << ',' << row.coeffs << ','
            << row.center << ',' << row.radius_exp << ',' << row.m << ',' << row.r << ','
            << row.lambda_exp << ',' << row.unit_mag_lo << ',' << row.unit_mag_hi << ','
            << row.ball_mag_lo << ',' << row.ball_mag_hi << ',' << row.bound_main_lo << ','
            << row.bound_uniform_lo << ',' << row.bound_ball_lo << ','
            << to_string(row.verdict_main) << ',' << to_string(row.verdict_uniform) << ','
            << to_string(row.verdict_ball) << ',' << row.unit_stats.char_evals << ','
            << row.ball_stats.char_evals << ',' << row.unit_stats.max_depth << ','
            << row.ball_stats.max_depth << ','
            << row.unit_stats.split_rules + row.ball_stats.split_rules << ','
            << row.unit_stats.rescale_rules + row.ball_stats.rescale_rules << ','
            << row.unit_stats.vanish_rules + row.ball_stats.vanish_rules << ','
            << row.unit_stats.constant_rules + row.ball_stats.constant_rules << ','
            << (row.oracle_checked ? 1 : 0) << "\n";
    }
}

} // namespace padic
