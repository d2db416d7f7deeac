#include "padic/bench.hpp"

#include <chrono>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <tuple>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace padic {

namespace {

long parse_long_strict(const std::string& s) {
    std::size_t pos = 0;
    long v;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad sweep number '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument("bad sweep number '" + s + "'");
    return v;
}

std::pair<long, long> parse_range(const std::string& s) {
    std::size_t dots = s.find("..");
    if (dots == std::string::npos)
        throw std::invalid_argument("sweep range must look like <kmin>..<kmax>");
    long lo = parse_long_strict(s.substr(0, dots));
    long hi = parse_long_strict(s.substr(dots + 2));
    if (lo < 0 || lo > hi)
        throw std::invalid_argument("sweep range must be nonnegative and nonempty");
    return {lo, hi};
}

template <class F> std::int64_t time_ns(F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    body();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
}

} // namespace

SweepSpec parse_sweep(const std::string& spec) {
    SweepSpec out;
    std::string rest;
    if (spec.rfind("quad:", 0) == 0) {
        out.degree = 2;
        rest = spec.substr(5);
    } else if (spec.rfind("mono:", 0) == 0) {
        std::string tail = spec.substr(5);
        std::size_t colon = tail.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("mono sweep must look like mono:<n>:<kmin>..<kmax>");
        out.degree = parse_long_strict(tail.substr(0, colon));
        if (out.degree < 1)
            throw std::invalid_argument("mono sweep degree must be at least 1");
        rest = tail.substr(colon + 1);
    } else {
        throw std::invalid_argument("sweep must start with quad: or mono:");
    }
    std::tie(out.k_min, out.k_max) = parse_range(rest);
    return out;
}

std::vector<BenchRow> run_bench(const std::vector<long>& primes, const SweepSpec& sweep,
                                const EvalOptions& opts) {
    std::vector<BenchRow> rows;
    for (long p : primes) {
        PrimeContext ctx(p);
        for (long k = sweep.k_min; k <= sweep.k_max; ++k) {
            BenchRow row;
            row.prime = p;
            row.degree = sweep.degree;
            row.k = k;
#ifdef _OPENMP
            row.threads = omp_get_max_threads();
#endif
            std::vector<mpq_class> coeffs(static_cast<std::size_t>(sweep.degree) + 1);
            coeffs.back() = ctx.pow_q(-sweep.degree * k);
            PhasePolynomial f = PhasePolynomial::from_rationals(ctx, coeffs);

            std::optional<IntegralResult> rec;
            row.recursive_ns = time_ns([&] { rec = recursive_integrate(f, opts); });
            row.recursive_char_evals = rec->stats.char_evals;

            // sanity pin for the quad family: one split of p branches per
            // rescale level, so the count is linear in k; c = 30 is a
            // deliberately loose ceiling
            long ceiling = 30 * p * (k > 1 ? k : 1);
            if (sweep.degree == 2 &&
                row.recursive_char_evals > static_cast<std::uint64_t>(ceiling))
                throw std::logic_error("recursive evaluator exceeded the quad-family work ceiling");

            long n_exp = natural_modulus_exp(f);
            bool oracle_fits = true;
            mpz_class terms;
            mpz_ui_pow_ui(terms.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>(n_exp));
            if (terms > opts.oracle_term_cap)
                oracle_fits = false;

            if (oracle_fits) {
                row.oracle_terms = terms.get_ui();
                EvalOptions serial = opts;
                serial.chunks = 1;
                std::optional<IntegralResult> os, op;
                row.oracle_serial_ns = time_ns([&] { os = brute_force_unit_ball(f, serial); });
                row.oracle_parallel_ns = time_ns([&] { op = brute_force_unit_ball(f, opts); });
                row.oracle_char_evals = os->stats.char_evals;
                row.values_equal = os->value == rec->value && op->value == rec->value;
                row.char_eval_ratio = static_cast<double>(row.oracle_char_evals) /
                                      static_cast<double>(row.recursive_char_evals);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "prime,degree,k,oracle_terms,oracle_char_evals,recursive_char_evals,"
           "char_eval_ratio,oracle_serial_ns,oracle_parallel_ns,recursive_ns,threads,"
           "values_equal\n";
    for (const BenchRow& r : rows) {
        out << r.prime << ',' << r.degree << ',' << r.k << ',' << r.oracle_terms << ','
            << r.oracle_char_evals << ',' << r.recursive_char_evals << ',' << r.char_eval_ratio
            << ',' << r.oracle_serial_ns << ',' << r.oracle_parallel_ns << ',' << r.recursive_ns
            << ',' << r.threads << ',' << (r.values_equal ? 1 : 0) << "\n";
    }
}

} // namespace padic
