#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "padic/integrate.hpp"

namespace padic {

// Sweep families: "quad:<kmin>..<kmax>" is f = x^2 / p^{2k},
// "mono:<n>:<kmin>..<kmax>" is f = x^n / p^{nk}.
struct SweepSpec {
    long degree = 2;
    long k_min = 1;
    long k_max = 1;
};

SweepSpec parse_sweep(const std::string& spec); // throws std::invalid_argument

struct BenchRow {
    long prime = 0;
    long degree = 0;
    long k = 0;
    std::uint64_t oracle_terms = 0; // p^N, 0 when the cap was exceeded
    std::uint64_t oracle_char_evals = 0;
    std::uint64_t recursive_char_evals = 0;
    double char_eval_ratio = 0.0; // oracle / recursive
    std::int64_t oracle_serial_ns = -1;
    std::int64_t oracle_parallel_ns = -1;
    std::int64_t recursive_ns = 0;
    int threads = 1;
    bool values_equal = true; // exact comparison, when the oracle ran
};

// Times the serial (one-chunk) and OpenMP brute-force kernels against
// the recursive evaluator on the sweep family.  Oracle runs are skipped
// (columns -1/0) past the term cap; values are compared exactly.
std::vector<BenchRow> run_bench(const std::vector<long>& primes, const SweepSpec& sweep,
                                const EvalOptions& opts = {});

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

} // namespace padic
