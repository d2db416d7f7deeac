#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "padic/bench.hpp"
#include "padic/campaign.hpp"
#include "padic/serialize.hpp"

namespace {

using namespace padic;

std::vector<mpq_class> parse_coeff_list(const std::string& csv) {
    std::vector<mpq_class> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = csv.find(',', start);
        out.push_back(parse_rational(csv.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

std::vector<long> parse_prime_list(const std::string& csv) {
    std::vector<long> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        mpq_class q = parse_rational(tok);
        if (q.get_den() != 1 || !q.get_num().fits_slong_p())
            throw std::invalid_argument("bad prime '" + tok + "'");
        out.push_back(q.get_num().get_si());
    }
    if (out.empty())
        throw std::invalid_argument("empty prime list");
    return out;
}

std::string value_str(const CyclotomicValue& v) {
    if (v.is_zero())
        return "0";
    if (auto q = v.as_rational())
        return q->get_str();
    std::ostringstream os;
    os << v.prime() << "^" << v.scale_exp() << " * (";
    bool first = true;
    for (const auto& [e, c] : v.terms()) {
        if (!first)
            os << " + ";
        first = false;
        os << c.get_str() << "*z^" << e;
    }
    os << "), z = exp(2*pi*i/"
       << pow_long_checked(v.prime(), v.order_exp()) << ")";
    return os.str();
}

std::string enclosure_str(const Enclosure& e) {
    return "[" + magnitude_str(e.lo) + ", " + magnitude_str(e.hi) + "]";
}

struct EvalArgs {
    long p = 0;
    std::string coeffs;
    std::string center = "0";
    long radius_exp = 0;
    std::string method = "recursive";
    long precision_bits = 128;
    bool json = false;
};

int cmd_eval(const EvalArgs& a) {
    PrimeContext ctx(a.p);
    PhasePolynomial f = PhasePolynomial::from_rationals(ctx, parse_coeff_list(a.coeffs));
    Ball ball{Scalar(parse_rational(a.center), ctx), a.radius_exp};
    Method method = a.method == "oracle" ? Method::oracle : Method::recursive;
    IntegralResult res = integrate_ball(f, ball, method);
    Enclosure mag = magnitude(res.value, a.precision_bits);

    if (a.json) {
        nlohmann::json j{{"value", value_to_json(res.value)},
                         {"exact_zero", res.value.is_zero()},
                         {"magnitude_lo", magnitude_str(mag.lo)},
                         {"magnitude_hi", magnitude_str(mag.hi)},
                         {"stats", stats_to_json(res.stats)}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "value: " << value_str(res.value) << "\n"
              << "exact_zero: " << (res.value.is_zero() ? "true" : "false") << "\n"
              << "magnitude: " << enclosure_str(mag) << "\n"
              << "char_evals: " << res.stats.char_evals << "\n"
              << "max_depth: " << res.stats.max_depth << "\n";
    return 0;
}

struct BoundArgs {
    long p = 0;
    std::string coeffs;
    long precision_bits = 128;
    bool json = false;
};

int cmd_bound(const BoundArgs& a) {
    PrimeContext ctx(a.p);
    PhasePolynomial f = PhasePolynomial::from_rationals(ctx, parse_coeff_list(a.coeffs));
    BoundReport rep = bound_report(f);

    if (a.json) {
        std::cout << bound_report_to_json(rep, a.precision_bits).dump(2) << "\n";
        return 0;
    }
    auto opt_str = [](const std::optional<long>& v) {
        return v ? std::to_string(*v) : std::string("none");
    };
    std::cout << "degree: "
              << (rep.degree ? std::to_string(*rep.degree) : std::string("none")) << "\n"
              << "m: " << opt_str(rep.profile.m) << "\n"
              << "r: " << opt_str(rep.profile.r) << "\n"
              << "lambda_exp: " << opt_str(rep.profile.lambda_exp) << "\n";
    auto show = [&](const char* name, const SymbolicBound& b) {
        std::cout << name << ": " << b.str();
        if (!b.infinite)
            std::cout << " = " << enclosure_str(eval_bound(b, a.precision_bits));
        std::cout << "\n";
    };
    show("bound_main", rep.main);
    show("bound_uniform", rep.uniform);
    show("bound_ball", rep.ball);
    return 0;
}

struct VerifyArgs {
    CampaignConfig cfg;
    std::string primes;
    std::string out;
    bool reproducible = false;
};

int cmd_verify(VerifyArgs& a) {
    a.cfg.primes = parse_prime_list(a.primes);
    CampaignResult result = run_campaign(a.cfg);
    if (!result.ok) {
        std::cerr << "FAIL: " << result.failure_reproducer << "\n";
        std::cerr << "trials=" << result.trials_run << " fails=" << result.fails
                  << " inconclusive=" << result.inconclusive << "\n";
        return 1;
    }
    if (a.out.empty()) {
        write_campaign_csv(std::cout, a.cfg, result, a.reproducible);
        std::cerr << "trials=" << result.trials_run << " fails=0 inconclusive="
                  << result.inconclusive << " oracle_checks=" << result.oracle_checks << "\n";
    } else {
        std::ofstream file(a.out);
        if (!file)
            throw std::invalid_argument("cannot open '" + a.out + "' for writing");
        write_campaign_csv(file, a.cfg, result, a.reproducible);
        std::cout << "trials=" << result.trials_run << " fails=0 inconclusive="
                  << result.inconclusive << " oracle_checks=" << result.oracle_checks
                  << " report=" << a.out << "\n";
    }
    return 0;
}

struct BenchArgs {
    std::string primes;
    std::string sweep;
    std::string out;
    long oracle_term_cap = 10'000'000;
};

int cmd_bench(const BenchArgs& a) {
    EvalOptions opts;
    opts.oracle_term_cap = a.oracle_term_cap;
    std::vector<BenchRow> rows = run_bench(parse_prime_list(a.primes), parse_sweep(a.sweep), opts);
    bool mismatch = false;
    for (const BenchRow& r : rows)
        if (!r.values_equal)
            mismatch = true;
    if (a.out.empty()) {
        write_bench_csv(std::cout, rows);
    } else {
        std::ofstream file(a.out);
        if (!file)
            throw std::invalid_argument("cannot open '" + a.out + "' for writing");
        write_bench_csv(file, rows);
        std::cout << "rows=" << rows.size() << " report=" << a.out << "\n";
    }
    if (mismatch) {
        std::cerr << "FAIL: oracle and recursive evaluator disagree; see values_equal column\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact p-adic oscillatory integrals: evaluate, bound, verify, benchmark"};
    app.require_subcommand(1);

    EvalArgs ea;
    CLI::App* eval = app.add_subcommand("eval", "integrate chi(f(x)) over a ball, exactly");
    eval->add_option("--p", ea.p, "prime")->required();
    eval->add_option("--coeffs", ea.coeffs, "rational coefficients a0,a1,...")->required();
    eval->add_option("--center", ea.center, "ball center (default 0)");
    eval->add_option("--radius-exp", ea.radius_exp, "ball radius exponent (default 0)");
    eval->add_option("--method", ea.method, "oracle|recursive")
        ->check(CLI::IsMember({"oracle", "recursive"}));
    eval->add_option("--precision-bits", ea.precision_bits, "magnitude precision")
        ->check(CLI::Range(64L, 1L << 20));
    eval->add_flag("--json", ea.json, "JSON output");

    BoundArgs ba;
    CLI::App* bound = app.add_subcommand("bound", "dominance profile and decay bounds");
    bound->add_option("--p", ba.p, "prime")->required();
    bound->add_option("--coeffs", ba.coeffs, "rational coefficients a0,a1,...")->required();
    bound->add_option("--precision-bits", ba.precision_bits, "enclosure precision")
        ->check(CLI::Range(64L, 1L << 20));
    bound->add_flag("--json", ba.json, "JSON output");

    VerifyArgs va;
    CLI::App* verify = app.add_subcommand("verify", "randomized bound-verification campaign");
    verify->add_option("--primes", va.primes, "comma-separated primes")->required();
    verify->add_option("--trials", va.cfg.trials, "number of trials")->required();
    verify->add_option("--degree-max", va.cfg.degree_max, "maximum degree");
    verify->add_option("--val-min", va.cfg.val_min, "minimum coefficient valuation");
    verify->add_option("--val-max", va.cfg.val_max, "maximum coefficient valuation");
    verify->add_option("--zero-prob", va.cfg.zero_prob, "per-coefficient zero probability");
    verify->add_option("--radius-min", va.cfg.radius_min, "minimum ball radius exponent");
    verify->add_option("--radius-max", va.cfg.radius_max, "maximum ball radius exponent");
    verify->add_option("--seed", va.cfg.seed, "campaign seed");
    verify->add_option("--oracle-fraction", va.cfg.oracle_fraction,
                       "fraction of trials cross-checked by brute force");
    verify->add_option("--precision-bits", va.cfg.precision_bits, "verdict precision")
        ->check(CLI::Range(64L, 1L << 20));
    verify->add_option("--oracle-term-cap", va.cfg.oracle_term_cap, "brute-force size cap");
    verify->add_option("--threads", va.cfg.threads, "worker threads (0: OpenMP default)");
    verify->add_option("--out", va.out, "report CSV path (default stdout)");
    verify->add_flag("--reproducible", va.reproducible, "suppress the timestamp header");

    BenchArgs na;
    CLI::App* bench = app.add_subcommand("bench", "oracle vs recursive evaluator timings");
    bench->add_option("--primes", na.primes, "comma-separated primes")->required();
    bench->add_option("--sweep", na.sweep, "quad:<kmin>..<kmax> or mono:<n>:<kmin>..<kmax>")
        ->required();
    bench->add_option("--oracle-term-cap", na.oracle_term_cap, "brute-force size cap");
    bench->add_option("--out", na.out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*eval)
            return cmd_eval(ea);
        if (*bound)
            return cmd_bound(ba);
        if (*verify)
            return cmd_verify(va);
        if (*bench)
            return cmd_bench(na);
    } catch (const padic::OracleCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
