#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "padic/campaign.hpp"

using namespace padic;

namespace {

CampaignConfig base_config() {
    CampaignConfig cfg;
    cfg.primes = {2, 3};
    cfg.trials = 150;
    cfg.degree_max = 4;
    cfg.val_min = -3;
    cfg.val_max = 1;
    cfg.seed = 42;
    cfg.oracle_fraction = 0.2;
    return cfg;
}

} // namespace

TEST_SUITE("campaign") {

    TEST_CASE("splitmix64 matches the published stream for state 0") {
        Splitmix64 rng{0};
        CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
        CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
        CHECK(rng.next() == 0x06C45D188009454FULL);
    }

    TEST_CASE("trial seeds are deterministic and spread out") {
        std::set<std::uint64_t> seen;
        for (std::uint64_t i = 0; i < 1000; ++i) {
            CHECK(trial_seed(42, i) == trial_seed(42, i));
            seen.insert(trial_seed(42, i));
        }
        CHECK(seen.size() == 1000);
        CHECK(trial_seed(42, 0) != trial_seed(43, 0));
    }

    TEST_CASE("uniform draws stay in range and reach the endpoints") {
        Splitmix64 rng{7};
        bool lo_hit = false, hi_hit = false;
        for (int i = 0; i < 5000; ++i) {
            long x = rng.uniform(-2, 1);
            CHECK(x >= -2);
            CHECK(x <= 1);
            lo_hit |= x == -2;
            hi_hit |= x == 1;
        }
        CHECK(lo_hit);
        CHECK(hi_hit);
        CHECK(rng.uniform(5, 5) == 5);
        for (int i = 0; i < 100; ++i) {
            double r = rng.real01();
            CHECK(r >= 0.0);
            CHECK(r < 1.0);
            CHECK(!rng.bernoulli(0.0));
            CHECK(rng.bernoulli(1.0));
        }
    }

    TEST_CASE("generated polynomials obey the documented distribution") {
        CampaignConfig cfg = base_config();
        for (long p : {2L, 5L}) {
            PrimeContext ctx(p);
            for (int i = 0; i < 300; ++i) {
                Splitmix64 rng{trial_seed(9, static_cast<std::uint64_t>(i))};
                PhasePolynomial f = generate_polynomial(rng, cfg, ctx);
                auto deg = f.degree();
                REQUIRE(deg.has_value());
                CHECK(*deg >= 1);
                CHECK(*deg <= static_cast<std::size_t>(cfg.degree_max));
                CHECK(*deg == f.size() - 1); // leading coefficient never zero
                for (std::size_t j = 0; j < f.size(); ++j) {
                    const Scalar& a = f.coeff(j);
                    if (a.is_zero())
                        continue;
                    long v = *a.valuation();
                    CHECK(v >= cfg.val_min);
                    CHECK(v <= cfg.val_max);
                    mpq_class unit = a.value() * ctx.pow_q(-v);
                    CHECK(unit > 0);
                    CHECK(unit.get_num() < 10 * p);
                    CHECK(unit.get_den() <= 9);
                    CHECK(unit.get_num() % p != 0);
                    CHECK(unit.get_den() % p != 0);
                }
            }
        }
    }

    TEST_CASE("generator reruns are identical") {
        CampaignConfig cfg = base_config();
        PrimeContext p3(3);
        Splitmix64 a{trial_seed(cfg.seed, 5)}, b{trial_seed(cfg.seed, 5)};
        PhasePolynomial fa = generate_polynomial(a, cfg, p3);
        PhasePolynomial fb = generate_polynomial(b, cfg, p3);
        CHECK(fa.same_values(fb));
        CHECK(generate_ball(a, cfg, p3) == generate_ball(b, cfg, p3));
    }

    TEST_CASE("distribution boundaries") {
        PrimeContext p3(3);
        CampaignConfig cfg = base_config();

        cfg.zero_prob = 1.0; // everything but the leading coefficient is zero
        for (int i = 0; i < 30; ++i) {
            Splitmix64 rng{trial_seed(1, static_cast<std::uint64_t>(i))};
            PhasePolynomial f = generate_polynomial(rng, cfg, p3);
            for (std::size_t j = 0; j + 1 < f.size(); ++j)
                CHECK(f.coeff(j).is_zero());
            CHECK(!f.coeff(f.size() - 1).is_zero());
        }

        cfg.zero_prob = 0.0;
        cfg.val_min = cfg.val_max = 0; // units everywhere
        for (int i = 0; i < 30; ++i) {
            Splitmix64 rng{trial_seed(2, static_cast<std::uint64_t>(i))};
            PhasePolynomial f = generate_polynomial(rng, cfg, p3);
            for (std::size_t j = 0; j < f.size(); ++j) {
                REQUIRE(!f.coeff(j).is_zero());
                CHECK(f.coeff(j).valuation() == Valuation{0});
            }
        }
    }

    TEST_CASE("generated balls respect the radius range and center mix") {
        CampaignConfig cfg = base_config();
        PrimeContext p2(2);
        int zero_centers = 0;
        for (int i = 0; i < 400; ++i) {
            Splitmix64 rng{trial_seed(3, static_cast<std::uint64_t>(i))};
            generate_polynomial(rng, cfg, p2); // keep the per-trial draw order
            Ball b = generate_ball(rng, cfg, p2);
            CHECK(b.radius_exp >= cfg.radius_min);
            CHECK(b.radius_exp <= cfg.radius_max);
            if (b.center.is_zero())
                ++zero_centers;
        }
        CHECK(zero_centers > 100);
        CHECK(zero_centers < 300);
    }

    TEST_CASE("campaigns are reproducible byte for byte") {
        CampaignConfig cfg = base_config();
        CampaignResult r1 = run_campaign(cfg);
        CampaignResult r2 = run_campaign(cfg);
        CampaignConfig threaded = cfg;
        threaded.threads = 2;
        CampaignResult r3 = run_campaign(threaded);

        std::ostringstream c1, c2, c3;
        write_campaign_csv(c1, cfg, r1, true);
        write_campaign_csv(c2, cfg, r2, true);
        write_campaign_csv(c3, threaded, r3, true);
        CHECK(c1.str() == c2.str());
        CHECK(c1.str() == c3.str());
        CHECK(c1.str().rfind("# seed", 0) == 0);

        std::ostringstream stamped;
        write_campaign_csv(stamped, cfg, r1, false);
        CHECK(stamped.str().rfind("# generated", 0) == 0);
    }

    TEST_CASE("a healthy campaign reports clean counters") {
        CampaignConfig cfg = base_config();
        CampaignResult r = run_campaign(cfg);
        CHECK(r.ok);
        CHECK(r.fails == 0);
        CHECK(r.trials_run == cfg.trials);
        CHECK(r.rows.size() == static_cast<std::size_t>(cfg.trials));
        CHECK(r.failure_reproducer.empty());
        CHECK(r.oracle_checks > 0);
        long flagged = 0;
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            const TrialRecord& row = r.rows[i];
            CHECK(row.index == static_cast<long>(i));
            CHECK(row.verdict_main != VerdictStatus::FAIL);
            CHECK(row.verdict_uniform != VerdictStatus::FAIL);
            CHECK(row.verdict_ball != VerdictStatus::FAIL);
            CHECK(!row.failed);
            if (row.oracle_checked)
                ++flagged;
        }
        CHECK(flagged == r.oracle_checks);
    }

    TEST_CASE("configs are validated eagerly") {
        CampaignConfig cfg = base_config();
        cfg.primes = {};
        CHECK_THROWS_AS(run_campaign(cfg), std::invalid_argument);
        cfg = base_config();
        cfg.primes = {9};
        CHECK_THROWS_AS(run_campaign(cfg), std::invalid_argument);
        cfg = base_config();
        cfg.zero_prob = 1.5;
        CHECK_THROWS_AS(run_campaign(cfg), std::invalid_argument);
        cfg = base_config();
        cfg.precision_bits = 32;
        CHECK_THROWS_AS(run_campaign(cfg), std::invalid_argument);
        cfg = base_config();
        cfg.trials = -1;
        CHECK_THROWS_AS(run_campaign(cfg), std::invalid_argument);
        cfg = base_config();
        cfg.val_min = 2;
        cfg.val_max = -2;
        CHECK_THROWS_AS(run_campaign(cfg), std::invalid_argument);
    }

    TEST_CASE("csv layout") {
        CampaignConfig cfg = base_config();
        cfg.trials = 10;
        CampaignResult r = run_campaign(cfg);
        std::ostringstream out;
        write_campaign_csv(out, cfg, r, true);
        std::istringstream in(out.str());
        std::string line;
        long lines = 0, commas = -1;
        while (std::getline(in, line)) {
            ++lines;
            if (line.rfind("#", 0) == 0)
                continue;
            long n = static_cast<long>(std::count(line.begin(), line.end(), ','));
            if (commas < 0)
                commas = n;
            CHECK(n == commas); // header and every row have the same arity
        }
        CHECK(lines == 12); // config comment + header + 10 rows
        CHECK(commas == 27);
    }
}
