#include <doctest.h>

#include "padic/campaign.hpp"
#include "padic/polynomial.hpp"

using namespace padic;

namespace {

mpq_class random_rational(Splitmix64& rng) {
    long num = rng.uniform(-999, 999);
    long den = rng.uniform(1, 60);
    mpq_class x(num, den);
    x.canonicalize();
    return x;
}

PhasePolynomial random_poly(Splitmix64& rng, const PrimeContext& ctx, long degree_max) {
    long d = rng.uniform(0, degree_max);
    std::vector<mpq_class> c(static_cast<std::size_t>(d) + 1);
    for (auto& q : c)
        q = random_rational(rng);
    return PhasePolynomial::from_rationals(ctx, c);
}

} // namespace

TEST_SUITE("polynomial") {

    TEST_CASE("degree ignores trailing zeros") {
        PrimeContext p3(3);
        PhasePolynomial f = PhasePolynomial::from_rationals(p3, {mpq_class(1), mpq_class(0), mpq_class(0)});
        CHECK(f.size() == 3);
        CHECK(f.degree() == std::optional<std::size_t>{0});
        PhasePolynomial z = PhasePolynomial::from_rationals(p3, {mpq_class(0)});
        CHECK(!z.degree().has_value());
        CHECK(f.same_values(PhasePolynomial::from_rationals(p3, {mpq_class(1)})));
    }

    TEST_CASE("taylor shift of x^2 at 1") {
        PrimeContext p5(5);
        PhasePolynomial f = PhasePolynomial::from_rationals(p5, {mpq_class(0), mpq_class(0), mpq_class(1)});
        PhasePolynomial b = taylor_shift(f, Scalar(mpq_class(1), p5));
        REQUIRE(b.size() == 3);
        CHECK(b.coeff(0).value() == 1);
        CHECK(b.coeff(1).value() == 2);
        CHECK(b.coeff(2).value() == 1);
    }

    TEST_CASE("taylor shift agrees with evaluation") {
        Splitmix64 rng{21};
        PrimeContext p3(3);
        for (int i = 0; i < 60; ++i) {
            PhasePolynomial f = random_poly(rng, p3, 6);
            Scalar y(random_rational(rng), p3);
            PhasePolynomial b = taylor_shift(f, y);
            Scalar c(random_rational(rng), p3);
            // f(y + c) must equal sum_j b_j c^j
            CHECK(f.evaluate(y + c).value() == b.evaluate(c).value());
        }
    }

    TEST_CASE("argument scaling by p powers matches generic scaling") {
        Splitmix64 rng{22};
        PrimeContext p5(5);
        for (int i = 0; i < 40; ++i) {
            PhasePolynomial f = random_poly(rng, p5, 5);
            long e = rng.uniform(-3, 3);
            PhasePolynomial a = scale_argument_pow_p(f, e);
            PhasePolynomial b = scale_argument(f, Scalar(p5.pow_q(e), p5));
            CHECK(a.same_values(b));
            Scalar x(random_rational(rng), p5);
            CHECK(a.evaluate(x).value() == f.evaluate(x.mul_pow_p(e)).value());
        }
    }

    TEST_CASE("drop_constant zeroes exactly the constant term") {
        PrimeContext p2(2);
        PhasePolynomial f = PhasePolynomial::from_rationals(p2, {mpq_class(7, 3), mpq_class(1, 2)});
        PhasePolynomial g = drop_constant(f);
        CHECK(g.coeff(0).is_zero());
        CHECK(g.coeff(1).value() == mpq_class(1, 2));
    }

    TEST_CASE("dominance profile on pinned inputs") {
        PrimeContext p3(3), p2(2), p5(5);
        DominanceProfile a =
            dominance_profile(PhasePolynomial::from_rationals(p3, {mpq_class(0), mpq_class(1, 3), mpq_class(1, 9)}));
        CHECK(a.m == std::optional<long>{2});
        CHECK(a.r == std::optional<long>{2});
        CHECK(a.lambda_exp == std::optional<long>{2});

        DominanceProfile b =
            dominance_profile(PhasePolynomial::from_rationals(p2, {mpq_class(0), mpq_class(0), mpq_class(1, 2)}));
        CHECK(b.m == std::optional<long>{2});
        CHECK(b.r == std::optional<long>{0});
        CHECK(b.lambda_exp == std::optional<long>{1});

        DominanceProfile c = dominance_profile(PhasePolynomial::from_rationals(p5, {mpq_class(1)}));
        CHECK(!c.m.has_value());
        CHECK(!c.r.has_value());
        CHECK(!c.lambda_exp.has_value());
    }

    TEST_CASE("dominance ties go to the larger index") {
        PrimeContext p3(3);
        // |1 * 1/3| = |2 * 1/6| = 3
        DominanceProfile prof =
            dominance_profile(PhasePolynomial::from_rationals(p3, {mpq_class(0), mpq_class(1, 3), mpq_class(1, 6)}));
        CHECK(prof.m == std::optional<long>{2});
        CHECK(prof.r == std::optional<long>{1});
    }

    TEST_CASE("the dominant index maximizes |j a_j|") {
        Splitmix64 rng{23};
        for (long p : {2L, 3L, 7L}) {
            PrimeContext ctx(p);
            for (int i = 0; i < 80; ++i) {
                PhasePolynomial f = random_poly(rng, ctx, 6);
                DominanceProfile prof = dominance_profile(f);
                if (!prof.m)
                    continue;
                Scalar ma = f.coeff(static_cast<std::size_t>(*prof.m)).mul_int(mpz_class(*prof.m));
                CHECK(*ma.norm_exp() == *prof.r);
                for (std::size_t j = 1; j < f.size(); ++j) {
                    if (f.coeff(j).is_zero())
                        continue;
                    Scalar ja = f.coeff(j).mul_int(mpz_class(static_cast<long>(j)));
                    long ne = *ja.norm_exp();
                    CHECK(ne <= *prof.r);
                    if (static_cast<long>(j) > *prof.m)
                        CHECK(ne < *prof.r); // ties must have resolved upward
                }
            }
        }
    }

    TEST_CASE("balls compare as sets") {
        PrimeContext p3(3);
        Ball unit = Ball::unit(p3);
        CHECK(unit.is_unit());
        CHECK(unit.measure_exp() == 0);
        // |0 - 1| = 1 <= 1, so the unit ball centered at 1 is the same set
        CHECK(unit == Ball{Scalar(mpq_class(1), p3), 0});
        CHECK(!(unit == Ball{Scalar(mpq_class(1, 3), p3), 0}));
        CHECK(!(unit == Ball{Scalar::zero(p3), -1}));
        CHECK(Ball{Scalar(mpq_class(1, 3), p3), 1} == Ball{Scalar(mpq_class(4, 3), p3), 1});
    }
}
