#include <doctest.h>

#include <cmath>

#include "padic/campaign.hpp"
#include "padic/cyclotomic.hpp"
#include "padic/serialize.hpp"

using namespace padic;

namespace {

CyclotomicValue root(long num, long denom_exp, const PrimeContext& ctx) {
    return CyclotomicValue::from_angle(mpq_class(num, ctx.pow(static_cast<unsigned long>(denom_exp))),
                                       ctx);
}

CyclotomicValue random_value(Splitmix64& rng, const PrimeContext& ctx, long max_order) {
    CyclotomicSum sum(ctx);
    long nroots = rng.uniform(1, 20);
    for (long i = 0; i < nroots; ++i) {
        long k = rng.uniform(0, max_order);
        long pk = pow_long_checked(ctx.p(), k);
        sum.add_root_exponent(k, rng.uniform(0, pk - 1), rng.uniform(-3, 3));
    }
    return sum.finish(rng.uniform(-2, 2));
}

CyclotomicValue gauss_sum(const PrimeContext& ctx) {
    CyclotomicSum sum(ctx);
    for (long x = 0; x < ctx.p(); ++x)
        sum.add_root_exponent(1, (x * x) % ctx.p());
    return sum.finish(0);
}

} // namespace

TEST_SUITE("cyclotomic") {

    TEST_CASE("full root sums cancel") {
        PrimeContext p3(3), p5(5);
        CyclotomicSum s3(p3);
        for (long i = 0; i < 3; ++i)
            s3.add_root_exponent(1, i);
        CHECK(s3.finish(0).is_zero());

        CyclotomicValue acc = CyclotomicValue::zero(p5);
        for (long i = 0; i < 5; ++i)
            acc = add(acc, root(i, 1, p5));
        CHECK(acc.is_zero());
    }

    TEST_CASE("small roots are the expected rationals") {
        PrimeContext p2(2), p3(3);
        CHECK(root(1, 1, p2).as_rational() == std::optional<mpq_class>{mpq_class(-1)});
        CHECK(CyclotomicValue::one(p3).as_rational() == std::optional<mpq_class>{mpq_class(1)});
        CHECK(CyclotomicValue::zero(p3).as_rational() == std::optional<mpq_class>{mpq_class(0)});
        CHECK(!root(1, 2, p2).as_rational().has_value()); // i is not rational
        CHECK(add(CyclotomicValue::one(p2), root(1, 1, p2)).is_zero()); // 1 + (-1)
    }

    TEST_CASE("from_angle validates the denominator") {
        PrimeContext p2(2);
        CHECK_THROWS_AS(CyclotomicValue::from_angle(mpq_class(1, 3), p2), std::invalid_argument);
    }

    TEST_CASE("i times -i is one") {
        PrimeContext p2(2);
        CyclotomicValue i = root(1, 2, p2);
        CHECK(i.order_exp() == 2);
        CHECK(mul(i, i.conjugate()) == CyclotomicValue::one(p2));
        CHECK(mul(i, i).as_rational() == std::optional<mpq_class>{mpq_class(-1)});
    }

    TEST_CASE("order demotion: a cube root written at order nine") {
        PrimeContext p3(3);
        CyclotomicSum sum(p3);
        sum.add_root_exponent(2, 3); // zeta_9^3 = zeta_3
        CyclotomicValue v = sum.finish(0);
        CHECK(v.order_exp() == 1);
        CHECK(v == root(1, 1, p3));
    }

    TEST_CASE("p-power content folds into the scale") {
        PrimeContext p5(5);
        CyclotomicSum sum(p5);
        sum.add_root_exponent(1, 1, 5);
        sum.add_root_exponent(1, 2, 10);
        CyclotomicValue v = sum.finish(0); // 5 zeta + 10 zeta^2 = 5 (zeta + 2 zeta^2)
        CHECK(v.scale_exp() == 1);
        REQUIRE(v.terms().size() == 2);
        CHECK(v.terms().at(1) == 1);
        CHECK(v.terms().at(2) == 2);
    }

    TEST_CASE("rotation is exact and wraps") {
        PrimeContext p5(5);
        Angle two_fifths(mpq_class(2, 5), p5);
        CHECK(root(1, 1, p5).rotate(two_fifths) == root(3, 1, p5));
        CHECK(root(4, 1, p5).rotate(two_fifths) == root(1, 1, p5));
        CHECK(root(1, 2, p5).rotate(two_fifths) == root(11, 2, p5));
    }

    TEST_CASE("rescale shifts the p-power scale") {
        PrimeContext p3(3);
        CHECK(CyclotomicValue::one(p3).rescale(2).as_rational() ==
              std::optional<mpq_class>{mpq_class(9)});
        CHECK(CyclotomicValue::one(p3).rescale(-1).as_rational() ==
              std::optional<mpq_class>{mpq_class(1, 3)});
        CHECK(CyclotomicValue::zero(p3).rescale(5).is_zero());
    }

    TEST_CASE("ring laws hold exactly on random values") {
        Splitmix64 rng{31};
        for (long p : {2L, 3L, 5L}) {
            PrimeContext ctx(p);
            for (int i = 0; i < 40; ++i) {
                CyclotomicValue a = random_value(rng, ctx, 2);
                CyclotomicValue b = random_value(rng, ctx, 2);
                CyclotomicValue c = random_value(rng, ctx, 2);
                CHECK(add(a, b) == add(b, a));
                CHECK(add(add(a, b), c) == add(a, add(b, c)));
                CHECK(mul(a, b) == mul(b, a));
                CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
                CHECK(add(a, a.negate()).is_zero());
                CHECK(sub(a, a).is_zero());
                CHECK(mul(a, CyclotomicValue::one(ctx)) == a);
                CHECK(a.conjugate().conjugate() == a);
            }
        }
    }

    TEST_CASE("rational values multiply as rationals") {
        Splitmix64 rng{32};
        PrimeContext p3(3);
        auto as_value = [&](const mpq_class& q) {
            CyclotomicSum s(p3);
            s.add_root_exponent(0, 0, q.get_num().get_si());
            long den_exp = q.get_den() == 9 ? 2 : (q.get_den() == 3 ? 1 : 0);
            return s.finish(-den_exp);
        };
        for (int i = 0; i < 50; ++i) {
            mpq_class qa(rng.uniform(-50, 50), 9);
            mpq_class qb(rng.uniform(-50, 50), 3);
            qa.canonicalize();
            qb.canonicalize();
            CyclotomicValue va = as_value(qa), vb = as_value(qb);
            CHECK(va.as_rational() == std::optional<mpq_class>{qa});
            CHECK(mul(va, vb).as_rational() == std::optional<mpq_class>{qa * qb});
        }
    }

    TEST_CASE("Gauss sums have squared magnitude p") {
        for (long p : {3L, 5L, 7L, 13L}) {
            PrimeContext ctx(p);
            CyclotomicValue g = gauss_sum(ctx);
            CHECK(mul(g, g.conjugate()).as_rational() == std::optional<mpq_class>{mpq_class(p)});
        }
    }

    TEST_CASE("equal values assembled differently compare equal") {
        PrimeContext p3(3);
        CHECK(mul(root(1, 2, p3), root(8, 2, p3)) == CyclotomicValue::one(p3));
        CHECK(root(1, 2, p3).rotate(Angle(mpq_class(8, 9), p3)) == CyclotomicValue::one(p3));
        // zeta_3 + zeta_3^2 = -1 in the reduced basis
        CHECK(add(root(1, 1, p3), root(2, 1, p3)).as_rational() ==
              std::optional<mpq_class>{mpq_class(-1)});
    }

    TEST_CASE("order guard refuses overflowing exponents") {
        PrimeContext p3(3);
        CyclotomicSum sum(p3);
        CHECK_THROWS_AS(sum.add_root_exponent(40, 1), std::overflow_error);
    }

    TEST_CASE("magnitude of one and zero") {
        PrimeContext p2(2);
        Enclosure one = magnitude(CyclotomicValue::one(p2), 128);
        CHECK(one.contains(BigFloat::from_long(1, 64)));
        CHECK(one.width().to_double() < 1e-15);
        Enclosure zero = magnitude(CyclotomicValue::zero(p2), 256);
        CHECK(zero.lo.sign() == 0);
        CHECK(zero.hi.sign() == 0);
    }

    TEST_CASE("magnitude of the normalized Gauss sum") {
        PrimeContext p5(5);
        Enclosure e = magnitude(gauss_sum(p5).rescale(-1), 128);
        CHECK(std::abs(e.midpoint().to_double() - 0.4472135954999579) < 1e-12);
        CHECK(e.width().to_double() < 1e-15);
    }

    TEST_CASE("magnitude enclosures are sound and tight") {
        Splitmix64 rng{33};
        for (long p : {2L, 3L, 5L}) {
            PrimeContext ctx(p);
            for (int i = 0; i < 3334; ++i) {
                CyclotomicValue v = random_value(rng, ctx, p == 2 ? 3 : 2);
                Enclosure coarse = magnitude(v, 128);
                Enclosure fine = magnitude(v, 256);
                CHECK(coarse.contains(fine.midpoint()));
                CHECK(coarse.lo.sign() >= 0);
                // documented width bound: p^s * T * 2^{-120}
                double T = 0;
                for (const auto& [e, c] : v.terms())
                    T += std::abs(c.get_d());
                double bound = std::pow(static_cast<double>(p), static_cast<double>(v.scale_exp())) *
                               T * std::pow(2.0, -120);
                CHECK(coarse.width().to_double() <= bound + 1e-300);
            }
        }
    }

    TEST_CASE("JSON round trip is lossless") {
        Splitmix64 rng{34};
        PrimeContext p3(3), p2(2);
        CHECK(value_from_json(value_to_json(CyclotomicValue::zero(p3))) ==
              CyclotomicValue::zero(p3));
        CHECK(value_from_json(value_to_json(CyclotomicValue::one(p2))) ==
              CyclotomicValue::one(p2));
        for (int i = 0; i < 100; ++i) {
            CyclotomicValue v = random_value(rng, p3, 3);
            CHECK(value_from_json(value_to_json(v)) == v);
        }
    }

    TEST_CASE("bad JSON is rejected") {
        nlohmann::json j{{"p", 6}, {"order_exp", 0}, {"scale_exp", 0},
                         {"terms", nlohmann::json::array()}};
        CHECK_THROWS_AS(value_from_json(j), std::invalid_argument);
        nlohmann::json k{{"p", 3}, {"order_exp", 1}, {"scale_exp", 0},
                         {"terms", nlohmann::json::array({nlohmann::json::array({7, "1"})})}};
        CHECK_THROWS_AS(value_from_json(k), std::invalid_argument);
    }
}
