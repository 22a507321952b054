#include "partlab/interval.hpp"

#include <doctest.h>

#include <cmath>

#include "partlab/errors.hpp"

using namespace partlab;

namespace {

// Enclosure check against a near-point reference interval at high precision.
bool contains(const Interval& iv, const Rational& value) {
    const Interval point = Interval::of_rational(value, 512);
    return !iv.certainly_greater(point) && !iv.certainly_less(point);
}

Rational frac(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

} // namespace

TEST_CASE("exact constructors are points, inexact ones are thin") {
    const Interval five = Interval::of_ulong(5);
    CHECK(five.lo_double() == 5.0);
    CHECK(five.hi_double() == 5.0);
    CHECK(Interval::of_double(0.1).width() == 0.0);  // 0.1 the double, exactly

    const Interval third = Interval::of_rational(frac(1, 3));
    CHECK(third.lo_double() < third.hi_double());
    CHECK(third.width() <= std::ldexp(1.0, -90));
    CHECK(contains(third, frac(1, 3)));
}

TEST_CASE("field arithmetic encloses the exact rational results") {
    const Rational values[] = {frac(1, 3), frac(-7, 5), frac(22, 7), frac(-1, 1000), frac(9, 2)};
    for (const Rational& a : values) {
        for (const Rational& b : values) {
            const Interval ia = Interval::of_rational(a);
            const Interval ib = Interval::of_rational(b);
            CHECK(contains(ia + ib, a + b));
            CHECK(contains(ia - ib, a - b));
            CHECK(contains(ia * ib, a * b));
            if (b > 0) CHECK(contains(ia / ib, a / b));
            CHECK(contains(-ia, -a));
        }
    }
}

TEST_CASE("division requires a positive divisor") {
    const Interval one = Interval::of_ulong(1);
    CHECK_THROWS_AS(one / Interval::of_double(-2.0), DomainError);
    CHECK_THROWS_AS(one / Interval::of_ulong(0), DomainError);
    // A divisor interval straddling zero is rejected too.
    const Interval straddle = Interval::of_rational(frac(1, 3)) * Interval::of_ulong(3) -
                              Interval::of_ulong(1);
    CHECK_THROWS_AS(one / straddle, DomainError);
}

TEST_CASE("sqrt, log2, ln, exp2") {
    const Interval two = Interval::of_ulong(4).sqrt();
    CHECK(two.lo_double() == 2.0);
    CHECK(two.hi_double() == 2.0);

    for (unsigned k = 0; k <= 60; k += 7) {
        const Interval exact = Interval::of_int(Int(1) << k).log2();
        CHECK(exact.lo_double() == static_cast<double>(k));
        CHECK(exact.hi_double() == static_cast<double>(k));
    }

    CHECK(Interval::of_ulong(1).ln().lo_double() == 0.0);
    CHECK(Interval::of_ulong(1).ln().hi_double() == 0.0);

    // exp2(log2(q)) must still enclose q.
    const Rational q = frac(355, 113);
    CHECK(contains(Interval::of_rational(q).log2().exp2(), q));

    CHECK_THROWS_AS(Interval::of_double(-1.0).sqrt(), DomainError);
    CHECK_THROWS_AS(Interval::of_double(0.0).log2(), DomainError);
    CHECK_THROWS_AS(Interval::of_double(-1.0).ln(), DomainError);
}

TEST_CASE("certainty comparisons") {
    const Interval small = Interval::of_rational(frac(1, 3));
    const Interval large = Interval::of_rational(frac(2, 3));
    CHECK(small.certainly_less(large));
    CHECK(small.certainly_leq(large));
    CHECK(large.certainly_greater(small));
    CHECK(large.certainly_geq(small));
    CHECK_FALSE(small.certainly_greater(large));

    // Two enclosures of the same value can certify nothing strict.
    const Interval again = Interval::of_rational(frac(1, 3));
    CHECK_FALSE(small.certainly_less(again));
    CHECK_FALSE(small.certainly_greater(again));

    const Interval point = Interval::of_ulong(2);
    CHECK(point.certainly_leq(point));  // closed comparison on a point
    CHECK(point.certainly_geq(point));
}

TEST_CASE("constants and precision growth") {
    const Interval pi96 = Interval::pi(96);
    const Interval pi384 = Interval::pi(384);
    CHECK(pi96.width() > pi384.width());
    CHECK(pi96.lo_double() <= 3.14159265358979324);
    CHECK(pi96.hi_double() >= 3.14159265358979311);

    const Interval ln2 = Interval::log_of_2();
    CHECK(ln2.lo_double() <= 0.69314718055994531);
    CHECK(ln2.hi_double() >= 0.69314718055994530);
}

TEST_CASE("copies and moves preserve endpoints") {
    Interval a = Interval::of_rational(frac(1, 3), 192);
    Interval b = a;
    CHECK(b.precision() == 192);
    CHECK(b.lo_double() == a.lo_double());
    Interval c = std::move(b);
    CHECK(c.hi_double() == a.hi_double());
    c = a;
    CHECK(c.lo_double() == a.lo_double());
}
