#include <catch2/catch_amalgamated.hpp>

#include "mgl/kscalar.hpp"

using namespace mgl;

TEST_CASE("rational strings round-trip") {
    for (const char* s : {"0", "1", "-1", "3/4", "-7/12", "100003"}) {
        Rat r = rat_from_string(s);
        CHECK(rat_to_string(r) == s);
    }
    CHECK(rat_from_string("3/6") == Rat(1, 2));
    CHECK_THROWS_AS(rat_from_string("1/0"), Error);
    CHECK_THROWS_AS(rat_from_string("a"), Error);
}

TEST_CASE("scalar arithmetic in Q(t)") {
    FieldMode m = FieldMode::formal_tau();
    KScalar a = kscalar_from_string(m, "t+1");
    KScalar b = kscalar_from_string(m, "t-1");
    CHECK(kscalar_to_string(add(a, b)) == "2*t");
    CHECK(kscalar_to_string(inv(kscalar_from_string(m, "(t-1)/(t+1)"))) == "(t+1)/(t-1)");
    CHECK(mul(a, inv(a)).is_one());
    CHECK(kscalar_to_string(mul(a, b)) == "t^2-1");
}

TEST_CASE("scalar arithmetic modulo a minimal polynomial") {
    FieldMode m = FieldMode::algebraic_tau(poly_from_string("x^2-2"));
    KScalar t = KScalar::tau(m);
    CHECK(kscalar_to_string(mul(t, t)) == "2");
    // 1/t = t/2 in Q[x]/(x^2-2)
    CHECK(kscalar_to_string(inv(t)) == "1/2*t");
    CHECK(mul(t, inv(t)).is_one());
}

TEST_CASE("mode mismatch and division by zero are reported") {
    FieldMode q = FieldMode::rational();
    FieldMode f = FieldMode::formal_tau();
    KScalar a = KScalar::from_int(q, 2);
    KScalar b = KScalar::from_int(f, 2);
    CHECK_THROWS_AS(add(a, b), Error);
    CHECK_THROWS_AS(inv(KScalar::zero(q)), Error);
    try {
        inv(KScalar::zero(q));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DivisionByZero);
    }
}

TEST_CASE("canonical forms are idempotent") {
    FieldMode m = FieldMode::formal_tau();
    KScalar a = kscalar_from_string(m, "(2*t+2)/(4*t-4)");  // reduces to (t+1)/(2*t-2)
    KScalar again = KScalar::make(m, a.num(), a.den());
    CHECK(a == again);
    CHECK(a.den().leading() == 1);  // monic denominator
}

TEST_CASE("scalar strings round-trip in every mode") {
    FieldMode modes[] = {FieldMode::rational(), FieldMode::formal_tau(),
                         FieldMode::algebraic_tau(poly_from_string("x^3-2"))};
    const char* samples[] = {"0", "1", "-5/3", "2"};
    for (const auto& m : modes) {
        for (const char* s : samples) {
            KScalar v = kscalar_from_string(m, s);
            CHECK(kscalar_from_string(m, kscalar_to_string(v)) == v);
        }
    }
    FieldMode f = FieldMode::formal_tau();
    for (const char* s : {"t", "2*t+1", "(2*t+1)/(t-3)", "t^2-1/2*t+3", "-t"}) {
        KScalar v = kscalar_from_string(f, s);
        CHECK(kscalar_from_string(f, kscalar_to_string(v)) == v);
    }
}

TEST_CASE("scalar_arith dispatch") {
    FieldMode q = FieldMode::rational();
    KScalar two = KScalar::from_int(q, 2);
    KScalar three = KScalar::from_int(q, 3);
    CHECK(scalar_arith(ScalarOp::Add, two, three).rational_value() == 5);
    CHECK(scalar_arith(ScalarOp::Mul, two, three).rational_value() == 6);
    CHECK(scalar_arith(ScalarOp::Neg, two).rational_value() == -2);
    CHECK(scalar_arith(ScalarOp::Inv, two).rational_value() == Rat(1, 2));
}

TEST_CASE("irreducibility over Q via Kronecker") {
    CHECK(poly_is_irreducible_q(poly_from_string("x^2-2")));
    CHECK(poly_is_irreducible_q(poly_from_string("x^2+1")));
    CHECK(poly_is_irreducible_q(poly_from_string("x^3-2")));
    CHECK(poly_is_irreducible_q(poly_from_string("x^2+x+1")));
    CHECK_FALSE(poly_is_irreducible_q(poly_from_string("x^2-1")));
    CHECK_FALSE(poly_is_irreducible_q(poly_from_string("x^2-4")));
    CHECK_FALSE(poly_is_irreducible_q(poly_from_string("x^4+4")));  // (x^2-2x+2)(x^2+2x+2)
    CHECK_FALSE(poly_is_irreducible_q(poly_from_string("x^3+x")));
}

TEST_CASE("algebraic mode validates the minimal polynomial") {
    CHECK_THROWS_AS(FieldMode::algebraic_tau(poly_from_string("x^2-1")), Error);
    CHECK_THROWS_AS(FieldMode::algebraic_tau(poly_from_string("x-2")), Error);
    FieldMode m = FieldMode::algebraic_tau(poly_from_string("2*x^2-4"));  // normalized monic
    CHECK(m.minimal_polynomial() == poly_from_string("x^2-2"));
}

TEST_CASE("tau does not exist in RATIONAL mode") {
    CHECK_THROWS_AS(KScalar::tau(FieldMode::rational()), Error);
    CHECK_THROWS_AS(kscalar_from_string(FieldMode::rational(), "t+1"), Error);
}
