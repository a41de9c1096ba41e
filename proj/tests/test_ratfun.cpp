#include "strandwalk/ratfun.hpp"

#include "support/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace strandwalk;

namespace {
RatFun t() { return RatFun::t(); }
RatFun tbar() { return RatFun::tbar(); }
RatFun one() { return RatFun::one(); }
}  // namespace

TEST_CASE("walk-state identities") {
    // tbar + (1 - tbar) = 1
    CHECK(tbar() + (one() - tbar()) == one());
    // (1 - tbar) + tbar (1 - t) = 0: a cancelling pair contributes nothing
    CHECK((one() - tbar()) + tbar() * (one() - t()) == RatFun::zero());
    // (1 - tbar) + tbar (1 - t)^2 = t - 1: the triangle-slide side weight
    RatFun lhs = (one() - tbar()) + tbar() * (one() - t()) * (one() - t());
    CHECK(lhs == t() - one());
}

TEST_CASE("division by zero is rejected") {
    CHECK_THROWS_AS(one() / RatFun::zero(), std::domain_error);
    CHECK_THROWS_AS(RatFun(LaurentPoly::one(), LaurentPoly()), std::domain_error);
}

TEST_CASE("canonical form makes equality structural") {
    // (t^2 - 1)/(t - 1) reduces to t + 1
    RatFun f(LaurentPoly::t() * LaurentPoly::t() - LaurentPoly::one(), LaurentPoly::t() - LaurentPoly::one());
    CHECK(f == t() + one());
    // denominator sign convention: lowest-degree coefficient positive
    RatFun g(LaurentPoly::one(), LaurentPoly(Int(-2)) + LaurentPoly::t());
    CHECK(g.den().coeff(0) > 0);
    CHECK(g.num() == LaurentPoly(Int(-1)));
    // t^{-1} powers live in the numerator
    CHECK(tbar().den().is_one());
    CHECK((one() / t()) == tbar());
}

TEST_CASE("field axioms on random triples") {
    testsupport::Rng rng(431);
    for (int i = 0; i < 80; ++i) {
        RatFun a = testsupport::random_ratfun(rng);
        RatFun b = testsupport::random_ratfun(rng);
        RatFun c = testsupport::random_ratfun(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == RatFun::zero());
        if (!a.is_zero()) CHECK(a / a == one());
    }
}

TEST_CASE("a*b/b returns a structurally") {
    testsupport::Rng rng(929);
    for (int i = 0; i < 100; ++i) {
        RatFun a = testsupport::random_ratfun(rng);
        RatFun b = testsupport::random_ratfun(rng);
        if (b.is_zero()) continue;
        CHECK(a * b / b == a);
    }
}

TEST_CASE("kleene_star closed forms") {
    // loop weight t(1 - tbar) sums to 1/(2 - t)
    RatFun loop = t() * (one() - tbar());
    RatFun star = kleene_star(loop);
    CHECK(star == RatFun(LaurentPoly::one(), LaurentPoly(Int(2)) - LaurentPoly::t()));
    // sum of (1 - tbar)^k is t
    CHECK(kleene_star(one() - tbar()) == t());
    // empty loop set
    CHECK(kleene_star(RatFun::zero()) == one());
}

TEST_CASE("kleene_star requires vanishing at t = 1") {
    CHECK_THROWS_AS(kleene_star(t()), std::domain_error);
    CHECK_THROWS_AS(kleene_star(one()), std::domain_error);
    // pole at t = 1 is also rejected
    RatFun pole(LaurentPoly::one(), LaurentPoly::one() - LaurentPoly::t());
    CHECK_THROWS_AS(kleene_star(pole), std::domain_error);
}

TEST_CASE("exact evaluation") {
    RatFun f(LaurentPoly::one(), LaurentPoly(Int(2)) - LaurentPoly::t());
    CHECK(f.eval(Rational(1)) == Rational(1));
    CHECK(f.eval(Rational(1, 2)) == Rational(2, 3));
    RatFun loop = t() * (one() - tbar());
    CHECK(loop.eval(Rational(1)) == Rational(0));
    RatFun pole(LaurentPoly::one(), LaurentPoly(Int(2)) - LaurentPoly::t());
    CHECK_THROWS_AS(pole.eval(Rational(2)), std::domain_error);
    CHECK_THROWS_AS(tbar().eval(Rational(0)), std::domain_error);
}

TEST_CASE("double evaluation tracks the exact value") {
    testsupport::Rng rng(5150);
    for (int i = 0; i < 40; ++i) {
        RatFun f = testsupport::random_ratfun(rng);
        Rational t0(3, 7);
        if (!f.regular_at(t0)) continue;
        double exact = to_double(f.eval(t0));
        CHECK(f.eval_double(3.0 / 7.0) == Catch::Approx(exact).margin(1e-9));
    }
}

TEST_CASE("substitution t -> 1/t is an involution and matches evaluation") {
    testsupport::Rng rng(86);
    for (int i = 0; i < 60; ++i) {
        RatFun f = testsupport::random_ratfun(rng);
        CHECK(f.subst_tbar().subst_tbar() == f);
        Rational t0(2, 5);
        if (f.regular_at(Rational(5, 2)))
            CHECK(f.subst_tbar().eval(t0) == f.eval(Rational(5, 2)));
    }
}

TEST_CASE("text rendering") {
    RatFun f(LaurentPoly::one(), LaurentPoly(Int(2)) - LaurentPoly::t());
    CHECK(f.to_string() == "(1)/(2 - t)");
    CHECK(one().to_string() == "1");
    CHECK(RatFun::zero().to_string() == "0");
    CHECK((one() - t()).to_string() == "1 - t");
    CHECK(tbar().to_string() == "t^-1");
}
