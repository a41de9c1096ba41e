#include "strandwalk/hseries.hpp"

#include "support/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <vector>

using namespace strandwalk;

namespace {

// Independent oracle: long division of rational coefficient arrays,
// computing num/den as a power series to `order` terms.
std::vector<Rational> longdiv_oracle(std::vector<Rational> num, std::vector<Rational> den, std::size_t order) {
    num.resize(order);
    den.resize(order);
    std::vector<Rational> q(order);
    for (std::size_t k = 0; k < order; ++k) {
        q[k] = num[k] / den[0];
        for (std::size_t j = 0; k + j < order; ++j) num[k + j] -= q[k] * den[j];
    }
    return q;
}

HSeries series(std::vector<long> ints) {
    std::vector<Rational> c(ints.size());
    for (std::size_t i = 0; i < ints.size(); ++i) c[i] = ints[i];
    return HSeries::from_coeffs(c);
}

}  // namespace

TEST_CASE("expansion of tbar") {
    CHECK(expand_h(RatFun::tbar(), 4) == series({1, 1, 1, 1}));
}

TEST_CASE("expansion of 1 - tbar") {
    CHECK(expand_h(RatFun::one() - RatFun::tbar(), 3) == series({0, -1, -1}));
}

TEST_CASE("expansion of the loop-closure value against the long-division oracle") {
    // 1/(2 - t) = 1/(1 + h): oracle divides 1 by (1 + h).
    std::vector<Rational> expected = longdiv_oracle({Rational(1)}, {Rational(1), Rational(1)}, 3);
    RatFun f(LaurentPoly::one(), LaurentPoly(Int(2)) - LaurentPoly::t());
    CHECK(expand_h(f, 3).coeffs() == expected);
    CHECK(expand_h(f, 3) == series({1, -1, 1}));
}

TEST_CASE("expansion rejects poles at t = 1") {
    RatFun pole(LaurentPoly::one(), LaurentPoly::one() - LaurentPoly::t());
    CHECK_THROWS_AS(expand_h(pole, 3), std::domain_error);
}

TEST_CASE("expansion matches the oracle on random functions") {
    testsupport::Rng rng(1213);
    for (int i = 0; i < 60; ++i) {
        RatFun f = testsupport::random_ratfun_regular_at_one(rng);
        HSeries s = expand_h(f, 6);
        // Recompose the numerator/denominator in h by evaluating at h = 1 - t
        // via the series arithmetic itself is circular; instead divide the
        // h-composed coefficient arrays with the independent long division.
        LaurentPoly n = f.num(), d = f.den();
        int a = n.is_zero() ? 0 : n.min_exp();
        if (a < 0) {
            n = n.shifted(-a);
            d = d.shifted(-a);
        }
        auto compose = [](const LaurentPoly& p, std::size_t order) {
            std::vector<Rational> acc(order);
            if (p.is_zero()) return acc;
            for (int e = p.max_exp(); e >= 0; --e) {
                std::vector<Rational> next(order);
                for (std::size_t k = 0; k < order; ++k) {
                    next[k] = acc[k] - (k ? acc[k - 1] : Rational(0));
                }
                next[0] += Rational(p.coeff(e));
                acc = next;
            }
            return acc;
        };
        auto expected = longdiv_oracle(compose(n, 6), compose(d, 6), 6);
        CHECK(s.coeffs() == expected);
    }
}

TEST_CASE("series sum telescopes the geometric closure") {
    testsupport::Rng rng(333);
    for (int i = 0; i < 30; ++i) {
        RatFun r = testsupport::random_loop_weight(rng);
        const std::size_t order = 5;
        HSeries star = expand_h(kleene_star(r), order);
        HSeries rk = HSeries::constant(Rational(1), order);
        HSeries sum(order);
        HSeries rs = expand_h(r, order);
        for (std::size_t k = 0; k <= order; ++k) {
            sum += rk;
            rk *= rs;
        }
        CHECK(star == sum);
    }
}

TEST_CASE("truncation error scales like h^K") {
    testsupport::Rng rng(777);
    for (std::size_t K : {std::size_t{4}, std::size_t{8}}) {
        for (int i = 0; i < 25; ++i) {
            RatFun f = testsupport::random_ratfun_regular_at_one(rng);
            HSeries s = expand_h(f, K);
            Rational delta(1, 16);
            auto err_at = [&](const Rational& d) {
                Rational t0 = 1 - d;
                if (!f.regular_at(t0)) return Rational(-1);
                Rational e = f.eval(t0) - s.eval(d);
                return e < 0 ? -e : e;
            };
            Rational e1 = err_at(delta), e2 = err_at(delta / 2);
            if (e1 < 0 || e2 < 0) continue;
            // Remainder is h^K * g(h) with g regular; halving h divides the
            // bound by 2^K up to the variation of g. Allow a factor of 4.
            Rational scale = 1;
            for (std::size_t k = 0; k < K; ++k) scale *= 2;
            CHECK(e2 * scale <= (e1 == 0 ? Rational(1) : e1 * 4));
        }
    }
}

TEST_CASE("series arithmetic and rendering") {
    HSeries a = series({1, -1, 0});
    HSeries b = series({0, 1, 0});
    CHECK((a * b) == series({0, 1, -1}));
    CHECK((a + b) == series({1, 0, 0}));
    CHECK(a.to_string() == "1 - h");
    CHECK(series({0, 0, 3}).to_string() == "3*h^2");
    CHECK(HSeries(4).to_string() == "0");
    CHECK(series({0, 1, 2}).valuation() == 1);
    CHECK(HSeries(2).valuation() == 2);
    CHECK_THROWS_AS(HSeries(3) + HSeries(4), std::logic_error);
}
