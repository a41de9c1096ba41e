#include "strandwalk/finitetype.hpp"

#include "strandwalk/moves.hpp"
#include "support/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

using namespace strandwalk;

TEST_CASE("all-positive resolution returns the base diagram") {
    StringLinkDiagram d = parse_braid("s1 s2 s1", 3);
    SingularStringLink s = make_singular(d, {0, 2});
    CHECK(resolve(s, {{0, +1}, {2, +1}}) == d);
}

TEST_CASE("negative resolution swaps roles and flips the sign") {
    SingularStringLink s = make_singular(parse_braid("s1", 2), {0});
    CHECK(resolve(s, {{0, -1}}) == parse_braid("s1^-1", 2));
}

TEST_CASE("two double points give four distinct resolutions") {
    SingularStringLink s = make_singular(parse_braid("s1 s1", 2), {0, 1});
    std::set<std::uint64_t> seen;
    for (int a : {+1, -1})
        for (int b : {+1, -1}) seen.insert(resolve(s, {{0, a}, {1, b}}).content_hash());
    CHECK(seen.size() == 4);
}

TEST_CASE("resolution choice maps are checked") {
    SingularStringLink s = make_singular(parse_braid("s1 s1", 2), {0});
    CHECK_THROWS_AS(resolve(s, {}), std::domain_error);
    CHECK_THROWS_AS(resolve(s, {{0, +1}, {1, -1}}), std::domain_error);
    CHECK_THROWS_AS(resolve(s, {{0, 2}}), std::domain_error);
}

TEST_CASE("vassiliev value of the marked generator is the block difference") {
    SingularStringLink s = make_singular(parse_braid("s1", 2), {0});
    VassilievValue v = vassiliev_value(s);
    REQUIRE(v.exact.has_value());
    BurauMatrix expected = classical_burau("s1", 2) - classical_burau("s1^-1", 2);
    CHECK(*v.exact == expected);
    CHECK(v.double_point_count == 1);
}

TEST_CASE("vassiliev value with no double points is the plain matrix") {
    StringLinkDiagram d = parse_braid("s1 s2", 3);
    VassilievValue v = vassiliev_value(make_singular(d, {}));
    CHECK(*v.exact == burau_matrix(d));
}

TEST_CASE("one double point vanishes at t = 1") {
    testsupport::Rng rng(555);
    for (int i = 0; i < 10; ++i) {
        int n = testsupport::uniform_int(rng, 2, 3);
        StringLinkDiagram d = testsupport::random_diagram(rng, n, testsupport::uniform_int(rng, 1, 5), 1, 8);
        if (d.crossing_count() == 0) continue;
        SingularStringLink s = make_singular(d, {testsupport::uniform_int(rng, 0, d.crossing_count() - 1)});
        VassilievValue v = vassiliev_value(s);
        for (std::size_t r = 0; r < v.exact->rows(); ++r)
            for (std::size_t c = 0; c < v.exact->cols(); ++c)
                CHECK(v.exact->at(r, c).eval(Rational(1)) == 0);
    }
}

TEST_CASE("skein bilinearity: marking one more crossing takes a difference") {
    testsupport::Rng rng(556);
    for (int i = 0; i < 8; ++i) {
        StringLinkDiagram d = testsupport::random_diagram(rng, 2, testsupport::uniform_int(rng, 2, 5), 0, 8);
        if (d.crossing_count() < 2) continue;
        SingularStringLink more = make_singular(d, {0, 1});
        SingularStringLink plus = make_singular(resolve(make_singular(d, {0}), {{0, +1}}), {1});
        SingularStringLink minus = make_singular(resolve(make_singular(d, {0}), {{0, -1}}), {1});
        Matrix<RatFun> lhs = *vassiliev_value(more).exact;
        Matrix<RatFun> rhs = *vassiliev_value(plus).exact - *vassiliev_value(minus).exact;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("b0 of a plain diagram is the permutation matrix") {
    testsupport::Rng rng(557);
    for (int i = 0; i < 10; ++i) {
        int n = testsupport::uniform_int(rng, 1, 4);
        StringLinkDiagram d = testsupport::random_gauss_diagram(rng, n, testsupport::uniform_int(rng, 0, 5));
        Matrix<Rational> b0 = bk_coefficient(d, 0);
        auto pi = d.permutation();
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) CHECK(b0.at(r, c) == (c + 1 == pi[r] ? 1 : 0));
    }
}

TEST_CASE("b1 of the generator") {
    Matrix<Rational> b1 = bk_coefficient(parse_braid("s1", 2), 1);
    CHECK(b1.at(0, 0) == 1);
    CHECK(b1.at(0, 1) == -1);
    CHECK(b1.at(1, 0) == 0);
    CHECK(b1.at(1, 1) == 0);
}

TEST_CASE("bk vanishes below the double point count") {
    testsupport::Rng rng(558);
    for (int dp = 1; dp <= 3; ++dp) {
        for (int i = 0; i < 6; ++i) {
            int n = testsupport::uniform_int(rng, 2, 3);
            StringLinkDiagram d =
                testsupport::random_diagram(rng, n, testsupport::uniform_int(rng, dp, dp + 3), 1, 9);
            if (d.crossing_count() < dp) continue;
            std::set<int> marks;
            while (static_cast<int>(marks.size()) < dp)
                marks.insert(testsupport::uniform_int(rng, 0, d.crossing_count() - 1));
            SingularStringLink s = make_singular(d, marks);
            for (int k = 0; k < dp; ++k) {
                Matrix<Rational> bk = bk_coefficient(s, k);
                for (std::size_t r = 0; r < bk.rows(); ++r)
                    for (std::size_t c = 0; c < bk.cols(); ++c) CHECK(bk.at(r, c) == 0);
            }
        }
    }
}

TEST_CASE("series and exact vassiliev values agree") {
    testsupport::Rng rng(559);
    for (int i = 0; i < 6; ++i) {
        StringLinkDiagram d = testsupport::random_diagram(rng, 2, 3, 1, 8);
        if (d.crossing_count() < 2) continue;
        SingularStringLink s = make_singular(d, {0, d.crossing_count() - 1});
        VassilievValue series = vassiliev_value_series(s, 4);
        VassilievValue exact = vassiliev_value(s);
        TruncatedSeriesMatrix expanded = exact.exact->map([](const RatFun& f) { return expand_h(f, 5); });
        CHECK(*series.series == expanded);
    }
}
