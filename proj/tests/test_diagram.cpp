#include "strandwalk/diagram.hpp"

#include "support/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace strandwalk;

TEST_CASE("parse_braid builds the generator diagram") {
    StringLinkDiagram d = parse_braid("s1", 2);
    REQUIRE(d.n() == 2);
    REQUIRE(d.crossing_count() == 1);
    CHECK(d.crossings()[0].sign == +1);
    // over strand runs from position 1 to position 2
    CHECK(d.strands()[0].source == 1);
    CHECK(d.strands()[0].sink == 2);
    REQUIRE(d.strands()[0].encounters.size() == 1);
    CHECK(d.strands()[0].encounters[0].role == Role::Over);
    CHECK(d.strands()[1].sink == 1);
    CHECK(d.strands()[1].encounters[0].role == Role::Under);
}

TEST_CASE("parse_braid inverse generator") {
    StringLinkDiagram d = parse_braid("s1^-1", 2);
    CHECK(d.crossings()[0].sign == -1);
    // the strand entering at position 2 is the over strand
    CHECK(d.strands()[1].encounters[0].role == Role::Over);
    CHECK(d.strands()[1].sink == 1);
    CHECK(d.strands()[0].encounters[0].role == Role::Under);
}

TEST_CASE("empty braid word gives parallel strands") {
    StringLinkDiagram d = parse_braid("", 3);
    CHECK(d == StringLinkDiagram::trivial(3));
    CHECK(d.permutation() == std::vector<int>{1, 2, 3});
}

TEST_CASE("parse_braid rejects malformed words") {
    CHECK_THROWS_AS(parse_braid("x1", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_braid("s", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_braid("s1^2", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_braid("s2", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_braid("s0", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_braid("s1", 0), std::domain_error);
}

TEST_CASE("compose stacks and multiplies permutations") {
    testsupport::Rng rng(42);
    for (int i = 0; i < 40; ++i) {
        int n = testsupport::uniform_int(rng, 2, 4);
        StringLinkDiagram a = testsupport::random_gauss_diagram(rng, n, 3);
        StringLinkDiagram b = testsupport::random_gauss_diagram(rng, n, 3);
        StringLinkDiagram ab = compose(a, b);
        auto pa = a.permutation(), pb = b.permutation(), pab = ab.permutation();
        for (int s = 0; s < n; ++s) CHECK(pab[s] == pb[pa[s] - 1]);
        CHECK(ab.crossing_count() == a.crossing_count() + b.crossing_count());
    }
}

TEST_CASE("compose is associative") {
    testsupport::Rng rng(43);
    for (int i = 0; i < 25; ++i) {
        int n = testsupport::uniform_int(rng, 2, 4);
        StringLinkDiagram a = testsupport::random_gauss_diagram(rng, n, 2);
        StringLinkDiagram b = testsupport::random_gauss_diagram(rng, n, 2);
        StringLinkDiagram c = testsupport::random_gauss_diagram(rng, n, 2);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
}

TEST_CASE("compose with the identity diagram") {
    StringLinkDiagram d = parse_braid("s1 s2^-1", 3);
    CHECK(compose(StringLinkDiagram::trivial(3), d) == d);
    CHECK(compose(d, StringLinkDiagram::trivial(3)) == d);
}

TEST_CASE("compose rejects mismatched strand counts") {
    CHECK_THROWS_AS(compose(StringLinkDiagram::trivial(2), StringLinkDiagram::trivial(3)), std::domain_error);
}

TEST_CASE("power is iterated composition") {
    StringLinkDiagram d = parse_braid("s1", 2);
    CHECK(power(d, 1) == d);
    CHECK(power(d, 2) == compose(d, d));
    CHECK(power(d, 3) == compose(d, power(d, 2)));
    CHECK_THROWS_AS(power(d, 0), std::domain_error);
}

TEST_CASE("mirror_vertical swaps positions and signs") {
    StringLinkDiagram m = mirror_vertical(parse_braid("s1", 2));
    CHECK(m == parse_braid("s1^-1", 2));
    CHECK(mirror_vertical(StringLinkDiagram::trivial(3)) == StringLinkDiagram::trivial(3));
}

TEST_CASE("mirror_vertical is an involution") {
    testsupport::Rng rng(44);
    for (int i = 0; i < 30; ++i) {
        StringLinkDiagram d = testsupport::random_gauss_diagram(rng, testsupport::uniform_int(rng, 1, 4), 4);
        CHECK(mirror_vertical(mirror_vertical(d)) == d);
    }
}

TEST_CASE("make_singular validates ids") {
    StringLinkDiagram d = parse_braid("s1 s1", 2);
    SingularStringLink s = make_singular(d, {0});
    CHECK(s.double_point_count() == 1);
    CHECK(make_singular(d, {}).double_point_count() == 0);
    CHECK_THROWS_AS(make_singular(d, {5}), std::domain_error);
}

TEST_CASE("diagram validation rejects broken structures") {
    // crossing referenced only once
    CHECK_THROWS_WITH(StringLinkDiagram::create(1, {{1, 1, {{0, Role::Over}}}}, {{+1}}),
                      Catch::Matchers::ContainsSubstring("has 1 encounter"));
    // two Over roles
    CHECK_THROWS_AS(StringLinkDiagram::create(1, {{1, 1, {{0, Role::Over}, {0, Role::Over}}}}, {{+1}}),
                    std::domain_error);
    // sources not a permutation
    CHECK_THROWS_AS(StringLinkDiagram::create(2, {{1, 1, {}}, {1, 2, {}}}, {}), std::domain_error);
    // sinks not a permutation
    CHECK_THROWS_AS(StringLinkDiagram::create(2, {{1, 1, {}}, {2, 1, {}}}, {}), std::domain_error);
    // unknown crossing index
    CHECK_THROWS_AS(StringLinkDiagram::create(1, {{1, 1, {{3, Role::Over}, {3, Role::Under}}}}, {{+1}}),
                    std::domain_error);
}

TEST_CASE("crossing labels are canonical by first appearance") {
    // declare crossings in one order, reference them in another
    std::vector<Strand> strands{{1, 1, {{1, Role::Over}, {1, Role::Under}, {0, Role::Over}, {0, Role::Under}}}};
    StringLinkDiagram d = StringLinkDiagram::create(1, strands, {{-1}, {+1}});
    CHECK(d.crossings()[0].sign == +1);  // the first-met crossing becomes c1
    CHECK(d.crossings()[1].sign == -1);
    CHECK(d.strands()[0].encounters[0].crossing == 0);
}

TEST_CASE("content hash distinguishes diagrams") {
    CHECK(parse_braid("s1", 2).content_hash() != parse_braid("s1^-1", 2).content_hash());
    CHECK(parse_braid("s1", 2).content_hash() == parse_braid("s1", 2).content_hash());
}
