#include "doctest.h"

#include <random>

#include "ssg/branch.hpp"
#include "ssg/errors.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace ssg;

TEST_CASE("grigorchuk branch structure at level 3") {
    auto m = fixtures::grigorchuk();
    auto b = BranchStructure::from_declared(m);
    CHECK(b.q_order() == 16);
    CHECK(b.Q1().size() == 64);

    // |Q| equals |G_3| / |K_3| computed independently.
    auto g3 = oracles::enumerate_level_group(m, 3);
    CHECK(g3.size() == 128);
    CHECK(g3.size() / 16 == 8); // so |K_3| = 8

    SUBCASE("pi is a homomorphism") {
        std::mt19937 rng(31);
        for (int trial = 0; trial < 30; ++trial) {
            Element g = oracles::random_word(m, 6, rng);
            Element h = oracles::random_word(m, 6, rng);
            CHECK(b.pi(g * h) == b.Q().multiply(b.pi(g), b.pi(h)));
        }
    }

    SUBCASE("phi inverts the wreath image") {
        std::mt19937 rng(37);
        for (int trial = 0; trial < 30; ++trial) {
            Element g = oracles::random_word(m, 6, rng);
            auto idx = b.q1_index(b.wreath_image(g));
            REQUIRE(idx.has_value());
            CHECK(b.phi(*idx) == b.pi(g));
        }
    }

    SUBCASE("phi is surjective and has kernel of size 4") {
        std::vector<int> hits(static_cast<size_t>(b.q_order()), 0);
        for (size_t i = 0; i < b.Q1().size(); ++i) hits[static_cast<size_t>(b.phi(static_cast<int>(i)))]++;
        for (int h : hits) CHECK(h == 4);
    }

    SUBCASE("q1 witnesses map onto their Q1 elements") {
        for (int i = 0; i < static_cast<int>(b.Q1().size()); ++i) {
            Element w = b.q1_witness(i);
            CHECK(b.wreath_image(w) == b.Q1()[static_cast<size_t>(i)]);
        }
    }
}

TEST_CASE("trivial K at level 0 gives the one-element quotient") {
    auto m = fixtures::grigorchuk();
    std::vector<Element> kgens{Element::parse(m, "a"), Element::parse(m, "b")};
    auto b = BranchStructure::build(m, kgens, 0);
    CHECK(b.q_order() == 1);
    // Q1 is the image of the root permutations, here the full Sym(2).
    CHECK(b.Q1().size() == 2);
    for (size_t i = 0; i < b.Q1().size(); ++i) CHECK(b.phi(static_cast<int>(i)) == 0);
}

TEST_CASE("gupta-sidki branch structure at level 2") {
    auto m = fixtures::gupta_sidki();
    auto b = BranchStructure::from_declared(m);
    CHECK(b.level() == 2);
    CHECK(b.q_order() == 9);
    CHECK(b.Q1().size() == 81);
    // independent route: |G_2| / |K_2| via closure enumeration
    auto g2 = oracles::enumerate_level_group(m, 2);
    CHECK(g2.size() == 27);
}

TEST_CASE("phi failure is a first-class error") {
    auto m = fixtures::grigorchuk();
    // K = <b> is not a branching subgroup: some word has all its pi-images of
    // states trivial but a nontrivial pi-image.
    CHECK_THROWS_AS(BranchStructure::build(m, {Element::parse(m, "b")}, 3), invalid_input);
}

TEST_CASE("grigorchuk branching certificate to level 4") {
    auto m = fixtures::grigorchuk();
    auto b = BranchStructure::from_declared(m);
    auto cert = certify_regular_branching(b, 4);
    CHECK(cert.certified);
    CHECK(cert.tests.size() == 4 * 2 * 4); // kgens x letters x levels
    for (const auto& t : cert.tests) CHECK(t.member);
}

TEST_CASE("adding machine with K = <t^2> is refuted") {
    auto m = fixtures::adding();
    auto b = BranchStructure::from_declared(m); // m=1, K=t*t; phi is fine here
    CHECK(b.q_order() == 2);
    CHECK(b.Q1().size() == 4);
    auto cert = certify_regular_branching(b, 3);
    CHECK_FALSE(cert.certified);
    REQUIRE(!cert.tests.empty());
    const auto& last = cert.tests.back();
    CHECK(last.member == false);
    CHECK(last.level == 3); // psi(t^(2n)) = (t^n, t^n) never hits (t^2, 1)
}

TEST_CASE("identity machine certifies trivially") {
    auto m = fixtures::identity_machine();
    auto b = BranchStructure::build(m, {}, 0);
    CHECK(b.q_order() == 1);
    auto cert = certify_regular_branching(b, 1);
    CHECK(cert.certified);
}

TEST_CASE("embedded level permutation acts only below its letter") {
    auto m = fixtures::grigorchuk();
    Element k = Element::parse(m, "a*b");
    Perm p = embedded_level_perm(k, 1, 4);
    for (int ix = 0; ix < 8; ++ix) CHECK(p(ix) == ix); // block of words starting with 0
    // within block 1 it is the level-3 permutation of k
    Perm inner = level_perm(k, 3);
    for (int off = 0; off < 8; ++off) CHECK(p(8 + off) == 8 + inner(off));
}

TEST_CASE("certification level must exceed the branch level") {
    auto m = fixtures::grigorchuk();
    auto b = BranchStructure::from_declared(m);
    CHECK_THROWS_AS(certify_regular_branching(b, 3), invalid_input);
}
