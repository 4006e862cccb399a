#include "doctest.h"

#include "ssg/errors.hpp"
#include "ssg/level_quotient.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace ssg;

TEST_CASE("grigorchuk level orders") {
    auto m = fixtures::grigorchuk();
    CHECK(level_quotient(m, 0).order() == 1);
    CHECK(level_quotient(m, 1).order() == 2);
    CHECK(level_quotient(m, 2).order() == 8);

    // Orders for levels <= 3 agree with plain closure enumeration.
    for (int n = 1; n <= 3; ++n) {
        auto q = level_quotient(m, n);
        CHECK(q.order() == oracles::enumerate_level_group(m, n).size());
    }

    CHECK(level_quotient(m, 4).order() == mpz_class(1) << 12);
}

TEST_CASE("membership via the stabilizer chain") {
    auto m = fixtures::grigorchuk();
    auto q = level_quotient(m, 3);
    for (const auto& p : oracles::enumerate_level_group(m, 3)) CHECK(q.contains(p));
    // G_3 happens to be the full level-3 wreath group, so test level 4 for a
    // non-member.
    auto q4 = level_quotient(m, 4);
    CHECK(q4.order() < (mpz_class(1) << 15));
    bool found_outside = false;
    for (const auto& p : all_perms(4)) {
        // embed a permutation of depth-2 subtrees ... quick non-member probe:
        std::vector<int> img(16);
        for (int block = 0; block < 4; ++block)
            for (int off = 0; off < 4; ++off) img[static_cast<size_t>(block * 4 + off)] = p(block) * 4 + off;
        if (!q4.contains(Perm(img))) {
            found_outside = true;
            break;
        }
    }
    CHECK(found_outside);
}

TEST_CASE("level permutations agree with recursive assembly") {
    auto m = fixtures::gupta_sidki();
    std::mt19937 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        Element g = oracles::random_word(m, 4, rng);
        auto dec = decompose(g);
        // the level-n permutation is the root permutation of blocks composed
        // with the children acting inside the blocks
        int n = 3;
        Perm whole = level_perm(g, n);
        size_t block = 9; // 3^(n-1)
        for (int x = 0; x < 3; ++x) {
            Perm child = level_perm(dec.children[static_cast<size_t>(x)], n - 1);
            for (size_t off = 0; off < block; ++off) {
                size_t ix = static_cast<size_t>(x) * block + off;
                CHECK(whole(static_cast<int>(ix)) ==
                      static_cast<int>(static_cast<size_t>(dec.root(x)) * block + static_cast<size_t>(child(static_cast<int>(off)))));
            }
        }
    }
}

TEST_CASE("order monotonicity") {
    auto m = fixtures::grigorchuk();
    mpz_class prev = 1;
    for (int n = 1; n <= 5; ++n) {
        mpz_class cur = level_quotient(m, n).order();
        CHECK(cur % prev == 0);
        // index of G_n in G_{n+1}-style bound: |G_{n+1}| divides |G_n| * 2^(2^n)
        mpz_class bound = prev * (mpz_class(1) << (1 << (n - 1)));
        CHECK(cur <= bound);
        prev = cur;
    }
}

TEST_CASE("point budget") {
    auto m = fixtures::grigorchuk();
    CHECK_THROWS_AS(level_quotient(m, 13), budget_exceeded);
}

TEST_CASE("identity machine has trivial quotients") {
    auto m = fixtures::identity_machine();
    CHECK(level_quotient(m, 3).order() == 1);
}

TEST_CASE("full machine is levelwise full") {
    auto m = fixtures::full6();
    for (int n = 1; n <= 4; ++n) {
        mpz_class expected = 1;
        for (int lv = 1; lv <= n; ++lv) expected <<= (1 << (lv - 1));
        CHECK(level_quotient(m, n).order() == expected);
    }
}
