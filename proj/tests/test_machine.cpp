#include "doctest.h"

#include "ssg/element.hpp"
#include "ssg/errors.hpp"
#include "ssg/machine.hpp"
#include "support/fixtures.hpp"

using namespace ssg;

TEST_CASE("grigorchuk machine loads and closes under inverses") {
    auto m = fixtures::grigorchuk();
    // All four generators are involutions, so inverse closure adds nothing.
    CHECK(m->state_count() == 5);
    CHECK(m->alphabet_size() == 2);
    for (const char* name : {"a", "b", "c", "d"}) {
        auto q = m->state_by_name(name);
        REQUIRE(q.has_value());
        CHECK(m->inverse_state(*q) == *q);
    }
    CHECK(m->generators().size() == 4);
    CHECK(m->generator_letters().size() == 4);
    REQUIRE(m->branch_decl().has_value());
    CHECK(m->branch_decl()->level == 3);
    CHECK(m->branch_decl()->kgen_words.size() == 4);
}

TEST_CASE("grigorchuk transition table survives the load") {
    auto m = fixtures::grigorchuk();
    int a = *m->state_by_name("a"), b = *m->state_by_name("b");
    int c = *m->state_by_name("c"), d = *m->state_by_name("d");
    CHECK(m->sigma(a) == Perm({1, 0}));
    CHECK(m->sigma(b).is_identity());
    CHECK(m->transition(a, 0) == 0);
    CHECK(m->transition(a, 1) == 0);
    CHECK(m->transition(b, 0) == a);
    CHECK(m->transition(b, 1) == c);
    CHECK(m->transition(c, 0) == a);
    CHECK(m->transition(c, 1) == d);
    CHECK(m->transition(d, 0) == 0);
    CHECK(m->transition(d, 1) == b);
}

TEST_CASE("adding machine gets a fresh inverse state") {
    auto m = fixtures::adding();
    CHECK(m->state_count() == 3); // 1, t, t^-1
    int t = *m->state_by_name("t");
    int ti = m->inverse_state(t);
    CHECK(ti != t);
    CHECK(m->state_name(ti) == "t^-1");
    // (t^-1)@0 = t^-1, (t^-1)@1 = 1
    CHECK(m->transition(ti, 0) == ti);
    CHECK(m->transition(ti, 1) == 0);
    CHECK(m->generator_letters().size() == 2);
}

TEST_CASE("declared inverse pairs merge with formal inverses") {
    auto m = fixtures::gupta_sidki();
    // States: 1, a, A, t plus the new t^-1; a^-1 merges with A.
    CHECK(m->state_count() == 5);
    int a = *m->state_by_name("a"), A = *m->state_by_name("A");
    int t = *m->state_by_name("t");
    CHECK(m->inverse_state(a) == A);
    CHECK(m->inverse_state(A) == a);
    int ti = m->inverse_state(t);
    CHECK(m->state_name(ti) == "t^-1");
    CHECK(m->transition(ti, 0) == A);
    CHECK(m->transition(ti, 1) == a);
    CHECK(m->transition(ti, 2) == ti);
}

TEST_CASE("states equal to the identity merge into state 1") {
    auto m = Machine::parse(
        "alphabet 2\n"
        "state e perm=(0 1) to=[e e]\n"
        "state a perm=(1 0) to=[e e]\n"
        "generators a\n");
    CHECK(m->state_count() == 2); // e collapses into 1
    CHECK(*m->state_by_name("e") == 0);
    CHECK(m->transition(*m->state_by_name("a"), 0) == 0);
}

TEST_CASE("identity-only machine") {
    auto m = fixtures::identity_machine();
    CHECK(m->state_count() == 1);
    CHECK(m->generators().empty());
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(Machine::parse("alphabet 1\ngenerators\n"), parse_error);
    CHECK_THROWS_AS(Machine::parse("alphabet 2\nstate a perm=(1 0) to=[1 z]\ngenerators a\n"),
                    parse_error);
    CHECK_THROWS_AS(Machine::parse("alphabet 2\nstate a perm=(1 1) to=[1 1]\ngenerators a\n"),
                    parse_error);
    CHECK_THROWS_AS(Machine::parse("alphabet 2\nstate a perm=(1 0) to=[1]\ngenerators a\n"),
                    parse_error);
    CHECK_THROWS_AS(Machine::parse("alphabet 2\nstate 1 perm=(0 1) to=[1 1]\ngenerators\n"),
                    parse_error);
    CHECK_THROWS_AS(Machine::parse("alphabet 2\ngenerators x\n"), parse_error);
    CHECK_THROWS_AS(Machine::parse("generators\n"), parse_error);
}

TEST_CASE("word parsing round-trips") {
    auto m = fixtures::grigorchuk();
    CHECK(Element::parse(m, "1").is_identity_word());
    CHECK(Element::parse(m, "a*b").str() == "a*b");
    CHECK(Element::parse(m, "ab").str() == "a*b");
    CHECK(Element::parse(m, "a^-1").str() == "a");  // a is an involution
    CHECK(Element::parse(m, "a^2").is_identity_word());
    CHECK(Element::parse(m, "b^3").str() == "b");
    CHECK_THROWS_AS(Element::parse(m, "a*x"), parse_error);

    auto add = fixtures::adding();
    CHECK(Element::parse(add, "t^-1").str() == "t^-1");
    CHECK(Element::parse(add, "t^-2*t*t").is_identity_word());
}
