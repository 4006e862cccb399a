#include "doctest.h"

#include <algorithm>

#include "ssg/checks.hpp"
#include "ssg/interner.hpp"
#include "ssg/nucleus.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace ssg;

namespace {
std::vector<std::string> names_of(const std::vector<Element>& els) {
    std::vector<std::string> out;
    for (const auto& e : els) out.push_back(e.str());
    std::sort(out.begin(), out.end());
    return out;
}
} // namespace

TEST_CASE("grigorchuk nucleus is {1,a,b,c,d}") {
    auto m = fixtures::grigorchuk();
    auto n = nucleus(m, 32);
    REQUIRE(n.has_value());
    CHECK(n->size() == 5);
    CHECK(names_of(*n) == std::vector<std::string>{"1", "a", "b", "c", "d"});
    CHECK(is_state_product_closed(*n));

    SUBCASE("minimal: removing any element breaks closure") {
        for (size_t skip = 0; skip < n->size(); ++skip) {
            std::vector<Element> smaller;
            for (size_t i = 0; i < n->size(); ++i)
                if (i != skip) smaller.push_back((*n)[i]);
            CHECK_FALSE(is_state_product_closed(smaller));
        }
    }
}

TEST_CASE("identity machine nucleus") {
    auto m = fixtures::identity_machine();
    auto n = nucleus(m, 8);
    REQUIRE(n.has_value());
    CHECK(n->size() == 1);
    CHECK(n->front().is_identity_word());
}

TEST_CASE("adding machine nucleus is {1,t,t^-1}") {
    auto m = fixtures::adding();
    auto n = nucleus(m, 8);
    REQUIRE(n.has_value());
    CHECK(names_of(*n) == std::vector<std::string>{"1", "t", "t^-1"});
    CHECK(is_state_product_closed(*n));
    // t*t has the state t at both children, found by coincidence reduction.
    ElementTable& tab = m->table();
    int tt = tab.intern(Element::parse(m, "t*t").word());
    int t = tab.intern(Element::parse(m, "t").word());
    CHECK(tab.children(tt) == std::vector<int>{t, t});
}

TEST_CASE("gupta-sidki nucleus has five elements") {
    auto m = fixtures::gupta_sidki();
    auto n = nucleus(m, 32);
    REQUIRE(n.has_value());
    CHECK(n->size() == 5);
    CHECK(is_state_product_closed(*n));
}

TEST_CASE("nucleus bound failure is not a verdict") {
    auto m = fixtures::grigorchuk();
    CHECK(nucleus(m, 3) == std::nullopt);
}

TEST_CASE("level transitivity") {
    auto grig = fixtures::grigorchuk();
    CHECK(check_level_transitive(grig, 0));
    CHECK(check_level_transitive(grig, 1));
    CHECK(check_level_transitive(grig, 4));
    // oracle: the orbit of 0000 is all 16 words
    CHECK(oracles::orbit_of(grig, parse_vertex("0000", 2)).size() == 16);

    auto gs = fixtures::gupta_sidki();
    CHECK(check_level_transitive(gs, 3));

    auto id = fixtures::identity_machine();
    CHECK(check_level_transitive(id, 0));
    CHECK_FALSE(check_level_transitive(id, 1));
}

TEST_CASE("recurrence certification at depth 1") {
    auto m = fixtures::grigorchuk();
    auto rep = check_recurrent(m, 1, 4);
    CHECK(rep.certified);
    // The table supplies b as a witness for (a, 0) and d for (b, 1).
    int a = *m->state_by_name("a"), b = *m->state_by_name("b"), d = *m->state_by_name("d");
    bool saw_ab = false, saw_bd = false;
    for (const auto& w : rep.witnesses) {
        if (w.generator == a && w.vertex == Vertex{0} && w.witness == Word{b}) saw_ab = true;
        if (w.generator == b && w.vertex == Vertex{1} && w.witness == Word{d}) saw_bd = true;
    }
    CHECK(saw_ab);
    CHECK(saw_bd);
    // Every witness replays.
    for (const auto& w : rep.witnesses) {
        Element h(m, w.witness);
        CHECK(act(h, w.vertex) == w.vertex);
        CHECK(is_trivial(state_at(h, w.vertex) * Element::letter(m, w.generator).inverse()));
    }
}

TEST_CASE("recurrence on the identity machine is vacuously certified") {
    auto rep = check_recurrent(fixtures::identity_machine(), 2, 1);
    CHECK(rep.certified);
}

TEST_CASE("adding machine is recurrent: t^2 = (t, t)") {
    auto rep = check_recurrent(fixtures::adding(), 1, 2);
    CHECK(rep.certified);
}

TEST_CASE("finitary machine is not recurrent; bounded search stays unknown") {
    // Every element has portrait depth <= 2, so no state at a vertex can
    // reproduce the depth-2 generator.
    auto m = Machine::parse(
        "alphabet 2\n"
        "state s1 perm=(1 0) to=[1 1]\n"
        "state s2 perm=(0 1) to=[s1 1]\n"
        "generators s1 s2\n");
    auto rep = check_recurrent(m, 1, 4);
    CHECK_FALSE(rep.certified);
    REQUIRE(rep.first_failure.has_value());
}
