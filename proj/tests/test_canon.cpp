#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "snakes/canon/canon.hpp"
#include "support/brute.hpp"
#include "support/fixtures.hpp"
#include "support/shuffle.hpp"

using namespace snakes;

static void check_invariance(const Arrangement& a, int rounds) {
    std::mt19937 rng(12345);
    CanonicalForm base = canonical_form(a);
    for (int i = 0; i < rounds; ++i) {
        bool mirror = (i % 2 == 1);
        Arrangement sh = testsupport::shuffle(a, rng, mirror);
        CHECK(canonical_form(sh) == base);
    }
}

TEST_CASE("canonical form is invariant under re-presentation") {
    check_invariance(fixtures::one_oval(), 20);
    check_invariance(fixtures::nested_ovals(), 20);
    check_invariance(fixtures::cubic_pseudoline_with_oval(), 20);
    check_invariance(fixtures::two_conics_essential(), 40);
    check_invariance(fixtures::two_conics_planar(), 40);
}

TEST_CASE("the two two-conic pictures are not isotopic") {
    Arrangement e = fixtures::two_conics_essential();
    Arrangement p = fixtures::two_conics_planar();
    CHECK_FALSE(is_isotopic(e, p));
    CHECK(is_isotopic(e, e));
    CHECK(brute::isomorphic(e, e));
    CHECK_FALSE(brute::isomorphic(e, p));
}

TEST_CASE("canonical equality agrees with the brute-force matcher") {
    std::mt19937 rng(7);
    std::vector<Arrangement> items;
    items.push_back(fixtures::one_oval());
    items.push_back(fixtures::nested_ovals());
    items.push_back(fixtures::two_conics_essential());
    items.push_back(fixtures::two_conics_planar());
    items.push_back(testsupport::shuffle(items[2], rng, true));
    items.push_back(testsupport::shuffle(items[3], rng, false));
    for (size_t i = 0; i < items.size(); ++i)
        for (size_t j = 0; j < items.size(); ++j) {
            bool canon_eq = is_isotopic(items[i], items[j]);
            bool brute_eq = brute::isomorphic(items[i], items[j]);
            CHECK(canon_eq == brute_eq);
        }
}

TEST_CASE("dedupe keeps first representatives and is idempotent") {
    std::mt19937 rng(3);
    Arrangement e = fixtures::two_conics_essential();
    Arrangement p = fixtures::two_conics_planar();
    Arrangement e2 = testsupport::shuffle(e, rng, true);
    std::vector<const Arrangement*> v{&e, &e2, &p, &e};
    DedupeResult r = dedupe(v);
    REQUIRE(r.kept.size() == 2);
    CHECK(r.kept[0] == 0);
    CHECK(r.kept[1] == 2);
    CHECK(r.class_of[0] == 0);
    CHECK(r.class_of[1] == 0);
    CHECK(r.class_of[2] == 1);
    CHECK(r.class_of[3] == 0);
}

TEST_CASE("canonical layout names regions deterministically") {
    Arrangement a = fixtures::two_conics_planar();
    CanonicalLayout lay = canonical_layout(a);
    CHECK(lay.region_names[a.background_region()] == "bg");
    int named = 0;
    for (const auto& n : lay.region_names)
        if (!n.empty()) ++named;
    CHECK(named == a.region_count());
    // A shuffled copy yields the same multiset of names.
    std::mt19937 rng(11);
    Arrangement sh = testsupport::shuffle(a, rng, false);
    CanonicalLayout lay2 = canonical_layout(sh);
    auto sorted = [](std::vector<std::string> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    CHECK(sorted(lay.region_names) == sorted(lay2.region_names));
}
