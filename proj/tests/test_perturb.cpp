#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "snakes/canon/canon.hpp"
#include "snakes/perturb/perturb.hpp"
#include "snakes/restrict/restrict.hpp"
#include "support/brute.hpp"
#include "support/fixtures.hpp"

using namespace snakes;

TEST_CASE("analyze_base on the two-conic pictures") {
    for (auto make : {fixtures::two_conics_essential, fixtures::two_conics_planar}) {
        BaseView v = analyze_base(make());
        CHECK(v.k == 2);
        CHECK(gap_count(v) == 4);
        CHECK(v.cycle_verts.size() == 4);
    }
}

TEST_CASE("snake_from_conic produces valid snakes on every gap") {
    for (auto make : {fixtures::two_conics_essential, fixtures::two_conics_planar}) {
        BaseView v = analyze_base(make());
        for (int gap = 1; gap <= 4; ++gap) {
            Arrangement out = snake_from_conic(v, gap);
            auto w = detect_snake(out, BranchRef{0, 0}, 1);
            REQUIRE(w.has_value());
            CHECK(w->k == 2);
            CHECK(out.crossing_count(BranchRef{0, 0}, BranchRef{1, 0}) == 8);
            CHECK(free_branches(out, 0).size() == 3);
            auto rows = bezout_audit(out);
            for (const auto& r : rows) CHECK(r.crossings <= r.bound);
            RegionClassification cls = classify_regions(out, *w);
            CHECK(cls.ends_region >= 0);
            CHECK(cls.free_ovals_with_ends);
        }
        CHECK_THROWS_AS((void)snake_from_conic(v, 0), Error);
        CHECK_THROWS_AS((void)snake_from_conic(v, 5), Error);
    }
}

TEST_CASE("chain-of-digons construction agrees with the tube construction") {
    for (auto make : {fixtures::two_conics_essential, fixtures::two_conics_planar}) {
        BaseView v = analyze_base(make());
        for (int gap = 1; gap <= 4; ++gap) {
            Arrangement tube = snake_from_conic(v, gap);
            Arrangement chain = chain_of_digons(
                v, gap, {{gap, 0}, {gap, 1}, {gap, 2}, {gap, 3}});
            CHECK(is_isotopic(tube, chain));
        }
        CHECK_THROWS_AS((void)chain_of_digons(v, 1, {{1, 0}, {1, 1}, {1, 2}}), Error);
        CHECK_THROWS_AS((void)chain_of_digons(v, 1, {{1, 0}, {1, 1}, {1, 2}, {1, 2}}), Error);
        CHECK_THROWS_AS((void)chain_of_digons(v, 1, {{2, 0}, {1, 1}, {1, 2}, {1, 3}}), Error);
    }
}

TEST_CASE("k=2 enumeration dedupes consistently with the brute oracle") {
    std::vector<Arrangement> bases;
    bases.push_back(fixtures::two_conics_essential());
    bases.push_back(fixtures::two_conics_planar());
    GenResult res = enumerate_snakes(bases);
    CHECK(res.total_before_dedupe == 8);
    CHECK(res.kept.size() >= 1);
    // Pairwise brute-force comparison agrees with the canonical dedupe.
    std::vector<const Arrangement*> all;
    std::vector<Arrangement> raw;
    for (int bi = 0; bi < 2; ++bi) {
        BaseView v = analyze_base(bases[bi]);
        for (int gap = 1; gap <= 4; ++gap) raw.push_back(snake_from_conic(v, gap));
    }
    for (const auto& a : raw) all.push_back(&a);
    DedupeResult dd = dedupe(all);
    for (size_t i = 0; i < raw.size(); ++i)
        for (size_t j = i + 1; j < raw.size(); ++j) {
            bool canon_eq = dd.class_of[i] == dd.class_of[j];
            CHECK(canon_eq == brute::isomorphic(raw[i], raw[j]));
        }
    CHECK(dd.kept.size() == res.kept.size());
}

TEST_CASE("a single join yields a one-node quartic") {
    BaseView v = analyze_base(fixtures::two_conics_essential());
    Arrangement out = snake_from_conic(v, 1);
    auto frees = free_branches(out, 0);
    REQUIRE(frees.size() == 3);
    int l0 = out.loop_index_of(frees[0]);
    int region = out.region_around_loop(l0);
    Arrangement joined = modify_join(out, frees[0], frees[1], region);
    // Two free ovals merged into one immersed circle with one node.
    CHECK(joined.curves().curve(0).branch_count() == 3);
    int nodes = 0;
    for (int c = 0; c < joined.component_count(); ++c) {
        const SignedMap& m = joined.component(c);
        for (int vtx = 0; vtx < m.vertex_count(); ++vtx) {
            const BranchRef& p = m.branch_of_dart(m.vertex(vtx).rot[0]);
            const BranchRef& q = m.branch_of_dart(m.vertex(vtx).rot[1]);
            if (p == q) ++nodes;
        }
    }
    CHECK(nodes == 1);
    CHECK(joined.euler_characteristic() == 1);
}

TEST_CASE("join error paths") {
    // A foreign oval in the region blocks the corridor.
    CurveSystem cs;
    int q = cs.add_curve("q", 4, 2, CurveType::Unknown);
    cs.add_branch(q, BranchShape::Oval);
    cs.add_branch(q, BranchShape::Oval);
    int c2 = cs.add_curve("c", 2);
    cs.add_branch(c2, BranchShape::Oval);
    Arrangement::Builder b(cs);
    int a0 = b.add_loop(BranchRef{q, 0});
    int a1 = b.add_loop(BranchRef{q, 1});
    int f = b.add_loop(BranchRef{c2, 0});
    b.place_loop(a0, Placement{Placement::Kind::Background, -1, -1});
    b.place_loop(a1, Placement{Placement::Kind::Background, -1, -1});
    b.place_loop(f, Placement{Placement::Kind::Background, -1, -1});
    Arrangement arr = b.build();
    try {
        (void)modify_join(arr, BranchRef{q, 0}, BranchRef{q, 1}, arr.background_region());
        FAIL("expected RegionMeetsCk");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RegionMeetsCk);
    }
}

TEST_CASE("degeneration splits every k=2 snake into two conics") {
    for (auto make : {fixtures::two_conics_essential, fixtures::two_conics_planar}) {
        BaseView v = analyze_base(make());
        for (int gap = 1; gap <= 4; ++gap) {
            Arrangement out = snake_from_conic(v, gap);
            DegenerationResult deg = degenerate_to_two_conics(out);
            CHECK(deg.split_into_two);
            REQUIRE(deg.circle_crossings.size() == 2);
            CHECK(deg.circle_crossings[0] == 4);
            CHECK(deg.circle_crossings[1] == 4);
            CHECK(deg.digons_empty);
            // Applying the same pair twice cannot work: after the first join
            // the two ovals are one immersed branch, and a second join of
            // that pair is a self-join without two distinct arcs.  Run this
            // on outputs whose shared region is an ordinary disk face; when
            // it is the background, the floating skeleton correctly raises
            // RegionMeetsCk instead.
            auto frees = free_branches(out, 0);
            int l0 = out.loop_index_of(frees[0]);
            int region = out.region_around_loop(l0);
            if (out.regions()[region].kind == Region::Kind::Background) continue;
            Arrangement joined = modify_join(out, frees[0], frees[1], region);
            BranchRef merged{-1, -1};
            for (const BranchRef& b : joined.branches_of(0))
                if (!joined.branch_is_loop(b) && joined.branch_total_crossings(b) == 2)
                    merged = b;
            REQUIRE(merged.curve == 0);
            try {
                (void)modify_join(joined, merged, merged, joined.region_around_loop(0));
                FAIL("expected NotFacing");
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::NotFacing);
            }
        }
    }
}

TEST_CASE("degeneration matches the nodal stage of the chain construction") {
    BaseView v = analyze_base(fixtures::two_conics_essential());
    for (int gap = 1; gap <= 4; ++gap) {
        Arrangement out = snake_from_conic(v, gap);
        DegenerationResult deg = degenerate_to_two_conics(out);
        Arrangement nodal = chain_nodal_stage(v, gap);
        CHECK(is_isotopic(deg.nodal, nodal));
    }
}
