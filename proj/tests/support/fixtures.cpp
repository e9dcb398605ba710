#include "support/fixtures.hpp"

namespace snakes::fixtures {

Arrangement empty_arrangement() {
    CurveSystem cs;
    Arrangement::Builder b(cs);
    return b.build();
}

Arrangement one_oval() {
    CurveSystem cs;
    int c = cs.add_curve("c", 2);
    cs.add_branch(c, BranchShape::Oval);
    Arrangement::Builder b(cs);
    int l = b.add_loop(BranchRef{c, 0});
    b.place_loop(l, Placement{Placement::Kind::Background, -1, -1});
    return b.build();
}

Arrangement nested_ovals() {
    CurveSystem cs;
    int q = cs.add_curve("q", 4, 2, CurveType::I); // hyperbolic quartic
    cs.add_branch(q, BranchShape::Oval);
    cs.add_branch(q, BranchShape::Oval);
    Arrangement::Builder b(cs);
    int outer = b.add_loop(BranchRef{q, 0});
    int inner = b.add_loop(BranchRef{q, 1});
    b.place_loop(outer, Placement{Placement::Kind::Background, -1, -1});
    b.place_loop(inner, Placement{Placement::Kind::LoopInside, outer, -1});
    return b.build();
}

Arrangement cubic_pseudoline_with_oval() {
    CurveSystem cs;
    int c = cs.add_curve("c", 3);
    cs.add_branch(c, BranchShape::Pseudoline);
    cs.add_branch(c, BranchShape::Oval);
    Arrangement::Builder b(cs);
    int j = b.add_loop(BranchRef{c, 0}, /*essential=*/true);
    int o = b.add_loop(BranchRef{c, 1});
    b.place_loop(j, Placement{Placement::Kind::Background, -1, -1});
    b.place_loop(o, Placement{Placement::Kind::Background, -1, -1});
    return b.build();
}

// Shared wiring for the two 4-crossing two-conic pictures.  Vertices 0..3
// sit on the first conic in word order; the rotation at each vertex is
// (outward arc, conic-next, disk chord, conic-prev), counterclockwise.
//
// Edge table (darts 2e at the first endpoint):
//   e0..e3  conic arcs 0-1, 1-2, 2-3, 3-0
//   e4..e7  branch arcs, picture specific
static SignedMap two_conic_map(bool essential) {
    SignedMap m;
    BranchRef conic{0, 0}, other{1, 0};
    for (int i = 0; i < 4; ++i) m.add_vertex();
    for (int i = 0; i < 4; ++i) m.add_edge(conic, +1); // e0..e3
    if (essential) {
        m.add_edge(other, +1); // e4 chord 0-1
        m.add_edge(other, -1); // e5 wrap 1-3
        m.add_edge(other, +1); // e6 chord 3-2
        m.add_edge(other, -1); // e7 wrap 2-0
        m.set_rotation(0, {15, 0, 8, 7});
        m.set_rotation(1, {10, 2, 9, 1});
        m.set_rotation(2, {14, 4, 13, 3});
        m.set_rotation(3, {11, 6, 12, 5});
    } else {
        m.add_edge(other, +1); // e4 chord 0-1
        m.add_edge(other, +1); // e5 outside arc 1-2
        m.add_edge(other, +1); // e6 chord 2-3
        m.add_edge(other, +1); // e7 outside arc 3-0
        m.set_rotation(0, {15, 0, 8, 7});
        m.set_rotation(1, {10, 2, 9, 1});
        m.set_rotation(2, {11, 4, 12, 3});
        m.set_rotation(3, {14, 6, 13, 5});
    }
    m.seal();
    return m;
}

static CurveSystem two_conic_curves() {
    CurveSystem cs;
    int c0 = cs.add_curve("c", 2);
    cs.add_branch(c0, BranchShape::Oval);
    int c1 = cs.add_curve("d", 2);
    cs.add_branch(c1, BranchShape::Oval);
    return cs;
}

SignedMap two_conics_essential_map() { return two_conic_map(true); }

Arrangement two_conics_essential() {
    Arrangement::Builder b(two_conic_curves());
    int comp = b.add_component(two_conic_map(true));
    b.place_essential_component(comp);
    return b.build();
}

Arrangement two_conics_planar() {
    SignedMap m = two_conic_map(false);
    // The outer face is the unique face touching both outside arcs e5, e7.
    int outer = -1;
    for (int f = 0; f < m.face_count(); ++f) {
        bool t5 = m.face_of_flag(2 * (2 * 5) + 0) == f || m.face_of_flag(2 * (2 * 5) + 1) == f;
        bool t7 = m.face_of_flag(2 * (2 * 7) + 0) == f || m.face_of_flag(2 * (2 * 7) + 1) == f;
        if (t5 && t7) outer = f;
    }
    Arrangement::Builder b(two_conic_curves());
    int comp = b.add_component(std::move(m));
    b.place_component_background(comp, outer);
    return b.build();
}

} // namespace snakes::fixtures
