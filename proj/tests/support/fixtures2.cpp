#include "support/fixtures2.hpp"

namespace snakes::fixtures {

Arrangement snake_k1_over_line() {
    CurveSystem cs;
    int line = cs.add_curve("j", 1);
    cs.add_branch(line, BranchShape::Pseudoline);
    int quartic = cs.add_curve("s", 4, 0, CurveType::I);
    for (int i = 0; i < 4; ++i) cs.add_branch(quartic, BranchShape::Oval);

    BranchRef J{line, 0}, O{quartic, 0};
    SignedMap m;
    for (int i = 0; i < 4; ++i) m.add_vertex();
    // Crossings v0..v3 sit on the line left to right; the oval is the wall
    // of a C-shaped tube dipping below the line between v0..v1 and v2..v3.
    m.add_edge(J, +1);  // e0 rung v0-v1
    m.add_edge(J, +1);  // e1 mouth segment v1-v2
    m.add_edge(J, +1);  // e2 rung v2-v3
    m.add_edge(J, -1);  // e3 far segment v3..infinity..v0
    m.add_edge(O, +1);  // e4 outer bend v0-v3
    m.add_edge(O, +1);  // e5 right tip cap v3-v2
    m.add_edge(O, +1);  // e6 inner bend v2-v1
    m.add_edge(O, +1);  // e7 left tip cap v1-v0
    m.set_rotation(0, {0, 15, 7, 8});
    m.set_rotation(1, {2, 14, 1, 13});
    m.set_rotation(2, {4, 11, 3, 12});
    m.set_rotation(3, {6, 10, 5, 9});
    m.seal();

    Arrangement::Builder b(cs);
    int comp = b.add_component(std::move(m));
    b.place_essential_component(comp);
    // The big outside face: the one carrying both tip caps (e5 and e7).
    const SignedMap& mm = b.component_view(comp);
    int outside = -1;
    for (int f = 0; f < mm.face_count(); ++f) {
        bool t5 = mm.face_of_flag(2 * (2 * 5) + 0) == f || mm.face_of_flag(2 * (2 * 5) + 1) == f;
        bool t7 = mm.face_of_flag(2 * (2 * 7) + 0) == f || mm.face_of_flag(2 * (2 * 7) + 1) == f;
        if (t5 && t7) outside = f;
    }
    for (int i = 1; i <= 3; ++i) {
        int l = b.add_loop(BranchRef{quartic, i});
        b.place_loop(l, Placement{Placement::Kind::MapFace, comp, outside});
    }
    return b.build();
}

Arrangement two_conics_two_crossings() {
    CurveSystem cs;
    int ca = cs.add_curve("a", 2);
    cs.add_branch(ca, BranchShape::Oval);
    int cb = cs.add_curve("b", 2);
    cs.add_branch(cb, BranchShape::Oval);
    BranchRef A{ca, 0}, B{cb, 0};
    SignedMap m;
    m.add_vertex();
    m.add_vertex();
    m.add_edge(A, +1); // e0 left arc of A
    m.add_edge(A, +1); // e1 lens wall of A
    m.add_edge(B, +1); // e2 right arc of B
    m.add_edge(B, +1); // e3 lens wall of B
    m.set_rotation(0, {4, 0, 6, 2});
    m.set_rotation(1, {3, 7, 1, 5});
    m.seal();
    Arrangement::Builder b(cs);
    int comp = b.add_component(std::move(m));
    const SignedMap& mm = b.component_view(comp);
    int outer = -1;
    for (int f = 0; f < mm.face_count(); ++f) {
        bool t0 = mm.face_of_flag(2 * (2 * 0) + 0) == f || mm.face_of_flag(2 * (2 * 0) + 1) == f;
        bool t2 = mm.face_of_flag(2 * (2 * 2) + 0) == f || mm.face_of_flag(2 * (2 * 2) + 1) == f;
        if (t0 && t2) outer = f;
    }
    b.place_component_background(comp, outer);
    return b.build();
}

} // namespace snakes::fixtures
