#include <algorithm>
#include <future>
#include <set>

#include "snakes/canon/canon.hpp"
#include "snakes/perturb/perturb.hpp"
#include "snakes/restrict/restrict.hpp"

namespace snakes {

namespace {

// Rebuild with chosen vertex flips (rotation reversed, incident edge signs
// toggled) on the single skeleton component; placements are retargeted via
// tracked flags.
Arrangement regauge(const Arrangement& a, int comp, const std::vector<char>& flip) {
    const SignedMap& old = a.component(comp);
    SignedMap m;
    for (int v = 0; v < old.vertex_count(); ++v) m.add_vertex();
    for (int e = 0; e < old.edge_count(); ++e) {
        int flips = 0;
        for (int i = 0; i < 2; ++i)
            if (flip[old.dart_vertex(2 * e + i)]) ++flips;
        m.add_edge(old.edge(e).branch, old.edge(e).sign * ((flips % 2) ? -1 : 1));
    }
    for (int v = 0; v < old.vertex_count(); ++v) {
        std::array<int, 4> rot = old.vertex(v).rot;
        if (flip[v]) std::reverse(rot.begin(), rot.end());
        m.set_rotation(v, rot);
    }
    m.seal();
    std::vector<int> face_map(old.face_count());
    for (int f = 0; f < old.face_count(); ++f) {
        int fl = old.faces()[f].flags[0];
        int d = fl / 2, s = fl % 2;
        face_map[f] = m.face_of_flag(2 * d + (flip[old.dart_vertex(d)] ? 1 - s : s));
    }
    auto map_face = [&](int f) { return face_map[f]; };

    Arrangement::Builder b(a.curves());
    for (int c = 0; c < a.component_count(); ++c) {
        if (c == comp) b.add_component(std::move(m));
        else {
            SignedMap copy = a.component(c);
            b.add_component(std::move(copy));
        }
    }
    for (int l = 0; l < a.loop_count(); ++l) b.add_loop(a.loop(l).branch, a.loop(l).essential);
    auto fix = [&](Placement p) {
        if (p.kind == Placement::Kind::MapFace && p.owner == comp) p.face = map_face(p.face);
        return p;
    };
    for (int c = 0; c < a.component_count(); ++c) {
        int outer = a.component_outer_face(c);
        if (outer < 0) b.place_essential_component(c);
        else
            b.place_component(c, fix(a.component_placement(c)),
                              c == comp ? map_face(outer) : outer);
    }
    for (int l = 0; l < a.loop_count(); ++l) b.place_loop(l, fix(a.loop_placement(l)));
    return b.build();
}

} // namespace

BaseView analyze_base(const Arrangement& arr, int conic_curve) {
    if (arr.curves().curve_count() != 2)
        throw Error(ErrorKind::InvalidArgument, "a base arrangement has exactly two curves");
    if (arr.curves().curve(conic_curve).degree != 2 ||
        arr.curves().curve(conic_curve).branch_count() != 1)
        throw Error(ErrorKind::InvalidArgument, "the auxiliary curve must be a conic oval");
    if (arr.component_count() != 1)
        throw Error(ErrorKind::InvalidArgument, "base skeleton must be connected");

    BaseView view;
    view.conic_curve = conic_curve;
    view.other_curve = 1 - conic_curve;
    BranchRef conic{conic_curve, 0};
    int comp = -1;
    const SignedMap::BranchCycle* cyc = arr.map_cycle_of(conic, &comp);
    if (!cyc) throw Error(ErrorKind::InvalidArgument, "the conic must cross the other curve");
    if (static_cast<int>(cyc->darts.size()) != arr.component(comp).vertex_count() ||
        arr.curve_crossing_count(conic_curve, view.other_curve) !=
            static_cast<int>(cyc->darts.size()))
        throw Error(ErrorKind::InvalidArgument, "every crossing must lie on the conic");
    if (cyc->darts.size() % 2 != 0) throw Error(ErrorKind::InvalidWord, "odd crossing count");

    // Gauge-normalize: all conic-cycle edges get sign +1.
    const SignedMap& m0 = arr.component(comp);
    std::vector<char> flip(m0.vertex_count(), 0);
    for (size_t i = 0; i + 1 < cyc->darts.size(); ++i) {
        int d = cyc->darts[i];
        int u = m0.dart_vertex(d);
        int v = m0.dart_vertex(SignedMap::partner(d));
        int eff = m0.sign_of_dart(d) * (flip[u] ? -1 : 1) * (flip[v] ? -1 : 1);
        if (eff < 0) flip[v] = !flip[v];
    }
    view.arr = regauge(arr, comp, flip);
    view.comp = comp;
    view.k = static_cast<int>(cyc->darts.size()) / 2;

    const SignedMap& m = view.arr.component(comp);
    const SignedMap::BranchCycle* ncyc = m.find_branch(conic);
    for (int d : ncyc->darts) {
        view.out_darts.push_back(d);
        view.cycle_verts.push_back(m.dart_vertex(d));
        view.cycle_edges.push_back(SignedMap::edge_of(d));
        if (m.edge(SignedMap::edge_of(d)).sign != +1)
            throw Error(ErrorKind::InvalidArgument, "conic normalization failed");
        view.left_darts.push_back(m.rot_next(d));
        view.right_darts.push_back(m.rot_prev(d));
    }
    for (size_t i = 0; i < view.cycle_verts.size(); ++i) {
        if (m.branch_of_dart(view.left_darts[i]).curve != view.other_curve ||
            m.branch_of_dart(view.right_darts[i]).curve != view.other_curve)
            throw Error(ErrorKind::InvalidArgument, "conic crossings must meet the other curve");
    }
    return view;
}

int gap_count(const BaseView& base) { return 2 * base.k; }

namespace {

// Shared scaffolding for the two tube constructions: rebuilt map plus the
// table tracking old other-curve edges into it.
struct TubeBuild {
    SignedMap m;
    std::vector<int> edge_of_old; // old other-curve edge -> new edge
};

Arrangement assemble_tube(const BaseView& base, TubeBuild&& tb, int rstar_face,
                          int quartic_curve) {
    const Arrangement& old = base.arr;
    CurveSystem cs = old.curves();
    CurveInfo quartic;
    quartic.name = "s";
    quartic.degree = 4;
    quartic.rank = 0;
    quartic.type = CurveType::I;
    quartic.branches.assign(4, BranchInfo{BranchShape::Oval});
    cs.curves[quartic_curve] = quartic;

    Arrangement::Builder b(cs);
    int comp = b.add_component(std::move(tb.m));
    const SignedMap& m = b.component_view(comp);

    auto map_face = [&](int old_face) {
        const SignedMap& om = old.component(base.comp);
        for (int fl : om.faces()[old_face].flags) {
            if (om.branch_of_dart(fl / 2).curve != base.other_curve) continue;
            int d = fl / 2, s = fl % 2;
            int e = SignedMap::edge_of(d);
            int ne = tb.edge_of_old.at(e);
            return m.face_of_flag(2 * (2 * ne + (d % 2)) + s);
        }
        throw Error(ErrorKind::InvalidArgument, "face has no branch arc to track");
    };

    // Original loops keep their indices; placements are retargeted.
    for (int l = 0; l < old.loop_count(); ++l) b.add_loop(old.loop(l).branch, old.loop(l).essential);
    // New free ovals of the quartic.
    std::vector<int> new_loops;
    for (int i = 1; i <= 3; ++i)
        new_loops.push_back(b.add_loop(BranchRef{quartic_curve, i}));

    int old_outer = old.component_outer_face(base.comp);
    int new_outer = old_outer < 0 ? -1 : map_face(old_outer);
    // Faces that merged into the new outer face resolve to the background.
    auto face_placement = [&](int face) {
        if (new_outer >= 0 && face == new_outer)
            return Placement{Placement::Kind::Background, -1, -1};
        return Placement{Placement::Kind::MapFace, comp, face};
    };
    auto fix = [&](Placement p) {
        if (p.kind == Placement::Kind::MapFace) return face_placement(map_face(p.face));
        return p;
    };
    if (old_outer < 0) {
        // The skeleton was essential; the rebuilt tube map must be too.
        b.place_essential_component(comp);
    } else {
        b.place_component(comp, old.component_placement(base.comp), new_outer);
    }
    for (int l = 0; l < old.loop_count(); ++l) b.place_loop(l, fix(old.loop_placement(l)));
    for (int nl : new_loops) b.place_loop(nl, face_placement(rstar_face));
    Arrangement out = b.build();

    // Construction invariants.
    auto w = detect_snake(out, BranchRef{quartic_curve, 0}, base.other_curve);
    if (!w || w->k != base.k)
        throw Error(ErrorKind::InvalidArgument, "tube construction lost the snake pattern");
    RegionClassification cls = classify_regions(out, *w);
    if (cls.ends_region < 0 || !cls.free_ovals_with_ends)
        throw Error(ErrorKind::InvalidArgument,
                    "free ovals failed to land beside the snake ends");
    return out;
}

} // namespace

Arrangement snake_from_conic(const BaseView& base, int gap) {
    int n = 2 * base.k;
    if (gap < 1 || gap > n) throw Error(ErrorKind::BadGap, "gap must lie in 1..2k");
    const Arrangement& old = base.arr;
    const SignedMap& om = old.component(base.comp);
    int quartic_curve = base.conic_curve;

    // Arc order: crossings with the gap edge removed, starting just after it.
    std::vector<int> arc(n);
    for (int i = 0; i < n; ++i) arc[i] = (gap + i) % n;

    // Vertices: L_i = i (sheet carrying the left-side arcs), R_i = n + i.
    TubeBuild tb;
    for (int i = 0; i < 2 * n; ++i) tb.m.add_vertex();
    BranchRef snake{quartic_curve, 0};
    // Edges 0..n-2: sheet L; n-1: far cap; n..2n-2: sheet R; 2n-1: near cap.
    for (int i = 0; i < n - 1; ++i) tb.m.add_edge(snake, +1);
    tb.m.add_edge(snake, +1); // cap2, id n-1
    for (int i = 0; i < n - 1; ++i) tb.m.add_edge(snake, +1);
    tb.m.add_edge(snake, +1); // cap1, id 2n-1
    int sheetL0 = 0, cap2 = n - 1, sheetR0 = n, cap1 = 2 * n - 1;
    // Rungs 2n..3n-1 carry the crossed branch bits.
    for (int i = 0; i < n; ++i)
        tb.m.add_edge(om.branch_of_dart(base.left_darts[arc[i]]), +1);
    int rung0 = 2 * n;
    // Other-curve arcs copied with their signs.
    tb.edge_of_old.assign(om.edge_count(), -1);
    for (int e = 0; e < om.edge_count(); ++e) {
        if (om.edge(e).branch.curve != base.other_curve) continue;
        tb.edge_of_old[e] = tb.m.add_edge(om.edge(e).branch, om.edge(e).sign);
    }
    // Position of each old crossing along the arc, and the new dart of every
    // old branch dart.
    std::vector<int> arc_pos(n, -1);
    for (int i = 0; i < n; ++i) arc_pos[arc[i]] = i;
    auto new_branch_dart = [&](int old_dart) {
        int e = SignedMap::edge_of(old_dart);
        return 2 * tb.edge_of_old[e] + (old_dart % 2);
    };
    auto sheetL_dart = [&](int i, bool east) {
        if (east) return i < n - 1 ? 2 * (sheetL0 + i) : 2 * cap2;
        return i > 0 ? 2 * (sheetL0 + i - 1) + 1 : 2 * cap1 + 1;
    };
    auto sheetR_dart = [&](int i, bool east) {
        if (east) return i < n - 1 ? 2 * (sheetR0 + i) : 2 * cap2 + 1;
        return i > 0 ? 2 * (sheetR0 + i - 1) + 1 : 2 * cap1;
    };
    for (int i = 0; i < n; ++i) {
        int j = arc[i];
        tb.m.set_rotation(i, {sheetL_dart(i, true), new_branch_dart(base.left_darts[j]),
                              sheetL_dart(i, false), 2 * (rung0 + i)});
        tb.m.set_rotation(n + i, {sheetR_dart(i, true), 2 * (rung0 + i) + 1,
                                  sheetR_dart(i, false), new_branch_dart(base.right_darts[j])});
    }
    tb.m.seal();
    // R*: the non-digon side of the near cap.
    int fa = tb.m.face_of_flag(2 * (2 * cap1) + 0);
    int fb = tb.m.face_of_flag(2 * (2 * cap1) + 1);
    int rstar = (tb.m.faces()[fa].degree() == 2) ? fb : fa;
    return assemble_tube(base, std::move(tb), rstar, quartic_curve);
}

Arrangement chain_nodal_stage(const BaseView& base, int arcIdx) {
    int n = 2 * base.k;
    if (arcIdx < 1 || arcIdx > n) throw Error(ErrorKind::BadArc, "arc must lie in 1..2k");
    const Arrangement& old = base.arr;
    const SignedMap& om = old.component(base.comp);

    CurveSystem cs = old.curves();
    CurveInfo quartic;
    quartic.name = "s";
    quartic.degree = 4;
    quartic.rank = 0;
    quartic.type = CurveType::I;
    quartic.branches.assign(2, BranchInfo{BranchShape::Oval}); // the two circles
    int quartic_curve = base.conic_curve;
    cs.curves[quartic_curve] = quartic;
    BranchRef circleC{quartic_curve, 0}, circleP{quartic_curve, 1};

    std::vector<int> arc(n);
    for (int i = 0; i < n; ++i) arc[i] = (arcIdx + i) % n;

    SignedMap m;
    // X_i = i on the old conic, X'_i = n+i on the near conic, nodes 2n..2n+3.
    for (int i = 0; i < 2 * n + 4; ++i) m.add_vertex();
    auto X = [&](int i) { return i; };
    auto Xp = [&](int i) { return n + i; };
    auto N = [&](int j) { return 2 * n + j; };

    // C edges: arc parts then the subdivided gap through the four nodes.
    std::vector<int> cA(n - 1);
    for (int i = 0; i < n - 1; ++i) cA[i] = m.add_edge(circleC, +1); // X_i -> X_{i+1}
    int g0 = m.add_edge(circleC, +1);                                 // X_{n-1} -> N0
    int g1 = m.add_edge(circleC, +1), g2 = m.add_edge(circleC, +1), g3 = m.add_edge(circleC, +1);
    int g4 = m.add_edge(circleC, +1); // N3 -> X_0
    // Near-conic edges: three short chords and the long parallel run.
    int s0 = m.add_edge(circleP, +1); // N0 -> N1, right side
    int s1 = m.add_edge(circleP, +1); // N1 -> N2, left side
    int s2 = m.add_edge(circleP, +1); // N2 -> N3, right side
    int s3a = m.add_edge(circleP, +1); // N3 -> X'_0
    std::vector<int> cB(n - 1);
    for (int i = 0; i < n - 1; ++i) cB[i] = m.add_edge(circleP, +1); // X'_i -> X'_{i+1}
    int s3b = m.add_edge(circleP, +1); // X'_{n-1} -> N0
    std::vector<int> rung(n);
    for (int i = 0; i < n; ++i)
        rung[i] = m.add_edge(om.branch_of_dart(base.left_darts[arc[i]]), +1); // X_i -> X'_i
    std::vector<int> edge_of_old(om.edge_count(), -1);
    for (int e = 0; e < om.edge_count(); ++e) {
        if (om.edge(e).branch.curve != base.other_curve) continue;
        edge_of_old[e] = m.add_edge(om.edge(e).branch, om.edge(e).sign);
    }
    auto nd = [&](int old_dart) {
        return 2 * edge_of_old[SignedMap::edge_of(old_dart)] + (old_dart % 2);
    };
    // Rotations, all (east, north, west, south) in the tube chart.
    for (int i = 0; i < n; ++i) {
        int j = arc[i];
        int east = (i < n - 1) ? 2 * cA[i] : 2 * g0;
        int west = (i > 0) ? 2 * cA[i - 1] + 1 : 2 * g4 + 1;
        m.set_rotation(X(i), {east, 2 * rung[i], west, nd(base.right_darts[j])});
        int eastp = (i < n - 1) ? 2 * cB[i] : 2 * s3b;
        int westp = (i > 0) ? 2 * cB[i - 1] + 1 : 2 * s3a + 1;
        m.set_rotation(Xp(i), {eastp, nd(base.left_darts[j]), westp, 2 * rung[i] + 1});
    }
    // Nodes: C runs east-west; the near conic passes north-south, with the
    // long run on the north side at N0 and N3.
    m.set_rotation(N(0), {2 * g1, 2 * s3b + 1, 2 * g0 + 1, 2 * s0});
    m.set_rotation(N(1), {2 * g2, 2 * s1, 2 * g1 + 1, 2 * s0 + 1});
    m.set_rotation(N(2), {2 * g3, 2 * s1 + 1, 2 * g2 + 1, 2 * s2});
    m.set_rotation(N(3), {2 * g4, 2 * s3a, 2 * g3 + 1, 2 * s2 + 1});
    m.seal();

    Arrangement::Builder b(cs);
    b.subarrangement_mode(); // the doubled quartic has two oval branches
    int comp = b.add_component(std::move(m));
    const SignedMap& mm = b.component_view(comp);
    auto map_face = [&](int old_face) {
        for (int fl : om.faces()[old_face].flags) {
            if (om.branch_of_dart(fl / 2).curve != base.other_curve) continue;
            int d = fl / 2, s = fl % 2;
            return mm.face_of_flag(2 * (2 * edge_of_old[SignedMap::edge_of(d)] + (d % 2)) + s);
        }
        throw Error(ErrorKind::InvalidArgument, "face has no branch arc to track");
    };
    for (int l = 0; l < old.loop_count(); ++l) b.add_loop(old.loop(l).branch, old.loop(l).essential);
    auto fix = [&](Placement p) {
        if (p.kind == Placement::Kind::MapFace) p.face = map_face(p.face);
        return p;
    };
    int old_outer = old.component_outer_face(base.comp);
    if (old_outer < 0) b.place_essential_component(comp);
    else b.place_component(comp, old.component_placement(base.comp), map_face(old_outer));
    for (int l = 0; l < old.loop_count(); ++l) b.place_loop(l, fix(old.loop_placement(l)));
    return b.build();
}

Arrangement chain_of_digons(const BaseView& base, int arcIdx,
                            const std::vector<std::pair<int, int>>& points4) {
    int n = 2 * base.k;
    if (arcIdx < 1 || arcIdx > n) throw Error(ErrorKind::BadArc, "arc must lie in 1..2k");
    if (points4.size() != 4) throw Error(ErrorKind::BadArc, "need exactly four points");
    std::set<int> ranks;
    for (auto [g, r] : points4) {
        if (g != arcIdx) throw Error(ErrorKind::BadArc, "points must lie on the chosen arc");
        ranks.insert(r);
    }
    if (ranks.size() != 4) throw Error(ErrorKind::BadArc, "points must be distinct");

    const Arrangement& old = base.arr;
    const SignedMap& om = old.component(base.comp);
    int quartic_curve = base.conic_curve;
    std::vector<int> arc(n);
    for (int i = 0; i < n; ++i) arc[i] = (arcIdx + i) % n;

    // Smoothing the four nodes of the doubled conic turns the long digon
    // into the snake tube (walls: the old conic and the parallel conic) and
    // the three short digons into free ovals.  Wall X carries the right-side
    // arcs, wall X' the left-side ones; the caps run through the smoothed
    // end nodes.
    TubeBuild tb;
    BranchRef snake{quartic_curve, 0};
    for (int i = 0; i < 2 * n; ++i) tb.m.add_vertex(); // X_i = i, X'_i = n+i
    std::vector<int> cA(n - 1), cB(n - 1);
    for (int i = 0; i < n - 1; ++i) cA[i] = tb.m.add_edge(snake, +1); // X row
    int capA = tb.m.add_edge(snake, +1); // X_{n-1} .. X'_{n-1} through one end
    for (int i = 0; i < n - 1; ++i) cB[i] = tb.m.add_edge(snake, +1); // X' row
    int capB = tb.m.add_edge(snake, +1); // X'_0 .. X_0 through the other end
    std::vector<int> rung(n);
    for (int i = 0; i < n; ++i)
        rung[i] = tb.m.add_edge(om.branch_of_dart(base.left_darts[arc[i]]), +1);
    tb.edge_of_old.assign(om.edge_count(), -1);
    for (int e = 0; e < om.edge_count(); ++e) {
        if (om.edge(e).branch.curve != base.other_curve) continue;
        tb.edge_of_old[e] = tb.m.add_edge(om.edge(e).branch, om.edge(e).sign);
    }
    auto nd = [&](int old_dart) {
        return 2 * tb.edge_of_old[SignedMap::edge_of(old_dart)] + (old_dart % 2);
    };
    for (int i = 0; i < n; ++i) {
        int j = arc[i];
        int east = (i < n - 1) ? 2 * cA[i] : 2 * capA;
        int west = (i > 0) ? 2 * cA[i - 1] + 1 : 2 * capB + 1;
        tb.m.set_rotation(i, {east, 2 * rung[i], west, nd(base.right_darts[j])});
        int eastp = (i < n - 1) ? 2 * cB[i] : 2 * capA + 1;
        int westp = (i > 0) ? 2 * cB[i - 1] + 1 : 2 * capB;
        tb.m.set_rotation(n + i, {eastp, nd(base.left_darts[j]), westp, 2 * rung[i] + 1});
    }
    tb.m.seal();
    int fa = tb.m.face_of_flag(2 * (2 * capB) + 0);
    int fb = tb.m.face_of_flag(2 * (2 * capB) + 1);
    int rstar = (tb.m.faces()[fa].degree() == 2) ? fb : fa;
    return assemble_tube(base, std::move(tb), rstar, quartic_curve);
}

GenResult enumerate_snakes(const std::vector<Arrangement>& bases, const GenOptions& opt) {
    GenResult out;
    struct Raw {
        Arrangement arr;
        int base_index, gap;
    };
    std::vector<Raw> raws;
    auto run_base = [&](int bi) {
        std::vector<Raw> local;
        BaseView view = analyze_base(bases[bi]);
        for (int gap = 1; gap <= gap_count(view); ++gap)
            local.push_back(Raw{snake_from_conic(view, gap), bi, gap});
        return local;
    };
    if (opt.threads > 1) {
        std::vector<std::future<std::vector<Raw>>> futs;
        for (size_t bi = 0; bi < bases.size(); ++bi)
            futs.push_back(std::async(std::launch::async, run_base, static_cast<int>(bi)));
        for (auto& f : futs)
            for (auto& r : f.get()) raws.push_back(std::move(r));
    } else {
        for (size_t bi = 0; bi < bases.size(); ++bi)
            for (auto& r : run_base(static_cast<int>(bi))) raws.push_back(std::move(r));
    }
    out.total_before_dedupe = static_cast<int>(raws.size());

    CanonOptions copt;
    copt.chiral = opt.chiral;
    std::vector<const Arrangement*> ptrs;
    for (const auto& r : raws) ptrs.push_back(&r.arr);
    DedupeResult dd = dedupe(ptrs, copt);
    for (int idx : dd.kept) {
        GenItem item;
        item.arr = std::move(raws[idx].arr);
        item.base_index = raws[idx].base_index;
        item.gap = raws[idx].gap;
        int other = 1; // analyze_base normalizes conic to curve 0
        auto w = detect_snake(item.arr, BranchRef{0, 0}, other);
        item.coiled = w ? static_cast<int>(w->coiled.size()) : 0;
        item.other_rank = item.arr.curves().curve(other).rank;
        item.other_branches = item.arr.curves().curve(other).branch_count();
        out.histogram[{item.coiled, item.other_rank}] += 1;
        out.kept.push_back(std::move(item));
    }
    return out;
}

} // namespace snakes
