#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "snakes/canon/canon.hpp"
#include "snakes/perturb/perturb.hpp"

namespace snakes {

namespace {

int arc_slot(const SignedMap& m, int flag) {
    int g = m.band(flag);
    int d0 = 2 * SignedMap::edge_of(flag / 2);
    int at_d0 = (flag / 2 == d0) ? flag : g;
    return at_d0 % 2;
}

struct Arm {
    bool is_loop = false;
    int loop = -1;
    int comp = -1, edge = -1, slot = -1;
    int start_flag = -1;
};

struct JoinOutcome {
    Arrangement arr;
    std::map<int, int> loop_map; // old loop -> new loop (-1 consumed)
    std::map<int, int> edge_map; // participant edge -> new edge
    std::vector<int> result_branches;
    int petal_edge_a = -1, petal_edge_b = -1;
    std::array<int, 2> split_a{-1, -1}, split_b{-1, -1}; // halves of consumed arcs
    int side1_region = -1, side2_region = -1;
    std::string cert;
};

Arm resolve_arm(const Arrangement& a, BranchRef oval, int region, int want_edge) {
    Arm arm;
    int li = a.loop_index_of(oval);
    if (li >= 0) {
        if (a.region_around_loop(li) != region)
            throw Error(ErrorKind::NotFacing, "loop does not face the region");
        arm.is_loop = true;
        arm.loop = li;
        return arm;
    }
    int comp = -1;
    const SignedMap::BranchCycle* cyc = a.map_cycle_of(oval, &comp);
    if (!cyc) throw Error(ErrorKind::NotFacing, "no such branch");
    const SignedMap& m = a.component(comp);
    for (int d : cyc->darts) {
        int e = SignedMap::edge_of(d);
        if (want_edge >= 0 && e != want_edge) continue;
        for (int slot = 0; slot < 2; ++slot) {
            int face = m.face_of_flag(2 * (2 * e) + slot);
            if (a.region_of_face(comp, face) != region) continue;
            arm.comp = comp;
            arm.edge = e;
            arm.slot = slot;
            for (int fl : m.faces()[face].flags)
                if (SignedMap::edge_of(fl / 2) == e && arc_slot(m, fl) == slot)
                    arm.start_flag = fl;
            return arm;
        }
    }
    throw Error(ErrorKind::NotFacing, "oval has no arc on the region");
}

JoinOutcome build_join(const Arrangement& a, BranchRef ovalA, BranchRef ovalB, int region,
                       const Arm& armA, const Arm& armB, const JoinOptions& opt,
                       int swap_rotation, int outer_choice) {
    int curve = ovalA.curve;
    std::set<int> parts;
    if (!armA.is_loop) parts.insert(armA.comp);
    if (!armB.is_loop) parts.insert(armB.comp);
    std::vector<int> part_list(parts.begin(), parts.end());

    SignedMap m;
    std::map<int, int> voffset;
    for (int c : part_list) {
        voffset[c] = m.vertex_count();
        for (int v = 0; v < a.component(c).vertex_count(); ++v) m.add_vertex();
    }
    int n = m.add_vertex();

    std::map<std::pair<int, int>, int> dart_map; // (comp, dart) -> new dart
    std::map<int, int> edge_map;
    std::vector<int> orig_branch; // per new edge: old branch id of `curve`, -1 for arms
    int eA = armA.is_loop ? -1 : armA.edge;
    int eB = armB.is_loop ? -1 : armB.edge;
    // The first-pass map labels every edge of the rewired curve with branch
    // 0; the crosswise node mixes branches, so real labels are only known
    // after the straight-through cycles are recomputed.
    auto provisional = [&](BranchRef br) {
        if (br.curve == curve) return BranchRef{curve, 0};
        return br;
    };
    auto note_edge = [&](int ne, BranchRef br) {
        if (static_cast<int>(orig_branch.size()) <= ne) orig_branch.resize(ne + 1, -2);
        orig_branch[ne] = (br.curve == curve) ? br.branch : -2;
    };
    for (int c : part_list) {
        const SignedMap& om = a.component(c);
        for (int e = 0; e < om.edge_count(); ++e) {
            if ((c == armA.comp && e == eA) || (c == armB.comp && e == eB)) continue;
            int ne = m.add_edge(provisional(om.edge(e).branch), om.edge(e).sign);
            note_edge(ne, om.edge(e).branch);
            edge_map[e] = ne;
            dart_map[{c, 2 * e}] = 2 * ne;
            dart_map[{c, 2 * e + 1}] = 2 * ne + 1;
        }
    }
    int aT, aH, bT, bH;
    int petalA = -1, petalB = -1;
    auto make_map_arm = [&](const Arm& arm, int& tail, int& head) -> std::array<int, 2> {
        const SignedMap& om = a.component(arm.comp);
        int dU = arm.start_flag / 2;
        int dV = SignedMap::partner(dU);
        int e1 = m.add_edge(provisional(om.edge(arm.edge).branch), om.edge(arm.edge).sign);
        note_edge(e1, BranchRef{curve, -1});
        int e2 = m.add_edge(provisional(om.edge(arm.edge).branch), +1);
        note_edge(e2, BranchRef{curve, -1});
        dart_map[{arm.comp, dU}] = 2 * e1;
        dart_map[{arm.comp, dV}] = 2 * e2 + 1;
        tail = 2 * e1 + 1;
        head = 2 * e2;
        return {e1, e2};
    };
    std::array<int, 2> splitA{-1, -1}, splitB{-1, -1};
    if (armA.is_loop) {
        petalA = m.add_edge(provisional(a.loop(armA.loop).branch), +1);
        note_edge(petalA, BranchRef{curve, -1});
        aT = 2 * petalA;
        aH = 2 * petalA + 1;
    } else splitA = make_map_arm(armA, aT, aH);
    if (armB.is_loop) {
        petalB = m.add_edge(provisional(a.loop(armB.loop).branch), +1);
        note_edge(petalB, BranchRef{curve, -1});
        bT = 2 * petalB;
        bH = 2 * petalB + 1;
    } else splitB = make_map_arm(armB, bT, bH);

    for (int c : part_list) {
        const SignedMap& om = a.component(c);
        for (int v = 0; v < om.vertex_count(); ++v) {
            std::array<int, 4> rot;
            for (int i = 0; i < 4; ++i) rot[i] = dart_map.at({c, om.vertex(v).rot[i]});
            m.set_rotation(voffset[c] + v, rot);
        }
    }
    // Four crosswise wirings: which half of each consumed arc sits on which
    // side of the node.  With arm signs fixed these are genuinely distinct.
    std::array<int, 4> rot{};
    switch (swap_rotation) {
        case 0: rot = {aT, aH, bT, bH}; break;
        case 1: rot = {aT, aH, bH, bT}; break;
        case 2: rot = {aH, aT, bT, bH}; break;
        default: rot = {aH, aT, bH, bT}; break;
    }
    m.set_rotation(n, rot);
    m.seal();

    // Recompute the rewired curve's cycles and relabel its branches densely.
    std::vector<std::vector<int>> cycles;
    {
        std::set<int> seen;
        for (int d = 0; d < m.dart_count(); ++d) {
            if (m.branch_of_dart(d).curve != curve || seen.count(d)) continue;
            std::vector<int> cyc;
            int x = d;
            do {
                seen.insert(x);
                seen.insert(SignedMap::partner(x));
                cyc.push_back(x);
                x = m.straight_through(SignedMap::partner(x));
            } while (x != d);
            cycles.push_back(std::move(cyc));
        }
    }
    std::vector<int> cycle_branch(cycles.size(), -1);
    std::set<int> consumed{ovalA.branch, ovalB.branch};
    std::vector<int> fresh(consumed.begin(), consumed.end());
    size_t next_fresh = 0;
    std::vector<int> rewired_provisional;
    for (size_t i = 0; i < cycles.size(); ++i) {
        bool touched = false;
        int untouched_label = -1;
        for (int d : cycles[i]) {
            int ob = orig_branch[SignedMap::edge_of(d)];
            if (ob == -1 || consumed.count(ob)) touched = true;
            else untouched_label = ob;
        }
        if (!touched) cycle_branch[i] = untouched_label;
        else {
            if (next_fresh >= fresh.size()) fresh.push_back(static_cast<int>(fresh.size()) + 1000);
            cycle_branch[i] = fresh.at(next_fresh++);
            rewired_provisional.push_back(cycle_branch[i]);
        }
    }
    std::set<int> used(cycle_branch.begin(), cycle_branch.end());
    for (int l = 0; l < a.loop_count(); ++l)
        if (a.loop(l).branch.curve == curve && l != armA.loop && l != armB.loop)
            used.insert(a.loop(l).branch.branch);
    for (int c = 0; c < a.component_count(); ++c) {
        if (parts.count(c)) continue;
        const SignedMap& om = a.component(c);
        for (int e = 0; e < om.edge_count(); ++e)
            if (om.edge(e).branch.curve == curve) used.insert(om.edge(e).branch.branch);
    }
    std::map<int, int> branch_remap;
    for (int bid : used) branch_remap[bid] = static_cast<int>(branch_remap.size());

    SignedMap m2;
    for (int v = 0; v < m.vertex_count(); ++v) m2.add_vertex();
    std::vector<int> edge_branch(m.edge_count(), -1);
    for (size_t i = 0; i < cycles.size(); ++i)
        for (int d : cycles[i]) edge_branch[SignedMap::edge_of(d)] = cycle_branch[i];
    for (int e = 0; e < m.edge_count(); ++e) {
        BranchRef br = m.edge(e).branch;
        if (br.curve == curve) {
            if (edge_branch[e] < 0)
                throw Error(ErrorKind::InvalidArgument, "edge missed by cycle relabeling");
            br.branch = branch_remap.at(edge_branch[e]);
        }
        m2.add_edge(br, m.edge(e).sign);
    }
    for (int v = 0; v < m.vertex_count(); ++v) m2.set_rotation(v, m.vertex(v).rot);
    m2.seal();

    CurveSystem cs = a.curves();
    {
        CurveInfo& ci = cs.curves[curve];
        std::vector<BranchInfo> branches(branch_remap.size());
        for (int bid : used) {
            BranchShape shape = bid < ci.branch_count() ? ci.branches[bid].shape
                                                        : BranchShape::Oval;
            branches[branch_remap[bid]] = BranchInfo{shape};
        }
        for (size_t i = 0; i < cycles.size(); ++i) {
            int sgn = 1;
            for (int d : cycles[i]) sgn *= m.sign_of_dart(d);
            branches[branch_remap.at(cycle_branch[i])] =
                BranchInfo{sgn < 0 ? BranchShape::Pseudoline : BranchShape::Oval};
        }
        ci.branches = branches;
    }

    Arrangement::Builder b(cs);
    b.subarrangement_mode();
    int merged_comp = b.add_component(std::move(m2));
    std::map<int, int> comp_map;
    for (int c : part_list) comp_map[c] = merged_comp;
    for (int c = 0; c < a.component_count(); ++c) {
        if (parts.count(c)) continue;
        SignedMap copy = a.component(c);
        for (int e = 0; e < copy.edge_count(); ++e)
            if (copy.edge(e).branch.curve == curve)
                copy.edge_mut(e).branch.branch = branch_remap.at(copy.edge(e).branch.branch);
        comp_map[c] = b.add_component(std::move(copy));
    }
    std::map<int, int> loop_map;
    for (int l = 0; l < a.loop_count(); ++l) {
        if (l == armA.loop || l == armB.loop) {
            loop_map[l] = -1;
            continue;
        }
        BranchRef br = a.loop(l).branch;
        if (br.curve == curve) br.branch = branch_remap.at(br.branch);
        loop_map[l] = b.add_loop(br, a.loop(l).essential);
    }

    const SignedMap& nm = b.component_view(merged_comp);
    auto track_flag = [&](int comp, int flag) {
        auto it = dart_map.find({comp, flag / 2});
        if (it == dart_map.end())
            throw Error(ErrorKind::InvalidArgument, "cannot track a consumed edge");
        return 2 * it->second + (flag % 2);
    };
    auto track_face = [&](int comp, int face) -> int {
        const SignedMap& om = a.component(comp);
        for (int fl : om.faces()[face].flags) {
            int e = SignedMap::edge_of(fl / 2);
            if ((comp == armA.comp && e == eA) || (comp == armB.comp && e == eB)) continue;
            return nm.face_of_flag(track_flag(comp, fl));
        }
        throw Error(ErrorKind::InvalidArgument, "face lost all reference arcs");
    };
    auto petal_inner_face = [&](int petal) {
        for (int slot = 0; slot < 2; ++slot) {
            int f = nm.face_of_flag(2 * (2 * petal) + slot);
            if (nm.faces()[f].degree() == 1) return f;
        }
        throw Error(ErrorKind::InvalidArgument, "petal has no inner face");
    };

    int side1_face = nm.face_of_flag(2 * aH + 0);
    int side2_face = nm.face_of_flag(2 * bH + 0);

    // Merged component's placement and outer face.
    Placement merged_place;
    int merged_outer;
    bool bg = a.regions()[region].kind == Region::Kind::Background;
    if (!part_list.empty()) {
        int anchor = part_list.front();
        merged_place = a.component_placement(anchor);
        if (merged_place.kind == Placement::Kind::MapFace && parts.count(merged_place.owner))
            throw Error(ErrorKind::InvalidArgument, "self-nested participants");
        int outer = a.component_outer_face(anchor);
        if (outer < 0) merged_outer = -1;
        else if (bg && a.region_of_face(anchor, outer) == region)
            merged_outer = (outer_choice == 0) ? side2_face : side1_face;
        else if (a.region_of_face(anchor, outer) == region && !bg)
            merged_outer = (outer_choice == 0) ? side2_face : side1_face;
        else merged_outer = track_face(anchor, outer);
    } else {
        // Two floating loops: the new eight-figure floats where they did.
        const Region& reg = a.regions()[region];
        switch (reg.kind) {
            case Region::Kind::Background:
                merged_place = Placement{Placement::Kind::Background, -1, -1};
                break;
            case Region::Kind::MapFace:
                merged_place = Placement{Placement::Kind::MapFace, comp_map.at(reg.comp),
                                         reg.face};
                break;
            case Region::Kind::LoopInside:
                merged_place = Placement{Placement::Kind::LoopInside,
                                         loop_map.at(reg.loop), -1};
                break;
        }
        // Outer face: the one that is neither petal interior.
        merged_outer = -1;
        for (int f = 0; f < nm.face_count(); ++f)
            if (nm.faces()[f].degree() > 1) merged_outer = f;
    }

    std::set<int> side1_loops(opt.children_side1.begin(), opt.children_side1.end());
    // The merged component's outer face stands for whatever region surrounds
    // it, so placements into it resolve to the component's own placement.
    auto normalize_face = [&](int f) -> Placement {
        if (f == merged_outer) return merged_place;
        return Placement{Placement::Kind::MapFace, merged_comp, f};
    };
    auto split_target = [&](bool to_side1) -> Placement {
        // Consuming a loop leaves the region in one piece wrapped around the
        // petal; only edge-edge joins genuinely split it.
        int petal = armB.is_loop ? petalB : (armA.is_loop ? petalA : -1);
        if (petal >= 0) {
            for (int slot = 0; slot < 2; ++slot) {
                int f = nm.face_of_flag(2 * (2 * petal) + slot);
                if (nm.faces()[f].degree() != 1) return normalize_face(f);
            }
        }
        return normalize_face(to_side1 ? side1_face : side2_face);
    };
    std::function<Placement(Placement)> fix_placement = [&](Placement p) -> Placement {
        if (p.kind == Placement::Kind::Background) return p;
        if (p.kind == Placement::Kind::LoopInside) {
            int nl = loop_map.at(p.owner);
            if (nl >= 0) return Placement{Placement::Kind::LoopInside, nl, -1};
            int petal = (p.owner == armA.loop) ? petalA : petalB;
            return normalize_face(petal_inner_face(petal));
        }
        int nc = comp_map.at(p.owner);
        int nf = parts.count(p.owner) ? track_face(p.owner, p.face) : p.face;
        if (nc == merged_comp) return normalize_face(nf);
        return Placement{Placement::Kind::MapFace, nc, nf};
    };

    for (int c = 0; c < a.component_count(); ++c) {
        if (parts.count(c) && c != (part_list.empty() ? -1 : part_list.front())) continue;
        bool is_merged = !part_list.empty() && c == part_list.front();
        if (is_merged) {
            Placement p = merged_place.kind == Placement::Kind::MapFace ||
                                  merged_place.kind == Placement::Kind::LoopInside
                              ? fix_placement(merged_place)
                              : merged_place;
            b.place_component(merged_comp, p, merged_outer);
        } else {
            const Placement& p = a.component_placement(c);
            bool child = a.region_of_placement_public(p) == region;
            Placement np = child ? split_target(true) : fix_placement(p);
            b.place_component(comp_map.at(c), np, c == a.essential_component()
                                                      ? -1
                                                      : a.component_outer_face(c));
        }
    }
    if (part_list.empty()) b.place_component(merged_comp, merged_place, merged_outer);

    for (int l = 0; l < a.loop_count(); ++l) {
        int nl = loop_map.at(l);
        if (nl < 0) continue;
        const Placement& p = a.loop_placement(l);
        bool child = a.region_of_placement_public(p) == region;
        Placement np = child ? split_target(side1_loops.empty() || side1_loops.count(l))
                             : fix_placement(p);
        b.place_loop(nl, np);
    }

    JoinOutcome out{b.build(), loop_map, edge_map, {}, petalA, petalB, splitA, splitB, -1, -1, ""};
    for (int rb : rewired_provisional) out.result_branches.push_back(branch_remap.at(rb));
    out.side1_region = out.arr.region_of_face(merged_comp, side1_face);
    out.side2_region = out.arr.region_of_face(merged_comp, side2_face);
    out.cert = canonical_form(out.arr).bytes;
    return out;
}

std::vector<JoinOutcome> join_candidates(const Arrangement& a, BranchRef ovalA, BranchRef ovalB,
                                         int region, const JoinOptions& opt) {
    if (ovalA.curve != ovalB.curve)
        throw Error(ErrorKind::NotFacing, "arcs must belong to one curve");
    auto valid_branch = [&](BranchRef r) {
        return r.curve >= 0 && r.curve < a.curves().curve_count() && r.branch >= 0 &&
               r.branch < a.curves().curve(r.curve).branch_count();
    };
    if (!valid_branch(ovalA) || !valid_branch(ovalB))
        throw Error(ErrorKind::NotFacing, "no such branch");
    if (ovalA == ovalB && (opt.edge_a < 0 || opt.edge_b < 0 || opt.edge_a == opt.edge_b))
        throw Error(ErrorKind::NotFacing, "a self-join needs two distinct arcs");
    if (a.homology_class(ovalA) != 0 || a.homology_class(ovalB) != 0)
        throw Error(ErrorKind::NotAnOval, "joins connect ovals");
    if (region < 0 || region >= a.region_count())
        throw Error(ErrorKind::InvalidArgument, "no such region");
    for (int l : a.regions()[region].child_loops)
        if (a.loop(l).branch.curve != ovalA.curve)
            throw Error(ErrorKind::RegionMeetsCk, "region holds ovals of the other curve");

    Arm armA = resolve_arm(a, ovalA, region, opt.edge_a);
    Arm armB = resolve_arm(a, ovalB, region, opt.edge_b);
    for (int c : a.regions()[region].child_comps)
        if (c != armA.comp && c != armB.comp)
            throw Error(ErrorKind::RegionMeetsCk, "region holds other components");
    if (!armA.is_loop && !armB.is_loop && armA.comp == armB.comp && armA.edge == armB.edge)
        throw Error(ErrorKind::NotFacing, "arcs must be distinct");
    if (armA.is_loop && armB.is_loop && armA.loop == armB.loop)
        throw Error(ErrorKind::NotFacing, "arcs must be distinct");

    bool bg = a.regions()[region].kind == Region::Kind::Background;
    std::vector<JoinOutcome> outcomes;
    for (int swap = 0; swap < 4; ++swap)
        for (int outer_choice = 0; outer_choice < (bg ? 2 : 1); ++outer_choice) {
            try {
                outcomes.push_back(
                    build_join(a, ovalA, ovalB, region, armA, armB, opt, swap, outer_choice));
            } catch (const Error& e) {
                if (getenv("SNAKES_JOIN_DEBUG"))
                    fprintf(stderr, "candidate swap=%d outer=%d: %s\n", swap, outer_choice,
                            e.what());
            }
        }
    if (outcomes.empty())
        throw Error(ErrorKind::NotFacing, "no consistent crosswise reconnection");
    std::sort(outcomes.begin(), outcomes.end(),
              [](const JoinOutcome& x, const JoinOutcome& y) { return x.cert < y.cert; });
    return outcomes;
}

JoinOutcome join_rich(const Arrangement& a, BranchRef ovalA, BranchRef ovalB, int region,
                      const JoinOptions& opt) {
    return std::move(join_candidates(a, ovalA, ovalB, region, opt).front());
}

} // namespace

Arrangement modify_join(const Arrangement& a, BranchRef ovalA, BranchRef ovalB, int region,
                        const JoinOptions& opt) {
    return join_rich(a, ovalA, ovalB, region, opt).arr;
}

namespace {

struct SubFaces {
    std::vector<int> class_of;
    std::set<int> digon_classes;
};

// Complement classes of the quartic alone: full regions glued across the
// other curve's arcs; classes bounded by exactly two quartic runs are the
// digons of the doubled conic.
SubFaces quartic_subfaces(const Arrangement& a, int quartic_curve) {
    SubFaces sf;
    int R = a.region_count();
    std::vector<int> parent(R);
    for (int i = 0; i < R; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& arc : a.dual()) {
        if (arc.crossed.curve < 0 || arc.crossed.curve == quartic_curve) continue;
        parent[find(arc.region_a)] = find(arc.region_b);
    }
    sf.class_of.resize(R);
    for (int i = 0; i < R; ++i) sf.class_of[i] = find(i);

    // Boundary walks of the quartic-only complement: traverse face walks,
    // crossing the other curve's edges transparently.  A sub-face is a digon
    // iff it has a single walk turning at exactly two quartic self-nodes.
    std::map<int, std::pair<int, int>> walks_per_class; // class -> (walks, node turns)
    for (int c = 0; c < a.component_count(); ++c) {
        const SignedMap& m = a.component(c);
        auto is_node = [&](int v) {
            for (int d : m.vertex(v).rot)
                if (m.branch_of_dart(d).curve != quartic_curve) return false;
            return true;
        };
        std::set<int> visited;
        for (int f0 = 0; f0 < m.face_count(); ++f0)
            for (int start : m.faces()[f0].flags) {
                if (m.branch_of_dart(start / 2).curve != quartic_curve) continue;
                if (visited.count(start)) continue;
                int cls = sf.class_of[a.region_of_face(c, m.face_of_flag(start))];
                int turns = 0;
                int fl = start;
                do {
                    visited.insert(fl);
                    visited.insert(m.band(fl));
                    int y = m.corner(m.band(fl));
                    while (m.branch_of_dart(y / 2).curve != quartic_curve) {
                        // Pass through the foreign edge to its far side.
                        int d = y / 2, s = y % 2;
                        y = m.corner(2 * d + (1 - s));
                    }
                    if (is_node(m.dart_vertex(y / 2))) ++turns;
                    fl = y;
                } while (fl != start);
                auto& slot = walks_per_class[cls];
                slot.first += 1;
                slot.second += turns;
            }
    }
    for (auto& [cls, wt] : walks_per_class)
        if (wt.first == 1 && wt.second == 2) sf.digon_classes.insert(cls);
    return sf;
}

} // namespace

DegenerationResult degenerate_to_two_conics(const Arrangement& snake_arr) {
    if (snake_arr.curves().curve_count() != 2)
        throw Error(ErrorKind::InvalidArgument, "expected a two-curve arrangement");
    int qc = -1, other = -1;
    SnakeWitness w;
    for (int c = 0; c < 2 && qc < 0; ++c)
        for (const BranchRef& b : snake_arr.branches_of(c)) {
            if (snake_arr.branch_is_loop(b) || snake_arr.homology_class(b) != 0) continue;
            auto cand = detect_snake(snake_arr, b, 1 - c);
            if (cand) {
                qc = c;
                other = 1 - c;
                w = *cand;
                break;
            }
        }
    if (qc < 0) throw Error(ErrorKind::InvalidArgument, "no snake witness found");
    const CurveInfo& qi = snake_arr.curves().curve(qc);
    if (qi.degree != 4 || qi.branch_count() != 4 || qi.rank != 0)
        throw Error(ErrorKind::InvalidArgument, "degeneration needs an M-quartic snake curve");

    RegionClassification cls = classify_regions(snake_arr, w);
    if (cls.ends_region < 0 || !cls.free_ovals_with_ends)
        throw Error(ErrorKind::InvalidArgument, "free ovals must sit beside the snake ends");

    int comp = -1;
    snake_arr.map_cycle_of(w.snake, &comp);
    const SignedMap& sm = snake_arr.component(comp);
    std::array<int, 2> caps{-1, -1};
    for (int side = 0; side < 2; ++side) {
        const Region& reg = snake_arr.regions()[w.end_regions[side]];
        for (int fl : sm.faces()[reg.face].flags)
            if (sm.branch_of_dart(fl / 2) == w.snake) caps[side] = SignedMap::edge_of(fl / 2);
    }

    // Drive the four modifications with backtracking over the candidate
    // reconnections: a locally valid join can still leave the crosscap on
    // the wrong side of the corridor, which only shows up downstream.
    struct ChainState {
        Arrangement arr;
        BranchRef chain;
        int cap2_edge;
        int petal;
    };
    std::function<std::optional<Arrangement>(ChainState, int)> drive =
        [&](ChainState st, int step) -> std::optional<Arrangement> {
        if (step == 4) return std::move(st.arr);
        const Arrangement& cur = st.arr;
        std::vector<int> frees;
        for (const BranchRef& fb : free_branches(cur, qc)) {
            int li = cur.loop_index_of(fb);
            if (li >= 0) frees.push_back(li);
        }
        JoinOptions opt;
        BranchRef A = st.chain, B;
        int region = -1;
        if (step == 0) {
            opt.edge_a = caps[0];
            B = cur.loop(frees[0]).branch;
            region = cur.region_around_loop(frees[0]);
        } else if (step < 3) {
            opt.edge_a = st.petal;
            B = cur.loop(frees[0]).branch;
            region = cur.region_around_loop(frees[0]);
        } else {
            opt.edge_a = st.petal;
            opt.edge_b = st.cap2_edge;
            B = st.chain;
            const SignedMap& cm = cur.component(0);
            for (int slot = 0; slot < 2; ++slot) {
                int f = cm.face_of_flag(2 * (2 * st.petal) + slot);
                if (cm.faces()[f].degree() != 1) region = cur.region_of_face(0, f);
            }
            if (region < 0) return std::nullopt;
        }
        for (int l = 0; l < cur.loop_count(); ++l) opt.children_side1.push_back(l);
        std::vector<JoinOutcome> cands;
        try {
            cands = join_candidates(cur, A, B, region, opt);
        } catch (const Error&) {
            return std::nullopt;
        }
        auto digon_face = [&](const JoinOutcome& c, const std::array<int, 2>& halves,
                              bool with_rung) {
            if (halves[0] < 0) return false;
            const SignedMap& mm = c.arr.component(0);
            for (int f = 0; f < mm.face_count(); ++f) {
                std::vector<int> qs;
                int foreign = 0;
                for (int fl : mm.faces()[f].flags) {
                    int e = SignedMap::edge_of(fl / 2);
                    if (mm.branch_of_dart(fl / 2).curve == qc) qs.push_back(e);
                    else ++foreign;
                }
                std::sort(qs.begin(), qs.end());
                std::vector<int> want{std::min(halves[0], halves[1]),
                                      std::max(halves[0], halves[1])};
                if (qs == want && foreign == (with_rung ? 1 : 0)) return true;
            }
            return false;
        };
        for (auto& c : cands) {
            bool ok = (step == 0)   ? digon_face(c, c.split_a, true)
                      : (step < 3) ? digon_face(c, c.split_a, false)
                                   : digon_face(c, c.split_a, false) &&
                                         digon_face(c, c.split_b, true);
            if (!ok) continue;
            ChainState next{c.arr, st.chain, st.cap2_edge, st.petal};
            if (step < 3) {
                next.petal = c.petal_edge_b;
                auto it = c.edge_map.find(st.cap2_edge);
                if (it == c.edge_map.end()) continue;
                next.cap2_edge = it->second;
                if (!c.result_branches.empty())
                    next.chain = BranchRef{qc, c.result_branches[0]};
            }
            if (auto done = drive(std::move(next), step + 1)) return done;
        }
        return std::nullopt;
    };
    std::optional<Arrangement> final =
        drive(ChainState{snake_arr, w.snake, caps[1], -1}, 0);
    if (!final)
        throw Error(ErrorKind::InvalidArgument,
                    "no sequence of crosswise reconnections degenerates the snake");
    Arrangement cur = std::move(*final);

    DegenerationResult out{std::move(cur), {}, false, false};
    std::vector<BranchRef> circles;
    for (const BranchRef& b : out.nodal.branches_of(qc))
        if (!out.nodal.branch_is_loop(b)) circles.push_back(b);
    out.split_into_two =
        (circles.size() == 2) && out.nodal.curves().curve(qc).branch_count() == 2;
    for (const BranchRef& b : circles) {
        int count = 0;
        for (const BranchRef& ob : out.nodal.branches_of(other))
            count += out.nodal.crossing_count(b, ob);
        out.circle_crossings.push_back(count);
    }
    SubFaces sf = quartic_subfaces(out.nodal, qc);
    out.digons_empty = (sf.digon_classes.size() == 4);
    for (const BranchRef& b : free_branches(out.nodal, other)) {
        int li = out.nodal.loop_index_of(b);
        if (li < 0) continue;
        if (sf.digon_classes.count(sf.class_of[out.nodal.region_around_loop(li)]))
            throw Error(ErrorKind::DigonOccupied,
                        "an oval of the other curve sits inside a digon");
    }
    return out;
}

} // namespace snakes
