#include "snakes/core/arrangement.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace snakes {

// ---------------------------------------------------------------- curves --

int CurveSystem::add_curve(std::string name, int degree, int rank, CurveType type) {
    CurveInfo ci;
    ci.name = std::move(name);
    ci.degree = degree;
    ci.rank = rank;
    ci.type = type;
    curves.push_back(std::move(ci));
    return curve_count() - 1;
}

int CurveSystem::add_branch(int curve, BranchShape shape) {
    curves.at(curve).branches.push_back(BranchInfo{shape});
    return curves.at(curve).branch_count() - 1;
}

int CurveSystem::find_curve(const std::string& name) const {
    for (int i = 0; i < curve_count(); ++i)
        if (curves[i].name == name) return i;
    return -1;
}

void CurveSystem::validate() const {
    for (const auto& c : curves) {
        if (c.degree <= 0)
            throw Error(ErrorKind::InvalidArgument, "curve " + c.name + " has degree 0");
        int pseudolines = 0;
        for (const auto& b : c.branches)
            if (b.shape == BranchShape::Pseudoline) ++pseudolines;
        int expected = (c.degree % 2 == 1) ? 1 : 0;
        if (pseudolines != expected)
            throw Error(ErrorKind::InvalidArgument,
                        "curve " + c.name + " of degree " + std::to_string(c.degree) +
                            " must have " + std::to_string(expected) + " pseudoline(s), has " +
                            std::to_string(pseudolines));
        if (c.branch_count() > c.m_branch_count() - c.rank)
            throw Error(ErrorKind::InvalidArgument,
                        "curve " + c.name + " has more branches than its rank allows");
    }
}

const char* curve_type_name(CurveType t) {
    switch (t) {
        case CurveType::I: return "I";
        case CurveType::II: return "II";
        default: return "unknown";
    }
}

CurveType curve_type_from(const std::string& s) {
    if (s == "I") return CurveType::I;
    if (s == "II") return CurveType::II;
    return CurveType::Unknown;
}

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::ChiMismatch: return "ChiMismatch";
        case ErrorKind::DanglingContainment: return "DanglingContainment";
        case ErrorKind::NonTransverseVertex: return "NonTransverseVertex";
        case ErrorKind::NotAnOval: return "NotAnOval";
        case ErrorKind::BadGap: return "BadGap";
        case ErrorKind::BadArc: return "BadArc";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::AmbiguousEmbedding: return "AmbiguousEmbedding";
        case ErrorKind::InvalidWord: return "InvalidWord";
        case ErrorKind::RegionMeetsCk: return "RegionMeetsCk";
        case ErrorKind::NotFacing: return "NotFacing";
        case ErrorKind::DigonOccupied: return "DigonOccupied";
        case ErrorKind::OddDegreeUnion: return "OddDegreeUnion";
        case ErrorKind::GammaMismatch: return "GammaMismatch";
        case ErrorKind::ConditionsFail: return "ConditionsFail";
        case ErrorKind::SchemaError: return "SchemaError";
        case ErrorKind::DuplicateId: return "DuplicateId";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

// --------------------------------------------------------------- builder --

int Arrangement::Builder::add_component(SignedMap m) {
    if (!m.sealed()) m.seal();
    if (!m.connected())
        throw Error(ErrorKind::InvalidArgument, "component must be connected");
    arr_.comps_.push_back(std::move(m));
    arr_.comp_place_.push_back(Placement{});
    arr_.comp_outer_.push_back(-1);
    comp_placed_.push_back(false);
    return arr_.component_count() - 1;
}

int Arrangement::Builder::add_loop(BranchRef branch, bool essential) {
    arr_.loops_.push_back(Loop{branch, essential});
    arr_.loop_place_.push_back(Placement{});
    loop_placed_.push_back(false);
    return arr_.loop_count() - 1;
}

void Arrangement::Builder::place_component_background(int comp, int outer_face) {
    place_component(comp, Placement{Placement::Kind::Background, -1, -1}, outer_face);
}

void Arrangement::Builder::place_component(int comp, Placement where, int outer_face) {
    arr_.comp_place_.at(comp) = where;
    arr_.comp_outer_.at(comp) = outer_face;
    comp_placed_.at(comp) = true;
}

void Arrangement::Builder::place_essential_component(int comp) {
    place_component(comp, Placement{Placement::Kind::Background, -1, -1}, -1);
}

void Arrangement::Builder::place_loop(int loopIdx, Placement where) {
    arr_.loop_place_.at(loopIdx) = where;
    loop_placed_.at(loopIdx) = true;
}

Arrangement Arrangement::Builder::build() {
    Arrangement& a = arr_;
    if (!relaxed_) a.curves_.validate();
    for (size_t i = 0; i < comp_placed_.size(); ++i)
        if (!comp_placed_[i])
            throw Error(ErrorKind::DanglingContainment,
                        "component " + std::to_string(i) + " was never placed");
    for (size_t i = 0; i < loop_placed_.size(); ++i)
        if (!loop_placed_[i])
            throw Error(ErrorKind::DanglingContainment,
                        "loop " + std::to_string(i) + " was never placed");

    // Identify essential entities and check capped characteristics.
    a.essential_comp_ = -1;
    a.essential_loop_ = -1;
    for (int i = 0; i < a.component_count(); ++i) {
        int chi = a.comps_[i].capped_chi();
        if (chi != 1 && chi != 2)
            throw Error(ErrorKind::ChiMismatch,
                        "component " + std::to_string(i) + " caps to chi=" +
                            std::to_string(chi) + ", expected 1 or 2");
        if (chi == 1) {
            if (a.essential_comp_ >= 0)
                throw Error(ErrorKind::ChiMismatch, "two essential components cannot coexist");
            a.essential_comp_ = i;
        }
    }
    for (int i = 0; i < a.loop_count(); ++i) {
        if (!a.loops_[i].essential) continue;
        if (a.essential_loop_ >= 0 || a.essential_comp_ >= 0)
            throw Error(ErrorKind::ChiMismatch, "two essential entities cannot coexist");
        a.essential_loop_ = i;
        if (a.loop_place_[i].kind != Placement::Kind::Background)
            throw Error(ErrorKind::ChiMismatch, "a one-sided loop cannot lie in a disk face");
    }
    if (a.essential_comp_ >= 0) {
        if (a.comp_place_[a.essential_comp_].kind != Placement::Kind::Background)
            throw Error(ErrorKind::ChiMismatch, "the essential component must be the root");
        if (a.comp_outer_[a.essential_comp_] != -1)
            throw Error(ErrorKind::InvalidArgument, "essential component has no outer face");
        for (int i = 0; i < a.component_count(); ++i)
            if (i != a.essential_comp_ && a.comp_place_[i].kind == Placement::Kind::Background)
                throw Error(ErrorKind::ChiMismatch,
                            "background placement is ambiguous next to an essential component");
        for (int i = 0; i < a.loop_count(); ++i)
            if (a.loop_place_[i].kind == Placement::Kind::Background)
                throw Error(ErrorKind::ChiMismatch,
                            "background placement is ambiguous next to an essential component");
    }
    for (int i = 0; i < a.component_count(); ++i) {
        bool essential = (i == a.essential_comp_);
        int outer = a.comp_outer_[i];
        if (!essential) {
            if (outer < 0 || outer >= a.comps_[i].face_count())
                throw Error(ErrorKind::DanglingContainment,
                            "component " + std::to_string(i) + " has no valid outer face");
        }
    }

    // Placement targets must exist and must not create cycles.
    auto check_target = [&](const Placement& p, const std::string& what) {
        switch (p.kind) {
            case Placement::Kind::Background: break;
            case Placement::Kind::MapFace:
                if (p.owner < 0 || p.owner >= a.component_count())
                    throw Error(ErrorKind::DanglingContainment, what + ": no such component");
                if (p.face < 0 || p.face >= a.comps_[p.owner].face_count())
                    throw Error(ErrorKind::DanglingContainment, what + ": no such face");
                if (p.owner != a.essential_comp_ && p.face == a.comp_outer_[p.owner])
                    throw Error(ErrorKind::DanglingContainment,
                                what + ": cannot place into the outer face");
                break;
            case Placement::Kind::LoopInside:
                if (p.owner < 0 || p.owner >= a.loop_count())
                    throw Error(ErrorKind::DanglingContainment, what + ": no such loop");
                if (a.loops_[p.owner].essential)
                    throw Error(ErrorKind::DanglingContainment,
                                what + ": a one-sided loop bounds no disk");
                break;
        }
    };
    for (int i = 0; i < a.component_count(); ++i)
        check_target(a.comp_place_[i], "component " + std::to_string(i));
    for (int i = 0; i < a.loop_count(); ++i)
        check_target(a.loop_place_[i], "loop " + std::to_string(i));

    // Forest acyclicity: walk to the background from every entity.
    auto parent_of = [&](bool isLoop, int idx) -> std::pair<int, int> {
        const Placement& p = isLoop ? a.loop_place_[idx] : a.comp_place_[idx];
        if (p.kind == Placement::Kind::Background) return {-1, -1};
        if (p.kind == Placement::Kind::MapFace) return {0, p.owner};
        return {1, p.owner};
    };
    for (int start = 0; start < a.component_count() + a.loop_count(); ++start) {
        bool isLoop = start >= a.component_count();
        int idx = isLoop ? start - a.component_count() : start;
        int steps = 0;
        auto cur = std::make_pair(isLoop ? 1 : 0, idx);
        while (cur.second != -1) {
            cur = parent_of(cur.first == 1, cur.second);
            if (++steps > a.component_count() + a.loop_count() + 1)
                throw Error(ErrorKind::DanglingContainment, "containment forest has a cycle");
        }
    }

    a.build_regions();
    a.validate_branches();
    a.validate_chi();
    a.validate_bezout();
    return std::move(arr_);
}

// --------------------------------------------------------------- regions --

void Arrangement::build_regions() {
    regions_.clear();
    dual_.clear();
    region_arcs_.clear();
    face_region_.assign(component_count(), {});
    loop_inside_region_.assign(loop_count(), -1);
    background_region_ = -1;

    if (essential_comp_ < 0) {
        Region bg;
        bg.kind = Region::Kind::Background;
        bg.disk = (essential_loop_ >= 0);
        background_region_ = 0;
        regions_.push_back(bg);
    }
    for (int c = 0; c < component_count(); ++c) {
        face_region_[c].assign(comps_[c].face_count(), -1);
        for (int f = 0; f < comps_[c].face_count(); ++f) {
            if (c != essential_comp_ && f == comp_outer_[c]) continue;
            Region r;
            r.kind = Region::Kind::MapFace;
            r.comp = c;
            r.face = f;
            r.disk = true;
            face_region_[c][f] = static_cast<int>(regions_.size());
            regions_.push_back(r);
        }
    }
    for (int l = 0; l < loop_count(); ++l) {
        if (loops_[l].essential) continue;
        Region r;
        r.kind = Region::Kind::LoopInside;
        r.loop = l;
        r.disk = true;
        loop_inside_region_[l] = static_cast<int>(regions_.size());
        regions_.push_back(r);
    }

    auto region_of_placement = [&](const Placement& p) -> int {
        switch (p.kind) {
            case Placement::Kind::Background: return background_region_;
            case Placement::Kind::MapFace: return face_region_[p.owner][p.face];
            case Placement::Kind::LoopInside: return loop_inside_region_[p.owner];
        }
        return -1;
    };
    for (int c = 0; c < component_count(); ++c) {
        if (c == essential_comp_) continue;
        int r = region_of_placement(comp_place_[c]);
        if (r < 0) throw Error(ErrorKind::DanglingContainment, "component placed into an outer face");
        regions_[r].child_comps.push_back(c);
    }
    for (int l = 0; l < loop_count(); ++l) {
        int r = region_of_placement(loop_place_[l]);
        if (r < 0) throw Error(ErrorKind::DanglingContainment, "loop placed into an outer face");
        regions_[r].child_loops.push_back(l);
    }
    for (auto& r : regions_) {
        int holes = static_cast<int>(r.child_comps.size());
        for (int l : r.child_loops)
            if (!loops_[l].essential) ++holes;
        r.chi = 1 - holes;
        if (r.kind == Region::Kind::Background && essential_loop_ < 0) {
            // The unique non-disk region: a Moebius band once anything is
            // placed in it, the whole plane when the arrangement is empty.
        }
    }

    // ---- dual arcs ----
    // Per-component coherent orientation: flip bits over the face-adjacency
    // tree make tree edges transport-free; the leftover flips on co-tree
    // edges represent the first Stiefel-Whitney class.
    for (int c = 0; c < component_count(); ++c) {
        const SignedMap& m = comps_[c];
        int F = m.face_count();
        std::vector<int> flip(F, -1);
        std::queue<int> q;
        flip[0] = 0;
        q.push(0);
        std::vector<std::array<int, 2>> edge_faces(m.edge_count());
        for (int e = 0; e < m.edge_count(); ++e) {
            edge_faces[e][0] = m.face_of_flag(2 * (2 * e) + 0);
            edge_faces[e][1] = m.face_of_flag(2 * (2 * e) + 1);
        }
        std::vector<std::vector<std::pair<int, int>>> adj(F); // (other face, edge)
        for (int e = 0; e < m.edge_count(); ++e) {
            adj[edge_faces[e][0]].push_back({edge_faces[e][1], e});
            adj[edge_faces[e][1]].push_back({edge_faces[e][0], e});
        }
        while (!q.empty()) {
            int f = q.front();
            q.pop();
            for (auto [g, e] : adj[f]) {
                int want = flip[f] ^ (m.edge_flips_orientation(e) ? 1 : 0);
                if (flip[g] == -1) {
                    flip[g] = want;
                    q.push(g);
                }
            }
        }
        for (int e = 0; e < m.edge_count(); ++e) {
            DualArc arc;
            arc.comp = c;
            arc.edge = e;
            arc.crossed = m.edge(e).branch;
            int fa = edge_faces[e][0], fb = edge_faces[e][1];
            arc.flips = (flip[fa] ^ flip[fb] ^ (m.edge_flips_orientation(e) ? 1 : 0)) != 0;
            arc.region_a = region_of_face(c, fa);
            arc.region_b = region_of_face(c, fb);
            dual_.push_back(arc);
        }
    }
    for (int l = 0; l < loop_count(); ++l) {
        DualArc arc;
        arc.loop = l;
        arc.crossed = loops_[l].branch;
        if (loops_[l].essential) {
            arc.region_a = arc.region_b = background_region_;
            arc.flips = true;
        } else {
            arc.region_a = loop_inside_region_[l];
            arc.region_b = region_of_placement_public(loop_place_[l]);
            arc.flips = false;
        }
        dual_.push_back(arc);
    }
    if (essential_comp_ < 0 && essential_loop_ < 0) {
        // The 1-skeleton misses the non-contractible class: paths may slip
        // around the crosscap inside the background region for free.
        DualArc arc;
        arc.region_a = arc.region_b = background_region_;
        arc.flips = true;
        dual_.push_back(arc);
    }

    region_arcs_.assign(region_count(), {});
    for (int i = 0; i < static_cast<int>(dual_.size()); ++i) {
        region_arcs_[dual_[i].region_a].push_back(i);
        if (dual_[i].region_b != dual_[i].region_a)
            region_arcs_[dual_[i].region_b].push_back(i);
    }
}

int Arrangement::region_of_face(int comp, int face) const {
    int r = face_region_[comp][face];
    if (r >= 0) return r;
    // Outer face: resolve to the placement region of the component.
    return region_of_placement_public(comp_place_[comp]);
}

int Arrangement::region_of_placement_public(const Placement& p) const {
    switch (p.kind) {
        case Placement::Kind::Background: return background_region_;
        case Placement::Kind::MapFace: return face_region_[p.owner][p.face];
        case Placement::Kind::LoopInside: return loop_inside_region_[p.owner];
    }
    return -1;
}

int Arrangement::region_inside_loop(int loopIdx) const { return loop_inside_region_.at(loopIdx); }

int Arrangement::region_around_loop(int loopIdx) const {
    return region_of_placement_public(loop_place_.at(loopIdx));
}

int Arrangement::region_around_component(int comp) const {
    return region_of_placement_public(comp_place_.at(comp));
}

// ----------------------------------------------------------- validation --

void Arrangement::validate_chi() const {
    int chi = euler_characteristic();
    if (chi != 1)
        throw Error(ErrorKind::ChiMismatch,
                    "assembled surface has chi=" + std::to_string(chi) + ", expected 1");
}

int Arrangement::total_vertex_count() const {
    int n = 0;
    for (const auto& m : comps_) n += m.vertex_count();
    return n;
}

int Arrangement::total_edge_count() const {
    int n = 0;
    for (const auto& m : comps_) n += m.edge_count();
    return n;
}

int Arrangement::euler_characteristic() const {
    int chi = total_vertex_count() - total_edge_count();
    for (const auto& r : regions_) chi += r.chi;
    return chi;
}

void Arrangement::validate_branches() const {
    std::map<std::pair<int, int>, int> found; // -> one-sidedness
    for (const auto& m : comps_)
        for (const auto& cyc : m.branch_cycles()) {
            auto key = std::make_pair(cyc.branch.curve, cyc.branch.branch);
            if (found.count(key))
                throw Error(ErrorKind::InvalidArgument, "branch appears in two components");
            found[key] = (cyc.sign_product < 0) ? 1 : 0;
        }
    for (const auto& l : loops_) {
        auto key = std::make_pair(l.branch.curve, l.branch.branch);
        if (found.count(key))
            throw Error(ErrorKind::InvalidArgument, "branch appears twice");
        found[key] = l.essential ? 1 : 0;
    }
    int curves_with_pseudolines = 0;
    for (int c = 0; c < curves_.curve_count(); ++c) {
        const CurveInfo& ci = curves_.curve(c);
        bool has_pseudoline = false;
        for (int b = 0; b < ci.branch_count(); ++b) {
            auto it = found.find({c, b});
            if (it == found.end())
                throw Error(ErrorKind::InvalidArgument,
                            "declared branch " + ci.name + "." + std::to_string(b) +
                                " is not embedded anywhere");
            int onesided = it->second;
            int expect = ci.branches[b].shape == BranchShape::Pseudoline ? 1 : 0;
            if (onesided != expect)
                throw Error(ErrorKind::InvalidArgument,
                            "branch " + ci.name + "." + std::to_string(b) +
                                " has the wrong homology class for its shape");
            if (onesided) has_pseudoline = true;
            found.erase(it);
        }
        if (has_pseudoline) ++curves_with_pseudolines;
    }
    if (!found.empty())
        throw Error(ErrorKind::InvalidArgument, "embedded branch is not declared in the curve system");
    if (curves_with_pseudolines > 1)
        throw Error(ErrorKind::InvalidArgument,
                    "at most one curve may contribute non-contractible branches");
}

void Arrangement::validate_bezout() const {
    for (int a = 0; a < curves_.curve_count(); ++a)
        for (int b = a + 1; b < curves_.curve_count(); ++b) {
            int n = curve_crossing_count(a, b);
            int bound = curves_.curve(a).degree * curves_.curve(b).degree;
            if (n > bound)
                throw Error(ErrorKind::InvalidArgument,
                            "curves " + curves_.curve(a).name + " and " + curves_.curve(b).name +
                                " cross " + std::to_string(n) + " > " + std::to_string(bound) +
                                " times");
        }
}

// ---------------------------------------------------------------- queries --

std::vector<BranchRef> Arrangement::branches_of(int curve) const {
    std::vector<BranchRef> out;
    for (int b = 0; b < curves_.curve(curve).branch_count(); ++b)
        out.push_back(BranchRef{curve, b});
    return out;
}

int Arrangement::homology_class(BranchRef b) const {
    int li = loop_index_of(b);
    if (li >= 0) return loops_[li].essential ? 1 : 0;
    const SignedMap::BranchCycle* cyc = map_cycle_of(b);
    if (!cyc) throw Error(ErrorKind::InvalidArgument, "no such branch");
    return cyc->sign_product < 0 ? 1 : 0;
}

int Arrangement::crossing_count(BranchRef a, BranchRef b) const {
    if (a == b) throw Error(ErrorKind::InvalidArgument, "crossing_count needs distinct branches");
    int n = 0;
    for (const auto& m : comps_)
        for (int v = 0; v < m.vertex_count(); ++v) {
            const BranchRef& p = m.branch_of_dart(m.vertex(v).rot[0]);
            const BranchRef& q = m.branch_of_dart(m.vertex(v).rot[1]);
            if ((p == a && q == b) || (p == b && q == a)) ++n;
        }
    return n;
}

int Arrangement::curve_crossing_count(int curveA, int curveB) const {
    int n = 0;
    for (const auto& m : comps_)
        for (int v = 0; v < m.vertex_count(); ++v) {
            int p = m.branch_of_dart(m.vertex(v).rot[0]).curve;
            int q = m.branch_of_dart(m.vertex(v).rot[1]).curve;
            if ((p == curveA && q == curveB) || (p == curveB && q == curveA)) ++n;
        }
    return n;
}

int Arrangement::branch_total_crossings(BranchRef b) const {
    int n = 0;
    for (const auto& m : comps_)
        for (int v = 0; v < m.vertex_count(); ++v) {
            const BranchRef& p = m.branch_of_dart(m.vertex(v).rot[0]);
            const BranchRef& q = m.branch_of_dart(m.vertex(v).rot[1]);
            if (p == b && q == b) n += 2; // self-node: the branch meets itself twice
            else if (p == b || q == b) ++n;
        }
    return n;
}

bool Arrangement::branch_is_loop(BranchRef b) const { return loop_index_of(b) >= 0; }

int Arrangement::loop_index_of(BranchRef b) const {
    for (int i = 0; i < loop_count(); ++i)
        if (loops_[i].branch == b) return i;
    return -1;
}

const SignedMap::BranchCycle* Arrangement::map_cycle_of(BranchRef b, int* comp_out) const {
    for (int c = 0; c < component_count(); ++c)
        if (const auto* cyc = comps_[c].find_branch(b)) {
            if (comp_out) *comp_out = c;
            return cyc;
        }
    return nullptr;
}

std::vector<int> Arrangement::regions_touching_branch(BranchRef b) const {
    std::set<int> out;
    int li = loop_index_of(b);
    if (li >= 0) {
        if (!loops_[li].essential) out.insert(region_inside_loop(li));
        out.insert(region_around_loop(li));
    } else {
        int comp = -1;
        const auto* cyc = map_cycle_of(b, &comp);
        if (!cyc) throw Error(ErrorKind::InvalidArgument, "no such branch");
        const SignedMap& m = comps_[comp];
        for (int d : cyc->darts) {
            int e = SignedMap::edge_of(d);
            out.insert(region_of_face(comp, m.face_of_flag(2 * (2 * e) + 0)));
            out.insert(region_of_face(comp, m.face_of_flag(2 * (2 * e) + 1)));
        }
    }
    return {out.begin(), out.end()};
}

// Flood the dual graph without crossing branch b; used for oval sides.
static void flood_sides(const Arrangement& a, BranchRef b, std::vector<int>& side) {
    side.assign(a.region_count(), -1);
    int next = 0;
    for (int seed = 0; seed < a.region_count(); ++seed) {
        if (side[seed] != -1) continue;
        int id = next++;
        std::queue<int> q;
        side[seed] = id;
        q.push(seed);
        while (!q.empty()) {
            int r = q.front();
            q.pop();
            for (int ai : a.dual_arcs_at(r)) {
                const DualArc& arc = a.dual()[ai];
                if (arc.crossed == b) continue;
                int s = (arc.region_a == r) ? arc.region_b : arc.region_a;
                if (side[s] == -1) {
                    side[s] = id;
                    q.push(s);
                }
            }
        }
    }
}

int Arrangement::disk_side_region(BranchRef oval) const {
    if (homology_class(oval) != 0)
        throw Error(ErrorKind::NotAnOval, "branch is one-sided");
    int li = loop_index_of(oval);
    if (li >= 0) return region_inside_loop(li);

    std::vector<int> side;
    flood_sides(*this, oval, side);
    // Exactly two side classes; the disk side has subsurface chi 1.
    std::vector<int> chi(2, 0);
    for (int r = 0; r < region_count(); ++r) {
        if (side[r] > 1)
            throw Error(ErrorKind::InvalidArgument, "oval does not separate into two sides");
        chi[side[r]] += regions_[r].chi;
    }
    int comp = -1;
    const auto* cyc = map_cycle_of(oval, &comp);
    // Interior vertices and edges: everything not on the oval itself whose
    // surrounding regions lie in one class.
    for (int c = 0; c < component_count(); ++c) {
        const SignedMap& m = comps_[c];
        for (int e = 0; e < m.edge_count(); ++e) {
            if (c == comp && m.edge(e).branch == oval) continue;
            int fa = region_of_face(c, m.face_of_flag(2 * (2 * e) + 0));
            chi[side[fa]] -= 1;
        }
        for (int v = 0; v < m.vertex_count(); ++v) {
            bool on_oval = false;
            if (c == comp)
                for (int d : m.vertex(v).rot)
                    if (m.branch_of_dart(d) == oval) on_oval = true;
            if (on_oval) continue;
            int fa = region_of_face(c, m.face_of_flag(2 * m.vertex(v).rot[0] + 0));
            chi[side[fa]] += 1;
        }
    }
    int disk_class = (chi[0] == 1) ? 0 : 1;
    if (chi[disk_class] != 1)
        throw Error(ErrorKind::InvalidArgument, "no disk side found for oval");
    // The disk-side region incident to the oval.
    const SignedMap& m = comps_[comp];
    for (int d : cyc->darts) {
        int e = SignedMap::edge_of(d);
        for (int slot = 0; slot < 2; ++slot) {
            int r = region_of_face(comp, m.face_of_flag(2 * (2 * e) + slot));
            if (side[r] == disk_class) return r;
        }
    }
    throw Error(ErrorKind::InvalidArgument, "oval bounds no region");
}

bool Arrangement::region_inside_oval(int region, BranchRef oval) const {
    if (homology_class(oval) != 0)
        throw Error(ErrorKind::NotAnOval, "branch is one-sided");
    int li = loop_index_of(oval);
    if (li >= 0) {
        // Inside iff the region's containment chain passes through the loop.
        int inside = region_inside_loop(li);
        int r = region;
        while (r != -1) {
            if (r == inside) return true;
            const Region& reg = regions_[r];
            if (reg.kind == Region::Kind::Background) return false;
            if (reg.kind == Region::Kind::LoopInside)
                r = region_around_loop(reg.loop);
            else
                r = (reg.comp == essential_comp_) ? -1 : region_around_component(reg.comp);
        }
        return false;
    }
    std::vector<int> side;
    flood_sides(*this, oval, side);
    int disk_region = disk_side_region(oval);
    return side[region] == side[disk_region];
}

std::string Arrangement::region_name(int region) const {
    const Region& r = regions_.at(region);
    switch (r.kind) {
        case Region::Kind::Background: return "bg";
        case Region::Kind::MapFace:
            return "c" + std::to_string(r.comp) + ".f" + std::to_string(r.face);
        case Region::Kind::LoopInside: return "l" + std::to_string(r.loop) + ".in";
    }
    return "?";
}

} // namespace snakes
