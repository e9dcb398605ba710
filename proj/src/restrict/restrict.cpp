#include "snakes/restrict/restrict.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "snakes/canon/canon.hpp"

namespace snakes {

SideChoice side_choice(const Arrangement& a, int anchor_region, int anchor_color) {
    int total_degree = 0;
    for (int c = 0; c < a.curves().curve_count(); ++c)
        total_degree += a.curves().curve(c).degree;
    if (total_degree % 2 != 0)
        throw Error(ErrorKind::OddDegreeUnion, "no two-coloring for odd total degree");

    SideChoice side;
    side.color.assign(a.region_count(), -1);
    side.color[anchor_region] = anchor_color;
    std::queue<int> q;
    q.push(anchor_region);
    while (!q.empty()) {
        int r = q.front();
        q.pop();
        for (int ai : a.dual_arcs_at(r)) {
            const DualArc& arc = a.dual()[ai];
            bool crossing = arc.crossed.curve >= 0;
            int s = (arc.region_a == r) ? arc.region_b : arc.region_a;
            int want = side.color[r] ^ (crossing ? 1 : 0);
            if (side.color[s] == -1) {
                side.color[s] = want;
                q.push(s);
            } else if (side.color[s] != want) {
                throw Error(ErrorKind::OddDegreeUnion, "complement is not two-colorable");
            }
            // Self-arcs (crosscap or essential loop) constrain directly.
            if (s == r && crossing)
                throw Error(ErrorKind::OddDegreeUnion, "complement is not two-colorable");
        }
    }
    side.selected = anchor_color;
    return side;
}

int chi_plus(const Arrangement& a, const SideChoice& side) {
    int chi = a.total_vertex_count() - a.total_edge_count();
    for (int r = 0; r < a.region_count(); ++r)
        if (side.color[r] == side.selected) chi += a.regions()[r].chi;
    return chi;
}

PhiPN phi_p_n(const Arrangement& a, const SnakeWitness& w, const SideChoice& side) {
    RegionClassification cls = classify_regions(a, w);
    int p = 0, n = 0;
    for (const BranchRef& b : free_branches(a, w.other_curve)) {
        int li = a.loop_index_of(b);
        if (li < 0) continue;
        int around = a.region_around_loop(li);
        if (cls.labels[around] == RegionLabel::Outside) ++p;
        else ++n;
    }
    PhiPN out;
    out.p = p;
    out.n = n;
    out.phi = chi_plus(a, side) - p + n;
    return out;
}

ConditionReport condition_checks(const Arrangement& a) {
    ConditionReport rep;
    int total_degree = 0;
    for (int c = 0; c < a.curves().curve_count(); ++c)
        total_degree += a.curves().curve(c).degree;
    rep.odd_degree = (total_degree % 2 != 0);
    rep.condition_I = true; // vertices are transverse double points by construction
    rep.condition_II = true;
    int k = total_degree / 2;
    for (int c = 0; c < a.curves().curve_count(); ++c)
        for (const BranchRef& b : a.branches_of(c)) {
            ConditionReport::BranchRow row;
            row.branch = b;
            row.d = a.branch_total_crossings(b);
            if (a.homology_class(b) == 0) row.required_mod4 = 0;
            else row.required_mod4 = (k % 2 == 1) ? 1 : 3; // (-1)^(k+1) mod 4
            row.ok = !rep.odd_degree && (row.d % 4 == row.required_mod4 % 4);
            if (rep.odd_degree) row.ok = false;
            rep.rows.push_back(row);
            if (!row.ok) rep.condition_II = false;
        }
    return rep;
}

Arrangement gamma_subarrangement(const Arrangement& a) {
    // Branch index remap: keep only branches embedded as map cycles.
    std::map<std::pair<int, int>, int> keep; // (curve, old branch) -> new branch
    CurveSystem cs;
    for (int c = 0; c < a.curves().curve_count(); ++c) {
        const CurveInfo& ci = a.curves().curve(c);
        CurveInfo out = ci;
        out.branches.clear();
        for (int b = 0; b < ci.branch_count(); ++b) {
            BranchRef ref{c, b};
            if (a.loop_index_of(ref) >= 0) continue;
            keep[{c, b}] = out.branch_count();
            out.branches.push_back(ci.branches[b]);
        }
        cs.curves.push_back(out);
    }
    Arrangement::Builder b(cs);
    b.subarrangement_mode();
    for (int c = 0; c < a.component_count(); ++c) {
        const SignedMap& old = a.component(c);
        SignedMap m;
        for (int v = 0; v < old.vertex_count(); ++v) m.add_vertex();
        for (int e = 0; e < old.edge_count(); ++e) {
            BranchRef br = old.edge(e).branch;
            m.add_edge(BranchRef{br.curve, keep.at({br.curve, br.branch})}, old.edge(e).sign);
        }
        for (int v = 0; v < old.vertex_count(); ++v) m.set_rotation(v, old.vertex(v).rot);
        m.seal();
        b.add_component(std::move(m));
    }
    // Re-parent component placements through dropped loops.
    for (int c = 0; c < a.component_count(); ++c) {
        Placement p = a.component_placement(c);
        while (p.kind == Placement::Kind::LoopInside) p = a.loop_placement(p.owner);
        int outer = a.component_outer_face(c);
        if (outer < 0) b.place_essential_component(c);
        else b.place_component(c, p, outer);
    }
    return b.build();
}

namespace {

// Canonical anchor region for side alignment: the full-arrangement region
// that owns the canonical first face of the Gamma subarrangement.  The
// subarrangement shares component and face indices with the原 arrangement.
int gamma_anchor_region(const Arrangement& full, const Arrangement& gamma) {
    CanonicalLayout lay = canonical_layout(gamma);
    if (lay.comp_order.empty()) return full.background_region();
    int c0 = lay.comp_order[0];
    int f0 = lay.face_order[c0][0];
    return full.region_of_face(c0, f0);
}

} // namespace

CongruenceReport congruence_check(const Arrangement& cand, const Arrangement& ref,
                                  const CongruenceOptions& opt) {
    Arrangement gc = gamma_subarrangement(cand);
    Arrangement gr = gamma_subarrangement(ref);
    if (!(canonical_form(gc) == canonical_form(gr)))
        throw Error(ErrorKind::GammaMismatch,
                    "candidate and reference have non-isotopic singular parts");

    ConditionReport cc = condition_checks(cand);
    ConditionReport cr = condition_checks(ref);
    if (cc.odd_degree)
        throw Error(ErrorKind::OddDegreeUnion, "congruences need an even union degree");
    if (!cc.condition_I || !cc.condition_II || !cr.condition_I || !cr.condition_II)
        throw Error(ErrorKind::ConditionsFail, "Conditions (I)/(II) do not hold");

    CongruenceReport rep;
    rep.condition_I = true;
    rep.condition_II = true;
    rep.mode = opt.mode;
    int rank = 0;
    bool any_unknown = false, any_II = false;
    for (int c = 0; c < cand.curves().curve_count(); ++c) {
        rank += cand.curves().curve(c).rank;
        if (cand.curves().curve(c).type == CurveType::Unknown) any_unknown = true;
        if (cand.curves().curve(c).type == CurveType::II) any_II = true;
    }
    rep.rank = rank;
    rep.type = any_II ? CurveType::II : (any_unknown ? CurveType::Unknown : CurveType::I);

    int anchor_c = gamma_anchor_region(cand, gc);
    int anchor_r = gamma_anchor_region(ref, gr);
    SideChoice sc = side_choice(cand, anchor_c, opt.flip_side ? 1 : 0);
    SideChoice sr = side_choice(ref, anchor_r, opt.flip_side ? 1 : 0);
    rep.chi_plus_candidate = chi_plus(cand, sc);
    rep.chi_plus_reference = chi_plus(ref, sr);

    auto mod8 = [](int x) { return ((x % 8) + 8) % 8; };
    if (opt.mode == CongruenceMode::Relative) {
        int ref_rank = 0;
        for (int c = 0; c < ref.curves().curve_count(); ++c)
            ref_rank += ref.curves().curve(c).rank;
        if (ref_rank != 0)
            throw Error(ErrorKind::InvalidArgument,
                        "relative congruence needs a rank-0 reference");
        int delta = mod8(rep.chi_plus_candidate - rep.chi_plus_reference);
        if (rank == 0) {
            rep.gudkov_rokhlin = (delta == 0) ? Verdict::Pass : Verdict::Fail;
        } else if (rank == 1) {
            rep.gudkov_krakhnov_kharlamov =
                (delta == 1 || delta == 7) ? Verdict::Pass : Verdict::Fail;
        } else if (rank == 2) {
            if (rep.type == CurveType::II)
                rep.kharlamov_marin = (delta != 4) ? Verdict::Pass : Verdict::Fail;
            else
                rep.note = "rank-2 type-I exclusion needs complex orientations; undetermined";
        } else {
            rep.note = "no congruence applies at rank " + std::to_string(rank);
        }
    } else {
        if (!opt.q)
            throw Error(ErrorKind::InvalidArgument, "absolute mode needs q");
        int total_degree = 0;
        for (int c = 0; c < cand.curves().curve_count(); ++c)
            total_degree += cand.curves().curve(c).degree;
        int k = total_degree / 2;
        int rhs = mod8(k * k + *opt.q);
        int lhs = mod8(rep.chi_plus_candidate);
        if (rank == 0) rep.gudkov_rokhlin = (lhs == rhs) ? Verdict::Pass : Verdict::Fail;
        else if (rank == 1)
            rep.gudkov_krakhnov_kharlamov =
                (lhs == mod8(rhs + 1) || lhs == mod8(rhs - 1)) ? Verdict::Pass : Verdict::Fail;
        else if (rank == 2 && rep.type == CurveType::II)
            rep.kharlamov_marin = (lhs != mod8(rhs + 4)) ? Verdict::Pass : Verdict::Fail;
        else
            rep.note = "no congruence applies";
    }
    return rep;
}

std::vector<Thm2Violation> snake_end_obstructions(const Arrangement& a, const SnakeWitness& w) {
    std::vector<Thm2Violation> out;
    RegionClassification cls = classify_regions(a, w);
    std::set<int> free_snake_loops;
    for (const BranchRef& b : free_branches(a, w.snake.curve)) {
        int li = a.loop_index_of(b);
        if (li >= 0) free_snake_loops.insert(li);
    }
    for (const BranchRef& b : free_branches(a, w.other_curve)) {
        int li = a.loop_index_of(b);
        if (li < 0) continue;
        int around = a.region_around_loop(li);
        if (cls.labels[around] == RegionLabel::InsideEnd) {
            out.push_back({b, "inside a snake end"});
            continue;
        }
        // Inside a free oval of the snake's curve: the containment chain
        // passes through one of those loops.
        Placement p = a.loop_placement(li);
        while (p.kind == Placement::Kind::LoopInside) {
            if (free_snake_loops.count(p.owner)) {
                out.push_back({b, "inside a free oval of the snake curve"});
                break;
            }
            p = a.loop_placement(p.owner);
        }
    }
    return out;
}

int pseudoline_min_crossings(const Arrangement& a, const std::vector<int>& through, int curve,
                             int homology_class) {
    if (through.empty())
        throw Error(ErrorKind::InvalidArgument, "need at least one region");
    int nT = static_cast<int>(through.size());
    auto bit_of = [&](int r) {
        int m = 0;
        for (int i = 0; i < nT; ++i)
            if (through[i] == r) m |= 1 << i;
        return m;
    };
    int R = a.region_count();
    int full = (1 << nT) - 1;
    // Dijkstra over (region, parity, visited mask).
    std::vector<std::vector<std::vector<int>>> dist(
        R, std::vector<std::vector<int>>(2, std::vector<int>(1 << nT, -1)));
    using St = std::tuple<int, int, int, int>; // cost, region, bit, mask
    std::priority_queue<St, std::vector<St>, std::greater<>> pq;
    int start = through[0];
    dist[start][0][bit_of(start)] = 0;
    pq.push({0, start, 0, bit_of(start)});
    while (!pq.empty()) {
        auto [cost, r, bit, mask] = pq.top();
        pq.pop();
        if (dist[r][bit][mask] != cost) continue;
        if (r == start && bit == homology_class && mask == full) return cost;
        for (int ai : a.dual_arcs_at(r)) {
            const DualArc& arc = a.dual()[ai];
            int to = (arc.region_a == r) ? arc.region_b : arc.region_a;
            int nbit = bit ^ (arc.flips ? 1 : 0);
            int nmask = mask | bit_of(to);
            int ncost = cost + ((arc.crossed.curve == curve) ? 1 : 0);
            if (dist[to][nbit][nmask] == -1 || dist[to][nbit][nmask] > ncost) {
                dist[to][nbit][nmask] = ncost;
                pq.push({ncost, to, nbit, nmask});
            }
        }
    }
    return -1;
}

bool exists_budgeted_walk(const Arrangement& a, const std::vector<int>& through,
                          int homology_class, const std::vector<int>& budgets, int max_len) {
    if (through.empty()) return true;
    int nT = static_cast<int>(through.size());
    auto bit_of = [&](int r) {
        int m = 0;
        for (int i = 0; i < nT; ++i)
            if (through[i] == r) m |= 1 << i;
        return m;
    };
    int full = (1 << nT) - 1;
    int start = through[0];
    // Encode remaining budgets into the state.
    struct State {
        int region, bit, mask;
        std::vector<int> left;
        bool operator<(const State& o) const {
            return std::tie(region, bit, mask, left) < std::tie(o.region, o.bit, o.mask, o.left);
        }
    };
    std::set<State> seen;
    std::queue<std::pair<State, int>> q;
    State s0{start, 0, bit_of(start), budgets};
    q.push({s0, 0});
    seen.insert(s0);
    while (!q.empty()) {
        auto [st, len] = q.front();
        q.pop();
        if (st.region == start && st.bit == homology_class && st.mask == full && len > 0)
            return true;
        if (max_len >= 0 && len >= max_len) continue;
        for (int ai : a.dual_arcs_at(st.region)) {
            const DualArc& arc = a.dual()[ai];
            int to = (arc.region_a == st.region) ? arc.region_b : arc.region_a;
            State ns = st;
            ns.region = to;
            ns.bit ^= arc.flips ? 1 : 0;
            ns.mask |= bit_of(to);
            if (arc.crossed.curve >= 0) {
                int c = arc.crossed.curve;
                if (c < static_cast<int>(ns.left.size())) {
                    if (ns.left[c] == 0) continue;
                    ns.left[c] -= 1;
                }
            }
            if (seen.insert(ns).second) q.push({ns, len + 1});
        }
    }
    return false;
}

bool passes_line_screen(const Arrangement& a) {
    std::vector<int> budgets;
    for (int c = 0; c < a.curves().curve_count(); ++c)
        budgets.push_back(a.curves().curve(c).degree);
    for (int r1 = 0; r1 < a.region_count(); ++r1)
        for (int r2 = r1; r2 < a.region_count(); ++r2)
            if (!exists_budgeted_walk(a, {r1, r2}, 1, budgets)) return false;
    return true;
}

} // namespace snakes
