#include "support/shuffle.hpp"

#include <algorithm>
#include <numeric>

namespace snakes::testsupport {

namespace {
std::vector<int> random_perm(int n, std::mt19937& rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}
} // namespace

Arrangement shuffle(const Arrangement& a, std::mt19937& rng, bool mirror) {
    // Curve and per-curve branch permutations.
    int nc = a.curves().curve_count();
    std::vector<int> curve_perm = random_perm(nc, rng); // old -> new
    std::vector<std::vector<int>> branch_perm(nc);
    CurveSystem new_curves;
    new_curves.curves.resize(nc);
    for (int c = 0; c < nc; ++c) {
        const CurveInfo& ci = a.curves().curve(c);
        branch_perm[c] = random_perm(ci.branch_count(), rng);
        CurveInfo out = ci;
        for (int b = 0; b < ci.branch_count(); ++b)
            out.branches[branch_perm[c][b]] = ci.branches[b];
        new_curves.curves[curve_perm[c]] = out;
    }
    auto map_branch = [&](BranchRef b) {
        return BranchRef{curve_perm[b.curve], branch_perm[b.curve][b.branch]};
    };

    int nm = a.component_count(), nl = a.loop_count();
    std::vector<int> comp_perm = random_perm(nm, rng);
    std::vector<int> loop_perm = random_perm(nl, rng);

    // Rebuild each component with relabeled vertices/edges/darts, random
    // rotation offsets, random gauge flips, and an optional global mirror.
    struct CompInfo {
        SignedMap m;
        // old flag -> new flag (geometric identity tracking)
        std::vector<int> flag_map;
    };
    std::vector<CompInfo> rebuilt(nm);
    for (int c = 0; c < nm; ++c) {
        const SignedMap& old = a.component(c);
        int V = old.vertex_count(), E = old.edge_count();
        std::vector<int> vperm = random_perm(V, rng);
        std::vector<int> eperm = random_perm(E, rng);
        std::vector<int> dart_swap(E);
        for (int e = 0; e < E; ++e) dart_swap[e] = static_cast<int>(rng() % 2);
        std::vector<int> gauge(V);
        for (int v = 0; v < V; ++v) gauge[v] = static_cast<int>(rng() % 2);

        auto map_dart = [&](int d) {
            int e = SignedMap::edge_of(d);
            int i = d % 2;
            return 2 * eperm[e] + (i ^ dart_swap[e]);
        };

        SignedMap m;
        for (int v = 0; v < V; ++v) m.add_vertex();
        std::vector<int> new_sign(E, +1);
        for (int e = 0; e < E; ++e) {
            int flips = 0;
            for (int i = 0; i < 2; ++i)
                if (gauge[old.dart_vertex(2 * e + i)]) ++flips;
            new_sign[e] = old.edge(e).sign * ((flips % 2) ? -1 : 1);
        }
        // add_edge in new id order
        std::vector<int> old_edge_of_new(E);
        for (int e = 0; e < E; ++e) old_edge_of_new[eperm[e]] = e;
        for (int e = 0; e < E; ++e) {
            int oe = old_edge_of_new[e];
            m.add_edge(map_branch(old.edge(oe).branch), new_sign[oe]);
        }
        for (int v = 0; v < V; ++v) {
            std::array<int, 4> rot = old.vertex(v).rot;
            std::array<int, 4> out{};
            bool reverse = (gauge[v] != 0) ^ mirror;
            int offset = static_cast<int>(rng() % 4);
            for (int k = 0; k < 4; ++k) {
                int idx = reverse ? ((offset - k) % 4 + 4) % 4 : (offset + k) % 4;
                out[k] = map_dart(rot[idx]);
            }
            m.set_rotation(vperm[v], out);
        }
        m.seal();
        CompInfo info{std::move(m), std::vector<int>(4 * E, -1)};
        for (int d = 0; d < 2 * E; ++d)
            for (int s = 0; s < 2; ++s) {
                int v = old.dart_vertex(d);
                int ns = s ^ (gauge[v] ? 1 : 0) ^ (mirror ? 1 : 0);
                info.flag_map[2 * d + s] = 2 * map_dart(d) + ns;
            }
        rebuilt[c] = std::move(info);
    }

    // Face mapping per component via tracked flags.
    auto map_face = [&](int c, int f) {
        const SignedMap& old = a.component(c);
        int flag = old.faces()[f].flags[0];
        return rebuilt[c].m.face_of_flag(rebuilt[c].flag_map[flag]);
    };
    auto map_placement = [&](const Placement& p) {
        Placement q = p;
        if (p.kind == Placement::Kind::MapFace) {
            q.owner = comp_perm[p.owner];
            q.face = map_face(p.owner, p.face);
        } else if (p.kind == Placement::Kind::LoopInside) {
            q.owner = loop_perm[p.owner];
        }
        return q;
    };

    // Stage all placements before the maps are moved into the builder.
    std::vector<std::pair<Placement, int>> comp_placements(nm); // (where, outer)
    for (int c = 0; c < nm; ++c) {
        int outer = a.component_outer_face(c);
        comp_placements[comp_perm[c]] = {map_placement(a.component_placement(c)),
                                         outer < 0 ? -1 : map_face(c, outer)};
    }
    std::vector<Placement> loop_placements(nl);
    for (int l = 0; l < nl; ++l)
        loop_placements[loop_perm[l]] = map_placement(a.loop_placement(l));

    Arrangement::Builder b(new_curves);
    std::vector<int> new_comp_of_old(nm);
    for (int c = 0; c < nm; ++c) new_comp_of_old[comp_perm[c]] = c;
    for (int c = 0; c < nm; ++c)
        b.add_component(std::move(rebuilt[new_comp_of_old[c]].m));
    std::vector<int> new_loop_of_old(nl);
    for (int l = 0; l < nl; ++l) new_loop_of_old[loop_perm[l]] = l;
    for (int l = 0; l < nl; ++l) {
        int ol = new_loop_of_old[l];
        b.add_loop(map_branch(a.loop(ol).branch), a.loop(ol).essential);
    }
    for (int c = 0; c < nm; ++c) {
        if (comp_placements[c].second < 0)
            b.place_essential_component(c);
        else
            b.place_component(c, comp_placements[c].first, comp_placements[c].second);
    }
    for (int l = 0; l < nl; ++l) b.place_loop(l, loop_placements[l]);
    return b.build();
}

} // namespace snakes::testsupport
