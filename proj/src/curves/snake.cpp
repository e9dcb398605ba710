#include "snakes/curves/snake.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace snakes {

std::optional<SnakeWitness> detect_snake(const Arrangement& a, BranchRef oval, int other_curve) {
    if (a.homology_class(oval) != 0)
        throw Error(ErrorKind::NotAnOval, "snake candidate must be an oval");
    int comp = -1;
    const SignedMap::BranchCycle* cyc = a.map_cycle_of(oval, &comp);
    if (!cyc) return std::nullopt; // a free oval coils nothing
    const SignedMap& m = a.component(comp);

    // Every crossing on the oval must be with the other curve.
    std::set<BranchRef> coiled;
    for (int d : cyc->darts) {
        int v = a.component(comp).dart_vertex(d);
        for (int dd : m.vertex(v).rot) {
            const BranchRef& b = m.branch_of_dart(dd);
            if (b == oval) continue;
            if (b.curve != other_curve) return std::nullopt;
            coiled.insert(b);
        }
    }
    if (coiled.empty()) return std::nullopt;

    // Faces of the oval's component strictly inside the oval.
    int disk_region = a.disk_side_region(oval);
    std::vector<int> inside_faces;
    for (int f = 0; f < m.face_count(); ++f) {
        int r = a.region_of_face(comp, f);
        const Region& reg = a.regions()[r];
        if (reg.kind != Region::Kind::MapFace || reg.comp != comp || reg.face != f) continue;
        if (a.region_inside_oval(r, oval)) inside_faces.push_back(f);
    }
    (void)disk_region;

    // Each inside face must be a digon (one oval arc, one rung arc) or a
    // quadrangle alternating oval/rung.
    std::vector<int> digons, quads;
    std::map<int, std::vector<int>> rung_faces; // rung edge -> inside faces
    for (int f : inside_faces) {
        const auto& walk = m.faces()[f].flags;
        int deg = static_cast<int>(walk.size());
        std::vector<bool> is_oval;
        for (int fl : walk) is_oval.push_back(m.branch_of_dart(fl / 2) == oval);
        int oval_arcs = static_cast<int>(std::count(is_oval.begin(), is_oval.end(), true));
        if (deg == 2 && oval_arcs == 1) digons.push_back(f);
        else if (deg == 4 && oval_arcs == 2 && is_oval[0] != is_oval[1] && is_oval[1] != is_oval[2])
            quads.push_back(f);
        else
            return std::nullopt;
        for (size_t i = 0; i < walk.size(); ++i)
            if (!is_oval[i]) rung_faces[SignedMap::edge_of(walk[i] / 2)].push_back(f);
    }
    if (digons.size() != 2) return std::nullopt;

    // Rungs join consecutive cells; the cells must form a path between the
    // two digons.
    std::map<int, std::vector<std::pair<int, int>>> adj; // face -> (face, rung)
    for (const auto& [e, fs] : rung_faces) {
        if (fs.size() != 2) return std::nullopt;
        adj[fs[0]].push_back({fs[1], e});
        adj[fs[1]].push_back({fs[0], e});
    }
    for (int f : quads)
        if (adj[f].size() != 2) return std::nullopt;
    for (int f : digons)
        if (adj[f].size() != 1) return std::nullopt;

    SnakeWitness w;
    w.snake = oval;
    w.other_curve = other_curve;
    w.coiled.assign(coiled.begin(), coiled.end());
    // Walk the chain from one digon to the other.
    std::vector<int> chain{digons[0]};
    int prev = -1, cur = digons[0];
    while (true) {
        int next = -1;
        for (auto [g, e] : adj[cur])
            if (g != prev) next = g;
        if (next == -1) break;
        chain.push_back(next);
        prev = cur;
        cur = next;
        if (cur == digons[1]) break;
    }
    if (chain.size() != inside_faces.size() || chain.back() != digons[1])
        return std::nullopt; // disconnected chain or branching
    int cells = static_cast<int>(chain.size());
    if (cells % 2 == 0) return std::nullopt; // 2k+1 cells
    w.k = (cells - 1) / 2;
    // Cross-check: the oval meets the coiled branches at 4k points.
    int crossings = 0;
    for (const BranchRef& b : w.coiled) crossings += a.crossing_count(oval, b);
    if (crossings != 4 * w.k) return std::nullopt;
    for (int f : chain) w.cell_regions.push_back(a.region_of_face(comp, f));
    w.end_regions = {a.region_of_face(comp, digons[0]), a.region_of_face(comp, digons[1])};
    return w;
}

RegionClassification classify_regions(const Arrangement& a, const SnakeWitness& w) {
    RegionClassification out;
    out.labels.assign(a.region_count(), RegionLabel::Outside);
    for (size_t i = 0; i < w.cell_regions.size(); ++i)
        out.labels[w.cell_regions[i]] =
            (i == 0 || i + 1 == w.cell_regions.size()) ? RegionLabel::InsideEnd
                                                       : RegionLabel::InsideQuad;
    // Everything nested below an inside cell keeps the cell's label.
    // (Loops inside quads and their subtrees.)
    bool changed = true;
    while (changed) {
        changed = false;
        for (int r = 0; r < a.region_count(); ++r) {
            const Region& reg = a.regions()[r];
            int parent = -1;
            if (reg.kind == Region::Kind::LoopInside) parent = a.region_around_loop(reg.loop);
            else if (reg.kind == Region::Kind::MapFace && reg.comp != a.essential_component()) {
                // Only non-root components hang below other regions.
                if (reg.face != a.component_outer_face(reg.comp)) {
                    // parent chain enters through this component's placement
                    parent = a.region_around_component(reg.comp);
                }
            }
            if (parent >= 0 && out.labels[r] == RegionLabel::Outside &&
                out.labels[parent] != RegionLabel::Outside &&
                std::find(w.cell_regions.begin(), w.cell_regions.end(), r) ==
                    w.cell_regions.end()) {
                out.labels[r] = out.labels[parent];
                changed = true;
            }
        }
    }

    // The outside region across each end arc.
    int comp = -1;
    a.map_cycle_of(w.snake, &comp);
    const SignedMap& m = a.component(comp);
    std::array<int, 2> outside{-1, -1};
    for (int side = 0; side < 2; ++side) {
        int end_region = w.end_regions[side];
        const Region& reg = a.regions()[end_region];
        for (int fl : m.faces()[reg.face].flags) {
            int e = SignedMap::edge_of(fl / 2);
            if (!(m.edge(e).branch == w.snake)) continue;
            int fa = m.face_of_flag(2 * (2 * e) + 0);
            int fb = m.face_of_flag(2 * (2 * e) + 1);
            int other_face = (fa == reg.face) ? fb : fa;
            outside[side] = a.region_of_face(comp, other_face);
        }
    }
    if (outside[0] == outside[1]) out.ends_region = outside[0];

    out.snake_curve_free_ovals = free_branches(a, w.snake.curve);
    // The snake itself is never free; check the rest sit in ends_region.
    out.free_ovals_with_ends = out.ends_region >= 0;
    for (const BranchRef& b : out.snake_curve_free_ovals) {
        int li = a.loop_index_of(b);
        if (li < 0 || a.region_around_loop(li) != out.ends_region)
            out.free_ovals_with_ends = false;
    }
    return out;
}

std::vector<BranchRef> free_branches(const Arrangement& a, int curve) {
    std::vector<BranchRef> out;
    for (const BranchRef& b : a.branches_of(curve))
        if (a.branch_total_crossings(b) == 0) out.push_back(b);
    return out;
}

std::vector<BezoutRow> bezout_audit(const Arrangement& a) {
    std::vector<BezoutRow> rows;
    int n = a.curves().curve_count();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            BezoutRow r;
            r.curve_a = i;
            r.curve_b = j;
            r.crossings = a.curve_crossing_count(i, j);
            r.bound = a.curves().curve(i).degree * a.curves().curve(j).degree;
            r.saturated = (r.crossings == r.bound);
            rows.push_back(r);
        }
    return rows;
}

} // namespace snakes
