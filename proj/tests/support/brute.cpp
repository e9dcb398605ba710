#include "support/brute.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

namespace snakes::brute {

namespace {

using CB = std::map<std::pair<int, int>, std::pair<int, int>>; // branch -> branch

// Grows the curve/branch bijection; curves may only be identified when their
// metadata agrees, and the curve-level map must stay single valued.
bool curve_ok(const CurveSystem& ca, const CurveSystem& cb_sys, CB& cb, BranchRef a, BranchRef b) {
    auto key = std::make_pair(a.curve, a.branch);
    auto it = cb.find(key);
    if (it != cb.end()) return it->second == std::make_pair(b.curve, b.branch);
    for (const auto& [k, v] : cb) {
        if (k.first == a.curve && v.first != b.curve) return false;
        if (v.first == b.curve && k.first != a.curve) return false;
        if (k.second == a.branch && k.first == a.curve) return false;
        if (v.second == b.branch && v.first == b.curve) return false;
    }
    const CurveInfo& x = ca.curve(a.curve);
    const CurveInfo& y = cb_sys.curve(b.curve);
    if (x.degree != y.degree || x.rank != y.rank || x.type != y.type ||
        x.branch_count() != y.branch_count())
        return false;
    cb[key] = {b.curve, b.branch};
    return true;
}

// Dart bijection seeded at a0 -> b0 with direction tau(v(a0)) = spin.
// Per-vertex directions elsewhere are forced by the gauge-invariant sign
// condition sign_B = sign_A * tau(u) * tau(v).  Returns the dart map or
// empty on failure.
std::vector<int> match_component(const SignedMap& A, const SignedMap& B, int a0, int b0, int spin,
                                 const CurveSystem& csA, const CurveSystem& csB, CB& cb) {
    std::vector<int> dmap(A.dart_count(), -1);
    std::vector<int> tau(A.vertex_count(), 0);
    dmap[a0] = b0;
    tau[A.dart_vertex(a0)] = spin;
    std::vector<int> stack{a0};
    while (!stack.empty()) {
        int da = stack.back();
        stack.pop_back();
        int db = dmap[da];
        if (!curve_ok(csA, csB, cb, A.branch_of_dart(da), B.branch_of_dart(db))) return {};
        int u = A.dart_vertex(da);
        int pa = SignedMap::partner(da), pb = SignedMap::partner(db);
        int v = A.dart_vertex(pa);
        int want = A.sign_of_dart(da) * B.sign_of_dart(db) * tau[u];
        if (tau[v] == 0) tau[v] = want;
        else if (tau[v] != want) return {};
        if (dmap[pa] == -1) {
            dmap[pa] = pb;
            stack.push_back(pa);
        } else if (dmap[pa] != pb) return {};
        int ra = A.rot_next(da);
        int rb = (tau[u] > 0) ? B.rot_next(db) : B.rot_prev(db);
        if (dmap[ra] == -1) {
            dmap[ra] = rb;
            stack.push_back(ra);
        } else if (dmap[ra] != rb) return {};
    }
    for (int d : dmap)
        if (d == -1) return {};
    return dmap;
}

struct Matcher {
    const Arrangement& A;
    const Arrangement& B;
    std::vector<int> comp_perm;             // A comp -> B comp
    std::vector<std::vector<int>> face_map; // per A comp: face -> B face

    // Region translation derived from component/loop correspondences built
    // so far; loop insides are added as loops get paired.
    std::map<int, int> region_map;

    bool match_loop_sets(std::vector<int> la, std::vector<int> lb, size_t i, CB& cb,
                         std::vector<int>& loop_map);

    bool run(CB cb);
};

bool Matcher::match_loop_sets(std::vector<int> la, std::vector<int> lb, size_t i, CB& cb,
                              std::vector<int>& loop_map) {
    if (i == la.size()) return true;
    int a = la[i];
    for (size_t j = 0; j < lb.size(); ++j) {
        int b = lb[j];
        if (b < 0) continue;
        if (A.loop(a).essential != B.loop(b).essential) continue;
        CB cb2 = cb;
        if (!curve_ok(A.curves(), B.curves(), cb2, A.loop(a).branch, B.loop(b).branch)) continue;
        std::vector<int> loop_map2 = loop_map;
        loop_map2[a] = b;
        auto saved_region_map = region_map;
        if (!A.loop(a).essential)
            region_map[A.region_inside_loop(a)] = B.region_inside_loop(b);
        // Children inside this loop must also match.
        bool ok = true;
        if (!A.loop(a).essential) {
            int ra = A.region_inside_loop(a), rb = B.region_inside_loop(b);
            const Region& RA = A.regions()[ra];
            const Region& RB = B.regions()[rb];
            if (RA.child_comps.size() != RB.child_comps.size() ||
                RA.child_loops.size() != RB.child_loops.size())
                ok = false;
            // Component children: their placement must agree under comp_perm.
            if (ok)
                for (int c : RA.child_comps) {
                    int target = comp_perm[c];
                    const Placement& p = B.component_placement(target);
                    if (p.kind != Placement::Kind::LoopInside || p.owner != b) ok = false;
                }
            if (ok && !match_loop_sets(RA.child_loops, RB.child_loops, 0, cb2, loop_map2))
                ok = false;
        }
        if (ok) {
            std::vector<int> lb2 = lb;
            lb2[j] = -1;
            if (match_loop_sets(la, lb2, i + 1, cb2, loop_map2)) {
                cb = cb2;
                loop_map = loop_map2;
                return true;
            }
        }
        region_map = saved_region_map;
    }
    return false;
}

bool Matcher::run(CB cb) {
    // Region map from matched components.
    region_map.clear();
    if (A.background_region() >= 0) {
        if (B.background_region() < 0) return false;
        region_map[A.background_region()] = B.background_region();
    } else if (B.background_region() >= 0) {
        return false;
    }
    for (int c = 0; c < A.component_count(); ++c)
        for (int f = 0; f < A.component(c).face_count(); ++f) {
            int ra = A.region_of_face(c, f);
            int rb = B.region_of_face(comp_perm[c], face_map[c][f]);
            // Only record regions owned by this face (skip outers).
            const Region& R = A.regions()[ra];
            if (R.kind == Region::Kind::MapFace && R.comp == c && R.face == f)
                region_map[ra] = rb;
        }
    // Component placements must correspond.
    for (int c = 0; c < A.component_count(); ++c) {
        const Placement& pa = A.component_placement(c);
        const Placement& pb = B.component_placement(comp_perm[c]);
        if (pa.kind != pb.kind) return false;
        if (pa.kind == Placement::Kind::MapFace) {
            if (comp_perm[pa.owner] != pb.owner) return false;
            if (face_map[pa.owner][pa.face] != pb.face) return false;
        }
        // LoopInside placements are validated during loop matching.
        int oa = A.component_outer_face(c);
        int ob = B.component_outer_face(comp_perm[c]);
        if ((oa < 0) != (ob < 0)) return false;
        if (oa >= 0 && face_map[c][oa] != ob) return false;
    }
    // Match loops region by region, starting from regions known up front;
    // loop insides are introduced recursively.
    std::vector<int> loop_map(A.loop_count(), -1);
    // Collect loops by known placement region of A and the corresponding
    // region of B.
    std::vector<std::pair<int, int>> region_pairs(region_map.begin(), region_map.end());
    for (auto [ra, rb] : region_pairs) {
        const Region& RA = A.regions()[ra];
        const Region& RB = B.regions()[rb];
        if (RA.child_loops.size() != RB.child_loops.size()) return false;
        if (RA.child_comps.size() != RB.child_comps.size()) return false;
        std::set<int> want;
        for (int c : RA.child_comps) want.insert(comp_perm[c]);
        std::set<int> have(RB.child_comps.begin(), RB.child_comps.end());
        if (want != have) return false;
        if (!match_loop_sets(RA.child_loops, RB.child_loops, 0, cb, loop_map)) return false;
    }
    return true;
}

} // namespace

bool isomorphic(const Arrangement& A, const Arrangement& B, bool) {
    if (A.component_count() != B.component_count() || A.loop_count() != B.loop_count())
        return false;
    if (A.region_count() != B.region_count()) return false;
    if (A.curves().curve_count() != B.curves().curve_count()) return false;

    int nc = A.component_count();
    std::vector<int> perm(nc);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool size_ok = true;
        for (int c = 0; c < nc; ++c)
            if (A.component(c).dart_count() != B.component(perm[c]).dart_count()) size_ok = false;
        if (!size_ok) continue;

        // Per-component seed choices; depth-first over components.
        std::function<bool(int, CB, std::vector<std::vector<int>>)> go =
            [&](int ci, CB cb, std::vector<std::vector<int>> dmaps) -> bool {
            if (ci == nc) {
                Matcher M{A, B};
                M.comp_perm = perm;
                M.face_map.assign(nc, {});
                for (int c = 0; c < nc; ++c) {
                    const SignedMap& MA = A.component(c);
                    const SignedMap& MB = B.component(perm[c]);
                    M.face_map[c].assign(MA.face_count(), -1);
                    for (int f = 0; f < MA.face_count(); ++f) {
                        int flag = MA.faces()[f].flags[0];
                        int d = flag / 2, s = flag % 2;
                        // A flag maps by dart map; side may swap under
                        // direction reversal, so probe both sides.
                        int bd = dmaps[c][d];
                        int f0 = MB.face_of_flag(2 * bd + s);
                        int f1 = MB.face_of_flag(2 * bd + (1 - s));
                        // Decide by comparing full flag sets.
                        std::set<int> target;
                        for (int fl : MA.faces()[f].flags) {
                            target.insert(dmaps[c][fl / 2]);
                            target.insert(dmaps[c][SignedMap::partner(fl / 2)]);
                        }
                        auto darts_of_face = [&](int bf) {
                            std::set<int> out;
                            for (int fl : MB.faces()[bf].flags) {
                                out.insert(fl / 2);
                                out.insert(SignedMap::partner(fl / 2));
                            }
                            return out;
                        };
                        M.face_map[c][f] = (darts_of_face(f0) == target) ? f0 : f1;
                    }
                }
                return M.run(cb);
            }
            const SignedMap& MA = A.component(ci);
            const SignedMap& MB = B.component(perm[ci]);
            if (MA.dart_count() == 0) {
                dmaps.push_back({});
                return go(ci + 1, cb, dmaps);
            }
            for (int b0 = 0; b0 < MB.dart_count(); ++b0)
                for (int spin : {+1, -1}) {
                    CB cb2 = cb;
                    auto dmap = match_component(MA, MB, 0, b0, spin, A.curves(), B.curves(), cb2);
                    if (dmap.empty()) continue;
                    auto dmaps2 = dmaps;
                    dmaps2.push_back(std::move(dmap));
                    if (go(ci + 1, cb2, dmaps2)) return true;
                }
            return false;
        };
        if (go(0, CB{}, {})) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

int min_crossings_by_walks(const Arrangement& a, const std::vector<int>& through, int curve,
                           int homology_class, int max_len) {
    int nT = static_cast<int>(through.size());
    if (through.empty()) return -1;
    auto target_bit = [&](int region) {
        int m = 0;
        for (int i = 0; i < nT; ++i)
            if (through[i] == region) m |= 1 << i;
        return m;
    };
    struct St {
        int region, bit, mask, cost, len;
    };
    int start = through[0];
    std::vector<St> frontier{{start, 0, target_bit(start), 0, 0}};
    int best = -1;
    std::map<std::tuple<int, int, int>, std::map<int, int>> seen; // (r,bit,mask) -> len -> cost
    while (!frontier.empty()) {
        std::vector<St> next;
        for (const auto& st : frontier) {
            if (st.region == start && st.bit == homology_class && st.mask == (1 << nT) - 1 &&
                st.len > 0)
                if (best == -1 || st.cost < best) best = st.cost;
            if (st.len >= max_len) continue;
            for (int ai : a.dual_arcs_at(st.region)) {
                const DualArc& arc = a.dual()[ai];
                int to = (arc.region_a == st.region) ? arc.region_b : arc.region_a;
                St ns{to, st.bit ^ (arc.flips ? 1 : 0), st.mask | target_bit(to),
                      st.cost + ((arc.crossed.curve == curve) ? 1 : 0), st.len + 1};
                auto& slot = seen[{ns.region, ns.bit, ns.mask}];
                auto it = slot.find(ns.len);
                if (it != slot.end() && it->second <= ns.cost) continue;
                slot[ns.len] = ns.cost;
                next.push_back(ns);
            }
        }
        frontier = std::move(next);
    }
    return best;
}

} // namespace snakes::brute
