#include "snakes/canon/canon.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace snakes {

namespace {

std::string metadata_sig(const CurveInfo& c) {
    std::string s = "d" + std::to_string(c.degree) + "r" + std::to_string(c.rank) + "t" +
                    curve_type_name(c.type) + "b" + std::to_string(c.branch_count());
    int ovals = 0, pseudolines = 0;
    for (const auto& b : c.branches)
        (b.shape == BranchShape::Oval ? ovals : pseudolines)++;
    s += "o" + std::to_string(ovals) + "p" + std::to_string(pseudolines);
    return s;
}

struct Traversal {
    std::string code;
    std::vector<int> face_order; // canonical idx -> face idx
    std::vector<int> face_rank;  // face idx -> canonical idx
};

// One rooted, direction-normalized traversal.  Tree edges get effective
// sign +1 by construction (the far vertex direction absorbs the edge sign);
// the certificate then carries rotations, co-tree attachments with relative
// positions and effective signs, and branch/curve occurrence labels.
Traversal traverse(const SignedMap& m, int s0, int sigma0, const std::vector<int>& curve_id,
                   int curve_count) {
    const int V = m.vertex_count();
    std::vector<int> label(V, -1), tau(V, 0), entry(V, -1);
    std::vector<int> order;
    label[m.dart_vertex(s0)] = 0;
    tau[m.dart_vertex(s0)] = sigma0;
    entry[m.dart_vertex(s0)] = s0;
    order.push_back(m.dart_vertex(s0));

    std::map<std::pair<int, int>, int> branch_occ;
    std::vector<int> occ_counter(curve_count, 0);
    auto branch_token = [&](const BranchRef& b) {
        auto key = std::make_pair(b.curve, b.branch);
        auto it = branch_occ.find(key);
        if (it == branch_occ.end()) it = branch_occ.emplace(key, occ_counter[b.curve]++).first;
        return "q" + std::to_string(curve_id[b.curve]) + "." + std::to_string(it->second);
    };
    auto seq = [&](int v, int k) {
        const auto& rot = m.vertex(v).rot;
        int p0 = m.dart_pos(entry[v]);
        int idx = ((p0 + tau[v] * k) % 4 + 4) % 4;
        return rot[idx];
    };

    std::ostringstream out;
    for (size_t qi = 0; qi < order.size(); ++qi) {
        int v = order[qi];
        int from = (qi == 0) ? 0 : 1;
        for (int k = from; k < 4; ++k) {
            int d = seq(v, k);
            int p = SignedMap::partner(d);
            int w = m.dart_vertex(p);
            out << branch_token(m.branch_of_dart(d));
            if (label[w] == -1) {
                label[w] = static_cast<int>(order.size());
                tau[w] = m.sign_of_dart(d) * tau[v];
                entry[w] = p;
                order.push_back(w);
                out << "n;";
            } else {
                int rel = -1;
                for (int j = 0; j < 4; ++j)
                    if (seq(w, j) == p) rel = j;
                int eff = m.sign_of_dart(d) * tau[v] * tau[w];
                out << "o" << label[w] << "," << rel << "," << (eff > 0 ? "+" : "-") << ";";
            }
        }
    }

    Traversal t;
    t.code = out.str();
    t.face_rank.assign(m.face_count(), -1);
    int next = 0;
    for (int v : order)
        for (int k = 0; k < 4; ++k) {
            int d = seq(v, k);
            for (int srel = 0; srel < 2; ++srel) {
                int s = srel ^ (tau[v] < 0 ? 1 : 0);
                int f = m.face_of_flag(2 * d + s);
                if (t.face_rank[f] == -1) {
                    t.face_rank[f] = next++;
                    t.face_order.push_back(f);
                }
            }
        }
    return t;
}

// Serialization state shared by canonical_form and canonical_layout.
struct Assembler {
    const Arrangement* a;
    CanonOptions opt;
    std::vector<int> curve_id; // internal curve -> canonical id

    // Outputs of the winning pass.
    std::vector<int> comp_order, loop_order;
    std::vector<std::vector<int>> face_order; // per internal comp

    // Scratch for the current pass.
    std::vector<Traversal> best_traversal; // per comp
    std::vector<std::string> comp_str, loop_str;

    std::string component_string(int c);
    std::string loop_string(int l);
    std::string region_children_string(int region);
    std::string run();
    void record_orders(int region);
};

std::string Assembler::region_children_string(int region) {
    const Region& r = a->regions()[region];
    std::vector<std::string> kids;
    for (int c : r.child_comps) kids.push_back(component_string(c));
    for (int l : r.child_loops) kids.push_back(loop_string(l));
    std::sort(kids.begin(), kids.end());
    std::string s = "[";
    for (auto& k : kids) s += k + ",";
    s += "]";
    return s;
}

std::string Assembler::loop_string(int l) {
    if (!loop_str[l].empty()) return loop_str[l];
    const Loop& lp = a->loop(l);
    std::string s = "L(" + std::to_string(curve_id[lp.branch.curve]) +
                    (lp.essential ? ",e" : ",o") + ")";
    if (!lp.essential) s += region_children_string(a->region_inside_loop(l));
    return loop_str[l] = s;
}

std::string Assembler::component_string(int c) {
    if (!comp_str[c].empty()) return comp_str[c];
    const SignedMap& m = a->component(c);
    std::string best;
    Traversal best_t;
    for (int s0 = 0; s0 < m.dart_count(); ++s0)
        for (int sigma : {+1, -1}) {
            if (opt.chiral && sigma < 0) continue;
            Traversal t = traverse(m, s0, sigma, curve_id,
                                   a->curves().curve_count());
            // Full string: code, outer face, then children per canonical face.
            std::string s = "M(" + t.code + ")";
            int outer = a->component_outer_face(c);
            s += "outer:" + std::to_string(outer >= 0 ? t.face_rank[outer] : -1) + ";";
            s += "faces:";
            for (int fi = 0; fi < m.face_count(); ++fi) {
                int f = t.face_order[fi];
                int region = (outer >= 0 && f == outer) ? -1 : a->region_of_face(c, f);
                if (region < 0) {
                    s += "(outer)";
                    continue;
                }
                s += region_children_string(region);
            }
            if (best.empty() || s < best) {
                best = s;
                best_t = t;
            }
        }
    best_traversal[c] = std::move(best_t);
    return comp_str[c] = best;
}

void Assembler::record_orders(int region) {
    const Region& r = a->regions()[region];
    // Children sorted by serialization, ties by internal index for
    // determinism (tied children are symmetric, so naming is free).
    std::vector<std::pair<std::string, std::pair<int, int>>> kids; // (str, (kind, idx))
    for (int c : r.child_comps) kids.push_back({comp_str[c], {0, c}});
    for (int l : r.child_loops) kids.push_back({loop_str[l], {1, l}});
    std::sort(kids.begin(), kids.end());
    for (auto& [s, who] : kids) {
        if (who.first == 0) {
            int c = who.second;
            comp_order.push_back(c);
            int outer = a->component_outer_face(c);
            for (int fi = 0; fi < a->component(c).face_count(); ++fi) {
                int f = best_traversal[c].face_order[fi];
                if (outer >= 0 && f == outer) continue;
                record_orders(a->region_of_face(c, f));
            }
        } else {
            int l = who.second;
            loop_order.push_back(l);
            if (!a->loop(l).essential) record_orders(a->region_inside_loop(l));
        }
    }
}

std::string Assembler::run() {
    comp_str.assign(a->component_count(), "");
    loop_str.assign(a->loop_count(), "");
    best_traversal.assign(a->component_count(), Traversal{});

    std::string s = "CT:";
    // Canonical curve table in canonical id order.
    std::vector<int> by_id(a->curves().curve_count());
    for (int c = 0; c < a->curves().curve_count(); ++c) by_id[curve_id[c]] = c;
    for (int id = 0; id < static_cast<int>(by_id.size()); ++id)
        s += metadata_sig(a->curves().curve(by_id[id])) + ";";
    if (a->has_essential_component()) {
        s += "R:" + component_string(a->essential_component());
    } else {
        s += "BG:" + region_children_string(a->background_region());
    }
    return s;
}

// All maps internal-curve -> canonical-id; canonical ids are blocked by
// metadata signature (signature order), and curves sharing a signature may
// occupy any id in their block.
std::vector<std::vector<int>> curve_permutations(const CurveSystem& cs) {
    int n = cs.curve_count();
    std::map<std::string, std::vector<int>> groups;
    for (int c = 0; c < n; ++c) groups[metadata_sig(cs.curve(c))].push_back(c);
    std::vector<std::pair<std::string, std::vector<int>>> glist(groups.begin(), groups.end());
    std::vector<int> start(glist.size());
    int s = 0;
    size_t total = 1;
    for (size_t i = 0; i < glist.size(); ++i) {
        start[i] = s;
        s += static_cast<int>(glist[i].second.size());
        for (size_t f = 2; f <= glist[i].second.size(); ++f) total *= f;
        if (total > 5040)
            throw Error(ErrorKind::InvalidArgument, "too many interchangeable curves");
    }
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, -1);
    std::function<void(size_t)> rec = [&](size_t gi) {
        if (gi == glist.size()) {
            out.push_back(cur);
            return;
        }
        std::vector<int> off(glist[gi].second.size());
        std::iota(off.begin(), off.end(), 0);
        do {
            for (size_t i = 0; i < off.size(); ++i)
                cur[glist[gi].second[i]] = start[gi] + off[i];
            rec(gi + 1);
        } while (std::next_permutation(off.begin(), off.end()));
    };
    rec(0);
    return out;
}

} // namespace

CanonicalForm canonical_form(const Arrangement& a, const CanonOptions& opt) {
    std::string best;
    for (const auto& perm : curve_permutations(a.curves())) {
        Assembler as;
        as.a = &a;
        as.opt = opt;
        as.curve_id = perm;
        std::string s = as.run();
        if (best.empty() || s < best) best = s;
    }
    return CanonicalForm{best};
}

CanonicalLayout canonical_layout(const Arrangement& a, const CanonOptions& opt) {
    std::string best;
    CanonicalLayout out;
    for (const auto& perm : curve_permutations(a.curves())) {
        Assembler as;
        as.a = &a;
        as.opt = opt;
        as.curve_id = perm;
        std::string s = as.run();
        if (best.empty() || s < best) {
            best = s;
            as.comp_order.clear();
            as.loop_order.clear();
            if (a.has_essential_component()) {
                int c = a.essential_component();
                as.comp_order.push_back(c);
                for (int fi = 0; fi < a.component(c).face_count(); ++fi)
                    as.record_orders(a.region_of_face(c, as.best_traversal[c].face_order[fi]));
            } else {
                as.record_orders(a.background_region());
            }
            out.comp_order = as.comp_order;
            out.loop_order = as.loop_order;
            out.face_order.assign(a.component_count(), {});
            for (int c = 0; c < a.component_count(); ++c)
                out.face_order[c] = as.best_traversal[c].face_order;
        }
    }
    out.form = CanonicalForm{best};
    // Region names from the canonical orders.
    out.region_names.assign(a.region_count(), "");
    if (a.background_region() >= 0) out.region_names[a.background_region()] = "bg";
    std::vector<int> comp_rank(a.component_count(), -1);
    for (size_t i = 0; i < out.comp_order.size(); ++i) comp_rank[out.comp_order[i]] = (int)i;
    std::vector<int> loop_rank(a.loop_count(), -1);
    for (size_t i = 0; i < out.loop_order.size(); ++i) loop_rank[out.loop_order[i]] = (int)i;
    for (int r = 0; r < a.region_count(); ++r) {
        const Region& reg = a.regions()[r];
        if (reg.kind == Region::Kind::MapFace) {
            int canonical_face = -1;
            const auto& order = out.face_order[reg.comp];
            for (size_t fi = 0; fi < order.size(); ++fi)
                if (order[fi] == reg.face) canonical_face = (int)fi;
            out.region_names[r] = "c" + std::to_string(comp_rank[reg.comp]) + ".f" +
                                  std::to_string(canonical_face);
        } else if (reg.kind == Region::Kind::LoopInside) {
            out.region_names[r] = "l" + std::to_string(loop_rank[reg.loop]) + ".in";
        }
    }
    return out;
}

int CanonicalLayout::region_by_name(const Arrangement& a, const std::string& name) const {
    for (int r = 0; r < a.region_count(); ++r)
        if (region_names[r] == name) return r;
    return -1;
}

std::string to_hex(const CanonicalForm& cf) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(cf.bytes.size() * 2);
    for (unsigned char ch : cf.bytes) {
        out += digits[ch >> 4];
        out += digits[ch & 15];
    }
    return out;
}

bool is_isotopic(const Arrangement& a, const Arrangement& b, const CanonOptions& opt) {
    return canonical_form(a, opt) == canonical_form(b, opt);
}

DedupeResult dedupe(const std::vector<const Arrangement*>& items, const CanonOptions& opt) {
    DedupeResult res;
    res.class_of.assign(items.size(), -1);
    std::map<std::string, int> seen; // certificate -> kept slot
    for (size_t i = 0; i < items.size(); ++i) {
        CanonicalForm cf = canonical_form(*items[i], opt);
        auto it = seen.find(cf.bytes);
        if (it == seen.end()) {
            seen.emplace(cf.bytes, static_cast<int>(res.kept.size()));
            res.class_of[i] = static_cast<int>(res.kept.size());
            res.kept.push_back(static_cast<int>(i));
        } else {
            res.class_of[i] = it->second;
        }
    }
    return res;
}

} // namespace snakes
