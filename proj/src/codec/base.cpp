#include "snakes/codec/base.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "snakes/canon/canon.hpp"
#include "snakes/codec/armap.hpp"
#include "snakes/restrict/restrict.hpp"

namespace snakes {

namespace {

struct Tok {
    std::string text;
    int line, col;
};

std::vector<std::vector<Tok>> lex_lines(const std::string& text) {
    std::vector<std::vector<Tok>> out;
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        // Arc punctuation becomes its own token.
        std::vector<Tok> toks;
        size_t i = 0;
        while (i < line.size()) {
            char ch = line[i];
            if (ch == '#') break;
            if (isspace(static_cast<unsigned char>(ch))) {
                ++i;
                continue;
            }
            if (ch == '(' || ch == ')' || ch == '-' || ch == '=') {
                toks.push_back(Tok{std::string(1, ch), ln, static_cast<int>(i) + 1});
                ++i;
                continue;
            }
            size_t j = i;
            while (j < line.size() && !isspace(static_cast<unsigned char>(line[j])) &&
                   line[j] != '(' && line[j] != ')' && line[j] != '-' && line[j] != '=' &&
                   line[j] != '#')
                ++j;
            toks.push_back(Tok{line.substr(i, j - i), ln, static_cast<int>(i) + 1});
            i = j;
        }
        if (!toks.empty()) out.push_back(std::move(toks));
    }
    return out;
}

[[noreturn]] void fail(const Tok& t, const std::string& msg) {
    throw Error(ErrorKind::SyntaxError, msg + " (near '" + t.text + "')", t.line, t.col);
}

[[noreturn]] void fail_word(const Tok& t, const std::string& msg) {
    throw Error(ErrorKind::InvalidWord, msg, t.line, t.col);
}

} // namespace

BaseArrangement parse_base(const std::string& text) {
    auto lines = lex_lines(text);
    if (lines.empty()) throw Error(ErrorKind::SyntaxError, "empty input", 1, 1);
    BaseArrangement out;
    bool saw_base = false;
    std::vector<Tok> word_toks;
    std::map<std::string, int> label_pos;
    struct PendingArc {
        std::string letter;
        size_t idx;
        Tok from, to;
    };
    std::vector<PendingArc> pending_arcs;

    auto branch_letter_of = [&](const std::string& label) {
        size_t i = 0;
        while (i < label.size() && isalpha(static_cast<unsigned char>(label[i]))) ++i;
        return label.substr(0, i);
    };

    for (auto& ts : lines) {
        const std::string& kw = ts[0].text;
        if (kw == "base") {
            // base k = <int>  (also accepts k=<int> as two tokens)
            saw_base = true;
            bool got = false;
            for (size_t i = 1; i + 1 < ts.size(); ++i)
                if (ts[i].text == "k") {
                    size_t j = i + 1;
                    if (ts[j].text == "=") ++j;
                    if (j >= ts.size()) fail(ts[i], "base k needs a value");
                    out.k = std::atoi(ts[j].text.c_str());
                    got = true;
                }
            if (!got) fail(ts[0], "base line needs k=<int>");
        } else if (kw == "curve") {
            if (ts.size() < 4 || ts[2].text != "degree") fail(ts[0], "malformed curve line");
            std::string name = ts[1].text;
            int degree = std::atoi(ts[3].text.c_str());
            int rank = 0;
            CurveType type = CurveType::Unknown;
            for (size_t i = 4; i + 1 < ts.size(); ++i) {
                if (ts[i].text == "rank") rank = std::atoi(ts[i + 1].text.c_str());
                if (ts[i].text == "type") type = curve_type_from(ts[i + 1].text);
            }
            out.curves.add_curve(name, degree, rank, type);
        } else if (kw == "word") {
            for (size_t i = 1; i < ts.size(); ++i) word_toks.push_back(ts[i]);
        } else if (kw == "branch") {
            if (ts.size() < 3) fail(ts[0], "malformed branch line");
            BaseArrangement::BranchDecl bd;
            bd.letter = ts[1].text;
            if (ts[2].text == "oval") bd.shape = BranchShape::Oval;
            else if (ts[2].text == "pseudoline") bd.shape = BranchShape::Pseudoline;
            else fail(ts[2], "expected oval or pseudoline");
            size_t i = 3;
            if (i < ts.size() && ts[i].text == "free") {
                bd.free = true;
                ++i;
            } else if (i < ts.size() && ts[i].text == "arcs") {
                ++i;
                while (i < ts.size()) {
                    if (ts[i].text != "(") fail(ts[i], "expected (");
                    if (i + 4 >= ts.size()) fail(ts[i], "truncated arc");
                    BaseArrangement::Arc arc;
                    const Tok& from = ts[i + 1];
                    if (ts[i + 2].text != "-") fail(ts[i + 2], "expected -");
                    const Tok& to = ts[i + 3];
                    const Tok& side = ts[i + 4];
                    if (side.text == "in") arc.inside = true;
                    else if (side.text == "out") arc.inside = false;
                    else fail(side, "expected in or out");
                    i += 5;
                    while (i < ts.size() && ts[i].text != ")") {
                        if (ts[i].text == "wrap") arc.wrap = 1;
                        else if (ts[i].text == "flat") arc.wrap = 0;
                        else fail(ts[i], "expected wrap, flat or )");
                        ++i;
                    }
                    if (i >= ts.size()) fail(ts.back(), "unclosed arc");
                    ++i; // ')'
                    arc.from = -2;
                    arc.to = -2;
                    bd.arcs.push_back(arc);
                    pending_arcs.push_back(PendingArc{bd.letter, bd.arcs.size() - 1, from, to});
                }
            }
            out.branches.push_back(std::move(bd));
        } else if (kw == "place") {
            if (ts.size() != 4 || ts[2].text != "in") fail(ts[0], "malformed place line");
            out.placements.emplace_back(ts[1].text, ts[3].text);
        } else if (kw == "map") {
            if (ts.size() != 2) fail(ts[0], "malformed map line");
            out.map_override = ts[1].text;
        } else {
            fail(ts[0], "unknown directive");
        }
    }
    if (!saw_base) throw Error(ErrorKind::SyntaxError, "missing base line", 1, 1);
    if (!out.map_override.empty()) return out;
    if (out.curves.curve_count() != 2)
        throw Error(ErrorKind::SyntaxError, "need exactly two curve lines", 1, 1);
    if (out.curves.curve(0).degree != 2)
        throw Error(ErrorKind::SyntaxError, "the first curve must be the conic", 1, 1);

    // Resolve word labels.
    if (static_cast<int>(word_toks.size()) != 2 * out.k) {
        if (!word_toks.empty()) fail_word(word_toks[0], "word length must be 2k");
        throw Error(ErrorKind::InvalidWord, "word length must be 2k", 1, 1);
    }
    for (int i = 0; i < static_cast<int>(word_toks.size()); ++i) {
        if (label_pos.count(word_toks[i].text)) fail_word(word_toks[i], "repeated crossing label");
        label_pos[word_toks[i].text] = i;
        out.word.push_back(word_toks[i].text);
    }
    // Letters must match declared branches; counts must be even.
    std::map<std::string, int> counts;
    for (auto& w : out.word) counts[branch_letter_of(w)] += 1;
    std::set<std::string> declared;
    for (auto& bd : out.branches) declared.insert(bd.letter);
    for (auto& [letter, n] : counts) {
        if (!declared.count(letter))
            throw Error(ErrorKind::InvalidWord, "word uses undeclared branch " + letter, 1, 1);
        if (n % 2) throw Error(ErrorKind::InvalidWord, "branch " + letter + " crosses oddly", 1, 1);
    }
    // Resolve arc labels against word positions.
    for (const auto& pa : pending_arcs) {
        auto itF = label_pos.find(pa.from.text);
        if (itF == label_pos.end()) fail_word(pa.from, "arc uses a label not in the word");
        auto itT = label_pos.find(pa.to.text);
        if (itT == label_pos.end()) fail_word(pa.to, "arc uses a label not in the word");
        for (auto& bd : out.branches)
            if (bd.letter == pa.letter) {
                bd.arcs[pa.idx].from = itF->second;
                bd.arcs[pa.idx].to = itT->second;
            }
    }

    // Arc lists must chain over the branch's crossings with alternation.
    for (auto& bd : out.branches) {
        if (bd.free) {
            if (!bd.arcs.empty())
                throw Error(ErrorKind::InvalidWord, "free branch with arcs", 1, 1);
            continue;
        }
        if (bd.arcs.empty()) {
            if (counts.count(bd.letter))
                throw Error(ErrorKind::InvalidWord,
                            "crossed branch " + bd.letter + " needs an arcs clause", 1, 1);
            continue;
        }
        int n = static_cast<int>(bd.arcs.size());
        std::set<int> seen;
        for (int i = 0; i < n; ++i) {
            const auto& arc = bd.arcs[i];
            const auto& next = bd.arcs[(i + 1) % n];
            if (arc.to != next.from)
                throw Error(ErrorKind::InvalidWord,
                            "arcs of branch " + bd.letter + " do not chain", 1, 1);
            if (arc.inside == next.inside)
                throw Error(ErrorKind::InvalidWord,
                            "arcs of branch " + bd.letter + " must alternate sides", 1, 1);
            if (!seen.insert(arc.from).second)
                throw Error(ErrorKind::InvalidWord,
                            "branch " + bd.letter + " revisits a crossing", 1, 1);
            if (branch_letter_of(out.word[arc.from]) != bd.letter)
                throw Error(ErrorKind::InvalidWord,
                            "branch " + bd.letter + " uses a foreign crossing", 1, 1);
        }
        if (2 * (n / 2) != n)
            throw Error(ErrorKind::InvalidWord, "odd arc count on " + bd.letter, 1, 1);
        if (n != counts[bd.letter])
            throw Error(ErrorKind::InvalidWord,
                        "branch " + bd.letter + " misses some crossings", 1, 1);
    }
    return out;
}

namespace {

// One skeleton candidate: a wrap-bit choice plus (for planar skeletons) an
// outer-face choice.
struct Skeleton {
    Arrangement arr;
    int comp = 0;
};

std::vector<BaseArrangement::Arc> out_arcs(const BaseArrangement& base) {
    std::vector<BaseArrangement::Arc> arcs;
    for (const auto& bd : base.branches)
        for (const auto& a : bd.arcs)
            if (!a.inside) arcs.push_back(a);
    return arcs;
}

SignedMap build_skeleton_map(const BaseArrangement& base, const std::map<std::pair<int, int>, int>& wrap) {
    int n = 2 * base.k;
    SignedMap m;
    for (int i = 0; i < n; ++i) m.add_vertex();
    BranchRef conic{0, 0};
    // Conic edges i: vertex i -> i+1.
    for (int i = 0; i < n; ++i) m.add_edge(conic, +1);
    // Branch arcs; remember the dart at each crossing and side.
    std::vector<int> in_dart(n, -1), out_dart(n, -1);
    int branch_index = 0;
    for (const auto& bd : base.branches) {
        if (bd.free) {
            ++branch_index;
            continue;
        }
        for (const auto& arc : bd.arcs) {
            int sign = +1;
            if (!arc.inside) {
                auto it = wrap.find({arc.from, arc.to});
                sign = (it != wrap.end() && it->second) ? -1 : +1;
            }
            int e = m.add_edge(BranchRef{1, branch_index}, sign);
            if (arc.inside) {
                in_dart[arc.from] = 2 * e;
                in_dart[arc.to] = 2 * e + 1;
            } else {
                out_dart[arc.from] = 2 * e;
                out_dart[arc.to] = 2 * e + 1;
            }
        }
        ++branch_index;
    }
    for (int i = 0; i < n; ++i) {
        if (in_dart[i] < 0 || out_dart[i] < 0)
            throw Error(ErrorKind::InvalidWord, "crossing missing an arc");
        // Counterclockwise: conic-next, inward arc, conic-prev, outward arc.
        m.set_rotation(i, {2 * (i % n), in_dart[i], 2 * ((i + n - 1) % n) + 1, out_dart[i]});
    }
    m.seal();
    return m;
}

} // namespace

std::vector<Arrangement> compile_base_candidates(const BaseArrangement& base,
                                                 const CompileOptions& opt) {
    // Curve metadata for the compiled picture.
    CurveSystem cs = base.curves;
    for (const auto& bd : base.branches) cs.add_branch(1, bd.shape);
    cs.add_branch(0, BranchShape::Oval);
    // Free-branch letters -> branch indices.
    std::map<std::string, int> branch_of_letter;
    for (size_t i = 0; i < base.branches.size(); ++i)
        branch_of_letter[base.branches[i].letter] = static_cast<int>(i);

    // Enumerate wrap assignments for unknown outside arcs.
    std::vector<BaseArrangement::Arc> outs = out_arcs(base);
    std::vector<int> free_slots;
    for (size_t i = 0; i < outs.size(); ++i)
        if (outs[i].wrap == -1) free_slots.push_back(static_cast<int>(i));
    if (free_slots.size() > 16)
        throw Error(ErrorKind::InvalidArgument, "too many undetermined arcs");

    std::vector<Arrangement> valid;
    for (int mask = 0; mask < (1 << free_slots.size()); ++mask) {
        std::map<std::pair<int, int>, int> wrap;
        for (size_t i = 0; i < outs.size(); ++i) wrap[{outs[i].from, outs[i].to}] = outs[i].wrap == 1;
        for (size_t j = 0; j < free_slots.size(); ++j) {
            auto& arc = outs[free_slots[j]];
            wrap[{arc.from, arc.to}] = (mask >> j) & 1;
        }
        SignedMap m;
        try {
            m = build_skeleton_map(base, wrap);
        } catch (const Error&) {
            continue;
        }
        int chi = m.capped_chi();
        if (chi != 1 && chi != 2) continue;
        std::vector<int> outer_choices;
        if (chi == 1) outer_choices.push_back(-1);
        else
            for (int f = 0; f < m.face_count(); ++f) outer_choices.push_back(f);

        for (int outer : outer_choices) {
            SignedMap copy = m;
            Arrangement::Builder b(cs);
            int comp = b.add_component(std::move(copy));
            if (outer < 0) b.place_essential_component(comp);
            else b.place_component_background(comp, outer);
            // Free loops placed by name against the skeleton's canonical
            // layout (computed on the loop-free arrangement first).
            Arrangement skeleton;
            try {
                skeleton = b.build();
            } catch (const Error&) {
                continue;
            }
            // Structural screen: inward arcs inside the conic disk, outward
            // arcs outside.
            BranchRef conic{0, 0};
            bool sides_ok = true;
            try {
                const SignedMap& sm = skeleton.component(0);
                for (int e = 0; e < sm.edge_count(); ++e) {
                    if (sm.edge(e).branch.curve != 1) continue;
                    int r0 = skeleton.region_of_face(0, sm.face_of_flag(2 * (2 * e) + 0));
                    int r1 = skeleton.region_of_face(0, sm.face_of_flag(2 * (2 * e) + 1));
                    bool in0 = skeleton.region_inside_oval(r0, conic);
                    bool in1 = skeleton.region_inside_oval(r1, conic);
                    bool should_be_inside = false, found = false;
                    // Locate the arc's tag via its crossing pair.
                    // Edge darts map back to word positions through vertices.
                    int from = sm.dart_vertex(2 * e), to = sm.dart_vertex(2 * e + 1);
                    for (const auto& bd : base.branches)
                        for (const auto& arc : bd.arcs)
                            if ((arc.from == from && arc.to == to) ||
                                (arc.from == to && arc.to == from)) {
                                should_be_inside = arc.inside;
                                found = true;
                            }
                    if (!found) continue;
                    if (should_be_inside != (in0 || in1)) sides_ok = false;
                    if (should_be_inside && !(in0 && in1)) sides_ok = false;
                }
            } catch (const Error&) {
                sides_ok = false;
            }
            if (!sides_ok) continue;

            // Now place the declared free ovals.
            Arrangement full;
            if (base.placements.empty()) {
                bool any_free = false;
                for (const auto& bd : base.branches) any_free |= bd.free;
                if (any_free) continue; // free branches need placements
                full = std::move(skeleton);
            } else {
                CanonicalLayout lay = canonical_layout(skeleton);
                Arrangement::Builder fb(cs);
                SignedMap again = skeleton.component(0);
                int comp2 = fb.add_component(std::move(again));
                if (outer < 0) fb.place_essential_component(comp2);
                else fb.place_component_background(comp2, skeleton.component_outer_face(0));
                bool ok = true;
                for (const auto& [letter, region_name] : base.placements) {
                    auto itb = branch_of_letter.find(letter);
                    if (itb == branch_of_letter.end())
                        throw Error(ErrorKind::SyntaxError, "placement of unknown branch " + letter);
                    int r = lay.region_by_name(skeleton, region_name);
                    if (r < 0) {
                        ok = false;
                        break;
                    }
                    const Region& reg = skeleton.regions()[r];
                    Placement p;
                    if (reg.kind == Region::Kind::Background)
                        p = Placement{Placement::Kind::Background, -1, -1};
                    else p = Placement{Placement::Kind::MapFace, comp2, reg.face};
                    int l = fb.add_loop(BranchRef{1, itb->second});
                    fb.place_loop(l, p);
                }
                if (!ok) continue;
                try {
                    full = fb.build();
                } catch (const Error&) {
                    continue;
                }
            }
            valid.push_back(std::move(full));
        }
    }
    if (valid.empty())
        throw Error(ErrorKind::InvalidWord, "the data admits no embedding in the plane");

    // Dedupe structurally identical candidates.
    std::vector<const Arrangement*> ptrs;
    for (auto& a : valid) ptrs.push_back(&a);
    DedupeResult dd = dedupe(ptrs);
    std::vector<Arrangement> unique;
    for (int idx : dd.kept) unique.push_back(std::move(valid[idx]));
    if (opt.all_candidates) return unique;

    // Realizability screen: pictures a line pencil forbids are dropped.
    std::vector<Arrangement> screened;
    for (auto& a : unique)
        if (passes_line_screen(a)) screened.push_back(std::move(a));
    if (screened.empty())
        throw Error(ErrorKind::InvalidWord, "no embedding survives the auxiliary-line screen");
    return screened;
}

Arrangement compile_base(const BaseArrangement& base) {
    CompileOptions opt;
    auto cands = compile_base_candidates(base, opt);
    if (cands.size() > 1)
        throw Error(ErrorKind::AmbiguousEmbedding,
                    "the data admits " + std::to_string(cands.size()) +
                        " non-isotopic embeddings; pin arcs with wrap/flat or use a map override");
    return std::move(cands.front());
}

Arrangement load_base_text(const std::string& text, const std::string& dir) {
    BaseArrangement base = parse_base(text);
    if (!base.map_override.empty()) {
        std::ifstream in(dir + "/" + base.map_override);
        if (!in)
            throw Error(ErrorKind::SyntaxError, "cannot open map override " + base.map_override);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_map(ss.str());
    }
    return compile_base(base);
}

Arrangement load_base_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::SyntaxError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    size_t slash = path.find_last_of('/');
    return load_base_text(ss.str(), slash == std::string::npos ? "." : path.substr(0, slash));
}

} // namespace snakes
