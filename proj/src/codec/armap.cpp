#include "snakes/codec/armap.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace snakes {

namespace {

std::string place_ref(const Arrangement& a, const Placement& p) {
    switch (p.kind) {
        case Placement::Kind::Background: return "bg";
        case Placement::Kind::MapFace:
            return "c" + std::to_string(p.owner) + ".f" + std::to_string(p.face);
        case Placement::Kind::LoopInside: return "l" + std::to_string(p.owner);
    }
    return "?";
}

struct Tok {
    std::string text;
    int line, col;
};

struct Lexer {
    std::vector<std::vector<Tok>> lines;
    explicit Lexer(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int ln = 0;
        while (std::getline(in, line)) {
            ++ln;
            std::vector<Tok> toks;
            size_t i = 0;
            while (i < line.size()) {
                if (isspace(static_cast<unsigned char>(line[i]))) {
                    ++i;
                    continue;
                }
                if (line[i] == '#') break;
                size_t j = i;
                while (j < line.size() && !isspace(static_cast<unsigned char>(line[j])))
                    ++j;
                toks.push_back(Tok{line.substr(i, j - i), ln, static_cast<int>(i) + 1});
                i = j;
            }
            if (!toks.empty()) lines.push_back(std::move(toks));
        }
    }
};

[[noreturn]] void fail(const Tok& t, const std::string& msg) {
    throw Error(ErrorKind::SyntaxError, msg + " (near '" + t.text + "')", t.line, t.col);
}

int to_int(const Tok& t) {
    try {
        size_t pos = 0;
        int v = std::stoi(t.text, &pos);
        if (pos != t.text.size()) fail(t, "expected an integer");
        return v;
    } catch (const Error&) {
        throw;
    } catch (...) {
        fail(t, "expected an integer");
    }
}

} // namespace

std::string serialize(const Arrangement& a) {
    std::ostringstream out;
    out << "armap 1\n";
    for (int c = 0; c < a.curves().curve_count(); ++c) {
        const CurveInfo& ci = a.curves().curve(c);
        out << "curve " << ci.name << " degree " << ci.degree << " rank " << ci.rank
            << " type " << curve_type_name(ci.type) << " branches";
        for (const auto& b : ci.branches)
            out << ' ' << (b.shape == BranchShape::Oval ? "oval" : "pseudoline");
        out << "\n";
    }
    for (int c = 0; c < a.component_count(); ++c) {
        const SignedMap& m = a.component(c);
        out << "component " << c << " vertices " << m.vertex_count() << " edges "
            << m.edge_count() << "\n";
        for (int v = 0; v < m.vertex_count(); ++v) {
            std::array<int, 4> rot = m.vertex(v).rot;
            int best = 0;
            for (int s = 1; s < 4; ++s) {
                for (int k = 0; k < 4; ++k) {
                    if (rot[(s + k) % 4] < rot[(best + k) % 4]) {
                        best = s;
                        break;
                    }
                    if (rot[(s + k) % 4] > rot[(best + k) % 4]) break;
                }
            }
            out << "v " << v << " :";
            for (int k = 0; k < 4; ++k) out << ' ' << rot[(best + k) % 4];
            out << "\n";
        }
        for (int e = 0; e < m.edge_count(); ++e) {
            const auto& ed = m.edge(e);
            out << "e " << e << " : " << (ed.sign > 0 ? '+' : '-') << ' '
                << a.curves().curve(ed.branch.curve).name << '.' << ed.branch.branch << "\n";
        }
    }
    for (int l = 0; l < a.loop_count(); ++l) {
        const Loop& lp = a.loop(l);
        out << "loop " << l << ' ' << a.curves().curve(lp.branch.curve).name << '.'
            << lp.branch.branch;
        if (lp.essential) out << " essential";
        out << "\n";
    }
    for (int c = 0; c < a.component_count(); ++c) {
        out << "place component " << c;
        if (a.component_outer_face(c) < 0) out << " root\n";
        else
            out << ' ' << place_ref(a, a.component_placement(c)) << " outer "
                << a.component_outer_face(c) << "\n";
    }
    for (int l = 0; l < a.loop_count(); ++l)
        out << "place loop " << l << ' ' << place_ref(a, a.loop_placement(l)) << "\n";
    out << "end\n";
    return out.str();
}

Arrangement parse_map(const std::string& text) {
    Lexer lex(text);
    if (lex.lines.empty())
        throw Error(ErrorKind::SyntaxError, "empty input", 1, 1);
    size_t li = 0;
    auto& header = lex.lines[li];
    if (header[0].text != "armap") fail(header[0], "expected 'armap'");
    ++li;

    CurveSystem cs;
    struct PendingComp {
        int vertices = 0, edges = 0;
        std::map<int, std::array<int, 4>> rot;
        std::map<int, std::pair<int, BranchRef>> edge; // sign, branch
    };
    std::vector<PendingComp> comps;
    struct PendingLoop {
        BranchRef branch;
        bool essential;
    };
    std::vector<PendingLoop> loops;
    struct PendingPlace {
        bool is_loop;
        int idx;
        std::string ref;
        int outer = -1;
        bool root = false;
        Tok at;
    };
    std::vector<PendingPlace> places;

    auto parse_branch_ref = [&](const Tok& t) -> BranchRef {
        size_t dot = t.text.rfind('.');
        if (dot == std::string::npos) fail(t, "expected curve.branch");
        int c = cs.find_curve(t.text.substr(0, dot));
        if (c < 0) fail(t, "unknown curve");
        int b = -1;
        try {
            b = std::stoi(t.text.substr(dot + 1));
        } catch (...) {
            fail(t, "bad branch index");
        }
        if (b < 0 || b >= cs.curve(c).branch_count()) fail(t, "branch index out of range");
        return BranchRef{c, b};
    };

    for (; li < lex.lines.size(); ++li) {
        auto& ts = lex.lines[li];
        const std::string& kw = ts[0].text;
        if (kw == "end") break;
        if (kw == "curve") {
            if (ts.size() < 8) fail(ts[0], "short curve line");
            std::string name = ts[1].text;
            int degree = 0, rank = 0;
            CurveType type = CurveType::Unknown;
            size_t i = 2;
            std::vector<BranchShape> shapes;
            while (i < ts.size()) {
                if (ts[i].text == "degree") degree = to_int(ts.at(++i)), ++i;
                else if (ts[i].text == "rank") rank = to_int(ts.at(++i)), ++i;
                else if (ts[i].text == "type") type = curve_type_from(ts.at(++i).text), ++i;
                else if (ts[i].text == "branches") {
                    for (++i; i < ts.size(); ++i) {
                        if (ts[i].text == "oval") shapes.push_back(BranchShape::Oval);
                        else if (ts[i].text == "pseudoline")
                            shapes.push_back(BranchShape::Pseudoline);
                        else fail(ts[i], "expected oval or pseudoline");
                    }
                } else fail(ts[i], "unexpected token in curve line");
            }
            int c = cs.add_curve(name, degree, rank, type);
            for (BranchShape s : shapes) cs.add_branch(c, s);
        } else if (kw == "component") {
            if (ts.size() != 6 || ts[2].text != "vertices" || ts[4].text != "edges")
                fail(ts[0], "malformed component line");
            int idx = to_int(ts[1]);
            if (idx != static_cast<int>(comps.size())) fail(ts[1], "components must be dense");
            PendingComp pc;
            pc.vertices = to_int(ts[3]);
            pc.edges = to_int(ts[5]);
            comps.push_back(pc);
        } else if (kw == "v") {
            if (comps.empty()) fail(ts[0], "vertex before any component");
            if (ts.size() != 7 || ts[2].text != ":") fail(ts[0], "malformed vertex line");
            std::array<int, 4> rot{to_int(ts[3]), to_int(ts[4]), to_int(ts[5]), to_int(ts[6])};
            comps.back().rot[to_int(ts[1])] = rot;
        } else if (kw == "e") {
            if (comps.empty()) fail(ts[0], "edge before any component");
            if (ts.size() != 5 || ts[2].text != ":") fail(ts[0], "malformed edge line");
            int sign = ts[3].text == "+" ? +1 : ts[3].text == "-" ? -1 : 0;
            if (sign == 0) fail(ts[3], "expected + or -");
            comps.back().edge[to_int(ts[1])] = {sign, parse_branch_ref(ts[4])};
        } else if (kw == "loop") {
            if (ts.size() < 3) fail(ts[0], "malformed loop line");
            if (to_int(ts[1]) != static_cast<int>(loops.size()))
                fail(ts[1], "loops must be dense");
            bool essential = ts.size() > 3 && ts[3].text == "essential";
            loops.push_back(PendingLoop{parse_branch_ref(ts[2]), essential});
        } else if (kw == "place") {
            if (ts.size() < 3) fail(ts[0], "malformed place line");
            PendingPlace pp;
            pp.at = ts[0];
            pp.is_loop = ts[1].text == "loop";
            if (!pp.is_loop && ts[1].text != "component") fail(ts[1], "place what?");
            pp.idx = to_int(ts[2]);
            if (ts.size() == 4 && ts[3].text == "root") pp.root = true;
            else {
                pp.ref = ts.at(3).text;
                if (!pp.is_loop) {
                    if (ts.size() != 6 || ts[4].text != "outer")
                        fail(ts[0], "component placement needs an outer face");
                    pp.outer = to_int(ts[5]);
                }
            }
            places.push_back(pp);
        } else {
            fail(ts[0], "unknown directive");
        }
    }

    Arrangement::Builder b(cs);
    for (auto& pc : comps) {
        SignedMap m;
        for (int v = 0; v < pc.vertices; ++v) m.add_vertex();
        for (int e = 0; e < pc.edges; ++e) {
            auto it = pc.edge.find(e);
            if (it == pc.edge.end())
                throw Error(ErrorKind::SyntaxError, "edge " + std::to_string(e) + " missing");
            m.add_edge(it->second.second, it->second.first);
        }
        for (auto& [v, rot] : pc.rot) m.set_rotation(v, rot);
        m.seal();
        b.add_component(std::move(m));
    }
    for (auto& pl : loops) b.add_loop(pl.branch, pl.essential);

    auto parse_place_ref = [&](const std::string& ref, const Tok& at) -> Placement {
        if (ref == "bg") return Placement{Placement::Kind::Background, -1, -1};
        if (ref.size() > 1 && ref[0] == 'l') {
            try {
                return Placement{Placement::Kind::LoopInside, std::stoi(ref.substr(1)), -1};
            } catch (...) {
                fail(at, "bad loop reference");
            }
        }
        size_t dot = ref.find(".f");
        if (ref.size() > 1 && ref[0] == 'c' && dot != std::string::npos) {
            try {
                int comp = std::stoi(ref.substr(1, dot - 1));
                int face = std::stoi(ref.substr(dot + 2));
                return Placement{Placement::Kind::MapFace, comp, face};
            } catch (...) {
                fail(at, "bad face reference");
            }
        }
        fail(at, "bad placement reference");
    };
    for (auto& pp : places) {
        if (pp.is_loop) b.place_loop(pp.idx, parse_place_ref(pp.ref, pp.at));
        else if (pp.root) b.place_essential_component(pp.idx);
        else b.place_component(pp.idx, parse_place_ref(pp.ref, pp.at), pp.outer);
    }
    return b.build();
}

} // namespace snakes
