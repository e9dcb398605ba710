#include "snakes/codec/snake_code.hpp"

#include <algorithm>
#include <map>

namespace snakes {

namespace {

// Lexicographically minimal re-indexing of the positions at which one
// branch's crossings appear, over the dihedral action on that branch's own
// cyclic crossing order.
std::vector<int> best_indexing(const std::vector<int>& seq, int branch_len) {
    std::vector<int> best;
    for (int dir : {+1, -1})
        for (int off = 0; off < branch_len; ++off) {
            std::vector<int> cand;
            cand.reserve(seq.size());
            for (int v : seq) cand.push_back((((v - off) * dir) % branch_len + branch_len) % branch_len);
            if (best.empty() || cand < best) best = cand;
        }
    return best;
}

} // namespace

SnakeCode snake_code(const Arrangement& a, const SnakeWitness& w) {
    int comp = -1;
    const SignedMap::BranchCycle* snake = a.map_cycle_of(w.snake, &comp);
    if (!snake) throw Error(ErrorKind::InvalidArgument, "witness has no snake cycle");
    const SignedMap& m = a.component(comp);

    // Crossing sequence along the snake: (branch, position along branch).
    std::map<std::pair<int, int>, int> branch_pos; // (curve,branch) x vertex -> pos
    std::map<std::pair<int, int>, int> branch_len;
    for (const BranchRef& b : w.coiled) {
        const SignedMap::BranchCycle* cyc = a.map_cycle_of(b);
        if (!cyc) continue;
        int pos = 0;
        for (int d : cyc->darts) {
            branch_pos[{b.branch, m.dart_vertex(d)}] = pos++;
        }
        branch_len[{b.branch, -1}] = static_cast<int>(cyc->darts.size());
    }
    struct Hit {
        int branch;
        int pos;
    };
    std::vector<Hit> word;
    for (int d : snake->darts) {
        int v = m.dart_vertex(d);
        const BranchRef& other = m.branch_of_dart(m.vertex(v).rot[0]) == w.snake
                                     ? m.branch_of_dart(m.vertex(v).rot[1])
                                     : m.branch_of_dart(m.vertex(v).rot[0]);
        word.push_back(Hit{other.branch, branch_pos.at({other.branch, v})});
    }
    int n = static_cast<int>(word.size());

    std::string best;
    for (int dir : {+1, -1})
        for (int start = 0; start < n; ++start) {
            // Presentation of the snake word.
            std::vector<Hit> pres(n);
            for (int i = 0; i < n; ++i)
                pres[i] = word[((start + dir * i) % n + n) % n];
            // Branch letters by first occurrence.
            std::map<int, char> letter;
            for (const Hit& h : pres)
                if (!letter.count(h.branch))
                    letter[h.branch] = static_cast<char>('a' + letter.size());
            // Per-branch dihedral re-indexing, independently minimal.
            std::map<int, std::vector<int>> seqs;
            for (const Hit& h : pres) seqs[h.branch].push_back(h.pos);
            std::map<int, std::vector<int>> renumbered;
            for (auto& [b, sq] : seqs) renumbered[b] = best_indexing(sq, branch_len.at({b, -1}));
            std::map<int, int> cursor;
            std::string text;
            int prev_branch = -1;
            for (const Hit& h : pres) {
                if (prev_branch != -1 && prev_branch != h.branch) text += '/';
                text += letter[h.branch];
                text += std::to_string(renumbered[h.branch][cursor[h.branch]++] + 1);
                prev_branch = h.branch;
            }
            if (best.empty() || text < best) best = text;
        }
    return SnakeCode{best};
}

} // namespace snakes
