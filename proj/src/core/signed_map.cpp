#include "snakes/core/signed_map.hpp"

#include <algorithm>
#include <map>

namespace snakes {

int SignedMap::add_vertex() {
    if (sealed_) throw Error(ErrorKind::InvalidArgument, "map is sealed");
    vertices_.push_back(Vertex{});
    return vertex_count() - 1;
}

int SignedMap::add_edge(BranchRef branch, int sign) {
    if (sealed_) throw Error(ErrorKind::InvalidArgument, "map is sealed");
    if (sign != 1 && sign != -1)
        throw Error(ErrorKind::InvalidArgument, "edge sign must be +1 or -1");
    edges_.push_back(Edge{sign, branch});
    return edge_count() - 1;
}

void SignedMap::set_rotation(int vertex, const std::array<int, 4>& darts) {
    if (sealed_) throw Error(ErrorKind::InvalidArgument, "map is sealed");
    vertices_.at(vertex).rot = darts;
}

int SignedMap::rot_next(int dart) const {
    const Vertex& v = vertices_[dart_vertex_[dart]];
    return v.rot[(dart_pos_[dart] + 1) % 4];
}

int SignedMap::rot_prev(int dart) const {
    const Vertex& v = vertices_[dart_vertex_[dart]];
    return v.rot[(dart_pos_[dart] + 3) % 4];
}

int SignedMap::straight_through(int arriving) const {
    const Vertex& v = vertices_[dart_vertex_[arriving]];
    return v.rot[(dart_pos_[arriving] + 2) % 4];
}

void SignedMap::seal() {
    if (sealed_) return;
    dart_vertex_.assign(dart_count(), -1);
    dart_pos_.assign(dart_count(), -1);
    for (int v = 0; v < vertex_count(); ++v) {
        const auto& rot = vertices_[v].rot;
        for (int p = 0; p < 4; ++p) {
            int d = rot[p];
            if (d < 0 || d >= dart_count())
                throw Error(ErrorKind::InvalidArgument,
                            "vertex " + std::to_string(v) + " has an unset rotation slot");
            if (dart_vertex_[d] != -1)
                throw Error(ErrorKind::InvalidArgument,
                            "dart " + std::to_string(d) + " appears in two rotations");
            dart_vertex_[d] = v;
            dart_pos_[d] = p;
        }
    }
    for (int d = 0; d < dart_count(); ++d)
        if (dart_vertex_[d] == -1)
            throw Error(ErrorKind::InvalidArgument,
                        "dart " + std::to_string(d) + " is attached to no vertex");
    // Transversality: the two strands through a vertex occupy opposite
    // rotation slots, so slots 0,2 share a branch and slots 1,3 share one.
    for (int v = 0; v < vertex_count(); ++v) {
        const auto& rot = vertices_[v].rot;
        const BranchRef& b0 = branch_of_dart(rot[0]);
        const BranchRef& b2 = branch_of_dart(rot[2]);
        const BranchRef& b1 = branch_of_dart(rot[1]);
        const BranchRef& b3 = branch_of_dart(rot[3]);
        if (!(b0 == b2) || !(b1 == b3))
            throw Error(ErrorKind::NonTransverseVertex,
                        "strands do not alternate at vertex " + std::to_string(v));
    }
    sealed_ = true;
}

void SignedMap::require_sealed() const {
    if (!sealed_) throw Error(ErrorKind::InvalidArgument, "map not sealed");
}

int SignedMap::band(int flag) const {
    int d = flag / 2, s = flag % 2;
    int p = partner(d);
    int s2 = (sign_of_dart(d) > 0) ? 1 - s : s;
    return 2 * p + s2;
}

int SignedMap::corner(int flag) const {
    int d = flag / 2, s = flag % 2;
    // The corner between consecutive darts joins the left side of a dart to
    // the right side of its rotation successor.
    if (s == 0) return 2 * rot_next(d) + 1;
    return 2 * rot_prev(d) + 0;
}

void SignedMap::compute_faces() const {
    require_sealed();
    if (faces_valid_) return;
    faces_.clear();
    flag_face_.assign(2 * dart_count(), -1);
    arc_start_dart_.assign(edge_count(), {-1, -1});

    for (int start = 0; start < 2 * dart_count(); ++start) {
        if (flag_face_[start] != -1) continue;
        FaceWalk walk;
        int face_id = static_cast<int>(faces_.size());
        int f = start;
        do {
            walk.flags.push_back(f);
            flag_face_[f] = face_id;
            int g = band(f);
            flag_face_[g] = face_id;
            // Record the traversal direction of this edge-side arc.  Arc
            // slot s of edge e is the arc touching flag (dart 2e, side s);
            // every arc has one flag at each dart end.
            int d = f / 2;
            int e = edge_of(d);
            int d0 = 2 * e;
            int flag_at_d0 = (f / 2 == d0) ? f : g;
            arc_start_dart_[e][flag_at_d0 % 2] = d;
            f = corner(g);
        } while (f != start);
        faces_.push_back(std::move(walk));
    }
    faces_valid_ = true;
}

const std::vector<SignedMap::FaceWalk>& SignedMap::faces() const {
    compute_faces();
    return faces_;
}

int SignedMap::face_of_flag(int flag) const {
    compute_faces();
    return flag_face_.at(flag);
}

int SignedMap::capped_chi() const {
    return vertex_count() - edge_count() + face_count();
}

bool SignedMap::edge_flips_orientation(int e) const {
    compute_faces();
    // Arc slot 0 starts at the left of dart 2e ("top" of the band chart),
    // slot 1 at its right.  Crossing the band flips orientation iff both
    // boundary arcs are traversed in the same chart direction, i.e. the
    // recorded start darts coincide.
    return arc_start_dart_[e][0] == arc_start_dart_[e][1];
}

void SignedMap::compute_branches() const {
    require_sealed();
    if (branches_valid_) return;
    branches_.clear();
    std::vector<char> seen(dart_count(), 0);
    for (int d0 = 0; d0 < dart_count(); ++d0) {
        if (seen[d0]) continue;
        BranchCycle cyc;
        cyc.branch = branch_of_dart(d0);
        int d = d0;
        do {
            seen[d] = 1;
            int arr = partner(d);
            seen[arr] = 1;
            cyc.darts.push_back(d);
            cyc.sign_product *= sign_of_dart(d);
            if (!(branch_of_dart(d) == cyc.branch))
                throw Error(ErrorKind::InvalidArgument,
                            "straight-through cycle mixes branch labels");
            d = straight_through(arr);
        } while (d != d0);
        branches_.push_back(std::move(cyc));
    }
    // A branch is one immersed circle: labels are unique across cycles.
    std::map<std::pair<int, int>, int> count;
    for (const auto& c : branches_) count[{c.branch.curve, c.branch.branch}]++;
    for (const auto& [key, n] : count)
        if (n > 1)
            throw Error(ErrorKind::InvalidArgument,
                        "branch label used by " + std::to_string(n) + " disjoint cycles");
    branches_valid_ = true;
}

const std::vector<SignedMap::BranchCycle>& SignedMap::branch_cycles() const {
    compute_branches();
    return branches_;
}

const SignedMap::BranchCycle* SignedMap::find_branch(BranchRef b) const {
    for (const auto& c : branch_cycles())
        if (c.branch == b) return &c;
    return nullptr;
}

std::vector<int> SignedMap::branch_vertices(BranchRef b) const {
    const BranchCycle* c = find_branch(b);
    std::vector<int> out;
    if (!c) return out;
    for (int d : c->darts) out.push_back(dart_vertex(d));
    return out;
}

bool SignedMap::connected() const {
    require_sealed();
    if (vertex_count() == 0) return true;
    std::vector<char> vis(vertex_count(), 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int n = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int d : vertices_[v].rot) {
            int w = dart_vertex_[partner(d)];
            if (!vis[w]) {
                vis[w] = 1;
                ++n;
                stack.push_back(w);
            }
        }
    }
    return n == vertex_count();
}

} // namespace snakes
