#pragma once
#include <array>
#include <cstdint>
#include <vector>

#include "snakes/core/curve_system.hpp"
#include "snakes/core/error.hpp"

namespace snakes {

// One connected component of the 1-skeleton of an arrangement, encoded as a
// signed rotation system (embedding scheme).  Vertices are transverse double
// points of degree 4; edge e owns darts 2e and 2e+1.  The rotation at a
// vertex lists its four darts in cyclic order; the two strands passing
// through the vertex occupy rotation slots (0,2) and (1,3).
//
// Edge signs encode orientability: a cycle is one-sided in the target
// surface iff the product of its edge signs is negative.  Gauge moves
// (reversing the rotation at a vertex while flipping the signs of its
// incident edges) do not change the embedding.
class SignedMap {
  public:
    struct Edge {
        int sign = +1;          // +1 flat, -1 twisted
        BranchRef branch;       // curve/branch carrying this edge
    };
    struct Vertex {
        std::array<int, 4> rot{-1, -1, -1, -1}; // darts, cyclic order
    };

    int add_vertex();
    // Creates an edge; darts are 2e, 2e+1.  Rotations are wired separately.
    int add_edge(BranchRef branch, int sign = +1);
    void set_rotation(int vertex, const std::array<int, 4>& darts);

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int dart_count() const { return 2 * edge_count(); }

    const Vertex& vertex(int v) const { return vertices_.at(v); }
    const Edge& edge(int e) const { return edges_.at(e); }
    Edge& edge_mut(int e) { return edges_.at(e); }

    static int edge_of(int dart) { return dart / 2; }
    static int partner(int dart) { return dart ^ 1; }
    int sign_of_dart(int dart) const { return edges_[edge_of(dart)].sign; }
    const BranchRef& branch_of_dart(int dart) const { return edges_[edge_of(dart)].branch; }

    int dart_vertex(int dart) const { return dart_vertex_.at(dart); }
    int dart_pos(int dart) const { return dart_pos_.at(dart); }
    int rot_next(int dart) const;
    int rot_prev(int dart) const;
    // Straight-through continuation: the dart opposite `arriving` at its
    // vertex (slot + 2 mod 4).
    int straight_through(int arriving) const;

    // Finalize after wiring: indexes darts, checks structure.
    // Throws NonTransverseVertex / InvalidArgument on malformed input.
    void seal();
    bool sealed() const { return sealed_; }

    // ---- Faces (boundary-walk orbits of the ribbon structure) ----

    // One traversal step of a face walk, as flag ids.  A flag is
    // 2*dart + side with side 0 = left, 1 = right (looking along the dart
    // away from its vertex, with the vertex rotation counterclockwise).
    struct FaceWalk {
        // Band-start flags in walk order; arc i runs from flags[i] to
        // band(flags[i]) across the edge.
        std::vector<int> flags;
        int degree() const { return static_cast<int>(flags.size()); }
    };

    int band(int flag) const;
    int corner(int flag) const;

    // All face walks; each edge side appears in exactly one walk.
    const std::vector<FaceWalk>& faces() const;
    int face_count() const { return static_cast<int>(faces().size()); }
    int face_of_flag(int flag) const; // face index containing a flag

    // Capped Euler characteristic V - E + F of the closed surface this
    // rotation system describes.  1 = real projective plane (component is
    // essential), 2 = sphere (component is planar).
    int capped_chi() const;
    bool essential() const { return capped_chi() == 1; }

    // Orientation transport across an edge: true when the two face walks
    // traverse the edge in the same direction (crossing it reverses local
    // orientation).  Meaningful per component.
    bool edge_flips_orientation(int e) const;

    // ---- Branches ----

    // Straight-through cycles, one per immersed branch in this component.
    // Validates that each cycle carries a single BranchRef and that no two
    // cycles share one.
    struct BranchCycle {
        BranchRef branch;
        std::vector<int> darts;  // walk: edge of darts[i] from its vertex
        int sign_product = +1;   // -1 iff one-sided
    };
    const std::vector<BranchCycle>& branch_cycles() const;
    const BranchCycle* find_branch(BranchRef b) const;

    // Vertices where the given branch crosses a different branch / itself.
    std::vector<int> branch_vertices(BranchRef b) const;

    bool connected() const;

  private:
    void require_sealed() const;
    void compute_faces() const;
    void compute_branches() const;

    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<int> dart_vertex_;
    std::vector<int> dart_pos_;
    bool sealed_ = false;

    mutable bool faces_valid_ = false;
    mutable std::vector<FaceWalk> faces_;
    mutable std::vector<int> flag_face_;
    mutable std::vector<std::array<int, 2>> arc_start_dart_; // per edge, per side slot
    mutable bool branches_valid_ = false;
    mutable std::vector<BranchCycle> branches_;
};

} // namespace snakes
