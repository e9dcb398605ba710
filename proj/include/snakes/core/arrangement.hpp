#pragma once
#include <optional>
#include <string>
#include <vector>

#include "snakes/core/curve_system.hpp"
#include "snakes/core/signed_map.hpp"

namespace snakes {

// A crossing-free branch: a circle disjoint from everything else.
// Two-sided loops bound a disk (their "inside"); an essential loop is a
// one-sided circle (the pseudoline of an odd curve that nothing crosses).
struct Loop {
    BranchRef branch;
    bool essential = false;
};

// Where a component or loop sits.  Background means the projective plane
// itself; at most one essential entity may exist arrangement-wide and an
// essential map component must be the only background child.
struct Placement {
    enum class Kind { Background, MapFace, LoopInside };
    Kind kind = Kind::Background;
    int owner = -1; // component index (MapFace) or loop index (LoopInside)
    int face = -1;  // face index within the owning component
    bool operator==(const Placement&) const = default;
};

// A complement region of the assembled arrangement.
struct Region {
    enum class Kind { MapFace, LoopInside, Background };
    Kind kind = Kind::Background;
    int comp = -1, face = -1; // MapFace
    int loop = -1;            // LoopInside
    std::vector<int> child_comps;
    std::vector<int> child_loops;
    int chi = 1;       // Euler characteristic of the open region
    bool disk = false; // true when the closure (ignoring children) is a disk
};

struct DualArc {
    int region_a = -1, region_b = -1;
    BranchRef crossed;   // invalid ref for the crosscap pass
    bool flips = false;  // Z/2 class increment when crossed
    int comp = -1, edge = -1; // provenance for map edges
    int loop = -1;            // provenance for loop crossings
};

// An immutable embedded curve system on the real projective plane.
// Components are connected signed maps; crossing-free branches are loops in
// the containment forest.  Total Euler characteristic is validated to be 1.
class Arrangement {
  public:
    class Builder;

    const CurveSystem& curves() const { return curves_; }
    int component_count() const { return static_cast<int>(comps_.size()); }
    const SignedMap& component(int i) const { return comps_.at(i); }
    int loop_count() const { return static_cast<int>(loops_.size()); }
    const Loop& loop(int i) const { return loops_.at(i); }
    const Placement& component_placement(int i) const { return comp_place_.at(i); }
    int component_outer_face(int i) const { return comp_outer_.at(i); }
    const Placement& loop_placement(int i) const { return loop_place_.at(i); }
    bool has_essential_component() const { return essential_comp_ >= 0; }
    int essential_component() const { return essential_comp_; }

    // ---- Regions ----
    const std::vector<Region>& regions() const { return regions_; }
    int region_count() const { return static_cast<int>(regions_.size()); }
    int background_region() const { return background_region_; } // -1 when essential root
    int region_of_face(int comp, int face) const;  // resolves outer faces to parent
    int region_inside_loop(int loopIdx) const;
    int region_around_loop(int loopIdx) const;     // the loop's placement region
    int region_around_component(int comp) const;   // placement region of a planar component
    int region_of_placement_public(const Placement& p) const;
    const std::vector<DualArc>& dual() const { return dual_; }
    const std::vector<int>& dual_arcs_at(int region) const { return region_arcs_.at(region); }

    // ---- Curve/branch queries ----
    int total_vertex_count() const;
    int total_edge_count() const;
    int euler_characteristic() const; // always 1 for a built arrangement

    std::vector<BranchRef> branches_of(int curve) const;
    // 1 when the branch is non-contractible, else 0.
    int homology_class(BranchRef b) const;
    // Transverse intersections between two distinct branches.
    int crossing_count(BranchRef a, BranchRef b) const;
    int curve_crossing_count(int curveA, int curveB) const;
    // Crossings of this branch with all others (the d of Condition II).
    int branch_total_crossings(BranchRef b) const;
    bool branch_is_loop(BranchRef b) const;
    int loop_index_of(BranchRef b) const; // -1 when it is a map branch
    const SignedMap::BranchCycle* map_cycle_of(BranchRef b, int* comp_out = nullptr) const;

    // Regions adjacent to a branch (distinct, in no particular order).
    std::vector<int> regions_touching_branch(BranchRef b) const;
    // For an oval: the region list strictly inside its disk side, and the
    // disk-side region incident to the oval itself.
    int disk_side_region(BranchRef oval) const;

    // True when `region` lies inside the disk bounded by `oval` (the oval
    // separates; computed via crossing parity against the oval's curve...
    // containment is combinatorial, via the region/containment forest).
    bool region_inside_oval(int region, BranchRef oval) const;

    std::string region_name(int region) const; // stable given construction order

  private:
    friend class Builder;
    void build_regions();
    void validate_chi() const;
    void validate_branches() const;
    void validate_bezout() const;

    CurveSystem curves_;
    std::vector<SignedMap> comps_;
    std::vector<Loop> loops_;
    std::vector<Placement> comp_place_;
    std::vector<int> comp_outer_;
    std::vector<Placement> loop_place_;
    int essential_comp_ = -1;
    int essential_loop_ = -1;

    std::vector<Region> regions_;
    int background_region_ = -1;
    std::vector<std::vector<int>> face_region_;   // per comp, per face -> region or -1 for outer
    std::vector<int> loop_inside_region_;
    std::vector<DualArc> dual_;
    std::vector<std::vector<int>> region_arcs_;
};

// Assembles and validates an arrangement.
class Arrangement::Builder {
  public:
    explicit Builder(CurveSystem curves) { arr_.curves_ = std::move(curves); }

    // Returns the component index.  The map must already be sealed.
    int add_component(SignedMap m);
    int add_loop(BranchRef branch, bool essential = false);

    void place_component_background(int comp, int outer_face);
    void place_component(int comp, Placement where, int outer_face);
    void place_essential_component(int comp); // background, no outer face
    void place_loop(int loopIdx, Placement where);

    // Skip nonsingular-curve bookkeeping (branch parity); used when building
    // restrictions whose curves keep their degrees but lose branches.
    void subarrangement_mode() { relaxed_ = true; }

    // Inspect an added component (already sealed), e.g. to choose faces.
    const SignedMap& component_view(int comp) const { return arr_.comps_.at(comp); }

    // Validates everything and produces the immutable arrangement.
    Arrangement build();

  private:
    Arrangement arr_;
    std::vector<bool> comp_placed_, loop_placed_;
    bool relaxed_ = false;
};

} // namespace snakes
