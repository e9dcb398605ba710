#pragma once
#include <optional>
#include <vector>

#include "snakes/core/arrangement.hpp"

namespace snakes {

// Witness that `snake` is an oval whose disk is cut by the branches it
// crosses into 2k-1 curvilinear quadrangles and two digons (the ends).
struct SnakeWitness {
    BranchRef snake;
    int other_curve = -1;
    int k = 0;
    std::vector<BranchRef> coiled;  // branches of other_curve met by the snake
    std::vector<int> cell_regions;  // chain order: end, quads..., end
    std::array<int, 2> end_regions{-1, -1};
};

// Returns the witness when the disk bounded by `oval` is divided by the
// other curve's branches into the snake pattern.  Throws NotAnOval for a
// one-sided branch.
std::optional<SnakeWitness> detect_snake(const Arrangement& a, BranchRef oval, int other_curve);

enum class RegionLabel { InsideQuad, InsideEnd, Outside };

struct RegionClassification {
    std::vector<RegionLabel> labels; // per region
    // The outside region whose boundary carries both end arcs of the snake,
    // -1 when the two end arcs see different regions.
    int ends_region = -1;
    // Free ovals of the snake's curve and whether they all lie in
    // ends_region (the closing claim of the construction).
    std::vector<BranchRef> snake_curve_free_ovals;
    bool free_ovals_with_ends = false;
};

RegionClassification classify_regions(const Arrangement& a, const SnakeWitness& w);

// Branches of `curve` with no crossings at all.
std::vector<BranchRef> free_branches(const Arrangement& a, int curve);

struct BezoutRow {
    int curve_a, curve_b;
    int crossings, bound;
    bool saturated;
};
std::vector<BezoutRow> bezout_audit(const Arrangement& a);

} // namespace snakes
