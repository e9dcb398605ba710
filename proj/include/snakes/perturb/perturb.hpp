#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snakes/core/arrangement.hpp"
#include "snakes/curves/snake.hpp"

namespace snakes {

// A conic-vs-C_k base arrangement, gauge-normalized so that every conic
// edge carries sign +1 and sheet sides read consistently along the conic.
struct BaseView {
    Arrangement arr;
    int conic_curve = 0;
    int other_curve = 1;
    int comp = -1;                 // skeleton component
    int k = 0;                     // half the crossing count
    std::vector<int> cycle_verts;  // crossings in conic cyclic order
    std::vector<int> cycle_edges;  // conic edge i runs vertex i -> i+1
    std::vector<int> out_darts;    // conic dart leaving vertex i along the cycle
    std::vector<int> left_darts;   // branch dart on the left of travel at vertex i
    std::vector<int> right_darts;
};

// Locates the conic circle and normalizes gauges.  Throws InvalidArgument
// when the arrangement is not a base (conic must be a crossed oval whose
// crossings all involve the other curve).
BaseView analyze_base(const Arrangement& arr, int conic_curve = 0);

// Number of gaps (= 2k) of a base.
int gap_count(const BaseView& base);

// The doubled-conic perturbation: replaces the conic with an M-quartic
// whose snake oval is the wall of a thin tube around the conic arc holding
// all crossings (the arc complementary to gap g, 1-based), plus three free
// ovals in the region the gap opens into.  Throws BadGap.
Arrangement snake_from_conic(const BaseView& base, int gap);

// The pencil-of-conics route: four points on the chosen gap arc define a
// near conic; the union forms a closed chain of four digons which the
// perturbation turns into the snake oval and three small ovals.  `points4`
// lists (gap index, rank) pairs and must name four distinct points on the
// chosen arc; throws BadArc otherwise.  Isotopic to snake_from_conic on
// every base and gap.
Arrangement chain_of_digons(const BaseView& base, int arc,
                            const std::vector<std::pair<int, int>>& points4);

// The chain construction stopped before smoothing: conic, near conic and
// C_k with the four pencil base points as nodes of the doubled curve.
Arrangement chain_nodal_stage(const BaseView& base, int arc);

struct GenItem {
    Arrangement arr;
    int base_index = -1;
    int gap = 0;
    int coiled = 0;       // branches of the other curve met by the snake
    int other_rank = 0;   // rank of the coiled curve
    int other_branches = 0;
};

struct GenResult {
    std::vector<GenItem> kept; // first representatives in generation order
    int total_before_dedupe = 0;
    // (coiled, other_rank) -> count of isotopy classes
    std::map<std::pair<int, int>, int> histogram;
};

struct GenOptions {
    bool chiral = false;
    int threads = 1;
};

GenResult enumerate_snakes(const std::vector<Arrangement>& bases, const GenOptions& opt = {});

struct JoinOptions {
    // Edges to consume (required when an oval has several arcs on the
    // region, e.g. the snake's two end arcs).  -1 picks the first arc found.
    int edge_a = -1, edge_b = -1;
    // Loop indices that must land in the face carrying the walk interval
    // that follows the A-arc (the rest go to the other side).
    std::vector<int> children_side1;
};

// The "facing arcs to a crossing" modification: consumes one arc of each
// oval across `region` and crosswise reconnects, adding one transverse
// self-node of the ovals' curve.  Throws NotFacing / RegionMeetsCk.
Arrangement modify_join(const Arrangement& a, BranchRef ovalA, BranchRef ovalB, int region,
                        const JoinOptions& opt = {});

struct DegenerationResult {
    Arrangement nodal;
    std::vector<int> circle_crossings; // crossings with C_k per split circle
    bool split_into_two = false;
    bool digons_empty = false;
};

// Thm-3 style degeneration: four joins along the vanished conic collapse
// the M-quartic onto two circles, each meeting C_k at 2k points, with all
// four digons free of C_k ovals.  Throws on precondition failures and
// propagates join errors; DigonOccupied when a C_k oval blocks a digon.
DegenerationResult degenerate_to_two_conics(const Arrangement& snake_arr);

} // namespace snakes
