#pragma once
#include <optional>
#include <string>
#include <vector>

#include "snakes/core/arrangement.hpp"
#include "snakes/curves/snake.hpp"

namespace snakes {

// Checkerboard coloring of the complement of the full curve union (exists
// iff the total degree is even), with one color selected.
struct SideChoice {
    std::vector<int> color; // per region, 0/1
    int selected = 0;
};

// Colors regions so that crossing any branch flips the color; anchor fixes
// the gauge.  Throws OddDegreeUnion when no 2-coloring exists.
SideChoice side_choice(const Arrangement& a, int anchor_region, int anchor_color);

// Euler characteristic of the closed selected side (curve points included):
// V - E + sum of region chi over the selected color.
int chi_plus(const Arrangement& a, const SideChoice& side);

// Eq-style decomposition for k=4 snake arrangements: p free ovals of the
// coiled curve outside the snake, n inside; Phi = chi_plus - p + n.
struct PhiPN {
    int phi, p, n;
};
PhiPN phi_p_n(const Arrangement& a, const SnakeWitness& w, const SideChoice& side);

struct ConditionReport {
    bool odd_degree = false;   // union degree odd: congruences not applicable
    bool condition_I = false;  // all crossings transverse real double points
    bool condition_II = false;
    struct BranchRow {
        BranchRef branch;
        int d;            // crossings with the union of the other branches
        int required_mod4;
        bool ok;
    };
    std::vector<BranchRow> rows;
};
ConditionReport condition_checks(const Arrangement& a);

// The union of all branches carrying crossings: drops every loop, keeping
// curve metadata (branch lists shrink to the crossed branches).
Arrangement gamma_subarrangement(const Arrangement& a);

enum class CongruenceMode { Relative, Absolute };
enum class Verdict { Pass, Fail, NotApplicable };

struct CongruenceReport {
    int chi_plus_candidate = 0;
    int chi_plus_reference = 0; // relative mode only
    int rank = 0;
    CurveType type = CurveType::Unknown;
    bool condition_I = false, condition_II = false;
    CongruenceMode mode = CongruenceMode::Relative;
    Verdict gudkov_rokhlin = Verdict::NotApplicable;          // M-curve, mod 8
    Verdict gudkov_krakhnov_kharlamov = Verdict::NotApplicable; // (M-1), +-1 mod 8
    Verdict kharlamov_marin = Verdict::NotApplicable;          // (M-2) type II, != +4 mod 8
    std::string note;
};

struct CongruenceOptions {
    CongruenceMode mode = CongruenceMode::Relative;
    std::optional<int> q; // absolute mode
    // Flip the canonical side selection (side_map control).
    bool flip_side = false;
};

// Relative mode compares chi_plus against a rank-0 reference sharing the
// same Gamma; absolute mode uses the caller's q.  Throws GammaMismatch or
// ConditionsFail.
CongruenceReport congruence_check(const Arrangement& cand, const Arrangement& ref,
                                  const CongruenceOptions& opt = {});

// Free ovals of the coiled curve inside snake ends or inside free ovals of
// the snake's curve.
struct Thm2Violation {
    BranchRef offending;
    std::string where;
};
std::vector<Thm2Violation> snake_end_obstructions(const Arrangement& a, const SnakeWitness& w);

// Minimal crossings with `curve` over closed dual walks of the given
// homology class visiting all listed regions.  Exact state-space search.
int pseudoline_min_crossings(const Arrangement& a, const std::vector<int>& through_regions,
                             int curve, int homology_class = 1);

// Joint-budget feasibility: exists a closed walk of the requested class
// through all listed regions crossing curve i at most budgets[i] times.
// max_len < 0 means no cap (the state space is finite).
bool exists_budgeted_walk(const Arrangement& a, const std::vector<int>& through_regions,
                          int homology_class, const std::vector<int>& budgets, int max_len = -1);

// Auxiliary-line screen used on base candidates: for every pair of regions
// there must be a pseudoline crossing each curve at most its degree times.
bool passes_line_screen(const Arrangement& a);

} // namespace snakes
