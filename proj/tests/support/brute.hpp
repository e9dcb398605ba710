#pragma once
#include <vector>

#include "snakes/core/arrangement.hpp"

// Independent brute-force oracles.  None of these share code with the
// library paths they check.
namespace snakes::brute {

// Backtracking isomorphism test on whole arrangements: tries every dart
// bijection compatible with rotations (up to global reflection and gauge),
// every curve relabeling within equal metadata, and every containment
// matching.  Exponential; fine for the map sizes used in tests.
bool isomorphic(const Arrangement& a, const Arrangement& b, bool allow_mirror = true);

// Exhaustive search over closed dual walks of bounded length: minimal number
// of crossings with `curve` over walks of the requested homology class that
// visit all listed regions.  Returns -1 when no walk within the cap exists.
int min_crossings_by_walks(const Arrangement& a, const std::vector<int>& through_regions,
                           int curve, int homology_class, int max_len);

} // namespace snakes::brute
