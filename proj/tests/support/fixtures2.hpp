#pragma once
#include "snakes/core/arrangement.hpp"

namespace snakes::fixtures {

// A quartic oval coiling a line (k=1): boundary of a thickened C-shaped
// segment crossing a pseudoline twice, so the oval meets the line at 4
// points and its disk splits into digon / quadrangle / digon.  Three free
// ovals of the quartic sit in the outer region.
Arrangement snake_k1_over_line();

// Two conics crossing at 2 points (the overlapping-circles picture).
Arrangement two_conics_two_crossings();

} // namespace snakes::fixtures
