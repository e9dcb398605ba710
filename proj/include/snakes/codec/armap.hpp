#pragma once
#include <string>

#include "snakes/core/arrangement.hpp"

namespace snakes {

// Plain-text map format (.armap).  Deterministic writer: rotations are
// stored rotated to their lexicographic minimum.  The reader rebuilds and
// revalidates, so structural damage (e.g. a hand-flipped sign) surfaces as
// the corresponding build error.
std::string serialize(const Arrangement& a);
Arrangement parse_map(const std::string& text);

} // namespace snakes
