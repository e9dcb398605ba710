#pragma once
#include <string>

#include "snakes/core/arrangement.hpp"
#include "snakes/curves/snake.hpp"

namespace snakes {

// Compact isotopy certificate for snake arrangements: the crossings met
// along the snake oval, each written as <branch letter><index along that
// branch>, with '/' between runs on different branches.  Normal form is the
// lexicographic minimum over the dihedral action on the snake word, dihedral
// re-indexings of every coiled branch, and branch relabeling.  Equal
// canonical forms give equal codes; the converse is not assumed.
struct SnakeCode {
    std::string text;
    bool operator==(const SnakeCode&) const = default;
};

SnakeCode snake_code(const Arrangement& a, const SnakeWitness& w);

} // namespace snakes
