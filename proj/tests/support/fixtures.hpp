#pragma once
#include "snakes/core/arrangement.hpp"

// Hand-built reference arrangements.  These are constructed dart by dart,
// independently of the codec and generator paths, so tests can use them as
// oracles for face counts, Euler characteristics and region structure.
namespace snakes::fixtures {

// No curves at all: the bare projective plane.
Arrangement empty_arrangement();

// A single free oval of a conic.
Arrangement one_oval();

// Two disjoint nested ovals of one quartic (inner inside outer).
Arrangement nested_ovals();

// The pseudoline of a cubic plus its free oval placed in the complement.
Arrangement cubic_pseudoline_with_oval();

// Two conics meeting at 4 points, the essential picture (the union is not
// contained in a disk; all five complement regions are disks).  Crossing
// order along the second conic is 1,2,4,3 relative to the first.
Arrangement two_conics_essential();

// Two conics meeting at 4 points, the planar picture (two overlapping
// ellipses; six complement regions, one of them a Moebius band).
Arrangement two_conics_planar();

// The raw essential two-conic component without the arrangement wrapper.
SignedMap two_conics_essential_map();

} // namespace snakes::fixtures
