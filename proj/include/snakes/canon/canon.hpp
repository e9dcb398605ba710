#pragma once
#include <string>
#include <vector>

#include "snakes/core/arrangement.hpp"

namespace snakes {

struct CanonOptions {
    // When set, traversal directions are not quotiented, so mirror-related
    // presentations may receive distinct certificates.  The default follows
    // the fact that the projective plane admits no chirality.
    bool chiral = false;
};

// A byte certificate deciding isotopy: equal certificates iff the
// arrangements are isomorphic as curve-labeled combinatorial maps with
// containment (branch labels and curve names quotiented; curves identified
// only when degree/rank/type/branch data agree).
struct CanonicalForm {
    std::string bytes;
    bool operator==(const CanonicalForm&) const = default;
    auto operator<=>(const CanonicalForm&) const = default;
};

std::string to_hex(const CanonicalForm& cf);

CanonicalForm canonical_form(const Arrangement& a, const CanonOptions& opt = {});

// Canonical presentation: stable names for regions, components, loops and
// faces, used by text formats and the command line.
struct CanonicalLayout {
    CanonicalForm form;
    std::vector<int> comp_order;              // canonical idx -> internal comp
    std::vector<int> loop_order;              // canonical idx -> internal loop
    std::vector<std::vector<int>> face_order; // per internal comp: canonical idx -> face
    std::vector<std::string> region_names;    // per internal region index
    int region_by_name(const Arrangement& a, const std::string& name) const; // -1 if absent
};

CanonicalLayout canonical_layout(const Arrangement& a, const CanonOptions& opt = {});

bool is_isotopic(const Arrangement& a, const Arrangement& b, const CanonOptions& opt = {});

struct DedupeResult {
    std::vector<int> kept;     // indices of first representatives, input order
    std::vector<int> class_of; // per input: index into kept
};

DedupeResult dedupe(const std::vector<const Arrangement*>& items, const CanonOptions& opt = {});

} // namespace snakes
