#pragma once
#include <optional>
#include <string>
#include <vector>

#include "snakes/core/arrangement.hpp"

namespace snakes {

// Parsed .base file: the conic-vs-C_k picture as figure data.  The word
// lists crossings along the conic; each crossed branch lists its arcs in
// order along itself with inside/outside tags and optional wrap/flat
// annotations pinning whether an outside arc passes around the crosscap.
struct BaseArrangement {
    int k = 0;
    CurveSystem curves; // [0] the conic, [1] the other curve
    std::vector<std::string> word;
    struct Arc {
        int from = -1, to = -1; // crossing indices (word positions)
        bool inside = false;
        int wrap = -1; // -1 unknown, 0 flat, 1 wraps
    };
    struct BranchDecl {
        std::string letter;
        BranchShape shape = BranchShape::Oval;
        bool free = false;
        std::vector<Arc> arcs;
    };
    std::vector<BranchDecl> branches;                              // other curve, in order
    std::vector<std::pair<std::string, std::string>> placements;   // letter -> region name
    std::string map_override;                                      // low-level escape hatch
};

BaseArrangement parse_base(const std::string& text);

struct CompileOptions {
    // Keep every structurally valid embedding instead of demanding a single
    // screened survivor (used by enumeration tooling).
    bool all_candidates = false;
};

// Compiles the figure data to the unique arrangement it describes.  The
// under-specified parts (wrap bits, crosscap face) are enumerated; the
// auxiliary-line screen discards candidates no real curve pair could
// realize.  AmbiguousEmbedding when several survive, InvalidWord when none.
Arrangement compile_base(const BaseArrangement& base);
std::vector<Arrangement> compile_base_candidates(const BaseArrangement& base,
                                                 const CompileOptions& opt);

// parse + compile, following a `map` override relative to `dir`.
Arrangement load_base_text(const std::string& text, const std::string& dir = ".");
Arrangement load_base_file(const std::string& path);

} // namespace snakes
