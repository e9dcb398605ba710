#pragma once
#include <string>
#include <vector>

namespace snakes {

enum class BranchShape { Oval, Pseudoline };
enum class CurveType { I, II, Unknown };

// Reference to one branch (connected real component) of one curve.
struct BranchRef {
    int curve = -1;
    int branch = -1;
    bool operator==(const BranchRef&) const = default;
    auto operator<=>(const BranchRef&) const = default;
};

struct BranchInfo {
    BranchShape shape = BranchShape::Oval;
};

struct CurveInfo {
    std::string name;        // short label used in text formats
    int degree = 0;
    int rank = 0;            // r in "(M-r)-curve"
    CurveType type = CurveType::Unknown;
    std::vector<BranchInfo> branches;

    int branch_count() const { return static_cast<int>(branches.size()); }
    // Maximal branch count for this degree (Harnack bound).
    int m_branch_count() const { return (degree - 1) * (degree - 2) / 2 + 1; }
};

// Per-arrangement curve metadata.  Branch indices are dense per curve.
struct CurveSystem {
    std::vector<CurveInfo> curves;

    int add_curve(std::string name, int degree, int rank = 0,
                  CurveType type = CurveType::Unknown);
    int add_branch(int curve, BranchShape shape);

    const CurveInfo& curve(int id) const { return curves.at(id); }
    int curve_count() const { return static_cast<int>(curves.size()); }
    int find_curve(const std::string& name) const; // -1 when absent

    // Parity sanity: odd-degree curves carry exactly one pseudoline,
    // even-degree curves none.
    void validate() const;
};

const char* curve_type_name(CurveType t);
CurveType curve_type_from(const std::string& s);

} // namespace snakes
