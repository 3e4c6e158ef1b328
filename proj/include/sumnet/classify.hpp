#ifndef SUMNET_CLASSIFY_HPP
#define SUMNET_CLASSIFY_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sumnet/region_graph.hpp"

namespace sumnet {

// The three unordered source pairs, in scan order (1,2), (1,3), (2,3).
struct PlanePair {
    int i1, i2;  // 1-based, i1 < i2
};
inline constexpr PlanePair kPlanes[3] = {{1, 2}, {1, 3}, {2, 3}};
int plane_index(int i1, int i2);
// the plane pair avoiding source i
int off_plane_of(int i);

struct Assumption1Violation {
    int terminal_index;  // 1-based j with T_j inside a pairwise super region
    int plane;           // index into kPlanes
};

// Terminal-side structure of a region graph relative to a designation of
// terminal regions: the pairwise source super regions and their union Pi,
// per-region terminal label sets, and the Omega/Lambda tables.
struct TerminalProfile {
    std::vector<int> designated;            // terminal index (1-based) -> region id
    std::set<int> pi;                       // region ids
    std::set<int> planes[3];                // reg(S_i1, S_i2) per plane pair
    std::vector<std::set<int>> labels;      // region id -> reachable terminal indices
    std::map<std::set<int>, std::set<int>> omega;   // only non-empty entries
    std::map<std::set<int>, std::set<int>> lambda;  // only non-empty entries
    bool separable = false;
    std::optional<Assumption1Violation> assumption1;

    int n() const { return static_cast<int>(designated.size()); }
    std::set<int> lambda_of(int j) const;
    std::set<int> omega_of(int j) const;
    bool in_plane(int region, int plane) const { return planes[plane].count(region) > 0; }
};

// Pi = reg(S1,S2) u reg(S1,S3) u reg(S2,S3); requires exactly 3 sources.
std::set<int> compute_pi(const RegionGraph& rg);

// Reverse-topological label propagation; labels[r] = { j : r -> T_j }.
std::vector<std::set<int>> label_terminals(const RegionGraph& rg, const std::vector<int>& designated);

TerminalProfile compute_profile(const RegionGraph& rg);
// Same, but with an explicit terminal designation (used by the
// super-terminal reduction, which re-designates regions as terminals).
TerminalProfile compute_profile(const RegionGraph& rg, const std::vector<int>& designated);

bool is_terminal_separable(const TerminalProfile& profile);
std::optional<Assumption1Violation> check_assumption1(const RegionGraph& rg, const TerminalProfile& profile);

}  // namespace sumnet

#endif
