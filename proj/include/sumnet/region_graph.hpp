#ifndef SUMNET_REGION_GRAPH_HPP
#define SUMNET_REGION_GRAPH_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sumnet/network.hpp"

namespace sumnet {

struct Region {
    int id = -1;
    std::string name;
    std::set<int> edges;               // augmented edge ids; empty for direct instances
    std::optional<int> leader;         // augmented edge id
    std::optional<int> source_index;   // 1-based when this is the X_i source region
    std::set<int> terminal_indices;    // 1-based terminal links contained here

    bool is_source() const { return source_index.has_value(); }
    bool is_terminal() const { return !terminal_indices.empty(); }
};

// Graph on regions: an arc R' -> R when R' contains an incoming link of
// lead(R) (or, for direct instances, when the file declares R' a parent).
struct RegionGraph {
    int k = 0;                           // number of source regions
    int n = 0;                           // number of terminal indices
    std::vector<Region> regions;
    std::vector<std::set<int>> parents;  // region id -> parent region ids
    std::vector<std::set<int>> children;
    std::vector<int> topo_order;         // parents before children

    int region_count() const { return static_cast<int>(regions.size()); }
    int source_region(int i) const;             // 1-based source index -> region id
    int terminal_region(int j) const;           // 1-based terminal index -> region id
    int region_by_name(const std::string&) const;

    // region id of an augmented edge (edge-derived instances only)
    std::vector<int> region_of_edge;
};

// Direct region-graph instance, bypassing any edge-level network.
struct RegionGraphSpec {
    struct Entry {
        std::string name;
        std::optional<int> source_index;    // exactly one of these two is set
        std::optional<int> terminal_index;
        std::vector<std::string> parent_names;
    };
    std::vector<Entry> entries;
};

RegionGraphSpec parse_region_graph(const std::string& text);
RegionGraphSpec parse_region_graph_json(const std::string& text);
RegionGraph region_graph_of(const RegionGraphSpec& spec);

// The unique basic region decomposition of a validated network.
RegionGraph basic_decompose(const AugmentedNetwork& aug);
// Same, but candidate regions are examined in the given order of augmented
// edge ids; the fixed point is order-independent and tests exercise that.
RegionGraph basic_decompose_ordered(const AugmentedNetwork& aug, const std::vector<int>& edge_order);

struct BasicViolation {
    enum Kind { NotAPartition, NotARegion, InLinkOutside, TooFewParents } kind;
    int region = -1;   // index into the partition
    int edge = -1;     // offending augmented edge id, when applicable
    std::string describe() const;
};

// Checks the two defining conditions of a basic decomposition on an
// arbitrary partition of the augmented edge set.
std::optional<BasicViolation> is_basic(const AugmentedNetwork& aug,
                                       const std::vector<std::set<int>>& partition);

// Closure of theta: a region with at least one parent joins when all of its
// parents are already inside. Parentless regions only enter through theta
// itself. reg(empty) = empty.
std::set<int> super_region(const RegionGraph& rg, const std::set<int>& theta);
std::set<int> super_region_open(const RegionGraph& rg, const std::set<int>& theta);

// region-level reachability: true when a path runs from 'from' to 'to'
bool region_reaches(const RegionGraph& rg, int from, int to);

std::string export_dot(const RegionGraph& rg);

}  // namespace sumnet

#endif
