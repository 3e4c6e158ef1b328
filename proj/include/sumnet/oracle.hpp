#ifndef SUMNET_ORACLE_HPP
#define SUMNET_ORACLE_HPP

#include <cstdint>
#include <variant>

#include "sumnet/codes.hpp"

namespace sumnet {

struct SearchBudget {
    uint64_t node_limit = 20'000'000;
    double time_limit_seconds = 0;  // 0: unlimited
};

struct SearchStats {
    uint64_t nodes = 0;
};

template <typename Code>
struct OracleFound {
    Code code;
    SearchStats stats;
};
struct OracleInfeasible {
    uint32_t prime;
    SearchStats stats;
};
struct OracleExhausted {
    SearchStats stats;
};

using RegionOracleResult = std::variant<OracleFound<RegionCode>, OracleInfeasible, OracleExhausted>;
using EdgeOracleResult = std::variant<OracleFound<EdgeCode>, OracleInfeasible, OracleExhausted>;

// Depth-first search over all linear codes of the region graph with
// sources and terminal regions pinned, candidates drawn from the parents'
// span up to scalars, and an all-ones reachability prune at every branch.
// Exact for the given field unless the budget runs out.
RegionOracleResult brute_force_region(const RegionGraph& rg, uint32_t q,
                                      const SearchBudget& budget = {}, int k = 3);

EdgeOracleResult brute_force_edges(const AugmentedNetwork& aug, uint32_t q,
                                   const SearchBudget& budget = {});

}  // namespace sumnet

#endif
