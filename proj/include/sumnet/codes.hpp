#ifndef SUMNET_CODES_HPP
#define SUMNET_CODES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sumnet/bfamily.hpp"
#include "sumnet/partition.hpp"

namespace sumnet {

// Assignment of GF(p)^3 vectors to regions. Keys are region ids.
struct RegionCode {
    uint32_t p = 0;
    std::map<int, Vec3> vectors;
};

// Assignment to augmented edges. Keys are augmented edge ids.
struct EdgeCode {
    uint32_t p = 0;
    std::map<int, Vec3> vectors;
};

struct CodeViolation {
    enum Clause { SourcePinned, SpanMembership, TerminalValue, Missing } clause;
    int id;  // region id or augmented edge id
    std::string describe() const;
};

// The three code conditions at region level: sources carry alpha_i,
// every non-source region lies in its parents' span, terminal regions
// carry the all-ones vector.
std::optional<CodeViolation> verify_region_code(const RegionGraph& rg, const RegionCode& code,
                                                int k = 3);
std::optional<CodeViolation> verify_edge_code(const AugmentedNetwork& aug, const EdgeCode& code);

// Vectors for Pi from a compatible partition: members of [S_j]_j get
// alpha_j, members of [S_j]_{i1,i2} get alpha_i1 + alpha_i2, members of a
// later class's plane subclass get that class's plane representative.
// Throws if the partition is incompatible or the family is too small; the
// result is checked against the construction conditions before returning.
RegionCode assign_pi_code(const PiPartition& part, const RegionGraph& rg,
                          const TerminalProfile& prof, const BFamily& fam);

// Extends a Pi code to the whole region graph: a routing tree inside each
// Omega_j pushes coefficient-weighted partial sums to T_j so the terminal
// ends at all-ones; everything untouched copies its first parent.
// fill_rest=false leaves the untouched regions unassigned (the reduction
// path forces all-ones chains into them before the final fill).
RegionCode extend_code(const RegionGraph& rg, const TerminalProfile& prof,
                       const RegionCode& pi_code, bool fill_rest = true);

// Copies the first parent's vector into every unassigned region.
void fill_unassigned(const RegionGraph& rg, RegionCode& code);

EdgeCode lift_to_edges(const AugmentedNetwork& aug, const RegionGraph& rg, const RegionCode& code);

// JSON file format shared by both levels.
std::string code_to_json(const RegionCode& code, const RegionGraph& rg);
std::string code_to_json(const EdgeCode& code);
struct ParsedCode {
    std::string level;  // "region" | "edge"
    uint32_t p;
    std::map<std::string, Vec3> vectors;
};
ParsedCode parse_code_json(const std::string& text);
RegionCode bind_region_code(const ParsedCode& parsed, const RegionGraph& rg);
EdgeCode bind_edge_code(const ParsedCode& parsed);

}  // namespace sumnet

#endif
