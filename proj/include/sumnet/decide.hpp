#ifndef SUMNET_DECIDE_HPP
#define SUMNET_DECIDE_HPP

#include <array>
#include <optional>
#include <string>

#include "sumnet/oracle.hpp"

namespace sumnet {

enum class Status { Solvable, Unsolvable, Unknown };
std::string to_string(Status s);

// The structural pattern that characterizes infeasible terminal-separable
// three-terminal instances, up to renaming sources and terminals.
struct CirWitness {
    std::array<int, 3> source_naming;    // pattern role i -> actual source index
    std::array<int, 3> terminal_naming;  // pattern role j -> actual terminal index
    int p1 = -1, p2 = -1;                // region ids filling the two pattern slots
};

struct ReductionStep {
    std::set<int> index_set;        // terminal indices replaced by the super terminal
    int q_region;                   // region acting as the new terminal
    std::vector<int> chain_regions; // regions forced to all-ones on the way back down
};

struct OracleEvidence {
    uint32_t prime;
    std::string result;  // "found" | "infeasible" | "exhausted"
    uint64_t nodes;
};

struct Decision {
    Status status = Status::Unknown;

    // exactly one certificate backs the verdict; the rest are diagnostics
    std::optional<RegionCode> region_code;
    std::optional<EdgeCode> edge_code;
    std::vector<ReductionStep> reduction_trace;
    std::optional<CirWitness> cir;
    std::optional<HaltReason> halt;
    std::optional<CompatibilityReport> compatibility;
    std::vector<MergeStep> partition_history;
    std::vector<std::vector<int>> partition_classes;     // rosters at halt
    std::optional<Assumption1Violation> assumption1;
    std::vector<std::pair<int, int>> disconnected;       // (source, terminal) pairs
    std::vector<OracleEvidence> oracle_evidence;

    // diagnostics
    int k = 0, n = 0;
    bool separable = false;
    std::string note;
};

struct DecideOptions {
    std::vector<uint32_t> oracle_fields{2, 3, 5};  // evidence fields for unknowns
    SearchBudget oracle_budget{};
};

// Full pipeline on a region-graph instance (three sources required).
Decision decide_region_graph(const RegionGraph& rg, const DecideOptions& opts = {});

// Full pipeline on a network instance. Rejects cyclic or dangling
// instances; k=1,2 fall back to the connectivity condition with a
// verifier-checked routing code; k=3 runs the region pipeline and lifts.
Decision decide_network(const AugmentedNetwork& aug, const DecideOptions& opts = {});

// Entry points for the two theorem-backed special cases; preconditions are
// checked and violations throw.
Decision decide_terminal_separable(const RegionGraph& rg, const TerminalProfile& prof);
Decision decide_3s3t(const RegionGraph& rg, const TerminalProfile& prof,
                     const DecideOptions& opts = {});

// Searches every source and terminal renaming for the infeasibility
// pattern; terminal-separable three-terminal instances only.
std::optional<CirWitness> check_cir(const RegionGraph& rg, const TerminalProfile& prof);

struct ReducedInstance {
    std::vector<int> designated;   // new terminal designation, old-order then Q
    std::set<int> replaced;        // the index set I
    int q_region;
};
ReducedInstance super_terminal_reduce(const RegionGraph& rg, const TerminalProfile& prof,
                                      const std::set<int>& index_set, int q_region);

// Which of the four sufficient feasibility conditions a terminal-separable
// three-terminal profile meets, if any (1-based), in statement order.
std::optional<int> simple_case_condition(const RegionGraph& rg, const TerminalProfile& prof);

// Re-checks the certificate attached to a decision against the instance.
bool reverify_region_decision(const Decision& d, const RegionGraph& rg);
bool reverify_network_decision(const Decision& d, const AugmentedNetwork& aug);

std::string decision_to_json(const Decision& d, const RegionGraph* rg);

}  // namespace sumnet

#endif
